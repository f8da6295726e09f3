#pragma once

// Simulated capacity pools: per-unit availability, granted replicas, and
// in-flight provisioning, plus scripted capacity events (the fault
// injector). Granted + pending never exceeds availability.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orch/catalog.hpp"

namespace orch {

struct PendingGrant {
    double ready_at = 0.0;
    int count = 0;
};

struct PoolEntry {
    std::string du_id;
    int available = 0;  // pool capacity in replica units
    int granted = 0;    // replicas currently serving
    std::vector<PendingGrant> pending;

    int pending_total() const;
    // granted plus everything already provisioning
    int committed() const { return granted + pending_total(); }
};

struct PoolState {
    std::vector<PoolEntry> entries;  // catalog order

    static PoolState for_catalog(const Catalog& catalog,
                                 std::span<const int> available);
    int index_of(std::string_view du_id) const;
    PoolEntry& at(std::string_view du_id);
    const PoolEntry& at(std::string_view du_id) const;
};

struct CapacityEvent {
    double at = 0.0;
    std::string du_id;
    int new_available = 0;
};

struct RevocationReport {
    int from_pending = 0;
    int from_granted = 0;
    int total() const { return from_pending + from_granted; }
};

// Moves the committed replica count toward `desired`. Increases are capped
// by availability and become ready at now + provision_delay; decreases take
// effect immediately (pending dropped first, then granted). Returns the
// committed count after the call; desired minus the return value is the
// shortfall. Throws std::invalid_argument on an unknown du_id.
int request_capacity(PoolState& pool, std::string_view du_id, int desired,
                     double now, double provision_delay_s);

// Sets availability to the event's level and revokes any excess commitment,
// pending first, then granted. Returns what was revoked.
RevocationReport apply_capacity_event(PoolState& pool,
                                      const CapacityEvent& event);

// Promotes pending grants whose ready time has arrived. Returns the number
// of replicas activated.
int activate_ready(PoolState& pool, double now);

}  // namespace orch
