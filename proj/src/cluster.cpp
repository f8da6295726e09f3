#include "orch/cluster.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

namespace orch {

int PoolEntry::pending_total() const {
    int total = 0;
    for (const auto& p : pending) total += p.count;
    return total;
}

PoolState PoolState::for_catalog(const Catalog& catalog,
                                 std::span<const int> available) {
    if (available.size() != catalog.size()) {
        throw std::invalid_argument("available must match catalog size");
    }
    PoolState pool;
    pool.entries.reserve(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        PoolEntry entry;
        entry.du_id = catalog.units[i].id;
        entry.available = available[i];
        pool.entries.push_back(std::move(entry));
    }
    return pool;
}

int PoolState::index_of(std::string_view du_id) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].du_id == du_id) return static_cast<int>(i);
    }
    return -1;
}

PoolEntry& PoolState::at(std::string_view du_id) {
    const int i = index_of(du_id);
    if (i < 0) {
        throw std::invalid_argument("unknown deployment unit '" +
                                    std::string(du_id) + "'");
    }
    return entries[static_cast<std::size_t>(i)];
}

const PoolEntry& PoolState::at(std::string_view du_id) const {
    return const_cast<PoolState*>(this)->at(du_id);
}

namespace {

// Drops `excess` replicas from an entry: pending first (newest scheduled
// first), then granted. Long-running replicas survive, like cordon/drain.
RevocationReport revoke(PoolEntry& entry, int excess) {
    RevocationReport report;
    while (excess > 0 && !entry.pending.empty()) {
        PendingGrant& newest = entry.pending.back();
        const int take = std::min(excess, newest.count);
        newest.count -= take;
        report.from_pending += take;
        excess -= take;
        if (newest.count == 0) entry.pending.pop_back();
    }
    if (excess > 0) {
        const int take = std::min(excess, entry.granted);
        entry.granted -= take;
        report.from_granted += take;
    }
    return report;
}

}  // namespace

int request_capacity(PoolState& pool, std::string_view du_id, int desired,
                     double now, double provision_delay_s) {
    if (desired < 0) {
        throw std::invalid_argument("desired must be >= 0");
    }
    PoolEntry& entry = pool.at(du_id);
    const int committed = entry.committed();

    if (desired > committed) {
        const int grantable = std::min(desired - committed,
                                       entry.available - committed);
        if (grantable > 0) {
            entry.pending.push_back({now + provision_delay_s, grantable});
        }
    } else if (desired < committed) {
        revoke(entry, committed - desired);
    }
    return entry.committed();
}

RevocationReport apply_capacity_event(PoolState& pool,
                                      const CapacityEvent& event) {
    PoolEntry& entry = pool.at(event.du_id);
    entry.available = event.new_available;
    const int excess = entry.committed() - entry.available;
    if (excess <= 0) return {};
    return revoke(entry, excess);
}

int activate_ready(PoolState& pool, double now) {
    int activated = 0;
    for (auto& entry : pool.entries) {
        auto ready_end = std::stable_partition(
            entry.pending.begin(), entry.pending.end(),
            [now](const PendingGrant& p) { return p.ready_at <= now + 1e-9; });
        for (auto it = entry.pending.begin(); it != ready_end; ++it) {
            entry.granted += it->count;
            activated += it->count;
        }
        entry.pending.erase(entry.pending.begin(), ready_end);
    }
    return activated;
}

}  // namespace orch
