#pragma once

#include <string>
#include <vector>

#include "uavrra/beamgeom.hpp"
#include "uavrra/scenario.hpp"

namespace uavrra {

struct ResourceAllocation {
    RraKind strategy = RraKind::Fair;
    std::vector<long> per_beam;  // aligned with codebook beam order
    long total_budget = 0;
};

/// Even split: every beam gets floor(total/n_beam). With redistribute, the
/// remainder goes one unit at a time to the lowest-index beams.
ResourceAllocation fair_alloc(long total_budget, int n_beam, bool redistribute = false);

/// Footprint-proportional split: floor(total * L_l / L_f). With
/// redistribute, leftover units go to the largest fractional parts.
ResourceAllocation beam_based_alloc(long total_budget, const BeamCodebook& codebook,
                                    bool redistribute = false);

/// Dispatch on cfg.rra_kind / cfg.redistribute_remainder with the budget
/// from resource_budget(cfg).
ResourceAllocation make_allocation(const ScenarioConfig& cfg, const BeamCodebook& codebook);

/// CSV dump: beam_index,strategy,n_resources
std::string allocation_csv(const ResourceAllocation& alloc);

}  // namespace uavrra
