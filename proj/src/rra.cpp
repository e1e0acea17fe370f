#include "uavrra/rra.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace uavrra {

ResourceAllocation fair_alloc(long total_budget, int n_beam, bool redistribute) {
    ResourceAllocation a;
    a.strategy = RraKind::Fair;
    a.total_budget = total_budget;
    a.per_beam.assign(n_beam, total_budget / n_beam);
    if (redistribute) {
        long left = total_budget - (total_budget / n_beam) * n_beam;
        for (int i = 0; i < n_beam && left > 0; ++i, --left) a.per_beam[i] += 1;
    }
    return a;
}

ResourceAllocation beam_based_alloc(long total_budget, const BeamCodebook& codebook,
                                    bool redistribute) {
    ResourceAllocation a;
    a.strategy = RraKind::BeamBased;
    a.total_budget = total_budget;
    const double lf = codebook.segment_length_m;
    std::vector<double> frac;
    for (const auto& b : codebook.beams) {
        const double share = total_budget * b.length_m / lf;
        const long n = checked_floor(share);
        a.per_beam.push_back(n);
        frac.push_back(share - double(n));
    }
    if (redistribute) {
        long left = total_budget - std::accumulate(a.per_beam.begin(), a.per_beam.end(), 0L);
        std::vector<int> order(a.per_beam.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int i, int j) { return frac[i] > frac[j]; });
        for (size_t k = 0; k < order.size() && left > 0; ++k, --left)
            a.per_beam[order[k]] += 1;
    }
    return a;
}

ResourceAllocation make_allocation(const ScenarioConfig& cfg, const BeamCodebook& codebook) {
    const long budget = resource_budget(cfg).total;
    if (cfg.rra_kind == RraKind::Fair)
        return fair_alloc(budget, static_cast<int>(codebook.beams.size()),
                          cfg.redistribute_remainder);
    return beam_based_alloc(budget, codebook, cfg.redistribute_remainder);
}

std::string allocation_csv(const ResourceAllocation& alloc) {
    std::string out = "beam_index,strategy,n_resources\n";
    char line[64];
    for (size_t i = 0; i < alloc.per_beam.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%s,%ld\n", i + 1,
                      to_string(alloc.strategy), alloc.per_beam[i]);
        out += line;
    }
    return out;
}

}  // namespace uavrra
