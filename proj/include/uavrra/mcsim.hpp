#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uavrra/beamgeom.hpp"
#include "uavrra/rra.hpp"
#include "uavrra/scenario.hpp"

namespace uavrra {

struct OccupiedSlot {
    int lane = 0;
    long slot = 0;    // along-road slot index within the beam
    double x_m = 0.0; // road-axis position of the slot center
    int beam = 0;     // 0-based beam index owning the slot
};

struct TrialOutcome {
    std::vector<OccupiedSlot> occupied_slots;
    std::vector<double> per_vehicle_snr_db;
    std::vector<long> per_beam_valid;   // valid relay requests per beam
    std::vector<long> per_beam_served;  // min(valid, allocated)
    std::vector<bool> per_beam_access;  // valid <= allocated
    long connected = 0;                 // vehicles meeting the SNR threshold
};

struct AccessReport {
    long trials = 0;
    double avg_access_hat = 0.0;
    double ci_half_width = 0.0;  // 95% interval on avg_access_hat
    std::vector<double> per_beam_access_hat;
    double connected_mean = 0.0;
    double connected_ci_half = 0.0;
    double served_mean = 0.0;
    double served_ci_half = 0.0;
    std::uint64_t seed = 0;
};

/// Drops vehicles onto the spatial slots of each beam footprint. Every beam
/// carries exactly its capacity worth of slots (laid lane-first from the
/// left footprint edge) so simulated per-beam counts match the analytic
/// binomial support; each slot is occupied independently with the
/// occupation probability.
std::vector<OccupiedSlot> drop_vehicles(std::mt19937_64& rng, const BeamCodebook& codebook,
                                        const ScenarioConfig& cfg);

/// One static snapshot: drop, per-vehicle SNR (per-beam Gaussian in
/// ModelMatched fidelity, full multipath beamforming in FullChannel),
/// validity, per-beam counts and access outcomes.
TrialOutcome run_trial(std::mt19937_64& rng, const BeamCodebook& codebook,
                       const ResourceAllocation& alloc, const ScenarioConfig& cfg);

/// Aggregates independent trials with per-trial substreams derived from
/// (seed, trial index). Deterministic for fixed inputs at any thread count.
AccessReport run_experiment(std::uint64_t seed, long trials, const BeamCodebook& codebook,
                            const ResourceAllocation& alloc, const ScenarioConfig& cfg,
                            int n_threads = 1);

}  // namespace uavrra
