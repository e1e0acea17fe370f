#pragma once

#include <optional>
#include <vector>

#include "uavrra/beamgeom.hpp"
#include "uavrra/rra.hpp"
#include "uavrra/scenario.hpp"

namespace uavrra {

/// Gaussian tail Q(x) = 0.5 * erfc(x / sqrt(2)).
double q_function(double x);

/// Probability that one spatial slot holds a vehicle:
/// lambda * L_v * exp(-lambda * L_v).
double occupation_prob(double lambda_per_m, double l_vehicle_m);

/// Q((gamma - mu) / sigma); degenerates to the indicator mu >= gamma when
/// sigma is zero.
double valid_request_prob(double mu_db, double sigma_db, double gamma_th_db);

/// Probability that the valid-request count of a beam fits its budget.
/// PaperExact sums the binomial over m = 1..min(n_res, m_max); IncludeZero
/// also counts the empty-beam outcome, i.e. the true CDF
/// Prob(Binomial(m_max, p) <= n_res), which is exactly 1 when
/// m_max <= n_res. Terms are accumulated in log space.
double beam_access_prob(long m_max, long n_res, double p, EmptyBeamMode mode);

struct AnalyticReport {
    std::vector<double> per_beam_p_vr;
    std::vector<double> per_beam_p_acc;
    double p_occupation = 0.0;
    double avg_access = 0.0;
};

/// Per-beam valid-request and access probabilities plus their mean, for the
/// given codebook and allocation.
AnalyticReport average_access_prob(const ScenarioConfig& cfg, const BeamCodebook& codebook,
                                   const ResourceAllocation& alloc);

struct PlanResult {
    double h_best_m = 0.0;
    double l_f_m = 0.0;
    double drones_per_km = 0.0;
    double p_acc = 0.0;
};

/// Grid search for the largest altitude whose analytic average access
/// probability meets the target. Returns nullopt when no grid point does.
std::optional<PlanResult> plan_altitude(const ScenarioConfig& cfg, double target,
                                        double h_lo_m, double h_hi_m, double step_m);

}  // namespace uavrra
