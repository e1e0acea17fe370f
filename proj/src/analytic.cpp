#include "uavrra/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "uavrra/channel.hpp"

namespace uavrra {

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double occupation_prob(double lambda_per_m, double l_vehicle_m) {
    const double a = lambda_per_m * l_vehicle_m;
    return a * std::exp(-a);
}

double valid_request_prob(double mu_db, double sigma_db, double gamma_th_db) {
    if (sigma_db == 0.0) return mu_db >= gamma_th_db ? 1.0 : 0.0;
    return q_function((gamma_th_db - mu_db) / sigma_db);
}

namespace {

/// Binomial CDF P(X <= k) for X ~ Bin(n, p), log-space terms with Kahan
/// summation. Caller guarantees 0 <= k < n and 0 < p < 1.
double binom_cdf(long k, long n, double p) {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(double(n) + 1.0);
    double sum = 0.0, comp = 0.0;
    for (long m = 0; m <= k; ++m) {
        const double lt = lgn - std::lgamma(double(m) + 1.0) -
                          std::lgamma(double(n - m) + 1.0) + m * lp + (n - m) * lq;
        const double term = std::exp(lt);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::min(1.0, sum);
}

}  // namespace

double beam_access_prob(long m_max, long n_res, double p, EmptyBeamMode mode) {
    const bool include_zero = mode == EmptyBeamMode::IncludeZero;
    if (m_max <= 0) return include_zero ? 1.0 : 0.0;
    const double p0 = std::exp(double(m_max) * std::log1p(-std::min(p, 1.0)));  // (1-p)^m_max
    if (m_max <= n_res) {
        // every possible request fits
        return include_zero ? 1.0 : 1.0 - p0;
    }
    if (p <= 0.0) return include_zero ? 1.0 : 0.0;
    if (p >= 1.0) return 0.0;  // all m_max slots request, m_max > n_res
    if (n_res <= 0) return include_zero ? p0 : 0.0;
    const double cdf = binom_cdf(n_res, m_max, p);
    return include_zero ? cdf : std::max(0.0, cdf - p0);
}

AnalyticReport average_access_prob(const ScenarioConfig& cfg, const BeamCodebook& codebook,
                                   const ResourceAllocation& alloc) {
    AnalyticReport rep;
    rep.p_occupation = occupation_prob(cfg.lambda_per_m, cfg.l_vehicle_m);
    const double sigma = sigma_beam_db(cfg);
    double sum = 0.0;
    for (size_t i = 0; i < codebook.beams.size(); ++i) {
        const Beam& b = codebook.beams[i];
        const double mu = mean_snr_db(b.barycenter_dist_m, cfg);
        const double pvr = valid_request_prob(mu, sigma, cfg.gamma_th_db);
        const double pacc = beam_access_prob(b.capacity, alloc.per_beam[i],
                                             rep.p_occupation * pvr, cfg.empty_beam_mode);
        rep.per_beam_p_vr.push_back(pvr);
        rep.per_beam_p_acc.push_back(pacc);
        sum += pacc;
    }
    rep.avg_access = sum / double(codebook.beams.size());
    return rep;
}

std::optional<PlanResult> plan_altitude(const ScenarioConfig& cfg, double target,
                                        double h_lo_m, double h_hi_m, double step_m) {
    std::optional<PlanResult> best;
    const long n = checked_floor((h_hi_m - h_lo_m) / step_m) + 1;
    for (long i = 0; i < n; ++i) {
        ScenarioConfig c = cfg;
        c.h_uav_m = h_lo_m + double(i) * step_m;
        const BeamCodebook cb = make_codebook(c);
        const ResourceAllocation alloc = make_allocation(c, cb);
        const AnalyticReport rep = average_access_prob(c, cb, alloc);
        if (rep.avg_access >= target) {
            PlanResult r;
            r.h_best_m = c.h_uav_m;
            r.l_f_m = cb.segment_length_m;
            r.drones_per_km = 1000.0 / cb.segment_length_m;
            r.p_acc = rep.avg_access;
            best = r;
        }
    }
    return best;
}

}  // namespace uavrra
