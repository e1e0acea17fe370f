#include "uavrra/mcsim.hpp"

#include <cmath>
#include <thread>

#include "uavrra/analytic.hpp"
#include "uavrra/channel.hpp"
#include "uavrra/rng.hpp"

namespace uavrra {

std::vector<OccupiedSlot> drop_vehicles(std::mt19937_64& rng, const BeamCodebook& codebook,
                                        const ScenarioConfig& cfg) {
    const double po = occupation_prob(cfg.lambda_per_m, cfg.l_vehicle_m);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<OccupiedSlot> out;
    for (size_t bi = 0; bi < codebook.beams.size(); ++bi) {
        const Beam& b = codebook.beams[bi];
        for (long s = 0; s < b.capacity; ++s) {
            if (uni(rng) >= po) continue;
            OccupiedSlot v;
            v.lane = int(s % cfg.lanes);
            v.slot = s / cfg.lanes;
            v.x_m = b.x_left_m + (double(v.slot) + 0.5) * cfg.l_vehicle_m;
            v.beam = int(bi);
            out.push_back(v);
        }
    }
    return out;
}

TrialOutcome run_trial(std::mt19937_64& rng, const BeamCodebook& codebook,
                       const ResourceAllocation& alloc, const ScenarioConfig& cfg) {
    const size_t nb = codebook.beams.size();
    TrialOutcome t;
    t.occupied_slots = drop_vehicles(rng, codebook, cfg);
    t.per_beam_valid.assign(nb, 0);

    if (cfg.sim_fidelity == SimFidelity::ModelMatched) {
        const double sigma = sigma_beam_db(cfg);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (auto& v : t.occupied_slots) {
            const double mu = mean_snr_db(codebook.beams[v.beam].barycenter_dist_m, cfg);
            const double snr = mu + sigma * gauss(rng);
            t.per_vehicle_snr_db.push_back(snr);
            if (snr >= cfg.gamma_th_db) t.per_beam_valid[v.beam] += 1;
        }
    } else {
        for (auto& v : t.occupied_slots) {
            const double d = std::hypot(cfg.h_uav_m, v.x_m);
            const double aoa = std::atan2(v.x_m, cfg.h_uav_m);
            const double shadow = sample_shadowing_db(rng, cfg);
            const ChannelRealization h = sample_channel(rng, aoa, cfg);
            const auto f = steering_vector(h.aod_rad[0], cfg.n_cav);
            const int bi = best_beam(h, codebook, f);
            const auto w = steering_vector(codebook.beams[bi].pointing_rad, cfg.n_uav);
            const double snr = instantaneous_snr_db(h, w, f, d, shadow, cfg);
            v.beam = bi;
            t.per_vehicle_snr_db.push_back(snr);
            if (snr >= cfg.gamma_th_db) t.per_beam_valid[bi] += 1;
        }
    }

    for (size_t i = 0; i < nb; ++i) {
        t.connected += t.per_beam_valid[i];
        t.per_beam_served.push_back(std::min(t.per_beam_valid[i], alloc.per_beam[i]));
        t.per_beam_access.push_back(t.per_beam_valid[i] <= alloc.per_beam[i]);
    }
    return t;
}

namespace {

struct Accum {
    std::vector<long> beam_access;  // per-beam access-indicator sums
    long sum_k = 0;                 // sum over trials of #accessed beams
    long sum_k2 = 0;
    long sum_conn = 0, sum_conn2 = 0;
    long sum_serv = 0, sum_serv2 = 0;

    explicit Accum(size_t nb) : beam_access(nb, 0) {}

    void add(const TrialOutcome& t) {
        long k = 0;
        for (size_t i = 0; i < beam_access.size(); ++i) {
            if (t.per_beam_access[i]) {
                beam_access[i] += 1;
                ++k;
            }
        }
        sum_k += k;
        sum_k2 += k * k;
        long served = 0;
        for (long s : t.per_beam_served) served += s;
        sum_conn += t.connected;
        sum_conn2 += t.connected * t.connected;
        sum_serv += served;
        sum_serv2 += served * served;
    }

    void merge(const Accum& o) {
        for (size_t i = 0; i < beam_access.size(); ++i) beam_access[i] += o.beam_access[i];
        sum_k += o.sum_k;
        sum_k2 += o.sum_k2;
        sum_conn += o.sum_conn;
        sum_conn2 += o.sum_conn2;
        sum_serv += o.sum_serv;
        sum_serv2 += o.sum_serv2;
    }
};

double mean_ci_half(double sum, double sum_sq, long n) {
    if (n < 2) return 0.0;
    const double mean = sum / double(n);
    const double var = std::max(0.0, (sum_sq - double(n) * mean * mean) / double(n - 1));
    return 1.96 * std::sqrt(var / double(n));
}

double wilson_half(long hits, long n) {
    const double z = 1.96;
    const double phat = double(hits) / double(n);
    const double denom = 1.0 + z * z / double(n);
    return z * std::sqrt(phat * (1.0 - phat) / double(n) + z * z / (4.0 * double(n) * double(n))) /
           denom;
}

}  // namespace

AccessReport run_experiment(std::uint64_t seed, long trials, const BeamCodebook& codebook,
                            const ResourceAllocation& alloc, const ScenarioConfig& cfg,
                            int n_threads) {
    const size_t nb = codebook.beams.size();
    n_threads = std::max(1, n_threads);
    std::vector<Accum> parts;
    parts.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) parts.emplace_back(nb);

    auto worker = [&](int wi) {
        for (long t = wi; t < trials; t += n_threads) {
            std::mt19937_64 rng = trial_rng(seed, std::uint64_t(t));
            parts[wi].add(run_trial(rng, codebook, alloc, cfg));
        }
    };
    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }
    Accum total(nb);
    for (const auto& p : parts) total.merge(p);

    AccessReport rep;
    rep.trials = trials;
    rep.seed = seed;
    for (size_t i = 0; i < nb; ++i)
        rep.per_beam_access_hat.push_back(double(total.beam_access[i]) / double(trials));
    rep.avg_access_hat = double(total.sum_k) / (double(trials) * double(nb));
    // per-trial average access is k/nb; integer sums keep the reduction
    // independent of thread count
    const double sum = double(total.sum_k) / double(nb);
    const double sum_sq = double(total.sum_k2) / (double(nb) * double(nb));
    rep.ci_half_width = mean_ci_half(sum, sum_sq, trials);
    if (cfg.wilson_ci || rep.ci_half_width == 0.0)
        rep.ci_half_width = wilson_half(total.sum_k, trials * long(nb));
    rep.connected_mean = double(total.sum_conn) / double(trials);
    rep.connected_ci_half = mean_ci_half(double(total.sum_conn), double(total.sum_conn2), trials);
    rep.served_mean = double(total.sum_serv) / double(trials);
    rep.served_ci_half = mean_ci_half(double(total.sum_serv), double(total.sum_serv2), trials);
    return rep;
}

}  // namespace uavrra
