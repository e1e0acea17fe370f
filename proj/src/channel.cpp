#include "uavrra/channel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

namespace uavrra {

double path_loss_db(double d_m, const ScenarioConfig& cfg) {
    return cfg.pl_offset_db + cfg.pl_exponent * 10.0 * std::log10(d_m);
}

double mean_snr_db(double d_m, const ScenarioConfig& cfg) {
    return cfg.p_tx_dbm + 10.0 * std::log10(double(cfg.n_uav) * cfg.n_cav) -
           path_loss_db(d_m, cfg) - cfg.noise_dbm;
}

double sigma_beam_db(const ScenarioConfig& cfg) {
    const double extra = cfg.sigma_extra_db2
                             ? *cfg.sigma_extra_db2
                             : std::max(0.0, std::pow(10.0, cfg.noise_dbm / 10.0));
    return std::sqrt(cfg.sigma_s_sq_db2 + extra);
}

double sample_shadowing_db(std::mt19937_64& rng, const ScenarioConfig& cfg) {
    if (cfg.sigma_s_sq_db2 == 0.0) return 0.0;
    std::normal_distribution<double> n(0.0, std::sqrt(cfg.sigma_s_sq_db2));
    return n(rng);
}

std::vector<cplx> steering_vector(double angle_rad, int n) {
    std::vector<cplx> v(n);
    const double s = std::sin(angle_rad);
    const double scale = 1.0 / std::sqrt(double(n));
    for (int m = 0; m < n; ++m)
        v[m] = std::polar(scale, std::numbers::pi * m * s);
    return v;
}

ChannelRealization sample_channel(std::mt19937_64& rng, double aoa_center_rad,
                                  const ScenarioConfig& cfg) {
    const int np = cfg.n_paths;
    ChannelRealization h;
    h.n_uav = cfg.n_uav;
    h.n_cav = cfg.n_cav;
    h.path_gains.resize(np);
    h.path_powers.resize(np);
    h.aoa_rad.resize(np);
    h.aod_rad.resize(np);

    double total = 0.0;
    for (int p = 0; p < np; ++p) {
        h.path_powers[p] = std::pow(cfg.path_decay, p);
        total += h.path_powers[p];
    }
    for (auto& s : h.path_powers) s /= total;

    const double aod_center = -aoa_center_rad;
    const double half_pi = std::numbers::pi / 2.0;
    const double clamp = half_pi - 1e-3;
    const double bw_uav = beamwidth_rad(std::clamp(aoa_center_rad, -clamp, clamp), cfg.n_uav);
    const double bw_cav = beamwidth_rad(std::clamp(aod_center, -clamp, clamp), cfg.n_cav);

    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    h.aoa_rad[0] = aoa_center_rad;
    h.aod_rad[0] = aod_center;
    for (int p = 1; p < np; ++p) {
        h.aoa_rad[p] = std::clamp(aoa_center_rad + uni(rng) * bw_uav, -clamp, clamp);
        h.aod_rad[p] = std::clamp(aod_center + uni(rng) * bw_cav, -clamp, clamp);
    }
    for (int p = 0; p < np; ++p) {
        const double s = std::sqrt(h.path_powers[p] / 2.0);
        h.path_gains[p] = cplx(s * gauss(rng), s * gauss(rng));
    }

    h.matrix.assign(size_t(cfg.n_uav) * cfg.n_cav, cplx(0.0, 0.0));
    for (int p = 0; p < np; ++p) {
        const auto au = steering_vector(h.aoa_rad[p], cfg.n_uav);
        const auto ac = steering_vector(h.aod_rad[p], cfg.n_cav);
        for (int r = 0; r < cfg.n_uav; ++r)
            for (int c = 0; c < cfg.n_cav; ++c)
                h.matrix[size_t(r) * cfg.n_cav + c] +=
                    h.path_gains[p] * au[r] * std::conj(ac[c]);
    }
    return h;
}

cplx effective_gain(const ChannelRealization& h, const std::vector<cplx>& w,
                    const std::vector<cplx>& f) {
    assert(int(w.size()) == h.n_uav && int(f.size()) == h.n_cav);
    cplx g(0.0, 0.0);
    for (int r = 0; r < h.n_uav; ++r) {
        cplx row(0.0, 0.0);
        for (int c = 0; c < h.n_cav; ++c) row += h.at(r, c) * f[c];
        g += std::conj(w[r]) * row;
    }
    return g;
}

double instantaneous_snr_db(const ChannelRealization& h, const std::vector<cplx>& w,
                            const std::vector<cplx>& f, double d_m,
                            double shadow_db, const ScenarioConfig& cfg) {
    const double g = std::abs(effective_gain(h, w, f));
    if (g == 0.0) return -std::numeric_limits<double>::infinity();
    return mean_snr_db(d_m, cfg) - shadow_db + 20.0 * std::log10(g);
}

int best_beam(const ChannelRealization& h, const BeamCodebook& codebook,
              const std::vector<cplx>& f) {
    int best = 0;
    double best_gain = -1.0;
    for (size_t i = 0; i < codebook.beams.size(); ++i) {
        const auto w = steering_vector(codebook.beams[i].pointing_rad, h.n_uav);
        const double g = std::abs(effective_gain(h, w, f));
        if (g > best_gain) {
            best_gain = g;
            best = static_cast<int>(i);
        }
    }
    assert(best_gain >= 0.0);
    return best;
}

}  // namespace uavrra
