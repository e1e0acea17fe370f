#include "uavrra/beamgeom.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace uavrra {

double segment_length(double h_uav_m, double psi_fov_deg, FootprintMode mode) {
    const double half = psi_fov_deg * std::numbers::pi / 180.0 / 2.0;
    if (mode == FootprintMode::PaperCos) return 2.0 * h_uav_m * std::cos(half);
    return 2.0 * h_uav_m * std::tan(half);
}

double beamwidth_rad(double pointing_rad, int n_uav) {
    const double c = std::cos(pointing_rad);
    if (c <= 1e-12)
        throw std::invalid_argument("beamwidth_rad: pointing too close to endfire");
    return 2.0 / (n_uav * c);
}

BeamCodebook make_codebook(const ScenarioConfig& cfg) {
    const double h = cfg.h_uav_m;
    const double lf = segment_length(h, cfg.psi_fov_deg, cfg.footprint_mode);
    const double edge = lf / 2.0;

    struct RawBeam {
        double pointing, width, tl, tr, xl, xr;
    };
    std::vector<RawBeam> raw;
    for (int k = 1; k <= cfg.n_uav; ++k) {
        const double s = -1.0 + (2.0 * k - 1.0) / cfg.n_uav;
        const double phi = std::asin(s);
        const double w = beamwidth_rad(phi, cfg.n_uav);
        RawBeam b;
        b.pointing = phi;
        b.width = w;
        b.tl = phi - w / 2.0;
        b.tr = phi + w / 2.0;
        // edge angles can spill past +-pi/2 for very small arrays; the
        // footprint is unbounded there and certainly reaches the segment
        const double half_pi = std::numbers::pi / 2.0;
        b.xl = b.tl <= -half_pi ? -INFINITY : h * std::tan(b.tl);
        b.xr = b.tr >= half_pi ? INFINITY : h * std::tan(b.tr);
        raw.push_back(b);
    }

    std::vector<RawBeam> kept;
    for (const auto& b : raw)
        if (b.xl < edge && b.xr > -edge) kept.push_back(b);
    if (kept.empty())
        throw std::logic_error("make_codebook: no beam footprint intersects the segment");
    std::sort(kept.begin(), kept.end(),
              [](const RawBeam& a, const RawBeam& b) { return a.pointing < b.pointing; });

    // Snap to a partition. A beam whose raw interval barely clips the segment
    // can be swallowed by a neighbor that covers the same road span; such
    // beams collapse to zero length after clamping and are dropped.
    std::vector<double> bounds;
    const double tiny = 1e-12 * std::max(1.0, edge);
    for (;;) {
        const size_t n = kept.size();
        bounds.assign(n + 1, 0.0);
        bounds.front() = -edge;
        bounds.back() = edge;
        for (size_t i = 0; i + 1 < n; ++i)
            bounds[i + 1] = std::clamp(0.5 * (kept[i].xr + kept[i + 1].xl), -edge, edge);
        size_t degenerate = n;
        for (size_t i = 0; i < n; ++i) {
            if (bounds[i + 1] - bounds[i] <= tiny) {
                degenerate = i;
                break;
            }
        }
        if (degenerate == n) break;
        kept.erase(kept.begin() + degenerate);
        if (kept.empty())
            throw std::logic_error("make_codebook: snapping left no usable beam");
    }
    const size_t n = kept.size();

    BeamCodebook cb;
    cb.segment_length_m = lf;
    cb.segment_capacity = checked_floor(cfg.lanes * lf / cfg.l_vehicle_m);
    for (size_t i = 0; i < n; ++i) {
        Beam bm;
        bm.index = static_cast<int>(i) + 1;
        bm.pointing_rad = kept[i].pointing;
        bm.beamwidth_rad = kept[i].width;
        bm.theta_left_rad = kept[i].tl;
        bm.theta_right_rad = kept[i].tr;
        bm.x_left_m = bounds[i];
        bm.x_right_m = bounds[i + 1];
        bm.length_m = bm.x_right_m - bm.x_left_m;
        if (!(bm.length_m > 0))
            throw std::logic_error("make_codebook: snapped footprint degenerated");
        bm.capacity = checked_floor(cfg.lanes * bm.length_m / cfg.l_vehicle_m);
        const double mid = 0.5 * (bm.x_left_m + bm.x_right_m);
        bm.barycenter_dist_m = std::hypot(h, mid);
        cb.beams.push_back(bm);
    }
    return cb;
}

std::string codebook_csv(const BeamCodebook& cb) {
    std::string out =
        "beam_index,pointing_deg,beamwidth_deg,x_left_m,x_right_m,length_m,"
        "capacity,barycenter_dist_m\n";
    const double rad2deg = 180.0 / std::numbers::pi;
    char line[256];
    for (const auto& b : cb.beams) {
        std::snprintf(line, sizeof line, "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%ld,%.9g\n",
                      b.index, b.pointing_rad * rad2deg, b.beamwidth_rad * rad2deg,
                      b.x_left_m, b.x_right_m, b.length_m, b.capacity,
                      b.barycenter_dist_m);
        out += line;
    }
    return out;
}

}  // namespace uavrra
