#pragma once

#include <string>
#include <vector>

#include "uavrra/scenario.hpp"

namespace uavrra {

/// One codebook beam and its ground footprint on the road axis.
struct Beam {
    int index = 0;               // 1-based position in the codebook
    double pointing_rad = 0.0;   // DFT grid pointing direction
    double beamwidth_rad = 0.0;
    double theta_left_rad = 0.0;   // pointing - beamwidth/2
    double theta_right_rad = 0.0;  // pointing + beamwidth/2
    double x_left_m = 0.0;         // footprint interval after snapping
    double x_right_m = 0.0;
    double length_m = 0.0;
    long capacity = 0;             // floor(lanes * length / l_vehicle)
    double barycenter_dist_m = 0.0;  // UAV distance to the footprint midpoint
};

struct BeamCodebook {
    std::vector<Beam> beams;       // ordered by pointing angle
    double segment_length_m = 0.0;
    long segment_capacity = 0;
};

/// Road segment covered by the field of view. PaperCos keeps the printed
/// 2*h*cos(psi/2) form; GeometricTan is the plane-geometry 2*h*tan(psi/2).
double segment_length(double h_uav_m, double psi_fov_deg, FootprintMode mode);

/// Half-power beamwidth of an n-element ULA beam steered to pointing_rad.
/// Throws std::invalid_argument at the endfire singularity.
double beamwidth_rad(double pointing_rad, int n_uav);

/// Builds the DFT codebook restricted to the covered segment. Candidate
/// pointing angles are asin(-1 + (2k-1)/N); beams whose raw tan-projected
/// footprint misses the segment are dropped; the remaining raw intervals are
/// snapped to an exact partition of [-L_f/2, +L_f/2] (interior boundaries at
/// the midpoint of facing edges, outer boundaries at the segment edges).
BeamCodebook make_codebook(const ScenarioConfig& cfg);

/// CSV dump: beam_index,pointing_deg,beamwidth_deg,x_left_m,x_right_m,
/// length_m,capacity,barycenter_dist_m
std::string codebook_csv(const BeamCodebook& cb);

}  // namespace uavrra
