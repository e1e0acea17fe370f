#pragma once

#include <complex>
#include <random>
#include <vector>

#include "uavrra/beamgeom.hpp"
#include "uavrra/scenario.hpp"

namespace uavrra {

using cplx = std::complex<double>;

/// Deterministic part of the air-to-ground path loss in dB; the shadowing
/// term is sampled separately.
double path_loss_db(double d_m, const ScenarioConfig& cfg);

/// Mean SNR under ideal beam alignment (unit effective channel gain):
/// p_tx + 10log10(n_uav*n_cav) - PL(d) - noise.
double mean_snr_db(double d_m, const ScenarioConfig& cfg);

/// Per-beam SNR standard deviation in dB: sqrt(sigma_s^2 + extra), where
/// extra defaults to the linear noise power in mW (negligible at -101 dBm)
/// and can be overridden via sigma_extra_db2.
double sigma_beam_db(const ScenarioConfig& cfg);

/// Zero-mean Gaussian shadowing draw in dB.
double sample_shadowing_db(std::mt19937_64& rng, const ScenarioConfig& cfg);

/// Half-wavelength ULA steering vector, unit norm:
/// element m = exp(i*pi*m*sin(angle)) / sqrt(n).
std::vector<cplx> steering_vector(double angle_rad, int n);

/// One multipath realization of the UAV-CAV channel.
struct ChannelRealization {
    std::vector<cplx> path_gains;     // beta_p
    std::vector<double> path_powers;  // sigma_p^2, sums to 1
    std::vector<double> aoa_rad;      // arrival angles at the UAV
    std::vector<double> aod_rad;      // departure angles at the CAV
    std::vector<cplx> matrix;         // n_uav x n_cav, row major
    int n_uav = 0;
    int n_cav = 0;

    cplx at(int row, int col) const { return matrix[row * n_cav + col]; }
};

/// Draws an n_paths realization: path 1 is the line-of-sight ray at
/// aoa_center (departure mirrored), later paths are perturbed uniformly
/// within one beamwidth around it with exponentially decaying power.
ChannelRealization sample_channel(std::mt19937_64& rng, double aoa_center_rad,
                                  const ScenarioConfig& cfg);

/// Effective complex beamforming gain w^H H f.
cplx effective_gain(const ChannelRealization& h, const std::vector<cplx>& w,
                    const std::vector<cplx>& f);

/// Instantaneous SNR in dB given combiner w, precoder f, distance and a
/// shadowing draw. Returns -inf when the effective gain is exactly zero.
double instantaneous_snr_db(const ChannelRealization& h, const std::vector<cplx>& w,
                            const std::vector<cplx>& f, double d_m,
                            double shadow_db, const ScenarioConfig& cfg);

/// Index (0-based, into codebook.beams) of the beam with the largest
/// effective gain magnitude; ties go to the lowest index.
int best_beam(const ChannelRealization& h, const BeamCodebook& codebook,
              const std::vector<cplx>& f);

}  // namespace uavrra
