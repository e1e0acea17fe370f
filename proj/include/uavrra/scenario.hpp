#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavrra {

enum class RraKind { Fair, BeamBased };
enum class FootprintMode { PaperCos, GeometricTan };
enum class EmptyBeamMode { PaperExact, IncludeZero };
enum class SimFidelity { ModelMatched, FullChannel };

const char* to_string(RraKind k);
const char* to_string(FootprintMode m);
const char* to_string(EmptyBeamMode m);
const char* to_string(SimFidelity f);

/// All physical and system parameters. Defaults reproduce the reference
/// highway scenario (250 m hover, 120 deg field of view, 5-lane road,
/// 40 cars/km, 28 GHz air-to-ground link).
struct ScenarioConfig {
    double h_uav_m = 250.0;         // UAV altitude
    double psi_fov_deg = 120.0;     // UAV field of view
    int n_uav = 8;                  // UAV antenna elements
    int n_cav = 4;                  // CAV antenna elements
    int n_rf = 4;                   // UAV RF chains
    double p_tx_dbm = 23.0;         // CAV transmit power
    double noise_dbm = -101.0;      // noise power
    double pl_offset_db = 84.64;    // excess path loss offset
    double pl_exponent = 1.55;      // path loss exponent
    double sigma_s_sq_db2 = 4.0;    // log-normal shadowing variance
    int lanes = 5;                  // highway lanes
    double l_vehicle_m = 5.0;       // spatial slot length (vehicle + gap)
    double lambda_per_m = 0.04;     // vehicle density, vehicles per meter
    double gamma_th_db = 10.0;      // SNR threshold
    double carrier_hz = 28e9;       // carrier frequency (informational)
    int n_ch = 2;                   // frequency subchannels
    double t_slot_s = 125e-6;       // slot duration
    double tau_e2e_s = 10e-3;       // end-to-end latency budget
    RraKind rra_kind = RraKind::Fair;
    FootprintMode footprint_mode = FootprintMode::PaperCos;
    EmptyBeamMode empty_beam_mode = EmptyBeamMode::IncludeZero;
    int n_paths = 3;                // multipath components
    double path_decay = 0.1;        // exponential power decay per path
    SimFidelity sim_fidelity = SimFidelity::ModelMatched;

    // Extra dB^2 variance added to the per-beam SNR spread. When unset the
    // linear noise power (mW) is used, which is negligible at -101 dBm.
    std::optional<double> sigma_extra_db2;
    bool redistribute_remainder = false;  // hand floor leftovers to largest fractions
    bool wilson_ci = false;               // Wilson interval instead of normal CI
};

struct ValidationError {
    std::string field;
    std::string reason;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Returns the first violated invariant, or nullopt if the config is valid.
std::optional<ValidationError> validate(const ScenarioConfig& cfg);

/// Returns the config unchanged if valid, otherwise throws ConfigError.
ScenarioConfig validated(const ScenarioConfig& cfg);

/// Non-fatal advisories (e.g. occupancy model past its peak).
std::vector<std::string> config_warnings(const ScenarioConfig& cfg);

struct ResourceBudget {
    long n_slot = 0;  // temporal slots usable for the uplink phase
    long total = 0;   // n_slot * n_ch * n_rf
};

/// Time-frequency grid size from the latency budget. Half the slots are
/// reserved for forwarding, hence the 0.5 factor.
ResourceBudget resource_budget(const ScenarioConfig& cfg);

/// Parse a JSON config. Missing keys keep defaults; unknown keys are an error.
ScenarioConfig parse_config_json(const std::string& text);

/// Load a JSON config file. Throws ConfigError (bad content) or
/// std::ios_base::failure (unreadable file).
ScenarioConfig load_config(const std::string& path);

/// floor() with a small forward nudge so values that are integers up to
/// float rounding (e.g. 5*64/5) do not land one below.
long checked_floor(double x);

}  // namespace uavrra
