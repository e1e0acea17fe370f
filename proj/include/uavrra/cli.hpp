#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "uavrra/scenario.hpp"

namespace uavrra {

enum class SweepVariable { AltitudeM, DensityPerKm, GammaDb };

struct SweepSpec {
    SweepVariable variable = SweepVariable::AltitudeM;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

/// Parses "altitude_m:100:500:25" style specs. Throws ConfigError.
SweepSpec parse_sweep(const std::string& text);

/// Endpoint-inclusive grid, accumulated by index to avoid drift.
std::vector<double> sweep_values(const SweepSpec& spec);

void apply_sweep_variable(ScenarioConfig& cfg, SweepVariable v, double value);

/// One output record; simulation columns stay empty for analytic-only runs.
struct ResultRow {
    double h_uav_m = 0.0;
    double density_per_km = 0.0;
    double gamma_db = 0.0;
    RraKind rra_kind = RraKind::Fair;
    FootprintMode footprint_mode = FootprintMode::PaperCos;
    EmptyBeamMode empty_beam_mode = EmptyBeamMode::IncludeZero;
    double p_acc_analytic = 0.0;
    std::optional<double> p_acc_sim;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<double> connected_mean;
    std::optional<double> served_mean;
    int n_beam = 0;
    double l_f_m = 0.0;
    std::optional<std::uint64_t> seed;
};

std::string result_csv_header();
std::string to_csv(const ResultRow& row);

/// (gamma_th_db, rra) curve combinations; one row set per combo.
using CurveCombo = std::pair<double, RraKind>;

/// Named figure presets bundling the fixed parameters of the reference
/// sweeps: fig3a (altitude, 40 cars/km), fig3b (density, 250 m),
/// fig4a (altitude, gamma 10, 40 cars/km), fig4b (same at 80 cars/km).
/// Returns false for an unknown name.
bool make_preset(const std::string& name, ScenarioConfig& cfg, SweepSpec& sweep,
                 std::vector<CurveCombo>& combos);

struct RunOptions {
    long trials = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Evaluates one config point: analytic always, simulation when trials > 0.
ResultRow eval_point(const ScenarioConfig& cfg, long trials, std::uint64_t seed,
                     int threads);

int cmd_analytic(const ScenarioConfig& base, const SweepSpec& sweep,
                 const std::vector<CurveCombo>& combos, std::ostream& out);

int cmd_simulate(const ScenarioConfig& base, const SweepSpec& sweep,
                 const std::vector<CurveCombo>& combos, const RunOptions& run,
                 std::ostream& out, std::ostream& progress);

/// ModelMatched simulation across the grid; every point must match the
/// analytic value within max(0.02, 3 * CI half-width). Returns 0 or 3.
int cmd_validate(const ScenarioConfig& base, const std::vector<double>& h_list,
                 const std::vector<double>& density_list,
                 const std::vector<double>& gamma_list, const RunOptions& run,
                 std::ostream& report);

/// Largest feasible altitude for the target access probability; returns 4
/// when no grid altitude qualifies.
int cmd_plan(const ScenarioConfig& base, double target, double h_lo, double h_hi,
             double step, std::ostream& out);

int cmd_codebook(const ScenarioConfig& cfg, std::ostream& out);
int cmd_alloc(const ScenarioConfig& cfg, std::ostream& out);

}  // namespace uavrra
