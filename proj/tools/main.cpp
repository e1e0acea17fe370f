#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavrra/cli.hpp"
#include "uavrra/scenario.hpp"

using namespace uavrra;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    long trials = 10000;
    int threads = 1;
    std::string sweep_text;
    std::string preset;
    std::string rra, footprint, empty_beam, fidelity;
    std::optional<double> h_uav, density, gamma;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--config", a.config_path, "JSON config file (UAV_RRA_CONFIG as fallback)");
    sub->add_option("--out", a.out_path, "output CSV path (default stdout)");
    sub->add_option("--seed", a.seed, "base RNG seed");
    sub->add_option("--trials", a.trials, "Monte Carlo trials per point")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--sweep", a.sweep_text, "var:start:stop:step "
                    "(var: altitude_m|density_per_km|gamma_db)");
    sub->add_option("--preset", a.preset, "fig3a|fig3b|fig4a|fig4b");
    sub->add_option("--rra", a.rra, "fair|bb")->check(CLI::IsMember({"fair", "bb"}));
    sub->add_option("--footprint-mode", a.footprint, "paper|geometric")
        ->check(CLI::IsMember({"paper", "geometric"}));
    sub->add_option("--empty-beam", a.empty_beam, "paper|include-zero")
        ->check(CLI::IsMember({"paper", "include-zero"}));
    sub->add_option("--fidelity", a.fidelity, "model|full")
        ->check(CLI::IsMember({"model", "full"}));
    sub->add_option("--h-uav", a.h_uav, "override altitude [m]");
    sub->add_option("--density", a.density, "override vehicle density [cars/km]");
    sub->add_option("--gamma", a.gamma, "override SNR threshold [dB]");
}

ScenarioConfig build_config(const CommonArgs& a) {
    ScenarioConfig cfg;
    std::string path = a.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("UAV_RRA_CONFIG")) path = env;
    }
    if (!path.empty()) cfg = load_config(path);
    if (a.h_uav) cfg.h_uav_m = *a.h_uav;
    if (a.density) cfg.lambda_per_m = *a.density / 1000.0;
    if (a.gamma) cfg.gamma_th_db = *a.gamma;
    if (a.rra == "fair") cfg.rra_kind = RraKind::Fair;
    else if (a.rra == "bb") cfg.rra_kind = RraKind::BeamBased;
    if (a.footprint == "paper") cfg.footprint_mode = FootprintMode::PaperCos;
    else if (a.footprint == "geometric") cfg.footprint_mode = FootprintMode::GeometricTan;
    if (a.empty_beam == "paper") cfg.empty_beam_mode = EmptyBeamMode::PaperExact;
    else if (a.empty_beam == "include-zero") cfg.empty_beam_mode = EmptyBeamMode::IncludeZero;
    if (a.fidelity == "model") cfg.sim_fidelity = SimFidelity::ModelMatched;
    else if (a.fidelity == "full") cfg.sim_fidelity = SimFidelity::FullChannel;
    cfg = validated(cfg);
    for (const auto& w : config_warnings(cfg)) std::cerr << "warning: " << w << "\n";
    return cfg;
}

/// Sweep from --preset / --sweep / a single point at the config values.
SweepSpec build_sweep(const CommonArgs& a, ScenarioConfig& cfg,
                      std::vector<CurveCombo>& combos) {
    SweepSpec sweep;
    combos.clear();
    if (!a.preset.empty()) {
        if (!make_preset(a.preset, cfg, sweep, combos))
            throw ConfigError("unknown preset: " + a.preset);
        if (!a.sweep_text.empty()) sweep = parse_sweep(a.sweep_text);
        return sweep;
    }
    if (!a.sweep_text.empty()) {
        sweep = parse_sweep(a.sweep_text);
        const bool clash =
            (sweep.variable == SweepVariable::AltitudeM && a.h_uav) ||
            (sweep.variable == SweepVariable::DensityPerKm && a.density) ||
            (sweep.variable == SweepVariable::GammaDb && a.gamma);
        if (clash) throw ConfigError("sweep variable also given as a fixed override");
        return sweep;
    }
    // degenerate one-point sweep at the configured altitude
    sweep = {SweepVariable::AltitudeM, cfg.h_uav_m, cfg.h_uav_m, 1.0};
    return sweep;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 2;
    }
    const int rc = fn(f);
    f.flush();
    if (!f.good()) {
        std::cerr << "error: write failed: " << path << "\n";
        return 2;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV relay resource assignment: analytic model, RRA strategies and "
                 "Monte Carlo simulator for vehicular sidelink access probability"};
    app.require_subcommand(1);

    CommonArgs a;
    auto* analytic = app.add_subcommand("analytic", "closed-form access probability sweep");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo sweep with analytic columns");
    auto* validate_cmd = app.add_subcommand("validate", "check simulation against the model");
    auto* plan = app.add_subcommand("plan", "largest altitude meeting a target access probability");
    auto* codebook = app.add_subcommand("codebook", "dump the beam codebook as CSV");
    auto* alloc = app.add_subcommand("alloc", "dump per-beam resource budgets as CSV");
    for (auto* sub : {analytic, simulate, validate_cmd, plan, codebook, alloc})
        add_common(sub, a);

    std::string h_list = "150,250,350", density_list = "40,80", gamma_list = "5,10";
    validate_cmd->add_option("--h-list", h_list, "altitudes [m], comma separated");
    validate_cmd->add_option("--density-list", density_list, "densities [cars/km]");
    validate_cmd->add_option("--gamma-list", gamma_list, "SNR thresholds [dB]");

    double target = 0.99, h_lo = 50.0, h_hi = 500.0, step = 10.0;
    plan->add_option("--target", target, "access probability target in (0,1)");
    plan->add_option("--h-min", h_lo, "altitude grid start [m]");
    plan->add_option("--h-max", h_hi, "altitude grid end [m]");
    plan->add_option("--step", step, "altitude grid step [m]");

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = build_config(a);
        RunOptions run{a.trials, a.seed, a.threads};

        if (analytic->parsed()) {
            std::vector<CurveCombo> combos;
            const SweepSpec sweep = build_sweep(a, cfg, combos);
            return with_output(a.out_path,
                               [&](std::ostream& o) { return cmd_analytic(cfg, sweep, combos, o); });
        }
        if (simulate->parsed()) {
            std::vector<CurveCombo> combos;
            const SweepSpec sweep = build_sweep(a, cfg, combos);
            return with_output(a.out_path, [&](std::ostream& o) {
                return cmd_simulate(cfg, sweep, combos, run, o, std::cerr);
            });
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(cfg, parse_list(h_list), parse_list(density_list),
                                parse_list(gamma_list), run, std::cout);
        }
        if (plan->parsed()) {
            return with_output(a.out_path, [&](std::ostream& o) {
                return cmd_plan(cfg, target, h_lo, h_hi, step, o);
            });
        }
        if (codebook->parsed()) {
            return with_output(a.out_path, [&](std::ostream& o) { return cmd_codebook(cfg, o); });
        }
        if (alloc->parsed()) {
            return with_output(a.out_path, [&](std::ostream& o) { return cmd_alloc(cfg, o); });
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
