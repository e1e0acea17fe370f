#include "uavrra/cli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "uavrra/analytic.hpp"
#include "uavrra/beamgeom.hpp"
#include "uavrra/mcsim.hpp"
#include "uavrra/rng.hpp"

namespace uavrra {

namespace {

const char* variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::AltitudeM: return "altitude_m";
        case SweepVariable::DensityPerKm: return "density_per_km";
        case SweepVariable::GammaDb: return "gamma_db";
    }
    return "?";
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

std::uint64_t row_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base;
    splitmix64(s);
    s ^= index;
    return splitmix64(s);
}

void check_sweep(const SweepSpec& s) {
    if (!(s.start <= s.stop)) throw ConfigError("sweep: start must be <= stop");
    if (!(s.step > 0)) throw ConfigError("sweep: step must be > 0");
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
    std::istringstream ss(text);
    std::string var, a, b, c;
    if (!std::getline(ss, var, ':') || !std::getline(ss, a, ':') ||
        !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw ConfigError("sweep: expected var:start:stop:step, got \"" + text + "\"");
    SweepSpec s;
    if (var == "altitude_m") s.variable = SweepVariable::AltitudeM;
    else if (var == "density_per_km") s.variable = SweepVariable::DensityPerKm;
    else if (var == "gamma_db") s.variable = SweepVariable::GammaDb;
    else throw ConfigError("sweep: unknown variable \"" + var + "\"");
    try {
        s.start = std::stod(a);
        s.stop = std::stod(b);
        s.step = std::stod(c);
    } catch (const std::exception&) {
        throw ConfigError("sweep: non-numeric bound in \"" + text + "\"");
    }
    check_sweep(s);
    return s;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    check_sweep(spec);
    const long n = checked_floor((spec.stop - spec.start) / spec.step) + 1;
    std::vector<double> v;
    v.reserve(n);
    for (long i = 0; i < n; ++i) v.push_back(spec.start + double(i) * spec.step);
    return v;
}

void apply_sweep_variable(ScenarioConfig& cfg, SweepVariable v, double value) {
    switch (v) {
        case SweepVariable::AltitudeM: cfg.h_uav_m = value; break;
        case SweepVariable::DensityPerKm: cfg.lambda_per_m = value / 1000.0; break;
        case SweepVariable::GammaDb: cfg.gamma_th_db = value; break;
    }
}

std::string result_csv_header() {
    return "h_uav_m,density_per_km,gamma_db,rra_kind,footprint_mode,empty_beam_mode,"
           "p_acc_analytic,p_acc_sim,ci_low,ci_high,connected_mean,served_mean,"
           "n_beam,l_f_m,seed\n";
}

std::string to_csv(const ResultRow& r) {
    std::string out;
    out += fmt(r.h_uav_m) + ',' + fmt(r.density_per_km) + ',' + fmt(r.gamma_db) + ',';
    out += std::string(to_string(r.rra_kind)) + ',' + to_string(r.footprint_mode) + ',' +
           to_string(r.empty_beam_mode) + ',';
    out += fmt(r.p_acc_analytic) + ',' + fmt_opt(r.p_acc_sim) + ',' + fmt_opt(r.ci_low) +
           ',' + fmt_opt(r.ci_high) + ',' + fmt_opt(r.connected_mean) + ',' +
           fmt_opt(r.served_mean) + ',';
    out += std::to_string(r.n_beam) + ',' + fmt(r.l_f_m) + ',';
    if (r.seed) out += std::to_string(*r.seed);
    out += '\n';
    return out;
}

bool make_preset(const std::string& name, ScenarioConfig& cfg, SweepSpec& sweep,
                 std::vector<CurveCombo>& combos) {
    combos.clear();
    if (name == "fig3a") {
        sweep = {SweepVariable::AltitudeM, 100.0, 500.0, 25.0};
        cfg.lambda_per_m = 40.0 / 1000.0;
        combos = {{5.0, RraKind::Fair}, {5.0, RraKind::BeamBased},
                  {10.0, RraKind::Fair}, {10.0, RraKind::BeamBased}};
        return true;
    }
    if (name == "fig3b") {
        sweep = {SweepVariable::DensityPerKm, 40.0, 100.0, 5.0};
        cfg.h_uav_m = 250.0;
        combos = {{5.0, RraKind::Fair}, {5.0, RraKind::BeamBased},
                  {10.0, RraKind::Fair}, {10.0, RraKind::BeamBased}};
        return true;
    }
    if (name == "fig4a" || name == "fig4b") {
        sweep = {SweepVariable::AltitudeM, 100.0, 500.0, 25.0};
        cfg.gamma_th_db = 10.0;
        cfg.lambda_per_m = (name == "fig4a" ? 40.0 : 80.0) / 1000.0;
        combos = {{10.0, RraKind::Fair}, {10.0, RraKind::BeamBased}};
        return true;
    }
    return false;
}

ResultRow eval_point(const ScenarioConfig& cfg, long trials, std::uint64_t seed,
                     int threads) {
    const BeamCodebook cb = make_codebook(cfg);
    const ResourceAllocation alloc = make_allocation(cfg, cb);
    const AnalyticReport rep = average_access_prob(cfg, cb, alloc);

    ResultRow row;
    row.h_uav_m = cfg.h_uav_m;
    row.density_per_km = cfg.lambda_per_m * 1000.0;
    row.gamma_db = cfg.gamma_th_db;
    row.rra_kind = cfg.rra_kind;
    row.footprint_mode = cfg.footprint_mode;
    row.empty_beam_mode = cfg.empty_beam_mode;
    row.p_acc_analytic = rep.avg_access;
    row.n_beam = int(cb.beams.size());
    row.l_f_m = cb.segment_length_m;
    if (trials > 0) {
        const AccessReport mc = run_experiment(seed, trials, cb, alloc, cfg, threads);
        row.p_acc_sim = mc.avg_access_hat;
        row.ci_low = std::max(0.0, mc.avg_access_hat - mc.ci_half_width);
        row.ci_high = std::min(1.0, mc.avg_access_hat + mc.ci_half_width);
        row.connected_mean = mc.connected_mean;
        row.served_mean = mc.served_mean;
        row.seed = seed;
    }
    return row;
}

namespace {

int run_sweep(const ScenarioConfig& base, const SweepSpec& sweep,
              const std::vector<CurveCombo>& combos, long trials, const RunOptions& run,
              std::ostream& out, std::ostream* progress) {
    const auto values = sweep_values(sweep);
    std::vector<CurveCombo> cs = combos;
    if (cs.empty()) cs.push_back({base.gamma_th_db, base.rra_kind});
    out << result_csv_header();
    const size_t total = cs.size() * values.size();
    size_t done = 0;
    for (const auto& [gamma, rra] : cs) {
        for (double v : values) {
            ScenarioConfig cfg = base;
            cfg.gamma_th_db = gamma;
            cfg.rra_kind = rra;
            apply_sweep_variable(cfg, sweep.variable, v);
            cfg = validated(cfg);
            const ResultRow row =
                eval_point(cfg, trials, row_seed(run.seed, done), run.threads);
            out << to_csv(row);
            ++done;
            if (progress)
                *progress << "point " << done << "/" << total << " "
                          << variable_name(sweep.variable) << "=" << v << " gamma=" << gamma
                          << " rra=" << to_string(rra) << "\n";
        }
    }
    out.flush();
    return out.good() ? 0 : 2;
}

}  // namespace

int cmd_analytic(const ScenarioConfig& base, const SweepSpec& sweep,
                 const std::vector<CurveCombo>& combos, std::ostream& out) {
    RunOptions run;
    return run_sweep(base, sweep, combos, 0, run, out, nullptr);
}

int cmd_simulate(const ScenarioConfig& base, const SweepSpec& sweep,
                 const std::vector<CurveCombo>& combos, const RunOptions& run,
                 std::ostream& out, std::ostream& progress) {
    return run_sweep(base, sweep, combos, run.trials, run, out, &progress);
}

int cmd_validate(const ScenarioConfig& base, const std::vector<double>& h_list,
                 const std::vector<double>& density_list,
                 const std::vector<double>& gamma_list, const RunOptions& run,
                 std::ostream& report) {
    int failures = 0;
    size_t idx = 0;
    for (double h : h_list) {
        for (double dens : density_list) {
            for (double gamma : gamma_list) {
                for (RraKind rra : {RraKind::Fair, RraKind::BeamBased}) {
                    ScenarioConfig cfg = base;
                    cfg.h_uav_m = h;
                    cfg.lambda_per_m = dens / 1000.0;
                    cfg.gamma_th_db = gamma;
                    cfg.rra_kind = rra;
                    cfg.sim_fidelity = SimFidelity::ModelMatched;
                    cfg = validated(cfg);
                    const BeamCodebook cb = make_codebook(cfg);
                    const ResourceAllocation alloc = make_allocation(cfg, cb);
                    const double analytic = average_access_prob(cfg, cb, alloc).avg_access;
                    const AccessReport mc = run_experiment(row_seed(run.seed, idx++),
                                                           run.trials, cb, alloc, cfg,
                                                           run.threads);
                    const double tol = std::max(0.02, 3.0 * mc.ci_half_width);
                    const double diff = std::abs(mc.avg_access_hat - analytic);
                    const bool ok = diff <= tol;
                    if (!ok) ++failures;
                    char line[192];
                    std::snprintf(line, sizeof line,
                                  "%s h=%g density=%g gamma=%g rra=%s sim=%.5f "
                                  "analytic=%.5f |diff|=%.5f tol=%.5f\n",
                                  ok ? "ok  " : "FAIL", h, dens, gamma, to_string(rra),
                                  mc.avg_access_hat, analytic, diff, tol);
                    report << line;
                }
            }
        }
    }
    report.flush();
    return failures == 0 ? 0 : 3;
}

int cmd_plan(const ScenarioConfig& base, double target, double h_lo, double h_hi,
             double step, std::ostream& out) {
    if (!(target > 0.0 && target < 1.0)) throw ConfigError("plan: target must be in (0,1)");
    if (!(h_lo > 0 && h_hi >= h_lo && step > 0))
        throw ConfigError("plan: invalid altitude range");
    const auto result = plan_altitude(base, target, h_lo, h_hi, step);
    out << "h_best_m,l_f_m,drones_per_km,p_acc\n";
    if (!result) {
        out.flush();
        return 4;
    }
    out << fmt(result->h_best_m) << ',' << fmt(result->l_f_m) << ','
        << fmt(result->drones_per_km) << ',' << fmt(result->p_acc) << '\n';
    out.flush();
    return out.good() ? 0 : 2;
}

int cmd_codebook(const ScenarioConfig& cfg, std::ostream& out) {
    out << codebook_csv(make_codebook(cfg));
    out.flush();
    return out.good() ? 0 : 2;
}

int cmd_alloc(const ScenarioConfig& cfg, std::ostream& out) {
    const BeamCodebook cb = make_codebook(cfg);
    out << allocation_csv(make_allocation(cfg, cb));
    out.flush();
    return out.good() ? 0 : 2;
}

}  // namespace uavrra
