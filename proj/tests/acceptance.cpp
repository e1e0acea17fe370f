#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Acceptance suite. Each criterion prints one PASS/FAIL line with the
// measured values and then asserts. Criteria that pin a mode combination
// keep it even when the measured behavior cannot reach the target window;
// the README explains the expected C3/C4/C6 failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "uavrra/analytic.hpp"
#include "uavrra/channel.hpp"
#include "uavrra/cli.hpp"
#include "uavrra/mcsim.hpp"
#include "uavrra/rng.hpp"

using namespace uavrra;

namespace {

int hw_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

void report(const char* id, const char* name, bool pass, const std::string& details) {
    std::printf("[%s] %-34s %s%s%s\n", id, name, pass ? "PASS" : "FAIL",
                details.empty() ? "" : "  ", details.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioConfig table_defaults(FootprintMode fm, double gamma, double lam_km, RraKind rra) {
    ScenarioConfig cfg;
    cfg.footprint_mode = fm;
    cfg.gamma_th_db = gamma;
    cfg.lambda_per_m = lam_km / 1000.0;
    cfg.rra_kind = rra;
    return cfg;
}

double analytic_avg(const ScenarioConfig& cfg) {
    const BeamCodebook cb = make_codebook(cfg);
    return average_access_prob(cfg, cb, make_allocation(cfg, cb)).avg_access;
}

}  // namespace

TEST_CASE("criterion 1: binomial oracle equivalence") {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    long cases = 0;
    for (long m = 0; m <= 12; ++m) {
        for (long n = 0; n <= m; ++n) {
            for (int pi = 0; pi <= 10; ++pi) {
                const double p = pi / 10.0;
                const double ref_px = test_oracle::enumerate_access(m, n, p, false);
                const double ref_iz = test_oracle::enumerate_access(m, n, p, true);
                worst = std::max(worst,
                                 std::abs(beam_access_prob(m, n, p, EmptyBeamMode::PaperExact) - ref_px));
                worst = std::max(worst,
                                 std::abs(beam_access_prob(m, n, p, EmptyBeamMode::IncludeZero) - ref_iz));
                ++cases;
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = worst <= 1e-12 && secs < 5.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld cases, worst |diff|=%.3g, %.2fs", cases, worst, secs);
    report("C1", "binomial oracle equivalence", pass, buf);
    CHECK(worst <= 1e-12);
    CHECK(secs < 5.0);
}

TEST_CASE("criterion 2: model-matched validation") {
    // The grid is exercised in the geometric-segment mode, where capacities
    // exceed budgets and the access probabilities are non-degenerate.
    const auto t0 = std::chrono::steady_clock::now();
    const int threads = hw_threads();
    double worst_excess = -1.0;
    int points = 0, failures = 0;
    std::uint64_t point_seed = 20240601;
    for (double h : {100.0, 150.0, 200.0, 250.0, 300.0, 350.0}) {
        for (double lam : {40.0, 80.0}) {
            for (double gamma : {5.0, 10.0}) {
                for (RraKind rra : {RraKind::Fair, RraKind::BeamBased}) {
                    ScenarioConfig cfg = table_defaults(FootprintMode::GeometricTan, gamma, lam, rra);
                    cfg.h_uav_m = h;
                    cfg.sim_fidelity = SimFidelity::ModelMatched;
                    cfg.empty_beam_mode = EmptyBeamMode::IncludeZero;
                    const BeamCodebook cb = make_codebook(cfg);
                    const ResourceAllocation alloc = make_allocation(cfg, cb);
                    const double analytic = average_access_prob(cfg, cb, alloc).avg_access;
                    const AccessReport mc =
                        run_experiment(++point_seed, 10000, cb, alloc, cfg, threads);
                    const double tol = std::max(0.02, 3.0 * mc.ci_half_width);
                    const double diff = std::abs(mc.avg_access_hat - analytic);
                    worst_excess = std::max(worst_excess, diff - tol);
                    if (diff > tol) ++failures;
                    ++points;
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = failures == 0 && secs < 120.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d points, failures=%d, worst diff-tol=%.4f, %.1fs",
                  points, failures, worst_excess, secs);
    report("C2", "model-matched validation", pass, buf);
    CHECK(failures == 0);
    CHECK(secs < 120.0);
}

TEST_CASE("criterion 3: altitude thresholds") {
    // Pinned modes: printed-cos segment, include-zero semantics.
    auto largest = [](double gamma, RraKind rra) {
        ScenarioConfig cfg = table_defaults(FootprintMode::PaperCos, gamma, 40.0, rra);
        cfg.empty_beam_mode = EmptyBeamMode::IncludeZero;
        const auto r = plan_altitude(cfg, 0.99, 50, 500, 10);
        return r ? r->h_best_m : -1.0;
    };
    const double h10_fair = largest(10.0, RraKind::Fair);
    const double h10_bb = largest(10.0, RraKind::BeamBased);
    const double h5_fair = largest(5.0, RraKind::Fair);
    const double h5_bb = largest(5.0, RraKind::BeamBased);

    const bool ok10 = std::abs(h10_fair - 150.0) <= 20.0 && std::abs(h10_bb - 150.0) <= 20.0;
    const bool ok5f = std::abs(h5_fair - 240.0) <= 20.0;
    const bool ok5b = std::abs(h5_bb - 350.0) <= 30.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "h_best: gamma10 fair=%g bb=%g (want 150+-20), gamma5 fair=%g "
                  "(want 240+-20), gamma5 bb=%g (want 350+-30)",
                  h10_fair, h10_bb, h5_fair, h5_bb);
    report("C3", "altitude thresholds", ok10 && ok5f && ok5b, buf);

    // reference diagnostics in the geometric segment mode
    auto largest_tan = [](double gamma, RraKind rra) {
        ScenarioConfig cfg = table_defaults(FootprintMode::GeometricTan, gamma, 40.0, rra);
        const auto r = plan_altitude(cfg, 0.99, 50, 500, 10);
        return r ? r->h_best_m : -1.0;
    };
    std::printf("     (geometric-segment reference: gamma10 fair=%g bb=%g, gamma5 "
                "fair=%g bb=%g)\n",
                largest_tan(10.0, RraKind::Fair), largest_tan(10.0, RraKind::BeamBased),
                largest_tan(5.0, RraKind::Fair), largest_tan(5.0, RraKind::BeamBased));
    CHECK(ok10);
    CHECK(ok5f);
    CHECK(ok5b);
}

TEST_CASE("criterion 4: density behavior") {
    // Density only matters once footprints outgrow the budget; evaluated in
    // the geometric-segment mode for both strategies.
    double max10 = 0.0;
    bool ok5_fair = true, ok5_bb = true;
    for (double lam = 40.0; lam <= 100.0 + 1e-9; lam += 5.0) {
        for (RraKind rra : {RraKind::Fair, RraKind::BeamBased}) {
            ScenarioConfig cfg = table_defaults(FootprintMode::GeometricTan, 10.0, lam, rra);
            max10 = std::max(max10, analytic_avg(cfg));
        }
    }
    auto p5 = [](double lam, RraKind rra) {
        return analytic_avg(table_defaults(FootprintMode::GeometricTan, 5.0, lam, rra));
    };
    for (double lam = 40.0; lam <= 65.0 + 1e-9; lam += 5.0) {
        if (p5(lam, RraKind::Fair) < 0.99) ok5_fair = false;
        if (p5(lam, RraKind::BeamBased) < 0.99) ok5_bb = false;
    }
    const double fair80 = p5(80.0, RraKind::Fair);
    const double bb80 = p5(80.0, RraKind::BeamBased);
    ok5_fair = ok5_fair && fair80 < 0.99;
    ok5_bb = ok5_bb && bb80 < 0.99;

    const bool ok10 = max10 <= 0.92;
    const bool ok5 = ok5_fair || ok5_bb;
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "gamma10 max over density=%.4f (want <=0.92); gamma5 hold-to-65 "
                  "fair=%s bb=%s, at 80: fair=%.4f bb=%.4f (want <0.99)",
                  max10, ok5_fair ? "yes" : "no", ok5_bb ? "yes" : "no", fair80, bb80);
    report("C4", "density behavior", ok10 && ok5, buf);
    CHECK(ok10);
    CHECK(ok5);
}

TEST_CASE("criterion 5: rra equivalence at high threshold") {
    // geometric segment, include-zero semantics
    double max_gap10 = 0.0, min_margin5 = 1.0, best_improve5 = 0.0;
    for (double h = 100.0; h <= 400.0 + 1e-9; h += 10.0) {
        ScenarioConfig f10 = table_defaults(FootprintMode::GeometricTan, 10.0, 40.0, RraKind::Fair);
        ScenarioConfig b10 = f10;
        b10.rra_kind = RraKind::BeamBased;
        f10.h_uav_m = b10.h_uav_m = h;
        max_gap10 = std::max(max_gap10, std::abs(analytic_avg(f10) - analytic_avg(b10)));

        ScenarioConfig f5 = table_defaults(FootprintMode::GeometricTan, 5.0, 40.0, RraKind::Fair);
        ScenarioConfig b5 = f5;
        b5.rra_kind = RraKind::BeamBased;
        f5.h_uav_m = b5.h_uav_m = h;
        const double diff = analytic_avg(b5) - analytic_avg(f5);
        min_margin5 = std::min(min_margin5, diff);
        if (h >= 200.0 && h <= 400.0) best_improve5 = std::max(best_improve5, diff);
    }
    const bool pass = max_gap10 <= 0.01 && min_margin5 >= -0.005 && best_improve5 > 0.02;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "gamma10 max|fair-bb|=%.4f (<=0.01); gamma5 min(bb-fair)=%.4f "
                  "(>=-0.005), best improvement=%.4f (>0.02)",
                  max_gap10, min_margin5, best_improve5);
    report("C5", "rra equivalence at high threshold", pass, buf);
    CHECK(max_gap10 <= 0.01);
    CHECK(min_margin5 >= -0.005);
    CHECK(best_improve5 > 0.02);
}

namespace {

struct PairedServed {
    double fair_mean = 0, bb_mean = 0, diff_mean = 0, diff_ci_half = 0;
    double conn_mean = 0, conn_ci_half = 0;
};

/// Runs FullChannel trials once per altitude and serves them under both
/// allocations, yielding a paired confidence interval on the served gap.
PairedServed paired_full_channel(double h, long trials, std::uint64_t seed) {
    ScenarioConfig cfg = table_defaults(FootprintMode::GeometricTan, 10.0, 80.0, RraKind::Fair);
    cfg.h_uav_m = h;
    cfg.sim_fidelity = SimFidelity::FullChannel;
    const BeamCodebook cb = make_codebook(cfg);
    const long budget = resource_budget(cfg).total;
    const ResourceAllocation fair = fair_alloc(budget, int(cb.beams.size()));
    const ResourceAllocation bb = beam_based_alloc(budget, cb);

    const int nt = hw_threads();
    struct Acc {
        long sf = 0, sb = 0, d = 0, d2 = 0, c = 0, c2 = 0;
    };
    std::vector<Acc> accs(nt);
    auto worker = [&](int wi) {
        for (long t = wi; t < trials; t += nt) {
            auto rng = trial_rng(seed, t);
            const TrialOutcome out = run_trial(rng, cb, fair, cfg);
            long served_f = 0, served_b = 0;
            for (size_t i = 0; i < cb.beams.size(); ++i) {
                served_f += std::min(out.per_beam_valid[i], fair.per_beam[i]);
                served_b += std::min(out.per_beam_valid[i], bb.per_beam[i]);
            }
            const long d = served_b - served_f;
            accs[wi].sf += served_f;
            accs[wi].sb += served_b;
            accs[wi].d += d;
            accs[wi].d2 += d * d;
            accs[wi].c += out.connected;
            accs[wi].c2 += out.connected * out.connected;
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
    Acc tot;
    for (const auto& a : accs) {
        tot.sf += a.sf;
        tot.sb += a.sb;
        tot.d += a.d;
        tot.d2 += a.d2;
        tot.c += a.c;
        tot.c2 += a.c2;
    }
    PairedServed r;
    const double n = double(trials);
    r.fair_mean = tot.sf / n;
    r.bb_mean = tot.sb / n;
    r.diff_mean = tot.d / n;
    const double dvar = std::max(0.0, (tot.d2 - n * r.diff_mean * r.diff_mean) / (n - 1));
    r.diff_ci_half = 1.96 * std::sqrt(dvar / n);
    r.conn_mean = tot.c / n;
    const double cvar = std::max(0.0, (tot.c2 - n * r.conn_mean * r.conn_mean) / (n - 1));
    r.conn_ci_half = 1.96 * std::sqrt(cvar / n);
    return r;
}

}  // namespace

TEST_CASE("criterion 6: connected-served crossover") {
    const long trials = 10000;
    std::vector<double> hs;
    for (double h = 100.0; h <= 500.0 + 1e-9; h += 50.0) hs.push_back(h);
    std::vector<PairedServed> rows;
    for (size_t i = 0; i < hs.size(); ++i)
        rows.push_back(paired_full_channel(hs[i], trials, 777000 + i));

    bool bb_wins_somewhere = false, fair_wins_later = false, fair_wins_anywhere = false;
    double first_bb_win_h = -1.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!bb_wins_somewhere && r.diff_mean > 3.0 * r.diff_ci_half) {
            bb_wins_somewhere = true;
            first_bb_win_h = hs[i];
        }
        if (-r.diff_mean > 3.0 * r.diff_ci_half) {
            fair_wins_anywhere = true;
            if (bb_wins_somewhere) fair_wins_later = true;
        }
    }
    size_t peak = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].conn_mean > rows[peak].conn_mean) peak = i;
    const bool interior_peak =
        peak != 0 && peak + 1 != rows.size() &&
        rows[peak].conn_mean - rows.front().conn_mean >
            3.0 * std::hypot(rows[peak].conn_ci_half, rows.front().conn_ci_half) &&
        rows[peak].conn_mean - rows.back().conn_mean >
            3.0 * std::hypot(rows[peak].conn_ci_half, rows.back().conn_ci_half);

    for (size_t i = 0; i < rows.size(); ++i)
        std::printf("     h=%4.0f connected=%8.2f served_fair=%8.2f served_bb=%8.2f "
                    "bb-fair=%+7.3f (ci %.3f)\n",
                    hs[i], rows[i].conn_mean, rows[i].fair_mean, rows[i].bb_mean,
                    rows[i].diff_mean, rows[i].diff_ci_half);
    const bool pass = bb_wins_somewhere && fair_wins_later && interior_peak;
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "bb>fair somewhere: %s (first h=%g); fair>bb after that: %s "
                  "(fair>bb anywhere: %s); interior connected peak at h=%g: %s",
                  bb_wins_somewhere ? "yes" : "no", first_bb_win_h,
                  fair_wins_later ? "yes" : "no", fair_wins_anywhere ? "yes" : "no",
                  hs[peak], interior_peak ? "yes" : "no");
    report("C6", "connected-served crossover", pass, buf);
    CHECK(bb_wins_somewhere);
    CHECK(fair_wins_later);
    CHECK(interior_peak);
}

TEST_CASE("criterion 7: conservation, partition, determinism") {
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> hdist(60.0, 700.0);
    std::uniform_real_distribution<double> psid(30.0, 170.0);
    std::uniform_int_distribution<int> nud(1, 24);
    std::uniform_int_distribution<int> lanesd(1, 8);
    std::uniform_real_distribution<double> lvd(3.0, 8.0);
    std::uniform_int_distribution<int> moded(0, 1);
    bool conservation = true, partition = true;
    for (int i = 0; i < 1000; ++i) {
        ScenarioConfig cfg;
        cfg.h_uav_m = hdist(gen);
        cfg.psi_fov_deg = psid(gen);
        cfg.n_uav = nud(gen);
        cfg.lanes = lanesd(gen);
        cfg.l_vehicle_m = lvd(gen);
        cfg.footprint_mode = moded(gen) ? FootprintMode::GeometricTan : FootprintMode::PaperCos;
        const BeamCodebook cb = make_codebook(cfg);
        const long budget = resource_budget(cfg).total;
        long sf = 0, sb = 0;
        for (long v : fair_alloc(budget, int(cb.beams.size())).per_beam) sf += v;
        for (long v : beam_based_alloc(budget, cb).per_beam) sb += v;
        if (sf > budget || sb > budget) conservation = false;
        const double edge = cb.segment_length_m / 2.0;
        if (std::abs(cb.beams.front().x_left_m + edge) > 1e-9 * std::max(1.0, edge) ||
            std::abs(cb.beams.back().x_right_m - edge) > 1e-9 * std::max(1.0, edge))
            partition = false;
        double len = 0.0;
        for (size_t k = 0; k < cb.beams.size(); ++k) {
            len += cb.beams[k].length_m;
            if (k + 1 < cb.beams.size() &&
                cb.beams[k].x_right_m != cb.beams[k + 1].x_left_m)
                partition = false;
        }
        if (std::abs(len - cb.segment_length_m) > 1e-9 * std::max(1.0, cb.segment_length_m))
            partition = false;
    }

    bool served_bound = true;
    {
        ScenarioConfig cfg = table_defaults(FootprintMode::GeometricTan, 5.0, 80.0, RraKind::BeamBased);
        const BeamCodebook cb = make_codebook(cfg);
        const ResourceAllocation alloc = make_allocation(cfg, cb);
        for (long t = 0; t < 300; ++t) {
            auto rng = trial_rng(55, t);
            const TrialOutcome out = run_trial(rng, cb, alloc, cfg);
            long served = 0;
            for (long s : out.per_beam_served) served += s;
            if (served > out.connected || out.connected > cb.segment_capacity)
                served_bound = false;
        }
    }

    // byte-identical CSV at 1, 4 and 16 worker threads
    bool deterministic = true;
    {
        ScenarioConfig cfg = table_defaults(FootprintMode::GeometricTan, 5.0, 80.0, RraKind::Fair);
        cfg.h_uav_m = 300.0;
        const SweepSpec sweep{SweepVariable::AltitudeM, 200.0, 300.0, 50.0};
        std::string first;
        for (int threads : {1, 4, 16}) {
            RunOptions run{2000, 99, threads};
            std::ostringstream out, devnull;
            cmd_simulate(cfg, sweep, {}, run, out, devnull);
            if (first.empty()) first = out.str();
            else if (out.str() != first) deterministic = false;
        }
    }

    const bool pass = conservation && partition && served_bound && deterministic;
    char buf[160];
    std::snprintf(buf, sizeof buf, "conservation=%s partition=%s served<=connected=%s "
                  "thread-determinism=%s",
                  conservation ? "ok" : "BAD", partition ? "ok" : "BAD",
                  served_bound ? "ok" : "BAD", deterministic ? "ok" : "BAD");
    report("C7", "conservation and invariants", pass, buf);
    CHECK(conservation);
    CHECK(partition);
    CHECK(served_bound);
    CHECK(deterministic);
}

TEST_CASE("criterion 8: numerical primitives") {
    double worst_q = 0.0;
    for (const auto& [x, expected] : test_oracle::kQTable)
        worst_q = std::max(worst_q, std::abs(q_function(x) - expected));
    const ScenarioConfig cfg;
    const double snr = mean_snr_db(250.0, cfg);
    const bool pass = worst_q <= 1e-10 && std::abs(snr - 17.24) <= 0.01;
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst q error=%.3g, mean snr(250m)=%.5f dB", worst_q, snr);
    report("C8", "numerical primitives", pass, buf);
    CHECK(worst_q <= 1e-10);
    CHECK(std::abs(snr - 17.24) <= 0.01);
}
