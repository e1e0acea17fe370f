#include "uavrra/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace uavrra {

const char* to_string(RraKind k) {
    return k == RraKind::Fair ? "fair" : "bb";
}
const char* to_string(FootprintMode m) {
    return m == FootprintMode::PaperCos ? "paper" : "geometric";
}
const char* to_string(EmptyBeamMode m) {
    return m == EmptyBeamMode::PaperExact ? "paper" : "include-zero";
}
const char* to_string(SimFidelity f) {
    return f == SimFidelity::ModelMatched ? "model" : "full";
}

long checked_floor(double x) {
    return static_cast<long>(std::floor(x + 1e-9));
}

std::optional<ValidationError> validate(const ScenarioConfig& cfg) {
    auto bad = [](const char* field, const char* reason) {
        return ValidationError{field, reason};
    };
    if (!(cfg.h_uav_m > 0)) return bad("h_uav_m", "must be > 0");
    if (!(cfg.psi_fov_deg > 0 && cfg.psi_fov_deg < 180))
        return bad("psi_fov_deg", "must be in (0, 180)");
    if (cfg.n_uav < 1) return bad("n_uav", "must be >= 1");
    if (cfg.n_cav < 1) return bad("n_cav", "must be >= 1");
    if (cfg.n_rf < 1) return bad("n_rf", "must be >= 1");
    if (!std::isfinite(cfg.p_tx_dbm)) return bad("p_tx_dbm", "must be finite");
    if (!std::isfinite(cfg.noise_dbm)) return bad("noise_dbm", "must be finite");
    if (!std::isfinite(cfg.pl_offset_db)) return bad("pl_offset_db", "must be finite");
    if (!(cfg.pl_exponent > 0)) return bad("pl_exponent", "must be > 0");
    if (!(cfg.sigma_s_sq_db2 >= 0)) return bad("sigma_s_sq_db2", "must be >= 0");
    if (cfg.lanes < 1) return bad("lanes", "must be >= 1");
    if (!(cfg.l_vehicle_m > 0)) return bad("l_vehicle_m", "must be > 0");
    if (!(cfg.lambda_per_m > 0)) return bad("lambda_per_m", "must be > 0");
    if (!std::isfinite(cfg.gamma_th_db)) return bad("gamma_th_db", "must be finite");
    if (!(cfg.carrier_hz > 0)) return bad("carrier_hz", "must be > 0");
    if (cfg.n_ch < 1) return bad("n_ch", "must be >= 1");
    if (!(cfg.t_slot_s > 0)) return bad("t_slot_s", "must be > 0");
    if (!(cfg.tau_e2e_s > 0)) return bad("tau_e2e_s", "must be > 0");
    if (cfg.tau_e2e_s < 2 * cfg.t_slot_s)
        return bad("tau_e2e_s", "must be >= 2 * t_slot_s (one uplink+downlink pair)");
    if (cfg.n_paths < 1) return bad("n_paths", "must be >= 1");
    if (!(cfg.path_decay > 0)) return bad("path_decay", "must be > 0");
    if (cfg.sigma_extra_db2 && !(*cfg.sigma_extra_db2 >= 0))
        return bad("sigma_extra_db2", "must be >= 0");
    return std::nullopt;
}

ScenarioConfig validated(const ScenarioConfig& cfg) {
    if (auto err = validate(cfg))
        throw ConfigError("invalid config: " + err->field + ": " + err->reason);
    return cfg;
}

std::vector<std::string> config_warnings(const ScenarioConfig& cfg) {
    std::vector<std::string> out;
    if (cfg.lambda_per_m * cfg.l_vehicle_m > 1.0) {
        out.push_back(
            "lambda * l_vehicle > 1: slot occupation probability is past its "
            "maximum and decreases with density");
    }
    return out;
}

ResourceBudget resource_budget(const ScenarioConfig& cfg) {
    ResourceBudget b;
    b.n_slot = checked_floor(0.5 * cfg.tau_e2e_s / cfg.t_slot_s);
    b.total = b.n_slot * cfg.n_ch * cfg.n_rf;
    return b;
}

namespace {

using nlohmann::json;

RraKind parse_rra(const std::string& s) {
    if (s == "fair") return RraKind::Fair;
    if (s == "bb" || s == "beam-based") return RraKind::BeamBased;
    throw ConfigError("rra_kind: expected \"fair\" or \"bb\", got \"" + s + "\"");
}

FootprintMode parse_footprint(const std::string& s) {
    if (s == "paper") return FootprintMode::PaperCos;
    if (s == "geometric") return FootprintMode::GeometricTan;
    throw ConfigError("footprint_mode: expected \"paper\" or \"geometric\", got \"" + s + "\"");
}

EmptyBeamMode parse_empty_beam(const std::string& s) {
    if (s == "paper") return EmptyBeamMode::PaperExact;
    if (s == "include-zero") return EmptyBeamMode::IncludeZero;
    throw ConfigError("empty_beam_mode: expected \"paper\" or \"include-zero\", got \"" + s + "\"");
}

SimFidelity parse_fidelity(const std::string& s) {
    if (s == "model") return SimFidelity::ModelMatched;
    if (s == "full") return SimFidelity::FullChannel;
    throw ConfigError("sim_fidelity: expected \"model\" or \"full\", got \"" + s + "\"");
}

}  // namespace

ScenarioConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    ScenarioConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        try {
            if (key == "h_uav_m") cfg.h_uav_m = v.get<double>();
            else if (key == "psi_fov_deg") cfg.psi_fov_deg = v.get<double>();
            else if (key == "n_uav") cfg.n_uav = v.get<int>();
            else if (key == "n_cav") cfg.n_cav = v.get<int>();
            else if (key == "n_rf") cfg.n_rf = v.get<int>();
            else if (key == "p_tx_dbm") cfg.p_tx_dbm = v.get<double>();
            else if (key == "noise_dbm") cfg.noise_dbm = v.get<double>();
            else if (key == "pl_offset_db") cfg.pl_offset_db = v.get<double>();
            else if (key == "pl_exponent") cfg.pl_exponent = v.get<double>();
            else if (key == "sigma_s_sq_db2") cfg.sigma_s_sq_db2 = v.get<double>();
            else if (key == "lanes") cfg.lanes = v.get<int>();
            else if (key == "l_vehicle_m") cfg.l_vehicle_m = v.get<double>();
            else if (key == "lambda_per_km") cfg.lambda_per_m = v.get<double>() / 1000.0;
            else if (key == "gamma_th_db") cfg.gamma_th_db = v.get<double>();
            else if (key == "carrier_hz") cfg.carrier_hz = v.get<double>();
            else if (key == "n_ch") cfg.n_ch = v.get<int>();
            else if (key == "t_slot_s") cfg.t_slot_s = v.get<double>();
            else if (key == "tau_e2e_s") cfg.tau_e2e_s = v.get<double>();
            else if (key == "rra_kind") cfg.rra_kind = parse_rra(v.get<std::string>());
            else if (key == "footprint_mode") cfg.footprint_mode = parse_footprint(v.get<std::string>());
            else if (key == "empty_beam_mode") cfg.empty_beam_mode = parse_empty_beam(v.get<std::string>());
            else if (key == "n_paths") cfg.n_paths = v.get<int>();
            else if (key == "path_decay") cfg.path_decay = v.get<double>();
            else if (key == "sim_fidelity") cfg.sim_fidelity = parse_fidelity(v.get<std::string>());
            else if (key == "sigma_extra_db2") cfg.sigma_extra_db2 = v.get<double>();
            else if (key == "redistribute_remainder") cfg.redistribute_remainder = v.get<bool>();
            else if (key == "wilson_ci") cfg.wilson_ci = v.get<bool>();
            else throw ConfigError("unknown config key: \"" + key + "\"");
        } catch (const json::type_error& e) {
            throw ConfigError("config key \"" + key + "\": " + e.what());
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("error reading config file: " + path);
    return parse_config_json(ss.str());
}

}  // namespace uavrra
