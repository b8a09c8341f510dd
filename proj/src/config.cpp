#include "gfra/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "gfra/units.hpp"

namespace gfra {

namespace {

using KeyValue = std::pair<std::string, std::string>;

std::string trim(const std::string& s) {
    auto b = s.begin();
    auto e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) {
        ++b;
    }
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) {
        --e;
    }
    return {b, e};
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + value + "'");
    }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v < 0.0 || v != std::floor(v) || v > 1e15) {
        throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
    }
    return static_cast<std::size_t>(v);
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an unsigned integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw ConfigError(key, "expected true/false, got '" + value + "'");
}

/// Applies one simple (order-independent) key. Mode, m_total and n_aps are
/// resolved jointly by finalize(); everything else lands here.
bool apply_simple_key(Scenario& s, const std::string& key, const std::string& value) {
    if (key == "k_devices") {
        s.k_devices = parse_count(key, value);
    } else if (key == "tau_p") {
        s.tau_p = parse_count(key, value);
    } else if (key == "rho_mw") {
        s.rho_w = milliwatts_to_watts(parse_number(key, value));
    } else if (key == "rho_dbm") {
        s.rho_w = dbm_to_watts(parse_number(key, value));
    } else if (key == "sigma2_dbm") {
        s.sigma2_w = dbm_to_watts(parse_number(key, value));
    } else if (key == "epsilon_a") {
        s.epsilon_a = parse_number(key, value);
    } else if (key == "area_m") {
        s.area_side = parse_number(key, value);
    } else if (key == "n_sim") {
        s.n_sim = parse_count(key, value);
    } else if (key == "seed") {
        s.master_seed = parse_seed(key, value);
    } else if (key == "v_min") {
        s.v_min = parse_number(key, value);
    } else if (key == "v_max") {
        s.v_max = parse_number(key, value);
    } else if (key == "v_points") {
        s.v_points = parse_count(key, value);
    } else if (key == "carrier_hz") {
        s.carrier_hz = parse_number(key, value);
    } else if (key == "h_device_min") {
        s.device_height_min = parse_number(key, value);
    } else if (key == "h_device_max") {
        s.device_height_max = parse_number(key, value);
    } else if (key == "h_ap") {
        s.ap_height = parse_number(key, value);
    } else if (key == "pilot_redraw") {
        s.redraw_pilots_per_trial = parse_bool(key, value);
    } else {
        return false;
    }
    return true;
}

Scenario finalize(const std::vector<KeyValue>& pairs) {
    Scenario s;

    // Deployment keys interact, so gather them first; last occurrence wins.
    std::optional<std::string> mode_text;
    std::optional<std::size_t> m_total;
    std::optional<std::size_t> n_aps;
    for (const auto& [key, value] : pairs) {
        if (key == "mode") {
            mode_text = value;
        } else if (key == "m_total") {
            m_total = parse_count(key, value);
        } else if (key == "n_aps") {
            n_aps = parse_count(key, value);
        }
    }
    const DeploymentMode mode = mode_text ? mode_from_name(*mode_text) : s.mode;
    s.set_mode_and_m(mode, m_total.value_or(s.m_total()));
    if (n_aps) {
        if (mode == DeploymentMode::CoLocated && *n_aps != 1) {
            throw ConfigError("n_aps", "co-located mode requires n_aps = 1");
        }
        if (mode == DeploymentMode::CellFree && *n_aps != s.m_total()) {
            throw ConfigError("n_aps",
                              "cell-free APs are single-antenna: n_aps must equal m_total");
        }
    }

    for (const auto& [key, value] : pairs) {
        if (key == "mode" || key == "m_total" || key == "n_aps") {
            continue;
        }
        if (!apply_simple_key(s, key, value)) {
            throw ConfigError(key, "unknown configuration key");
        }
    }
    return s;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    const nlohmann::json& sc = j.contains("scenario") ? j.at("scenario") : j;
    Scenario s;
    try {
        s.k_devices = sc.at("k_devices").get<std::size_t>();
        s.set_mode_and_m(mode_from_name(sc.at("mode").get<std::string>()),
                         sc.at("m_total").get<std::size_t>());
        s.area_side = sc.at("area_m").get<double>();
        s.epsilon_a = sc.at("epsilon_a").get<double>();
        s.rho_w = sc.at("rho_w").get<double>();
        s.sigma2_w = sc.at("sigma2_w").get<double>();
        s.tau_p = sc.at("tau_p").get<std::size_t>();
        s.carrier_hz = sc.at("carrier_hz").get<double>();
        s.device_height_min = sc.at("h_device_min").get<double>();
        s.device_height_max = sc.at("h_device_max").get<double>();
        s.ap_height = sc.at("h_ap").get<double>();
        s.n_sim = sc.at("n_sim").get<std::size_t>();
        s.master_seed = sc.at("seed").get<std::uint64_t>();
        s.v_min = sc.at("v_min").get<double>();
        s.v_max = sc.at("v_max").get<double>();
        s.v_points = sc.at("v_points").get<std::size_t>();
        s.redraw_pilots_per_trial = sc.at("pilot_redraw").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario", std::string("malformed scenario JSON: ") + e.what());
    }
    return s;
}

}  // namespace

Scenario load_scenario(std::istream& in, const std::string& source_name) {
    // A summary.json from a previous campaign is accepted as-is.
    const int first = in.peek();
    if (first == '{') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(source_name, std::string("invalid JSON: ") + e.what());
        }
        return scenario_from_json(j);
    }

    std::vector<KeyValue> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::string key;
        std::string value;
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            const auto ws = line.find_first_of(" \t");
            if (ws == std::string::npos) {
                throw ConfigError(source_name + ":" + std::to_string(line_no),
                                  "expected 'key = value'");
            }
            key = trim(line.substr(0, ws));
            value = trim(line.substr(ws + 1));
        }
        if (key.empty() || value.empty()) {
            throw ConfigError(source_name + ":" + std::to_string(line_no),
                              "expected 'key = value'");
        }
        pairs.emplace_back(std::move(key), std::move(value));
    }
    return finalize(pairs);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open config file");
    }
    return load_scenario(in, path);
}

void apply_override(Scenario& scenario, const std::string& key, const std::string& value) {
    if (key == "mode") {
        scenario.set_mode_and_m(mode_from_name(value), scenario.m_total());
        return;
    }
    if (key == "m_total") {
        scenario.set_mode_and_m(scenario.mode, parse_count(key, value));
        return;
    }
    if (key == "n_aps") {
        scenario.n_aps = parse_count(key, value);
        return;
    }
    if (!apply_simple_key(scenario, key, value)) {
        throw ConfigError(key, "unknown configuration key");
    }
}

std::string scenario_to_config_text(const Scenario& s) {
    std::ostringstream out;
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "k_devices = " << s.k_devices << '\n';
    out << "mode = " << mode_name(s.mode) << '\n';
    out << "m_total = " << s.m_total() << '\n';
    out << "n_aps = " << s.n_aps << '\n';
    out << "area_m = " << num(s.area_side) << '\n';
    out << "epsilon_a = " << num(s.epsilon_a) << '\n';
    out << "rho_mw = " << num(s.rho_w * 1e3) << '\n';
    out << "sigma2_dbm = " << num(watts_to_dbm(s.sigma2_w)) << '\n';
    out << "tau_p = " << s.tau_p << '\n';
    out << "carrier_hz = " << num(s.carrier_hz) << '\n';
    out << "h_device_min = " << num(s.device_height_min) << '\n';
    out << "h_device_max = " << num(s.device_height_max) << '\n';
    out << "h_ap = " << num(s.ap_height) << '\n';
    out << "n_sim = " << s.n_sim << '\n';
    out << "seed = " << s.master_seed << '\n';
    out << "v_min = " << num(s.v_min) << '\n';
    out << "v_max = " << num(s.v_max) << '\n';
    out << "v_points = " << s.v_points << '\n';
    out << "pilot_redraw = " << (s.redraw_pilots_per_trial ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace gfra
