#include "hyperfoil/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hyperfoil {

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "preset",       "B",           "epsilon",          "dr",
        "cfl",          "t_final",     "tensors_file",     "T_ladder",
        "seed",         "slice_nodes", "mass_convention",  "T_ladder_interior",
        "parallel",     "g_cap",       "blowup_threshold", "wave_u1_amplitude",
        "quadrature",
    };
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "' in " + key);
        }
    }
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

double parse_num(const std::string& v, const std::string& key) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + v + "' for " + key);
    }
}

void set_key(PresetConfig& cfg, const std::string& key, const std::string& value) {
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError("unknown config key: " + key);
    if (key == "preset")
        cfg.preset = value;
    else if (key == "B")
        cfg.B = parse_num(value, key);
    else if (key == "epsilon")
        cfg.epsilon = parse_num(value, key);
    else if (key == "dr")
        cfg.dr = parse_num(value, key);
    else if (key == "cfl")
        cfg.cfl = parse_num(value, key);
    else if (key == "t_final")
        cfg.t_final = parse_num(value, key);
    else if (key == "tensors_file")
        cfg.tensors_file = value;
    else if (key == "T_ladder")
        cfg.T_ladder = parse_list(value, key);
    else if (key == "T_ladder_interior")
        cfg.T_ladder_interior = parse_list(value, key);
    else if (key == "seed")
        cfg.seed = static_cast<uint64_t>(parse_num(value, key));
    else if (key == "slice_nodes")
        cfg.slice_nodes = static_cast<int>(parse_num(value, key));
    else if (key == "mass_convention") {
        if (value == "doubled")
            cfg.mass_convention = MassConvention::Doubled;
        else if (value == "half")
            cfg.mass_convention = MassConvention::Half;
        else if (value == "flux")
            cfg.mass_convention = MassConvention::Flux;
        else
            throw ConfigError("mass_convention must be doubled|half|flux");
    } else if (key == "quadrature") {
        if (value == "midpoint")
            cfg.quadrature = QuadratureRule::Midpoint;
        else if (value == "gauss")
            cfg.quadrature = QuadratureRule::GaussLegendre2;
        else
            throw ConfigError("quadrature must be midpoint|gauss");
    } else if (key == "parallel")
        cfg.parallel = value == "1" || value == "true" || value == "on";
    else if (key == "g_cap")
        cfg.g_cap = parse_num(value, key);
    else if (key == "blowup_threshold")
        cfg.blowup_threshold = parse_num(value, key);
    else if (key == "wave_u1_amplitude")
        cfg.wave_u1_amplitude = parse_num(value, key);
}

}  // namespace

void apply_override(PresetConfig& cfg, const std::string& keyval) {
    const auto eq = keyval.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like key=value: " + keyval);
    set_key(cfg, trim(keyval.substr(0, eq)), trim(keyval.substr(eq + 1)));
}

PresetConfig parse_preset_config(const std::string& text) {
    PresetConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

PresetConfig load_preset_config(const std::string& path,
                                const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    PresetConfig cfg = parse_preset_config(buf.str());
    for (const auto& o : overrides) apply_override(cfg, o);
    return cfg;
}

}  // namespace hyperfoil
