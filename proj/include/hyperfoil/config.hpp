#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyperfoil/presets.hpp"

namespace hyperfoil {

/// key = value configuration text; '#' starts a comment, unknown keys are
/// rejected. Values after the known keys: numbers, names, or comma lists.
PresetConfig parse_preset_config(const std::string& text);
PresetConfig load_preset_config(const std::string& path,
                                const std::vector<std::string>& overrides);

/// Apply one "key=value" override onto a config.
void apply_override(PresetConfig& cfg, const std::string& keyval);

/// Keys accepted in config files and overrides.
const std::vector<std::string>& config_keys();

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hyperfoil
