#pragma once

#include <string>
#include <vector>

#include "hyperfoil/presets.hpp"

namespace hyperfoil {

/// Deterministic CSV writers for the run outputs. Numbers are printed with
/// %.17g so identical runs produce byte-identical files.
std::string format_double(double v);

void write_run_csv(const std::string& path, const RunRecord& rec);
void write_slices_csv(const std::string& path, const PresetResult& res);
void write_decay_csv(const std::string& path, const PresetResult& res);

struct DecaySeries {
    std::string quantity;
    std::string region;
    std::vector<double> T, value;
    DecayFit fit;
    bool fitted = false;
};

/// Assemble the decay series (and fits where data allows) from a preset run.
std::vector<DecaySeries> decay_series(const PresetResult& res);

/// Log-log scatter plus fitted line, written as a standalone SVG.
void write_decay_svg(const std::string& path, const std::vector<DecaySeries>& series);

}  // namespace hyperfoil
