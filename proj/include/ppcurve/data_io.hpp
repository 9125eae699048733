#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ppcurve/empirical.hpp"

namespace ppcurve {

// Paired data from a two-column CSV. A first line whose fields do not parse
// as numbers is taken as a header. Blank lines are skipped; any other
// malformed row raises DataError naming the line.
SampleData read_paired_csv(const std::filesystem::path& path);

// One numeric column (same header rule). Used for two-sample input.
std::vector<double> read_column_csv(const std::filesystem::path& path);

// Writes through a temporary file in the same directory and renames it over
// the target, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// CSV of a P-P plot: header "u,value", the row at u = 0, then one row per
// breakpoint.
std::string pp_plot_csv(const StepFunction& plot);

}  // namespace ppcurve
