#include "ppcurve/data_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ppcurve/errors.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

namespace {

bool is_number(std::string_view token) {
  try {
    (void)parse_real(token, "value");
    return true;
  } catch (const InvalidParameter&) {
    return false;
  }
}

// Rows of `columns` numeric fields; row numbers in errors are 1-based lines.
std::vector<std::vector<double>> read_numeric_rows(const std::filesystem::path& path,
                                                   std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view trimmed = trim(line);
    if (trimmed.empty()) continue;
    const std::vector<std::string_view> fields = split(trimmed, ',');
    if (first) {
      first = false;
      bool header = false;
      for (std::string_view f : fields) header = header || !is_number(trim(f));
      if (header) continue;
    }
    if (fields.size() != columns) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(columns) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (std::string_view f : fields) {
      const std::string token(trim(f));
      double v = 0.0;
      try {
        v = parse_real(token, "value");
      } catch (const InvalidParameter&) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": not a number: '" + token + "'");
      }
      if (!std::isfinite(v)) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": non-finite value '" + token + "'");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");
  return rows;
}

}  // namespace

SampleData read_paired_csv(const std::filesystem::path& path) {
  SampleData data;
  data.paired = true;
  for (const auto& row : read_numeric_rows(path, 2)) {
    data.x.push_back(row[0]);
    data.y.push_back(row[1]);
  }
  return data;
}

std::vector<double> read_column_csv(const std::filesystem::path& path) {
  std::vector<double> out;
  for (const auto& row : read_numeric_rows(path, 1)) out.push_back(row[0]);
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string pp_plot_csv(const StepFunction& plot) {
  std::string out = "u,value\n";
  out += "0," + format_real(plot(0.0)) + "\n";
  for (std::size_t k = 0; k < plot.cells(); ++k) {
    out += format_real(plot.cell_upper(k)) + "," + format_real(plot.values()[k]) + "\n";
  }
  return out;
}

}  // namespace ppcurve
