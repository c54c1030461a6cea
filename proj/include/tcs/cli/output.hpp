#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcs::cli {

/// '#' metadata lines, a header row, then comma-separated rows.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& out, int precision) const;
};

/// Shortest round-trippable form at `precision` significant digits; nan prints as "nan".
std::string format_number(double v, int precision);

/// Static 800x600 plot with one polyline through (x[i], y[i]), no resampling.
void write_svg(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y,
               const std::string& title);

}  // namespace tcs::cli
