#include "tcs/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace tcs::cli {

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // drops the sign of -0
  return fmt::format("{:.{}g}", v, precision);
}

void CsvTable::write(std::ostream& out, int precision) const {
  for (const std::string& m : metadata) out << "# " << m << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i], precision);
    out << '\n';
  }
}

void write_svg(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y,
               const std::string& title) {
  constexpr double width = 800, height = 600, margin = 50;
  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double xmin = x.empty() ? 0.0 : *xmin_it, xmax = x.empty() ? 1.0 : *xmax_it;
  const double ymin = y.empty() ? 0.0 : *ymin_it, ymax = y.empty() ? 1.0 : *ymax_it;
  const double xspan = xmax > xmin ? xmax - xmin : 1.0;
  const double yspan = ymax > ymin ? ymax - ymin : 1.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  out << "<title>" << title << "</title>\n";
  out << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", margin,
                     height - margin, width - margin);
  out << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", margin, margin,
                     height - margin);
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{:.6g}</text>\n", margin, height - margin + 20, xmin);
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{:.6g}</text>\n",
                     width - margin, height - margin + 20, xmax);
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{:.6g}</text>\n", margin - 5,
                     height - margin, ymin);
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{:.6g}</text>\n", margin - 5,
                     margin + 4, ymax);
  out << "<polyline fill=\"none\" stroke=\"blue\" points=\"";
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    const double px = margin + (x[i] - xmin) / xspan * (width - 2 * margin);
    const double py = height - margin - (y[i] - ymin) / yspan * (height - 2 * margin);
    out << (i ? " " : "") << fmt::format("{:.3f},{:.3f}", px, py);
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace tcs::cli
