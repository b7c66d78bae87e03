#include "cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace lcdual::cli {

std::string format_real(double v, OutputFormat format) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format == OutputFormat::Table ? "%.6g" : "%.17g", v);
  return buf;
}

namespace {

std::string render(const Cell& c, OutputFormat format) {
  return std::visit(
      [format](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v, format);
        } else {
          return v ? "true" : "false";
        }
      },
      c);
}

}  // namespace

Table::Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void Table::add_row(std::vector<Cell> row) {
  row.resize(headers_.size());
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& os, OutputFormat format) const {
  std::vector<std::vector<std::string>> text;
  text.push_back(headers_);
  for (const auto& row : rows_) {
    std::vector<std::string> line;
    for (const auto& c : row) line.push_back(render(c, format));
    text.push_back(std::move(line));
  }
  if (format == OutputFormat::Csv) {
    for (const auto& line : text) {
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << line[i];
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(headers_.size(), 0);
  for (const auto& line : text) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (const auto& line : text) {
    std::string out;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += "  ";
      out += line[i];
      if (i + 1 < line.size()) out.append(width[i] - line[i].size(), ' ');
    }
    os << out << '\n';
  }
}

void write_json(std::ostream& os, const Json& doc) { os << doc.dump(2) << '\n'; }

}  // namespace lcdual::cli
