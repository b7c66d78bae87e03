#pragma once

// Rendering of command results as json, csv or an aligned text table.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cli/args.hpp"
#include "json.hpp"

namespace lcdual::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "lc-spectra/1";

/// Empty, text, integer, real or boolean cell.
using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

std::string format_real(double v, OutputFormat format);

class Table {
 public:
  explicit Table(std::vector<std::string> headers);

  void add_row(std::vector<Cell> row);
  bool empty() const noexcept { return rows_.empty(); }

  /// Csv: header line plus rows, reals at 17 significant digits.
  /// Table: space-aligned columns, reals at 6 significant digits.
  void write(std::ostream& os, OutputFormat format) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<Cell>> rows_;
};

/// Two-space indented, newline-terminated.
void write_json(std::ostream& os, const Json& doc);

}  // namespace lcdual::cli
