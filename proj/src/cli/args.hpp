#pragma once

// Argument value parsing shared by the subcommands.

#include <string>
#include <vector>

#include "lcdual/model.hpp"
#include "lcdual/spectra.hpp"

namespace lcdual::cli {

enum class OutputFormat { Json, Csv, Table };

/// Inclusive integer range written "A..B" or "A".
struct IntRange {
  int lo = 0;
  int hi = 0;

  std::vector<int> values() const;
};

IntRange parse_range(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

EquationKind parse_equation(const std::string& text);
OutputFormat parse_format(const std::string& text);

enum class RuleChoice { EvenLo, OddN1N2, Both };
RuleChoice parse_rule(const std::string& text);
std::string_view to_string(spectra::MatchRule rule) noexcept;

/// Flags that describe one physical system.
struct SystemArgs {
  std::string equation = "schroedinger";
  std::string potential = "coulomb";
  double mass = 1.0;
  double kappa = 1.0;
  double omega = 1.0;
  bool kappa_given = false;
  bool omega_given = false;

  /// Validated spec; throws lcdual::Error on bad values.
  SystemSpec to_spec() const;
};

}  // namespace lcdual::cli
