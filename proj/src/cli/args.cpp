#include "cli/args.hpp"

#include <charconv>

namespace lcdual::cli {

namespace {

int parse_int(std::string_view s, const std::string& whole) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse integer in '" + whole + "'");
  }
  return v;
}

}  // namespace

std::vector<int> IntRange::values() const {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(text, text);
    return {v, v};
  }
  IntRange r{parse_int(std::string_view(text).substr(0, dots), text),
             parse_int(std::string_view(text).substr(dots + 2), text)};
  if (r.lo > r.hi) throw Error(ErrorCode::InvalidArgument, "empty range '" + text + "'");
  return r;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos
                                                                                          : comma - start);
    out.push_back(parse_int(piece, text));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

EquationKind parse_equation(const std::string& text) {
  if (text == "schroedinger") return EquationKind::Schroedinger;
  if (text == "kg") return EquationKind::KleinGordon;
  if (text == "dirac") return EquationKind::Dirac;
  throw Error(ErrorCode::InvalidArgument, "unknown equation '" + text + "' (schroedinger|kg|dirac)");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + text + "' (json|csv|table)");
}

RuleChoice parse_rule(const std::string& text) {
  if (text == "even-lo") return RuleChoice::EvenLo;
  if (text == "odd-n1n2") return RuleChoice::OddN1N2;
  if (text == "both") return RuleChoice::Both;
  throw Error(ErrorCode::InvalidArgument, "unknown rule '" + text + "' (even-lo|odd-n1n2|both)");
}

std::string_view to_string(spectra::MatchRule rule) noexcept {
  return rule == spectra::MatchRule::EvenLo ? "even-lo" : "odd-n1n2";
}

SystemSpec SystemArgs::to_spec() const {
  SystemSpec spec;
  spec.equation = parse_equation(equation);
  spec.mass = mass;
  if (potential == "coulomb") {
    if (omega_given) throw Error(ErrorCode::InvalidArgument, "--omega applies to the oscillator potential");
    spec.potential = Coulomb{kappa};
  } else if (potential == "oscillator") {
    if (kappa_given) throw Error(ErrorCode::InvalidArgument, "--kappa applies to the Coulomb potential");
    spec.potential = Oscillator{omega};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown potential '" + potential + "' (coulomb|oscillator)");
  }
  return validate_system(spec);
}

}  // namespace lcdual::cli
