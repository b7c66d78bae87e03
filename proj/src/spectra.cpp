#include "lcdual/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lcdual::spectra {

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Polar labels (k, l) of oscillator shell N, l ascending from -N to N.
std::vector<QuantumNumbers> shell_labels(int shell) {
  std::vector<QuantumNumbers> out;
  for (int l = -shell; l <= shell; l += 2) out.push_back({(shell - std::abs(l)) / 2, l});
  return out;
}

/// Real roots y of y^3 + 2m y^2 - q = 0 (y = eps - m), ascending, each given
/// one Newton step in long double.
std::vector<double> shifted_cubic_roots(double m, double q) {
  if (q == 0.0) return {-2.0 * m, 0.0};

  const long double a = 2.0L * m;
  const long double p = -a * a / 3.0L;
  const long double r = 2.0L * a * a * a / 27.0L - static_cast<long double>(q);
  const long double disc = r * r / 4.0L + p * p * p / 27.0L;

  std::vector<long double> ys;
  if (disc > 0.0L) {
    const long double sq = std::sqrt(disc);
    const long double t = std::cbrt(-r / 2.0L + sq) + std::cbrt(-r / 2.0L - sq);
    ys.push_back(t - a / 3.0L);
  } else {
    const long double rho = 2.0L * std::sqrt(-p / 3.0L);
    long double arg = (3.0L * r / (2.0L * p)) * std::sqrt(-3.0L / p);
    arg = std::clamp(arg, -1.0L, 1.0L);
    const long double phi = std::acos(arg) / 3.0L;
    for (int k = 0; k < 3; ++k) {
      const long double t = rho * std::cos(phi - 2.0L * std::numbers::pi_v<long double> * k / 3.0L);
      ys.push_back(t - a / 3.0L);
    }
  }

  std::vector<double> out;
  out.reserve(ys.size());
  for (long double y : ys) {
    // The positive root near zero suffers cancellation in t - a/3; restart
    // from the small-q asymptote when that leaves it non-positive.
    if (y <= 0.0L && disc > 0.0L) y = std::sqrt(static_cast<long double>(q) / a);
    const long double g = y * y * (y + a) - static_cast<long double>(q);
    const long double dg = y * (3.0L * y + 2.0L * a);
    if (dg != 0.0L) y -= g / dg;
    out.push_back(static_cast<double>(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double nr_bohr_energy(double mu, double kappa, double n) {
  if (!(n > 0.0)) throw Error(ErrorCode::NonPositiveN, "principal number must be positive, got " + describe(n));
  if (!(mu > 0.0)) throw Error(ErrorCode::NonPositiveMass, "mu must be positive, got " + describe(mu));
  if (kappa == 0.0) return 0.0;
  const double bohr_radius = 1.0 / (mu * kappa);
  return -kappa / (2.0 * bohr_radius) / (n * n);
}

double nr_oscillator_level(double omega, const CartesianQN& qn) {
  return static_cast<double>(qn.n1 + qn.n2 + 1) * omega;
}

double nr_oscillator_level(double omega, const QuantumNumbers& qn) {
  return static_cast<double>(oscillator_shell(qn) + 1) * omega;
}

OscillatorParams nr_map_hydrogen_to_oscillator(double mu, double E, double kappa) {
  if (!(mu > 0.0)) throw Error(ErrorCode::NonPositiveMass, "mu must be positive, got " + describe(mu));
  if (!(E < 0.0)) throw Error(ErrorCode::NonNegativeEnergy, "bound motion needs E < 0, got " + describe(E));
  return {4.0 * mu, std::sqrt(-E / (2.0 * mu)), kappa};
}

std::vector<SpectrumEntry> nr_hydrogen_levels_via_oscillator(double mu, double kappa, int max_level) {
  std::vector<SpectrumEntry> out;
  for (int shell = 0; shell <= max_level; shell += 2) {
    const double omega = kappa / static_cast<double>(shell + 1);
    const double energy = -2.0 * mu * omega * omega;
    for (const auto& osc : shell_labels(shell)) {
      SpectrumEntry e;
      e.qn = {osc.k, osc.l / 2};
      e.energy = energy;
      e.method = Method::ClosedForm;
      out.push_back(e);
    }
  }
  return out;
}

HydrogenParams rel_map_oscillator_to_hydrogen(const OscillatorParams& p) {
  if (!(p.epsilon > p.m)) {
    throw Error(ErrorCode::EpsilonBelowMass,
                "epsilon = " + describe(p.epsilon) + " must exceed m = " + describe(p.m));
  }
  const double half_sum = 0.5 * (p.m + p.epsilon);
  const double half_gap = p.m * p.omega * p.omega / 16.0;
  return {half_sum + half_gap, half_sum - half_gap, 0.25 * (p.epsilon - p.m)};
}

OscillatorParams rel_map_hydrogen_to_oscillator(const HydrogenParams& p) {
  const double sum = p.M + p.E;
  if (!(sum > 4.0 * p.kappa)) {
    throw Error(ErrorCode::MassNonPositive,
                "M + E = " + describe(sum) + " must exceed 4 kappa = " + describe(4.0 * p.kappa));
  }
  if (p.M < p.E) {
    throw Error(ErrorCode::ImaginaryFrequency, "M = " + describe(p.M) + " < E = " + describe(p.E));
  }
  const double m = 0.5 * (sum - 4.0 * p.kappa);
  const double eps = 0.5 * (sum + 4.0 * p.kappa);
  return {m, std::sqrt(8.0 * (p.M - p.E) / m), eps};
}

std::vector<double> rel_oscillator_levels(double m, double omega, int n, RootSelection sel) {
  if (!(m > 0.0)) throw Error(ErrorCode::NonPositiveMass, "m must be positive, got " + describe(m));
  if (!(omega >= 0.0)) throw Error(ErrorCode::NegativeOmega, "omega must be non-negative, got " + describe(omega));
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "shell index must be non-negative");

  const double nu = static_cast<double>(n + 1);
  const double q = 2.0 * m * omega * omega * nu * nu;
  if (sel == RootSelection::PhysicalBranch) {
    if (q == 0.0) return {m};
    return {m + shifted_cubic_roots(m, q).back()};
  }
  std::vector<double> out;
  for (double y : shifted_cubic_roots(m, q)) out.push_back(m + y);
  return out;
}

double rel_oscillator_level(double m, double omega, int n) {
  return rel_oscillator_levels(m, omega, n, RootSelection::PhysicalBranch).front();
}

double oscillator_cubic_residual(double m, double omega, int n, double eps) noexcept {
  const double nu = static_cast<double>(n + 1);
  const double gap = eps - m;
  return gap * gap * (eps + m) - 2.0 * m * omega * omega * nu * nu;
}

double oscillator_cubic_scale(double m, double omega, int n) noexcept {
  const double nu = static_cast<double>(n + 1);
  return std::max({1.0, m * m * m, m * omega * omega * nu * nu});
}

bool is_mass_factor_root(double m, double eps) noexcept {
  return std::abs(eps + m) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(m));
}

double cubic_relative_residual_from_hydrogen(const HydrogenParams& p, int n) noexcept {
  const double nu = static_cast<double>(n + 1);
  // (eps - m)^2 (eps + m) = 16 kappa^2 (M + E);  2 m omega^2 nu^2 = 16 (M - E) nu^2
  const double lhs = 16.0 * p.kappa * p.kappa * (p.M + p.E);
  const double rhs = 16.0 * (p.M - p.E) * nu * nu;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  return std::abs(lhs - rhs) / scale;
}

double rel_hydrogen_energy(double M, double kappa, int s, Branch sign) {
  if (s < 1) throw Error(ErrorCode::NonPositiveS, "s must be >= 1, got " + std::to_string(s));
  const double s2 = static_cast<double>(s) * static_cast<double>(s);
  const double k2 = kappa * kappa;
  const double num = (sign == Branch::Plus ? s2 : -s2) - k2;
  return num / (s2 + k2) * M;
}

std::vector<SpectrumEntry> rel_hydrogen_levels_via_oscillator(double M, double kappa, int n_max) {
  if (!(M > 0.0)) throw Error(ErrorCode::NonPositiveMass, "M must be positive, got " + describe(M));
  if (!(kappa > 0.0)) throw Error(ErrorCode::NonPositiveKappa, "kappa must be positive, got " + describe(kappa));

  std::vector<SpectrumEntry> out;
  for (int n = 0; n <= n_max; n += 2) {
    const double E = rel_hydrogen_energy(M, kappa, n + 1, Branch::Plus);
    const HydrogenParams hyd{M, E, kappa};
    const double rel = cubic_relative_residual_from_hydrogen(hyd, n);
    if (rel > 1e-10) {
      throw Error(ErrorCode::InconsistentMap, "cubic residual " + describe(rel) + " at n = " + std::to_string(n));
    }
    // Where the map yields a proper oscillator, its physical root must be eps.
    if (M + E > 4.0 * kappa) {
      const OscillatorParams osc = rel_map_hydrogen_to_oscillator(hyd);
      const double eps = rel_oscillator_level(osc.m, osc.omega, n);
      if (std::abs(eps - osc.epsilon) > 1e-10 * std::max(1.0, std::abs(osc.epsilon))) {
        throw Error(ErrorCode::InconsistentMap,
                    "oscillator root " + describe(eps) + " != mapped epsilon " + describe(osc.epsilon));
      }
    }
    for (const auto& label : shell_labels(n)) {
      SpectrumEntry e;
      e.qn = {label.k, label.l / 2};
      e.energy = E;
      e.method = Method::ClosedForm;
      out.push_back(e);
    }
  }
  return out;
}

double closed_form_energy(const SystemSpec& spec, const QuantumNumbers& qn) {
  if (qn.k < 0) throw Error(ErrorCode::InvalidArgument, "radial index k must be non-negative");
  const bool rel = is_relativistic(spec.equation);
  if (const auto* c = std::get_if<Coulomb>(&spec.potential)) {
    const int s = 2 * qn.k + 2 * std::abs(qn.l) + 1;
    if (!rel) return nr_bohr_energy(spec.mass, c->kappa, 0.5 * s);
    return rel_hydrogen_energy(spec.mass, c->kappa, s, Branch::Plus);
  }
  const double omega = std::get<Oscillator>(spec.potential).omega;
  if (!rel) return nr_oscillator_level(omega, qn);
  return rel_oscillator_level(spec.mass, omega, oscillator_shell(qn));
}

// ---------------------------------------------------------------------------

bool MatchReport::supported() const noexcept {
  bool compared = false;
  for (const auto& pair : matched) {
    if (!pair.hydrogen) continue;
    compared = true;
    if (!pair.agrees) return false;
  }
  return compared && uncovered_hydrogen.empty();
}

double oscillator_level_number(double eps, const MatchContext& ctx) {
  if (!(ctx.omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "matching needs omega > 0");
  if (ctx.family == Family::NonRelativistic) return eps / ctx.omega;
  const double m = ctx.osc_mass;
  const double gap = eps - m;
  return std::sqrt(gap * gap * (eps + m) / (2.0 * m * ctx.omega * ctx.omega));
}

double predicted_hydrogen_energy(double eps, const MatchContext& ctx) {
  const double nu = oscillator_level_number(eps, ctx);
  if (ctx.family == Family::NonRelativistic) {
    return -2.0 * ctx.hyd_mass * ctx.kappa * ctx.kappa / (nu * nu);
  }
  const double nu2 = nu * nu;
  const double k2 = ctx.kappa * ctx.kappa;
  return (nu2 - k2) / (nu2 + k2) * ctx.hyd_mass;
}

namespace {

double relative_gap(double predicted, double actual) {
  const double scale = std::abs(actual) > 0.0 ? std::abs(actual) : 1.0;
  return std::abs(predicted - actual) / scale;
}

double pair_tolerance(const SpectrumEntry& a, const SpectrumEntry& b) {
  return (a.method == Method::ClosedForm && b.method == Method::ClosedForm) ? kClosedFormMatchTolerance
                                                                             : kNumericMatchTolerance;
}

}  // namespace

MatchReport match_levels(const std::vector<SpectrumEntry>& osc, const std::vector<SpectrumEntry>& hyd,
                         MatchRule rule, const MatchContext& ctx) {
  MatchReport report;
  report.filter_rule = rule;
  std::vector<bool> hyd_used(hyd.size(), false);

  for (const auto& o : osc) {
    const bool even_lo = (std::abs(o.qn.l) % 2) == 0;
    const bool keep = (rule == MatchRule::EvenLo) ? even_lo : !even_lo;
    if (!keep) {
      report.rejected.push_back(o);
      continue;
    }
    MatchedPair pair;
    pair.oscillator = o;
    pair.predicted_energy = predicted_hydrogen_energy(o.energy, ctx);

    std::optional<std::size_t> partner;
    if (rule == MatchRule::EvenLo) {
      for (std::size_t i = 0; i < hyd.size(); ++i) {
        if (hyd[i].qn.k == o.qn.k && 2 * hyd[i].qn.l == o.qn.l) {
          partner = i;
          break;
        }
      }
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < hyd.size(); ++i) {
        const double gap = std::abs(hyd[i].energy - pair.predicted_energy);
        if (gap < best) {
          best = gap;
          partner = i;
        }
      }
    }
    if (partner) {
      const auto& h = hyd[*partner];
      pair.hydrogen = h;
      pair.relative_discrepancy = relative_gap(pair.predicted_energy, h.energy);
      pair.tolerance = pair_tolerance(o, h);
      pair.agrees = pair.relative_discrepancy <= pair.tolerance;
      if (pair.agrees) hyd_used[*partner] = true;
      if (rule == MatchRule::EvenLo) hyd_used[*partner] = true;
    }
    report.matched.push_back(pair);
  }

  for (std::size_t i = 0; i < hyd.size(); ++i) {
    if (hyd_used[i]) continue;
    if (rule == MatchRule::EvenLo) {
      throw Error(ErrorCode::UnmatchedHydrogenLevel,
                  "hydrogen level (k=" + std::to_string(hyd[i].qn.k) + ", l=" + std::to_string(hyd[i].qn.l) +
                      ") has no even-l_o oscillator partner");
    }
    report.uncovered_hydrogen.push_back(hyd[i]);
  }
  return report;
}

}  // namespace lcdual::spectra
