#pragma once

// Closed-form spectra of the 2D Coulomb and oscillator problems, the
// hydrogen <-> oscillator parameter maps, and parity-based level matching.

#include <optional>
#include <vector>

#include "lcdual/model.hpp"

namespace lcdual::spectra {

// ---------------------------------------------------------------------------
// Non-relativistic

/// Bohr formula E_n = -kappa / (2 a n^2) with a = 1/(mu kappa), i.e.
/// -mu kappa^2 / (2 n^2). `n` may be a half-integer (2D hydrogen labels).
double nr_bohr_energy(double mu, double kappa, double n);

/// (n1 + n2 + 1) omega.
double nr_oscillator_level(double omega, const CartesianQN& qn);
/// (2k + |l| + 1) omega.
double nr_oscillator_level(double omega, const QuantumNumbers& qn);

/// m = 4 mu, omega = sqrt(-E / 2mu), epsilon = kappa. Requires E < 0.
OscillatorParams nr_map_hydrogen_to_oscillator(double mu, double E, double kappa);

/// Hydrogen levels obtained from the oscillator spectrum: every polar
/// oscillator label (k, l_o) in shells N <= max_level with even l_o is solved
/// for omega from kappa = (N + 1) omega, giving E = -2 mu omega^2. Entries are
/// labeled with the hydrogen numbers (k, l_o / 2).
std::vector<SpectrumEntry> nr_hydrogen_levels_via_oscillator(double mu, double kappa, int max_level);

// ---------------------------------------------------------------------------
// Relativistic (KG and Dirac share the same spectra)

/// kappa = (eps - m)/4, M + E = m + eps, M - E = m omega^2 / 8.
HydrogenParams rel_map_oscillator_to_hydrogen(const OscillatorParams& p);

/// Inverse of rel_map_oscillator_to_hydrogen. Throws MassNonPositive when
/// M + E <= 4 kappa and ImaginaryFrequency when M < E.
OscillatorParams rel_map_hydrogen_to_oscillator(const HydrogenParams& p);

enum class RootSelection { PhysicalBranch, AllRealRoots };

/// Real roots of (eps - m)^2 (eps + m) = 2 m omega^2 (n + 1)^2, ascending.
/// PhysicalBranch yields the single root eps > m (eps = m when omega = 0).
std::vector<double> rel_oscillator_levels(double m, double omega, int n,
                                          RootSelection sel = RootSelection::PhysicalBranch);

/// Shorthand for the PhysicalBranch root.
double rel_oscillator_level(double m, double omega, int n);

/// Signed residual (eps - m)^2 (eps + m) - 2 m omega^2 (n + 1)^2.
double oscillator_cubic_residual(double m, double omega, int n, double eps) noexcept;

/// max(1, m^3, m omega^2 (n+1)^2): the scale the cubic residual is judged against.
double oscillator_cubic_scale(double m, double omega, int n) noexcept;

/// Roots with eps + m == 0 solve the undivided quartic form only trivially.
bool is_mass_factor_root(double m, double eps) noexcept;

/// Same cubic, evaluated directly from hydrogen data through the composite
/// quantities eps - m = 4 kappa, eps + m = M + E and m omega^2 = 8 (M - E).
/// Defined even where the split into (m, omega) has m <= 0. Returned relative
/// to the largest term.
double cubic_relative_residual_from_hydrogen(const HydrogenParams& p, int n) noexcept;

enum class Branch { Plus, Minus };

/// E = (+-s^2 - kappa^2) / (s^2 + kappa^2) M.
double rel_hydrogen_energy(double M, double kappa, int s, Branch sign = Branch::Plus);

/// Hydrogen levels from the oscillator cubic: for every even shell n <= n_max
/// the level E(s = n + 1) is checked against the cubic through the parameter
/// map, and emitted with labels (k, l_o / 2).
std::vector<SpectrumEntry> rel_hydrogen_levels_via_oscillator(double M, double kappa, int n_max);

/// Closed-form level of any validated system in polar labeling.
/// Coulomb: s = 2k + 2|l| + 1; oscillator shell n = 2k + |l|.
double closed_form_energy(const SystemSpec& spec, const QuantumNumbers& qn);

// ---------------------------------------------------------------------------
// Level matching

enum class MatchRule { EvenLo, OddN1N2 };
enum class Family { NonRelativistic, Relativistic };

/// Oscillator (osc_mass, omega) and hydrogen (hyd_mass, kappa) being compared.
struct MatchContext {
  Family family = Family::NonRelativistic;
  double osc_mass = 4.0;
  double omega = 1.0;
  double hyd_mass = 1.0;
  double kappa = 1.0;
};

inline constexpr double kClosedFormMatchTolerance = 1e-8;
inline constexpr double kNumericMatchTolerance = 1e-5;

struct MatchedPair {
  SpectrumEntry oscillator;
  std::optional<SpectrumEntry> hydrogen;
  double predicted_energy = 0.0;  // hydrogen energy implied by the oscillator level
  double relative_discrepancy = 0.0;
  double tolerance = 0.0;
  bool agrees = false;
};

struct MatchReport {
  std::vector<MatchedPair> matched;
  std::vector<SpectrumEntry> rejected;
  std::vector<SpectrumEntry> uncovered_hydrogen;
  MatchRule filter_rule = MatchRule::EvenLo;

  /// Every compared pair agrees and every hydrogen level is reproduced.
  bool supported() const noexcept;
};

/// Effective level number nu of an oscillator level: nu = eps/omega in the
/// non-relativistic case, nu^2 = (eps - m)^2 (eps + m) / (2 m omega^2) in the
/// relativistic one. The parameter maps preserve nu, so it carries a level
/// across to the hydrogen side.
double oscillator_level_number(double eps, const MatchContext& ctx);

/// Hydrogen energy at (hyd_mass, kappa) implied by an oscillator level.
double predicted_hydrogen_energy(double eps, const MatchContext& ctx);

/// EvenLo pairs oscillator (k, l_o) with hydrogen (k, l_o / 2) and throws
/// UnmatchedHydrogenLevel if a hydrogen entry has no partner. OddN1N2 keeps
/// odd shells and pairs each with the hydrogen entry closest in energy.
MatchReport match_levels(const std::vector<SpectrumEntry>& osc, const std::vector<SpectrumEntry>& hyd,
                         MatchRule rule, const MatchContext& ctx);

}  // namespace lcdual::spectra
