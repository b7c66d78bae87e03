#pragma once

// Domain types shared by the spectra, Levi-Civita and eigensolver modules.
// Natural units throughout: hbar = c = 1.

#include <optional>
#include <string_view>
#include <variant>

#include "lcdual/error.hpp"

namespace lcdual {

enum class EquationKind { Schroedinger, KleinGordon, Dirac };

std::string_view to_string(EquationKind kind) noexcept;
bool is_relativistic(EquationKind kind) noexcept;

/// V(r) = -kappa / r.
struct Coulomb {
  double kappa = 1.0;
};

/// V(r) = m omega^2 r^2 / 2 (Schroedinger); for the relativistic oscillators
/// the same shape enters with the energy-dependent factor (m + epsilon).
struct Oscillator {
  double omega = 1.0;
};

using PotentialSpec = std::variant<Coulomb, Oscillator>;

inline bool is_coulomb(const PotentialSpec& p) noexcept { return std::holds_alternative<Coulomb>(p); }

/// Which equation, which potential, and the mass (mu for Schroedinger,
/// M or m for the relativistic systems).
struct SystemSpec {
  EquationKind equation = EquationKind::Schroedinger;
  PotentialSpec potential = Coulomb{};
  double mass = 1.0;

  /// kappa for Coulomb, omega for the oscillator.
  double coupling() const noexcept;
};

/// Relativistic Coulomb systems reject kappa >= kCouplingGuardFactor * mass.
inline constexpr double kCouplingGuardFactor = 10.0;

/// Polar labeling: k radial nodes, angular index l (eigenvalue of the planar
/// angular momentum). Only |l| enters the spectra.
struct QuantumNumbers {
  int k = 0;
  int l = 0;

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Cartesian oscillator quanta (n1, n2).
struct CartesianQN {
  int n1 = 0;
  int n2 = 0;

  friend bool operator==(const CartesianQN&, const CartesianQN&) = default;
};

/// Oscillator shell index n1 + n2 = 2k + |l|.
int oscillator_shell(const QuantumNumbers& qn) noexcept;
int oscillator_shell(const CartesianQN& qn) noexcept;

/// True when both labels sit in the same oscillator shell with matching parity.
bool same_oscillator_level(const CartesianQN& cart, const QuantumNumbers& polar) noexcept;

/// Relativistic hydrogen data (M, E, kappa). The non-relativistic variant
/// reuses the struct with M read as the reduced mass mu.
struct HydrogenParams {
  double M = 1.0;
  double E = 0.0;
  double kappa = 1.0;
};

/// Non-relativistic hydrogen (mu, E, kappa); E < 0 for bound states.
struct NrHydrogenParams {
  double mu = 1.0;
  double E = -0.5;
  double kappa = 1.0;

  double bohr_radius() const noexcept { return 1.0 / (mu * kappa); }
};

struct OscillatorParams {
  double m = 1.0;
  double omega = 1.0;
  double epsilon = 1.0;
};

enum class Method { ClosedForm, Numerical };

std::string_view to_string(Method method) noexcept;

struct SpectrumEntry {
  QuantumNumbers qn;
  std::optional<CartesianQN> cartesian;
  double energy = 0.0;
  Method method = Method::ClosedForm;
  /// 0 for closed-form values; a discretization/convergence diagnostic otherwise.
  double residual = 0.0;
};

/// Returns `spec` unchanged when every parameter invariant holds, otherwise
/// throws NonPositiveMass, NonPositiveKappa, NegativeOmega or CouplingTooStrong.
SystemSpec validate_system(const SystemSpec& spec);

}  // namespace lcdual
