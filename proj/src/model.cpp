#include "lcdual/model.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace lcdual {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NonPositiveKappa: return "NonPositiveKappa";
    case ErrorCode::NegativeOmega: return "NegativeOmega";
    case ErrorCode::CouplingTooStrong: return "CouplingTooStrong";
    case ErrorCode::NonPositiveN: return "NonPositiveN";
    case ErrorCode::NonNegativeEnergy: return "NonNegativeEnergy";
    case ErrorCode::EpsilonBelowMass: return "EpsilonBelowMass";
    case ErrorCode::MassNonPositive: return "MassNonPositive";
    case ErrorCode::ImaginaryFrequency: return "ImaginaryFrequency";
    case ErrorCode::NonPositiveS: return "NonPositiveS";
    case ErrorCode::InconsistentMap: return "InconsistentMap";
    case ErrorCode::UnmatchedHydrogenLevel: return "UnmatchedHydrogenLevel";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::DomainNotCovered: return "DomainNotCovered";
    case ErrorCode::OriginOnGrid: return "OriginOnGrid";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::CountExceedsDimension: return "CountExceedsDimension";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::DegenerateEnergy: return "DegenerateEnergy";
    case ErrorCode::NotRelativistic: return "NotRelativistic";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedFile: return "MalformedFile";
  }
  return "Unknown";
}

std::string_view to_string(EquationKind kind) noexcept {
  switch (kind) {
    case EquationKind::Schroedinger: return "schroedinger";
    case EquationKind::KleinGordon: return "kg";
    case EquationKind::Dirac: return "dirac";
  }
  return "unknown";
}

bool is_relativistic(EquationKind kind) noexcept { return kind != EquationKind::Schroedinger; }

std::string_view to_string(Method method) noexcept {
  return method == Method::ClosedForm ? "closed_form" : "numerical";
}

double SystemSpec::coupling() const noexcept {
  if (const auto* c = std::get_if<Coulomb>(&potential)) return c->kappa;
  return std::get<Oscillator>(potential).omega;
}

int oscillator_shell(const QuantumNumbers& qn) noexcept { return 2 * qn.k + std::abs(qn.l); }

int oscillator_shell(const CartesianQN& qn) noexcept { return qn.n1 + qn.n2; }

bool same_oscillator_level(const CartesianQN& cart, const QuantumNumbers& polar) noexcept {
  const int n = oscillator_shell(cart);
  return n == oscillator_shell(polar) && (n % 2) == (std::abs(polar.l) % 2);
}

SystemSpec validate_system(const SystemSpec& spec) {
  if (!(spec.mass > 0.0) || !std::isfinite(spec.mass)) {
    std::ostringstream os;
    os << "mass must be positive, got " << spec.mass;
    throw Error(ErrorCode::NonPositiveMass, os.str());
  }
  if (const auto* c = std::get_if<Coulomb>(&spec.potential)) {
    if (!(c->kappa > 0.0) || !std::isfinite(c->kappa)) {
      std::ostringstream os;
      os << "Coulomb coupling kappa must be positive, got " << c->kappa;
      throw Error(ErrorCode::NonPositiveKappa, os.str());
    }
    if (is_relativistic(spec.equation) && c->kappa >= kCouplingGuardFactor * spec.mass) {
      std::ostringstream os;
      os << "kappa = " << c->kappa << " exceeds the guard " << kCouplingGuardFactor << " * mass";
      throw Error(ErrorCode::CouplingTooStrong, os.str());
    }
  } else {
    const double omega = std::get<Oscillator>(spec.potential).omega;
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
      std::ostringstream os;
      os << "oscillator frequency must be non-negative, got " << omega;
      throw Error(ErrorCode::NegativeOmega, os.str());
    }
  }
  return spec;
}

}  // namespace lcdual
