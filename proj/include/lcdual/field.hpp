#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lcdual/error.hpp"

namespace lcdual {

using cplx = std::complex<double>;

/// Which plane a field lives on: x (hydrogen) or u (oscillator).
enum class Chart { XPlane, UPlane };

/// CellCentered samples r_i = (i + 1/2) dr never touch the origin; Nodal
/// samples r_i = i dr include both r = 0 and r = r_max.
enum class RadialLayout { CellCentered, Nodal };

std::string_view to_string(Chart chart) noexcept;
std::string_view to_string(RadialLayout layout) noexcept;

struct PolarGrid {
  Chart chart = Chart::XPlane;
  int n_r = 2;
  int n_theta = 4;
  double r_max = 1.0;
  RadialLayout layout = RadialLayout::CellCentered;

  /// Throws InvalidGrid unless n_r >= 2, n_theta >= 4 and even, r_max > 0.
  void validate() const;

  double dr() const noexcept {
    return layout == RadialLayout::CellCentered ? r_max / n_r : r_max / (n_r - 1);
  }
  double dtheta() const noexcept;
  double radius(int i) const noexcept {
    return layout == RadialLayout::CellCentered ? (i + 0.5) * dr() : i * dr();
  }
  double theta(int j) const noexcept { return j * dtheta(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_theta); }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(j);
  }
  bool contains_origin() const noexcept { return layout == RadialLayout::Nodal; }

  friend bool operator==(const PolarGrid&, const PolarGrid&) = default;
};

/// Complex samples on a polar grid, radius-major (index = i * n_theta + j).
class Field2D {
 public:
  explicit Field2D(PolarGrid grid);
  Field2D(PolarGrid grid, std::vector<cplx> values);

  /// f(r, theta) evaluated at every grid point.
  static Field2D sample(const PolarGrid& grid, const std::function<cplx(double r, double theta)>& f);

  /// radial[i] * exp(i l theta); `radial` must have n_r entries.
  static Field2D from_radial(const PolarGrid& grid, std::span<const cplx> radial, int l);

  const PolarGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  cplx operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  cplx& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }

  bool all_finite() const noexcept;
  bool is_zero() const noexcept;

 private:
  PolarGrid grid_;
  std::vector<cplx> values_;
};

/// Two-component spinor; both components share one grid.
class Spinor2D {
 public:
  Spinor2D(Field2D upper, Field2D lower);

  const PolarGrid& grid() const noexcept { return upper_.grid(); }
  const Field2D& upper() const noexcept { return upper_; }
  const Field2D& lower() const noexcept { return lower_; }
  Field2D& upper() noexcept { return upper_; }
  Field2D& lower() noexcept { return lower_; }

 private:
  Field2D upper_;
  Field2D lower_;
};

}  // namespace lcdual
