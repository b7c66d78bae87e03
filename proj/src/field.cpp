#include "lcdual/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lcdual {

std::string_view to_string(Chart chart) noexcept { return chart == Chart::XPlane ? "x-plane" : "u-plane"; }

std::string_view to_string(RadialLayout layout) noexcept {
  return layout == RadialLayout::CellCentered ? "cell-centered" : "nodal";
}

void PolarGrid::validate() const {
  if (n_r < 2) throw Error(ErrorCode::InvalidGrid, "n_r must be >= 2, got " + std::to_string(n_r));
  if (n_theta < 4 || n_theta % 2 != 0) {
    throw Error(ErrorCode::InvalidGrid, "n_theta must be even and >= 4, got " + std::to_string(n_theta));
  }
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw Error(ErrorCode::InvalidGrid, "r_max must be positive");
}

double PolarGrid::dtheta() const noexcept { return 2.0 * std::numbers::pi / n_theta; }

Field2D::Field2D(PolarGrid grid) : grid_(grid) {
  grid_.validate();
  values_.assign(grid_.size(), cplx{});
}

Field2D::Field2D(PolarGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::InvalidGrid, "value count " + std::to_string(values_.size()) +
                                            " does not match grid size " + std::to_string(grid_.size()));
  }
}

Field2D Field2D::sample(const PolarGrid& grid, const std::function<cplx(double, double)>& f) {
  Field2D out(grid);
  for (int i = 0; i < grid.n_r; ++i) {
    const double r = grid.radius(i);
    for (int j = 0; j < grid.n_theta; ++j) out(i, j) = f(r, grid.theta(j));
  }
  return out;
}

Field2D Field2D::from_radial(const PolarGrid& grid, std::span<const cplx> radial, int l) {
  Field2D out(grid);
  if (radial.size() != static_cast<std::size_t>(grid.n_r)) {
    throw Error(ErrorCode::InvalidGrid, "radial profile has " + std::to_string(radial.size()) + " samples, grid has " +
                                            std::to_string(grid.n_r));
  }
  std::vector<cplx> phase(grid.n_theta);
  for (int j = 0; j < grid.n_theta; ++j) phase[j] = std::polar(1.0, l * grid.theta(j));
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) out(i, j) = radial[i] * phase[j];
  }
  return out;
}

bool Field2D::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool Field2D::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& z) { return z == cplx{}; });
}

Spinor2D::Spinor2D(Field2D upper, Field2D lower) : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (!(upper_.grid() == lower_.grid())) throw Error(ErrorCode::InvalidGrid, "spinor components on different grids");
}

}  // namespace lcdual
