#pragma once

#include <cstddef>
#include <span>

namespace lcdual {

/// Pairwise (cascade) summation with a fixed split: the result depends only
/// on the input order, never on how the terms were produced.
inline double pairwise_sum(std::span<const double> terms) noexcept {
  constexpr std::size_t kBlock = 8;
  if (terms.size() <= kBlock) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace lcdual
