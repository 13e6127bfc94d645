#pragma once

#include "gaugekit/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gaugekit {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Cached rule of order n; the returned reference stays valid for the
/// lifetime of the program and may be shared across threads.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Interpolating polynomial in x evaluated at x = 0 (Neville). Entry k of the
/// result uses samples 0..k, so the tail shows how the extrapolant settles.
template <typename Value>
std::vector<Value> extrapolate_to_zero(std::span<const double> x, std::span<const Value> y) {
  const std::size_t n = y.size();
  std::vector<Value> column(y.begin(), y.end());
  std::vector<Value> diagonal;
  diagonal.reserve(n);
  diagonal.push_back(column[0]);
  // column[i] holds P_{i-j..i} after pass j.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const double xi = x[i];
      const double xl = x[i - j];
      column[i] = (xl * column[i] - xi * column[i - 1]) / (xl - xi);
      if (i == j) break;
    }
    diagonal.push_back(column[j]);
  }
  return diagonal;
}

}  // namespace gaugekit
