// Shared assertions and small builders for the test suites.

#pragma once

#include <doctest.h>

#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  REQUIRE(a.size() == b.size());
  return (a - b).cwiseAbs().maxCoeff();
}

inline ModeList modes_upto(int n) {
  ModeList m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return m;
}

}  // namespace fermiqit::testing
