#pragma once

#include "oracles.hpp"
#include "wdd/core_dsp.hpp"

inline wdd::ComplexVector to_cv(const oracle::Vec& v) { return wdd::ComplexVector(std::vector<std::complex<double>>(v)); }
inline oracle::Vec to_vec(const wdd::ComplexVector& v) { return v.values(); }
inline wdd::ComplexVector rand_cv(std::size_t d, std::uint32_t seed) { return to_cv(oracle::random_vec(d, seed)); }

inline double rel_err(const wdd::ComplexVector& a, const wdd::ComplexVector& b) {
  const double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
  return oracle::max_abs_diff(a.values(), b.values()) / scale;
}

inline oracle::Mat to_mat(const wdd::CMatrix& m) {
  oracle::Mat o(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) o(i, j) = m(i, j);
  return o;
}
