#pragma once

#include <random>
#include <vector>

#include "../oracle.hpp"
#include "prkit/linalg.hpp"

namespace testing {

inline oracle::Q to_q(const prkit::Rational& r) {
  return oracle::Q(oracle::Z(r.num().get_str())) / oracle::Q(oracle::Z(r.den().get_str()));
}

inline oracle::Mat to_oracle(const prkit::FiniteMatrix& m) {
  oracle::Mat out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_q(m(i, j)));
  return out;
}

inline std::vector<std::vector<std::int64_t>> to_int(const prkit::FiniteMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).num().get_si());
  return out;
}

inline prkit::FiniteMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int span,
                                         int den = 1) {
  std::uniform_int_distribution<int> num(-span, span), d(1, den);
  prkit::FiniteMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = prkit::Rational(num(rng), d(rng));
  return m;
}

}  // namespace testing
