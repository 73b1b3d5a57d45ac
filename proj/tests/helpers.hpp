#pragma once

#include <doctest.h>

#include <random>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"

#define CHECK_CODE(expr, expected)                      \
  do {                                                  \
    bool thrown_ = false;                               \
    try {                                               \
      (void)(expr);                                     \
    } catch (const qcorr::Error& e_) {                  \
      thrown_ = true;                                   \
      CHECK(e_.code() == (expected));                   \
    }                                                   \
    CHECK_MESSAGE(thrown_, "expected a qcorr::Error"); \
  } while (0)

inline qcorr::ComplexMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  qcorr::ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(gen);
      g(i, j) = qcorr::Complex(re, normal(gen));
    }
  }
  return 0.5 * (g + g.adjoint());
}

inline qcorr::ComplexMatrix random_density(Eigen::Index n, std::uint64_t seed) {
  const qcorr::ComplexMatrix h = random_hermitian(n, seed);
  const qcorr::ComplexMatrix p = h * h.adjoint();
  return p / p.trace().real();
}
