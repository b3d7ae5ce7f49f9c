#pragma once

#include <random>
#include <vector>

#include "nsbench/polynomial.hpp"

namespace nsbench::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long long rand_int(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline Scalar rand_scalar(const Field& f, bool allow_zero = true) {
  for (;;) {
    Scalar s = f.is_rational() ? Scalar::from_rational(f, mpq_class(static_cast<long>(rand_int(-9, 9)), static_cast<unsigned long>(rand_int(1, 4))))
                               : Scalar::from_int(f, rand_int(0, 1000));
    if (allow_zero || !s.is_zero()) return s;
  }
}

/// Random sparse polynomial over x_1..x_n with bounded individual degree.
inline Polynomial rand_poly(const Field& f, int n, int max_terms, unsigned max_ideg) {
  const auto xs = var_range("x", n);
  Polynomial p(f);
  const auto terms = rand_int(1, max_terms);
  for (long long t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> fs;
    for (Var v : xs) {
      if (rand_int(0, 2) == 0) fs.emplace_back(v, static_cast<std::uint32_t>(rand_int(1, max_ideg)));
    }
    p.add_term(Monomial::from_factors(fs), rand_scalar(f, false));
  }
  return p;
}

inline Polynomial P(const char* text, const Field& f = Field::rationals()) { return Polynomial::parse(text, f); }

}  // namespace nsbench::testing
