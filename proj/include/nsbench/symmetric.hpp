#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "nsbench/boolcube.hpp"
#include "nsbench/polynomial.hpp"

namespace nsbench {

/// e_{d}(vars): sum of all multilinear degree-d monomials.
inline Polynomial elementary(int d, const std::vector<Var>& vars, const Field& f = Field::rationals()) {
  const int n = static_cast<int>(vars.size());
  if (d < 0 || d > n) {
    throw InvalidArgument("elementary: need 0 <= d <= n, got d=" + std::to_string(d) + " n=" + std::to_string(n));
  }
  // e_k over the first i variables, built up one variable at a time.
  std::vector<Polynomial> e(static_cast<std::size_t>(d) + 1, Polynomial(f));
  e[0] = Polynomial::constant(f, 1);
  for (int i = 0; i < n; ++i) {
    const Polynomial xi = Polynomial::variable(f, vars[static_cast<std::size_t>(i)]);
    for (int k = std::min(d, i + 1); k >= 1; --k) e[static_cast<std::size_t>(k)] += e[static_cast<std::size_t>(k) - 1] * xi;
  }
  return e[static_cast<std::size_t>(d)];
}

inline Polynomial elementary(int d, int n, const Field& f = Field::rationals()) {
  return elementary(d, var_range("x", n), f);
}

/// True iff f is invariant under every permutation of `vars`: coefficients are
/// constant on each orbit of exponent multisets and every orbit is complete.
inline bool is_symmetric(const Polynomial& f, const std::vector<Var>& vars) {
  std::unordered_map<Var, std::size_t, VarHash> idx;
  for (std::size_t i = 0; i < vars.size(); ++i) idx.emplace(vars[i], i);
  struct Orbit {
    Scalar coeff;
    std::size_t seen = 0;
  };
  std::map<std::vector<std::uint32_t>, Orbit> orbits;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> key(vars.size(), 0);
    for (const auto& [v, e] : m.factors()) {
      auto it = idx.find(v);
      if (it == idx.end()) return false;
      key[it->second] = e;
    }
    std::sort(key.begin(), key.end());
    auto [it, fresh] = orbits.try_emplace(key, Orbit{c, 0});
    if (!fresh && !(it->second.coeff == c)) return false;
    ++it->second.seen;
  }
  for (const auto& [key, orbit] : orbits) {
    // orbit size n! / prod(mult!)
    mpz_class size;
    mpz_fac_ui(size.get_mpz_t(), key.size());
    for (std::size_t i = 0; i < key.size();) {
      std::size_t j = i;
      while (j < key.size() && key[j] == key[i]) ++j;
      mpz_class fac;
      mpz_fac_ui(fac.get_mpz_t(), j - i);
      size /= fac;
      i = j;
    }
    if (size != orbit.seen) return false;
  }
  return true;
}

inline bool is_symmetric(const Polynomial& f) { return is_symmetric(f, f.variables()); }

struct SymmetricDecomposition {
  std::vector<Var> vars;
  std::vector<Scalar> lambdas;  // lambdas[i] multiplies e_{i,n}

  Polynomial reconstruct() const {
    const Field f = lambdas.empty() ? Field::rationals() : lambdas.front().field();
    Polynomial p(f);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (!lambdas[i].is_zero()) p += elementary(static_cast<int>(i), vars, f) * lambdas[i];
    }
    return p;
  }
};

/// f = sum_i lambda_i e_{i,n}(vars), peeled from the top degree down.
inline SymmetricDecomposition decompose_multilinear_symmetric(const Polynomial& f, const std::vector<Var>& vars) {
  if (!f.is_multilinear()) throw NotMultilinear("decompose: polynomial is not multilinear");
  if (!is_symmetric(f, vars)) throw NotSymmetric("decompose: polynomial is not symmetric in the given variables");
  const int n = static_cast<int>(vars.size());
  SymmetricDecomposition out{vars, std::vector<Scalar>(static_cast<std::size_t>(n) + 1, Scalar(f.field()))};
  Polynomial rest = f;
  for (int d = n; d >= 0; --d) {
    const Polynomial slice = rest.homogeneous_slice(static_cast<std::uint32_t>(d));
    const std::vector<Var> head(vars.begin(), vars.begin() + d);
    const Scalar lambda = slice.coeff(Monomial::product(head));
    if (!(slice == elementary(d, vars, f.field()) * lambda)) {
      throw NotSymmetric("decompose: degree-" + std::to_string(d) + " slice is not a multiple of e_" + std::to_string(d));
    }
    out.lambdas[static_cast<std::size_t>(d)] = lambda;
    rest -= slice;
  }
  return out;
}

inline SymmetricDecomposition decompose_multilinear_symmetric(const Polynomial& f) {
  return decompose_multilinear_symmetric(f, f.variables());
}

struct ProductSlice {
  Scalar c;               // top slice = c * e_{d+k,n}
  Polynomial product;     // ml(e_{d,n} * e_{k,n})
  Polynomial remainder;   // product minus the top slice
};

/// Leading slice of ml(e_{d,n} e_{k,n}); throws if it is not proportional to e_{d+k,n}.
inline ProductSlice product_leading_slice(int d, int k, int n, const Field& f = Field::rationals()) {
  if (d < 1 || d > n || k < 0 || k > n - d) {
    throw InvalidArgument("product_leading_slice: need 1 <= d <= n and 0 <= k <= n-d");
  }
  const auto xs = var_range("x", n);
  const Polynomial prod = multilinearize(elementary(d, xs, f) * elementary(k, xs, f));
  const Polynomial slice = prod.homogeneous_slice(static_cast<std::uint32_t>(d + k));
  const Scalar c = slice.coeff(Monomial::product(std::vector<Var>(xs.begin(), xs.begin() + d + k)));
  if (!(slice == elementary(d + k, xs, f) * c)) {
    throw Error("product_leading_slice: top slice is not proportional to e_" + std::to_string(d + k));
  }
  return {c, prod, prod - slice};
}

}  // namespace nsbench
