#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nsbench/boolcube.hpp"
#include "nsbench/linalg.hpp"
#include "nsbench/polynomial.hpp"

namespace nsbench {

struct VarPartition {
  std::vector<Var> left;
  std::vector<Var> right;

  VarPartition(std::vector<Var> l, std::vector<Var> r) : left(std::move(l)), right(std::move(r)) {
    std::unordered_set<Var, VarHash> seen(left.begin(), left.end());
    for (Var v : right) {
      if (seen.count(v)) throw InvalidArgument("partition sides overlap at " + var_name(v));
    }
  }

  VarPartition swapped() const { return {right, left}; }
};

/// Entry (a, b) = coefficient of x^a y^b; only nonzero rows and columns kept.
struct CoefficientMatrix {
  Field field;
  std::vector<Monomial> row_monomials;
  std::vector<Monomial> col_monomials;
  std::vector<SparseRow> rows;

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
  }
};

inline CoefficientMatrix coefficient_matrix(const Polynomial& f, const VarPartition& part) {
  std::unordered_set<Var, VarHash> left(part.left.begin(), part.left.end());
  std::unordered_set<Var, VarHash> right(part.right.begin(), part.right.end());
  CoefficientMatrix cm{f.field(), {}, {}, {}};
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> ri;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> ci;
  for (const auto& [m, c] : f.sorted_terms()) {
    for (const auto& fac : m.factors()) {
      if (!left.count(fac.first) && !right.count(fac.first)) {
        throw InvalidArgument("variable " + var_name(fac.first) + " is on neither side of the partition");
      }
    }
    const Monomial a = m.restricted([&](Var v) { return left.count(v) != 0; });
    const Monomial b = m.restricted([&](Var v) { return right.count(v) != 0; });
    auto [rit, rnew] = ri.try_emplace(a, static_cast<std::uint32_t>(cm.row_monomials.size()));
    if (rnew) {
      cm.row_monomials.push_back(a);
      cm.rows.emplace_back();
    }
    auto [cit, cnew] = ci.try_emplace(b, static_cast<std::uint32_t>(cm.col_monomials.size()));
    if (cnew) cm.col_monomials.push_back(b);
    cm.rows[rit->second].emplace_back(cit->second, c);
  }
  return cm;
}

inline std::size_t coeff_dim(const Polynomial& f, const VarPartition& part, std::size_t cap = kDefaultSystemCap) {
  const auto cm = coefficient_matrix(f, part);
  return matrix_rank(cm.field, cm.col_monomials.size(), cm.rows, nullptr, cap);
}

/// Rank of a family of polynomials as vectors over their monomials.
inline std::size_t span_rank(const std::vector<Polynomial>& family, std::size_t cap = kDefaultSystemCap) {
  if (family.empty()) return 0;
  const Field f = family.front().field();
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> col;
  std::vector<SparseRow> rows;
  for (const auto& p : family) {
    require_same_field(f, p.field());
    SparseRow r;
    for (const auto& [m, c] : p.terms()) {
      auto [it, fresh] = col.try_emplace(m, static_cast<std::uint32_t>(col.size()));
      r.emplace_back(it->second, c);
    }
    rows.push_back(std::move(r));
  }
  return matrix_rank(f, col.size(), rows, nullptr, cap);
}

/// dim span { f(left, b) : b in S^|right| }.
inline std::size_t eval_dim(const Polynomial& f, const VarPartition& part, const std::vector<Scalar>& S,
                            std::size_t enum_cap = std::size_t{1} << 20) {
  if (S.empty()) throw InvalidArgument("eval_dim: empty evaluation set");
  double count = 1;
  for (std::size_t i = 0; i < part.right.size(); ++i) count *= static_cast<double>(S.size());
  if (count > static_cast<double>(enum_cap)) throw CapExceeded("eval_dim: too many evaluation points");
  std::vector<Polynomial> family;
  std::vector<std::size_t> digit(part.right.size(), 0);
  for (;;) {
    Point pt;
    for (std::size_t i = 0; i < part.right.size(); ++i) pt.emplace(part.right[i], S[digit[i]]);
    family.push_back(partial_evaluate(f, pt));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == S.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return span_rank(family);
}

/// max over prefix cuts of coeff_dim(f, prefix | suffix).
inline std::size_t roabp_width_bound(const Polynomial& f, const std::vector<Var>& order,
                                     std::vector<std::size_t>* per_cut = nullptr) {
  std::size_t best = f.is_zero() ? 0 : 1;
  if (per_cut != nullptr) per_cut->clear();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const VarPartition part(std::vector<Var>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i)),
                            std::vector<Var>(order.begin() + static_cast<std::ptrdiff_t>(i), order.end()));
    const std::size_t r = coeff_dim(f, part);
    if (per_cut != nullptr) per_cut->push_back(r);
    best = std::max(best, r);
  }
  return best;
}

/// Number of distinct leading monomials of a family under `ord`.
inline std::size_t distinct_lm_count(const std::vector<Polynomial>& family, const MonomialOrder& ord) {
  std::unordered_set<Monomial, MonomialHash> lms;
  for (const auto& p : family) {
    if (p.is_zero()) throw InvalidArgument("distinct_lm_count: zero polynomial in family");
    lms.insert(leading_monomial(p, ord));
  }
  return lms.size();
}

// ---------------------------------------------------------------------------
// Read-once oblivious ABPs

/// Computes entry (1,1) of A_1(x_{o_1}) ... A_n(x_{o_n}); every A_i is
/// width x width with entries univariate in its layer variable.
class Roabp {
 public:
  using Matrix = std::vector<std::vector<Polynomial>>;

  Roabp(std::vector<Var> order, std::vector<Matrix> layers) : order_(std::move(order)), layers_(std::move(layers)) {
    if (order_.empty() || order_.size() != layers_.size()) throw InvalidArgument("roabp: one layer per variable");
    std::unordered_set<Var, VarHash> seen;
    width_ = layers_.front().size();
    if (width_ == 0) throw InvalidArgument("roabp: width must be positive");
    field_ = layers_.front().front().front().field();
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      if (!seen.insert(order_[i]).second) throw InvalidArgument("roabp: variable read twice");
      if (layers_[i].size() != width_) throw InvalidArgument("roabp: layers must share one width");
      for (const auto& row : layers_[i]) {
        if (row.size() != width_) throw InvalidArgument("roabp: layer matrices must be square");
        for (const auto& e : row) {
          require_same_field(field_, e.field());
          for (Var v : e.variables()) {
            if (!(v == order_[i])) throw InvalidArgument("roabp: entry not univariate in its layer variable");
          }
        }
      }
    }
  }

  const std::vector<Var>& order() const { return order_; }
  const std::vector<Matrix>& layers() const { return layers_; }
  std::size_t width() const { return width_; }
  const Field& field() const { return field_; }

  Scalar eval(const Point& point) const {
    std::vector<Scalar> row(width_, Scalar(field_));
    row[0] = Scalar::one(field_);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      auto it = point.find(order_[i]);
      if (it == point.end()) throw InvalidArgument("roabp eval: no value for " + var_name(order_[i]));
      const Point single{{order_[i], it->second}};
      std::vector<Scalar> next(width_, Scalar(field_));
      for (std::size_t a = 0; a < width_; ++a) {
        if (row[a].is_zero()) continue;
        for (std::size_t b = 0; b < width_; ++b) {
          const auto& e = layers_[i][a][b];
          if (!e.is_zero()) next[b] += row[a] * nsbench::eval(e, single);
        }
      }
      row = std::move(next);
    }
    return row[0];
  }

  Polynomial expand(std::size_t cap = kDefaultSystemCap) const {
    std::vector<Polynomial> row(width_, Polynomial(field_));
    row[0] = Polynomial::constant(field_, 1);
    for (const auto& layer : layers_) {
      std::vector<Polynomial> next(width_, Polynomial(field_));
      for (std::size_t a = 0; a < width_; ++a) {
        if (row[a].is_zero()) continue;
        for (std::size_t b = 0; b < width_; ++b) {
          if (!layer[a][b].is_zero()) next[b] += row[a] * layer[a][b];
        }
      }
      row = std::move(next);
      std::size_t terms = 0;
      for (const auto& p : row) terms += p.size();
      if (terms > cap) throw CapExceeded("roabp expand: term cap exceeded");
    }
    return row[0];
  }

 private:
  std::vector<Var> order_;
  std::vector<Matrix> layers_;
  std::size_t width_ = 0;
  Field field_;
};

namespace detail {

inline Roabp::Matrix zero_matrix(const Field& f, std::size_t w) {
  return Roabp::Matrix(w, std::vector<Polynomial>(w, Polynomial(f)));
}

inline void require_same_order(const Roabp& p, const Roabp& q) {
  if (p.order() != q.order()) throw InvalidArgument("roabp: programs must share one layer order");
  require_same_field(p.field(), q.field());
}

}  // namespace detail

/// Width r+s program for f+g: block diagonal, with the first layer's first row
/// and the last layer's first column joining the two blocks.
inline Roabp roabp_add(const Roabp& p, const Roabp& q) {
  detail::require_same_order(p, q);
  const std::size_t r = p.width();
  const std::size_t s = q.width();
  const std::size_t n = p.layers().size();
  std::vector<Roabp::Matrix> layers;
  for (std::size_t i = 0; i < n; ++i) {
    auto m = detail::zero_matrix(p.field(), r + s);
    const auto& A = p.layers()[i];
    const auto& B = q.layers()[i];
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) m[a][b] = A[a][b];
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b) m[r + a][r + b] = B[a][b];
    if (n == 1) {
      m[0][0] = A[0][0] + B[0][0];
    } else if (i == 0) {
      for (std::size_t b = 0; b < s; ++b) m[0][r + b] = B[0][b];
    } else if (i + 1 == n) {
      for (std::size_t a = 0; a < s; ++a) m[r + a][0] = B[a][0];
    }
    layers.push_back(std::move(m));
  }
  return Roabp(p.order(), std::move(layers));
}

/// Width rs program for f*g: layerwise Kronecker product.
inline Roabp roabp_mul(const Roabp& p, const Roabp& q) {
  detail::require_same_order(p, q);
  const std::size_t r = p.width();
  const std::size_t s = q.width();
  std::vector<Roabp::Matrix> layers;
  for (std::size_t i = 0; i < p.layers().size(); ++i) {
    auto m = detail::zero_matrix(p.field(), r * s);
    const auto& A = p.layers()[i];
    const auto& B = q.layers()[i];
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        if (A[a][b].is_zero()) continue;
        for (std::size_t c = 0; c < s; ++c)
          for (std::size_t d = 0; d < s; ++d) {
            if (!B[c][d].is_zero()) m[a * s + c][b * s + d] = A[a][b] * B[c][d];
          }
      }
    layers.push_back(std::move(m));
  }
  return Roabp(p.order(), std::move(layers));
}

/// Width-2 program for x_1 + ... + x_n: state (partial sum, 1).
inline Roabp prefix_sum_roabp(const std::vector<Var>& vars, const Field& f = Field::rationals()) {
  std::vector<Roabp::Matrix> layers;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto m = detail::zero_matrix(f, 2);
    const auto x = Polynomial::variable(f, vars[i]);
    const auto one = Polynomial::constant(f, 1);
    if (i == 0) {
      m[0][0] = x;
      m[0][1] = one;
      m[1][1] = one;
    } else {
      m[0][0] = one;
      m[1][0] = x;
      m[1][1] = one;
    }
    layers.push_back(std::move(m));
  }
  return Roabp(vars, std::move(layers));
}

/// Width-1 program for the product of the variables.
inline Roabp product_roabp(const std::vector<Var>& vars, const Field& f = Field::rationals()) {
  std::vector<Roabp::Matrix> layers;
  for (Var v : vars) layers.push_back({{Polynomial::variable(f, v)}});
  return Roabp(vars, std::move(layers));
}

inline Roabp zero_roabp(const std::vector<Var>& vars, const Field& f = Field::rationals()) {
  std::vector<Roabp::Matrix> layers;
  for (std::size_t i = 0; i < vars.size(); ++i) layers.push_back({{Polynomial(f)}});
  return Roabp(vars, std::move(layers));
}

}  // namespace nsbench
