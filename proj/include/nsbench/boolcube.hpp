#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nsbench/polynomial.hpp"

namespace nsbench {

inline constexpr unsigned kDefaultCubeLogCap = 22;

/// ml(f): every exponent clamped to 1.
inline Polynomial multilinearize(const Polynomial& f) {
  Polynomial out(f.field());
  for (const auto& [m, c] : f.terms()) out.add_term(m.clamped(), c);
  return out;
}

namespace detail {

inline void check_cube_size(std::size_t n, unsigned log_cap) {
  if (n > log_cap || n >= 63) {
    throw CapExceeded("cube of dimension " + std::to_string(n) + " exceeds cap 2^" + std::to_string(log_cap));
  }
}

// a[S] <- sum over T subset of S of a[T]
inline void zeta_transform(std::vector<Scalar>& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < a.size(); ++s) {
      if (s & bit) a[s] += a[s ^ bit];
    }
  }
}

// inverse of zeta_transform
inline void mobius_transform(std::vector<Scalar>& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < a.size(); ++s) {
      if (s & bit) a[s] -= a[s ^ bit];
    }
  }
}

inline std::unordered_map<Var, std::size_t, VarHash> index_of(const std::vector<Var>& vars) {
  std::unordered_map<Var, std::size_t, VarHash> idx;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!idx.emplace(vars[i], i).second) throw InvalidArgument("repeated cube variable " + var_name(vars[i]));
  }
  return idx;
}

inline std::uint64_t support_mask(const Monomial& m, const std::unordered_map<Var, std::size_t, VarHash>& idx) {
  std::uint64_t mask = 0;
  for (const auto& [v, e] : m.factors()) {
    auto it = idx.find(v);
    if (it == idx.end()) throw InvalidArgument("variable " + var_name(v) + " is not a cube coordinate");
    mask |= std::uint64_t{1} << it->second;
  }
  return mask;
}

inline std::vector<std::pair<std::string, int>> describe_point(const std::vector<Var>& vars, std::uint64_t mask) {
  std::vector<std::pair<std::string, int>> pt;
  pt.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) pt.emplace_back(var_name(vars[i]), static_cast<int>((mask >> i) & 1U));
  return pt;
}

}  // namespace detail

/// Bit i of a point index is the value of vars()[i].
inline std::string mask_to_bits(std::uint64_t mask, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) s[i] = '1';
  }
  return s;
}

/// Function {0,1}^n -> field, either tabulated or backed by an evaluator.
class CubeFunction {
 public:
  using Evaluator = std::function<Scalar(std::uint64_t)>;

  static CubeFunction from_values(std::vector<Var> vars, std::vector<Scalar> values) {
    detail::index_of(vars);
    if (values.size() != (std::uint64_t{1} << vars.size())) throw InvalidArgument("value table size must be 2^n");
    if (values.empty()) throw InvalidArgument("empty value table");
    const Field f = values.front().field();
    for (const auto& v : values) require_same_field(f, v.field());
    CubeFunction c(std::move(vars), f);
    c.table_ = std::move(values);
    return c;
  }

  static CubeFunction from_evaluator(std::vector<Var> vars, const Field& f, Evaluator fn) {
    detail::index_of(vars);
    CubeFunction c(std::move(vars), f);
    c.eval_ = std::move(fn);
    return c;
  }

  /// Values of a polynomial on the cube, via the zeta transform of ml(f).
  static CubeFunction tabulate(const Polynomial& f, std::vector<Var> vars, unsigned log_cap = kDefaultCubeLogCap) {
    detail::check_cube_size(vars.size(), log_cap);
    const auto idx = detail::index_of(vars);
    std::vector<Scalar> a(std::uint64_t{1} << vars.size(), Scalar(f.field()));
    for (const auto& [m, c] : f.terms()) a[detail::support_mask(m, idx)] += c;
    detail::zeta_transform(a, vars.size());
    return from_values(std::move(vars), std::move(a));
  }

  const std::vector<Var>& vars() const { return vars_; }
  const Field& field() const { return field_; }
  std::size_t arity() const { return vars_.size(); }
  std::uint64_t size() const { return std::uint64_t{1} << vars_.size(); }
  bool is_tabulated() const { return !table_.empty(); }

  Scalar value(std::uint64_t mask) const {
    if (is_tabulated()) return table_.at(mask);
    return eval_(mask);
  }

  /// Dense table, materializing an evaluator-backed function if needed.
  std::vector<Scalar> values(unsigned log_cap = kDefaultCubeLogCap) const {
    if (is_tabulated()) return table_;
    detail::check_cube_size(arity(), log_cap);
    std::vector<Scalar> out;
    out.reserve(size());
    for (std::uint64_t s = 0; s < size(); ++s) out.push_back(eval_(s));
    return out;
  }

  /// CSV with header `bits,value`; character i of `bits` is vars()[i].
  void write_csv(std::ostream& os) const {
    os << "bits,value\n";
    for (std::uint64_t s = 0; s < size(); ++s) os << mask_to_bits(s, arity()) << ',' << value(s).to_string() << '\n';
  }

  static CubeFunction read_csv(std::istream& is, std::vector<Var> vars, const Field& f) {
    std::string line;
    if (!std::getline(is, line) || line != "bits,value") throw ParseError("cube CSV: missing header 'bits,value'");
    const std::size_t n = vars.size();
    std::vector<std::optional<Scalar>> seen(std::uint64_t{1} << n);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos || comma != n) throw ParseError("cube CSV: bad row '" + line + "'");
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (line[i] == '1') {
          mask |= std::uint64_t{1} << i;
        } else if (line[i] != '0') {
          throw ParseError("cube CSV: bad bit string '" + line.substr(0, n) + "'");
        }
      }
      seen[mask] = parse_scalar(f, line.substr(comma + 1));
    }
    std::vector<Scalar> values;
    values.reserve(seen.size());
    for (std::size_t s = 0; s < seen.size(); ++s) {
      if (!seen[s]) throw ParseError("cube CSV: missing point " + mask_to_bits(s, n));
      values.push_back(*seen[s]);
    }
    return from_values(std::move(vars), std::move(values));
  }

 private:
  CubeFunction(std::vector<Var> vars, const Field& f) : vars_(std::move(vars)), field_(f) {}

  std::vector<Var> vars_;
  Field field_;
  std::vector<Scalar> table_;
  Evaluator eval_;
};

/// Unique multilinear polynomial agreeing with F on the cube (Mobius transform).
inline Polynomial interpolate(const CubeFunction& fn, unsigned log_cap = kDefaultCubeLogCap) {
  std::vector<Scalar> a = fn.values(log_cap);
  detail::mobius_transform(a, fn.arity());
  Polynomial p(fn.field());
  for (std::uint64_t s = 0; s < a.size(); ++s) {
    if (a[s].is_zero()) continue;
    std::vector<Var> vs;
    for (std::size_t i = 0; i < fn.arity(); ++i) {
      if ((s >> i) & 1U) vs.push_back(fn.vars()[i]);
    }
    p.add_term(Monomial::product(vs), a[s]);
  }
  return p;
}

/// First Boolean zero of f in index order, if any.
inline std::optional<std::uint64_t> find_root_on_cube(const Polynomial& f, const std::vector<Var>& vars,
                                                      unsigned log_cap = kDefaultCubeLogCap) {
  const auto table = CubeFunction::tabulate(f, vars, log_cap);
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    if (table.value(s).is_zero()) return s;
  }
  return std::nullopt;
}

/// Multilinear g with g*f = 1 on the cube over `vars` (which must cover f).
inline Polynomial inverse_on_cube(const Polynomial& f, std::vector<Var> vars, unsigned log_cap = kDefaultCubeLogCap) {
  auto table = CubeFunction::tabulate(f, vars, log_cap).values(log_cap);
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    if (table[s].is_zero()) {
      throw SatisfiablePoint("axiom vanishes at Boolean point " + mask_to_bits(s, vars.size()),
                             detail::describe_point(vars, s));
    }
    table[s] = table[s].inverse();
  }
  return interpolate(CubeFunction::from_values(std::move(vars), std::move(table)), log_cap);
}

inline Polynomial inverse_on_cube(const Polynomial& f, unsigned log_cap = kDefaultCubeLogCap) {
  return inverse_on_cube(f, f.variables(), log_cap);
}

}  // namespace nsbench
