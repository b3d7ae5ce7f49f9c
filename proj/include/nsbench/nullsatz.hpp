#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nsbench/boolcube.hpp"
#include "nsbench/instances.hpp"
#include "nsbench/linalg.hpp"

namespace nsbench {

/// sum_i g_i f_i + sum_j h_j (x_j^2 - x_j) = 1. boolean_cofactors[j] pairs
/// with variables[j].
struct NsCertificate {
  Field field;
  std::vector<Polynomial> axioms;
  std::vector<Polynomial> cofactors;
  std::vector<Var> variables;
  std::vector<Polynomial> boolean_cofactors;

  /// max deg(g_i f_i); -1 when every product vanishes.
  int degree() const {
    int d = -1;
    for (std::size_t i = 0; i < axioms.size() && i < cofactors.size(); ++i) {
      if (!cofactors[i].is_zero()) d = std::max(d, cofactors[i].degree() + axioms[i].degree());
    }
    return d;
  }

  std::size_t sparsity() const {
    std::size_t s = 0;
    for (const auto& g : cofactors) s += g.size();
    for (const auto& h : boolean_cofactors) s += h.size();
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    const auto texts = [](const std::vector<Polynomial>& ps) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& p : ps) a.push_back(p.to_string());
      return a;
    };
    j["axioms"] = texts(axioms);
    j["cofactors"] = texts(cofactors);
    j["boolean_cofactors"] = texts(boolean_cofactors);
    j["variables"] = nlohmann::json::array();
    for (Var v : variables) j["variables"].push_back(var_name(v));
    j["degree"] = degree();
    j["field"] = field.tag();
    return j;
  }

  static NsCertificate from_json(const nlohmann::json& j) {
    NsCertificate c;
    c.field = Field::parse(j.at("field").get<std::string>());
    for (const auto& t : j.at("axioms")) c.axioms.push_back(Polynomial::parse(t.get<std::string>(), c.field));
    for (const auto& t : j.at("cofactors")) c.cofactors.push_back(Polynomial::parse(t.get<std::string>(), c.field));
    for (const auto& t : j.at("boolean_cofactors")) {
      c.boolean_cofactors.push_back(Polynomial::parse(t.get<std::string>(), c.field));
    }
    if (j.contains("variables")) {
      for (const auto& t : j.at("variables")) c.variables.push_back(var(t.get<std::string>()));
    }
    return c;
  }
};

inline Polynomial boolean_axiom(const Field& f, Var v) {
  return Polynomial::term(Monomial::of(v, 2), Scalar::one(f)) - Polynomial::variable(f, v);
}

/// The left-hand side sum_i g_i f_i + sum_j h_j (x_j^2 - x_j).
inline Polynomial certificate_combination(const std::vector<Polynomial>& axioms, const NsCertificate& cert) {
  if (cert.cofactors.size() != axioms.size()) throw InvalidArgument("verify: one cofactor per axiom required");
  if (cert.boolean_cofactors.size() != cert.variables.size()) {
    throw InvalidArgument("verify: one Boolean cofactor per variable required");
  }
  Polynomial sum(cert.field);
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    require_same_field(cert.field, axioms[i].field());
    sum += cert.cofactors[i] * axioms[i];
  }
  for (std::size_t j = 0; j < cert.variables.size(); ++j) {
    sum += cert.boolean_cofactors[j] * boolean_axiom(cert.field, cert.variables[j]);
  }
  return sum;
}

inline bool verify(const std::vector<Polynomial>& axioms, const NsCertificate& cert) {
  const Polynomial sum = certificate_combination(axioms, cert);
  return sum == Polynomial::constant(cert.field, 1);
}

inline bool verify(const NsCertificate& cert) { return verify(cert.axioms, cert); }

/// p = ml(p) + sum_j quotients[j] (x_j^2 - x_j), via
/// x^a = x + (x^2 - x)(1 + x + ... + x^{a-2}).
struct BooleanReduction {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

inline BooleanReduction reduce_boolean(const Polynomial& p, const std::vector<Var>& vars) {
  const Field& f = p.field();
  BooleanReduction out{p, std::vector<Polynomial>(vars.size(), Polynomial(f))};
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Var v = vars[j];
    Polynomial next(f);
    for (const auto& [m, c] : out.remainder.terms()) {
      const auto a = m.exponent(v);
      if (a < 2) {
        next.add_term(m, c);
        continue;
      }
      const Monomial rest = m.without(v);
      next.add_term(rest * Monomial::of(v), c);
      for (std::uint32_t t = 0; t + 2 <= a; ++t) out.quotients[j].add_term(rest * Monomial::of(v, t), c);
    }
    out.remainder = std::move(next);
  }
  return out;
}

/// Certificate g = inverse_on_cube(f) with Boolean cofactors from reduce_boolean.
inline NsCertificate certificate_from_inverse(const Polynomial& axiom, const std::vector<Var>& vars,
                                              unsigned log_cap = kDefaultCubeLogCap) {
  const Field& f = axiom.field();
  const Polynomial g = inverse_on_cube(axiom, vars, log_cap);
  auto red = reduce_boolean(g * axiom - Polynomial::constant(f, 1), vars);
  if (!red.remainder.is_zero()) throw Error("certificate_from_inverse: ml(g f) != 1");
  NsCertificate cert{f, {axiom}, {g}, vars, {}};
  for (auto& q : red.quotients) cert.boolean_cofactors.push_back(-q);
  return cert;
}

enum class SearchOutcome { Found, NoneAtDegree, CapExceeded };

inline std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found:
      return "found";
    case SearchOutcome::NoneAtDegree:
      return "none";
    case SearchOutcome::CapExceeded:
      return "cap-exceeded";
  }
  return "?";
}

struct SearchReport {
  int degree = 0;
  SearchOutcome outcome = SearchOutcome::NoneAtDegree;
  std::optional<NsCertificate> certificate;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  LinalgStats stats;
  std::string note;

  nlohmann::json to_json() const {
    nlohmann::json j{{"degree", degree},
                     {"outcome", to_string(outcome)},
                     {"unknowns", unknowns},
                     {"equations", equations},
                     {"nnz", stats.nnz},
                     {"rank", stats.rank},
                     {"reductions", stats.reductions},
                     {"peak_row_nnz", stats.peak_row_nnz},
                     {"millis", stats.millis}};
    if (!note.empty()) j["note"] = note;
    if (certificate) j["certificate"] = certificate->to_json();
    return j;
  }
};

/// All monomials over `vars` of total degree <= d, in ascending grlex order.
inline std::vector<Monomial> monomials_up_to(const std::vector<Var>& vars, int d, bool multilinear) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  out.push_back(Monomial());
  for (Var v : vars) {
    const std::size_t existing = out.size();
    for (std::size_t i = 0; i < existing; ++i) {
      const Monomial base = out[i];
      const int room = d - static_cast<int>(base.degree());
      const int top = multilinear ? std::min(room, 1) : room;
      for (int e = 1; e <= top; ++e) out.push_back(base * Monomial::of(v, static_cast<std::uint32_t>(e)));
    }
  }
  const auto ord = MonomialOrder::grlex(vars);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  return out;
}

/// One degree probe: unknown coefficients for g_i (deg(m) + deg f_i <= D) and
/// h_j (deg <= D-2); rows are monomials; right-hand side is 1 at monomial 1.
inline SearchReport search_at_degree(const std::vector<Polynomial>& axioms, const std::vector<Var>& vars, int D,
                                     bool multilinear_cofactors, std::size_t cap = kDefaultSystemCap) {
  if (axioms.empty()) throw InvalidArgument("search: no axioms");
  const Field& f = axioms.front().field();
  for (const auto& a : axioms) require_same_field(f, a.field());
  SearchReport rep;
  rep.degree = D;

  struct Column {
    int owner;  // axiom index, or -(j+1) for Boolean axiom j
    Monomial m;
  };
  std::vector<Column> cols;
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    for (const auto& m : monomials_up_to(vars, D - axioms[i].degree(), multilinear_cofactors)) {
      cols.push_back({static_cast<int>(i), m});
    }
  }
  std::vector<Polynomial> bool_axioms;
  for (Var v : vars) bool_axioms.push_back(boolean_axiom(f, v));
  for (std::size_t j = 0; j < vars.size(); ++j) {
    for (const auto& m : monomials_up_to(vars, D - 2, multilinear_cofactors)) {
      cols.push_back({-static_cast<int>(j) - 1, m});
    }
  }
  rep.unknowns = cols.size();

  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  std::vector<SparseRow> rows;
  std::size_t nnz = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Polynomial& base = cols[c].owner >= 0 ? axioms[static_cast<std::size_t>(cols[c].owner)]
                                                : bool_axioms[static_cast<std::size_t>(-cols[c].owner - 1)];
    for (const auto& [m, coef] : base.terms()) {
      const Monomial prod = m * cols[c].m;
      auto [it, fresh] = row_of.try_emplace(prod, rows.size());
      if (fresh) rows.emplace_back();
      rows[it->second].emplace_back(static_cast<std::uint32_t>(c), coef);
      if (++nnz > cap) {
        rep.outcome = SearchOutcome::CapExceeded;
        rep.note = "system exceeds " + std::to_string(cap) + " nonzeros";
        rep.stats.nnz = nnz;
        return rep;
      }
    }
  }
  auto [one_it, fresh] = row_of.try_emplace(Monomial(), rows.size());
  if (fresh) rows.emplace_back();
  rep.equations = rows.size();

  const auto sol = solve_system(f, cols.size(), rows, {{one_it->second, Scalar::one(f)}}, &rep.stats, cap + 1);
  if (!sol) {
    rep.outcome = SearchOutcome::NoneAtDegree;
    return rep;
  }
  NsCertificate cert{f, axioms, std::vector<Polynomial>(axioms.size(), Polynomial(f)), vars,
                     std::vector<Polynomial>(vars.size(), Polynomial(f))};
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if ((*sol)[c].is_zero()) continue;
    if (cols[c].owner >= 0) {
      cert.cofactors[static_cast<std::size_t>(cols[c].owner)].add_term(cols[c].m, (*sol)[c]);
    } else {
      cert.boolean_cofactors[static_cast<std::size_t>(-cols[c].owner - 1)].add_term(cols[c].m, (*sol)[c]);
    }
  }
  if (!verify(cert)) throw Error("search: solver returned a certificate that does not verify");
  rep.outcome = SearchOutcome::Found;
  rep.certificate = std::move(cert);
  return rep;
}

/// Probes D = 1..max_degree in order. Stops early after a cap overflow.
inline std::vector<SearchReport> search_min_degree(const std::vector<Polynomial>& axioms, const std::vector<Var>& vars,
                                                   int max_degree, bool multilinear_cofactors,
                                                   std::size_t cap = kDefaultSystemCap) {
  std::vector<SearchReport> out;
  for (int D = 1; D <= max_degree; ++D) {
    out.push_back(search_at_degree(axioms, vars, D, multilinear_cofactors, cap));
    if (out.back().outcome == SearchOutcome::CapExceeded) break;
  }
  return out;
}

inline std::vector<SearchReport> search_min_degree(const Instance& inst, int max_degree, bool multilinear_cofactors,
                                                   std::size_t cap = kDefaultSystemCap) {
  return search_min_degree({inst.axiom()}, inst.variables(), max_degree, multilinear_cofactors, cap);
}

/// Degree of the multilinear inverse of the instance axiom on its cube.
inline int functional_degree(const Instance& inst, unsigned log_cap = kDefaultCubeLogCap) {
  return inverse_on_cube(inst.axiom(), inst.variables(), log_cap).degree();
}

/// max over variables of deg_v(a) + deg_v(b): the individual degree of a*b
/// over an integral domain, without expanding the product.
inline std::uint32_t product_individual_degree(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  std::unordered_map<Var, std::uint32_t, VarHash> da;
  std::unordered_map<Var, std::uint32_t, VarHash> db;
  for (const auto& [m, c] : a.terms()) {
    for (const auto& [v, e] : m.factors()) da[v] = std::max(da[v], e);
  }
  for (const auto& [m, c] : b.terms()) {
    for (const auto& [v, e] : m.factors()) db[v] = std::max(db[v], e);
  }
  std::uint32_t best = 0;
  for (const auto& [v, e] : da) best = std::max(best, e + (db.count(v) ? db.at(v) : 0));
  for (const auto& [v, e] : db) best = std::max(best, e + (da.count(v) ? da.at(v) : 0));
  return best;
}

struct FphpReport {
  int n = 0;
  bool identity_holds = false;
  std::size_t p_terms = 0;
  std::size_t p_sub_terms = 0;
  std::uint32_t ideg_p_sub = 0;
  std::uint32_t ideg_main = 0;     // of p_sub * f_sub
  std::uint32_t ideg_boolean = 0;  // of the substituted h_k (y_k^2 - y_k)
  std::uint32_t ideg_certificate = 0;

  nlohmann::json to_json() const {
    return {{"n", n},
            {"identity_holds", identity_holds},
            {"p_terms", p_terms},
            {"p_sub_terms", p_sub_terms},
            {"ideg_p_sub", ideg_p_sub},
            {"ideg_main_product", ideg_main},
            {"ideg_boolean_products", ideg_boolean},
            {"ideg_certificate", ideg_certificate}};
  }
};

/// p = 1/(y_1 + ... + y_n - (n+1)) on the cube, checked by ml(p f) = 1, then
/// y_k -> sum_{i <= n+1} x_i_k substituted into the whole certificate.
inline FphpReport fphp_knapsack_identity(int n, const Field& f = Field::rationals(), int max_n = 10) {
  if (n < 1 || n > max_n) throw CapExceeded("fphp: n must be in [1, " + std::to_string(max_n) + "]");
  const auto ys = var_range("y", n);
  const Polynomial axiom = Polynomial::sum_of(f, ys) - Polynomial::constant(f, n + 1);
  const auto cert = certificate_from_inverse(axiom, ys);
  const Polynomial& p = cert.cofactors.front();
  FphpReport rep;
  rep.n = n;
  rep.p_terms = p.size();
  rep.identity_holds = multilinearize(p * axiom) == Polynomial::constant(f, 1) && verify(cert);

  Substitution s;
  for (int k = 1; k <= n; ++k) {
    Polynomial sum(f);
    for (int i = 1; i <= n + 1; ++i) sum.add_term(Monomial::of(var("x", {i, k})), Scalar::one(f));
    s.emplace(ys[static_cast<std::size_t>(k) - 1], sum);
  }
  const Polynomial p_sub = substitute(p, s);
  rep.p_sub_terms = p_sub.size();
  rep.ideg_p_sub = p_sub.individual_degree();
  rep.ideg_main = product_individual_degree(p_sub, substitute(axiom, s));
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const Polynomial h_sub = substitute(cert.boolean_cofactors[k], s);
    const Polynomial b_sub = substitute(boolean_axiom(f, ys[k]), s);
    rep.ideg_boolean = std::max(rep.ideg_boolean, product_individual_degree(h_sub, b_sub));
  }
  rep.ideg_certificate = std::max(rep.ideg_main, rep.ideg_boolean);
  return rep;
}

}  // namespace nsbench
