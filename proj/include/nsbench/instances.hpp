#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsbench/boolcube.hpp"
#include "nsbench/symmetric.hpp"

namespace nsbench {

inline constexpr std::size_t kDefaultTermCap = 4'000'000;

struct VarGroup {
  std::string name;
  std::vector<Var> vars;
};

enum class SatStatus { Unsatisfiable, Satisfiable, Unverified };

inline std::string to_string(SatStatus s) {
  switch (s) {
    case SatStatus::Unsatisfiable:
      return "unsatisfiable";
    case SatStatus::Satisfiable:
      return "satisfiable";
    case SatStatus::Unverified:
      return "unverified";
  }
  return "?";
}

/// One non-Boolean axiom `core - beta`. The core is kept as a product of
/// factors so huge products can still be restricted before expansion.
struct Instance {
  std::string generator;
  nlohmann::json params = nlohmann::json::object();
  Field field;
  Scalar beta;
  std::vector<Polynomial> factors;
  std::vector<VarGroup> groups;
  SatStatus status = SatStatus::Unverified;
  std::optional<std::uint64_t> witness;  // cube index of a zero, when satisfiable

  std::vector<Var> variables() const {
    std::vector<Var> out;
    for (const auto& g : groups) out.insert(out.end(), g.vars.begin(), g.vars.end());
    return out;
  }

  const VarGroup& group(const std::string& name) const {
    for (const auto& g : groups) {
      if (g.name == name) return g;
    }
    throw InvalidArgument("instance has no variable group '" + name + "'");
  }

  bool has_group(const std::string& name) const {
    return std::any_of(groups.begin(), groups.end(), [&](const VarGroup& g) { return g.name == name; });
  }

  /// Expanded core product; refuses when the naive term bound exceeds `cap`.
  Polynomial core(std::size_t cap = kDefaultTermCap) const {
    double bound = 1;
    for (const auto& f : factors) bound *= static_cast<double>(std::max<std::size_t>(f.size(), 1));
    if (bound > static_cast<double>(cap)) {
      throw CapExceeded("core expansion of " + generator + " may reach " + std::to_string(bound) + " terms");
    }
    Polynomial p = Polynomial::constant(Scalar::one(field));
    for (const auto& f : factors) p *= f;
    return p;
  }

  /// Core with some variables fixed, expanding factor by factor.
  Polynomial core_under(const Point& point, std::size_t cap = kDefaultTermCap) const {
    Polynomial p = Polynomial::constant(Scalar::one(field));
    for (const auto& f : factors) {
      const Polynomial r = partial_evaluate(f, point);
      if (r.is_zero()) return Polynomial(field);
      if (r.is_constant()) {
        p *= r.constant_term();
        continue;
      }
      p *= r;
      if (p.size() > cap) throw CapExceeded("restricted core exceeds " + std::to_string(cap) + " terms");
    }
    return p;
  }

  Polynomial axiom(std::size_t cap = kDefaultTermCap) const { return core(cap) - Polynomial::constant(beta); }

  nlohmann::json metadata() const {
    nlohmann::json groups_json = nlohmann::json::object();
    for (const auto& g : groups) {
      auto& arr = groups_json[g.name] = nlohmann::json::array();
      for (Var v : g.vars) arr.push_back(var_name(v));
    }
    nlohmann::json j{{"generator", generator},
                     {"params", params},
                     {"beta", beta.to_string()},
                     {"field", field.tag()},
                     {"var_groups", groups_json},
                     {"variables", variables().size()},
                     {"status", to_string(status)}};
    if (witness) j["witness"] = mask_to_bits(*witness, variables().size());
    return j;
  }
};

/// Brute-force satisfiability over the cube when it fits under the cap.
inline void classify(Instance& inst, unsigned log_cap = kDefaultCubeLogCap) {
  const auto vars = inst.variables();
  if (vars.size() > log_cap) {
    inst.status = SatStatus::Unverified;
    return;
  }
  const auto root = find_root_on_cube(inst.axiom(), vars, log_cap);
  inst.status = root ? SatStatus::Satisfiable : SatStatus::Unsatisfiable;
  inst.witness = root;
}

namespace detail {

inline void throw_if_satisfiable(const Instance& inst) {
  if (inst.status != SatStatus::Satisfiable) return;
  const auto vars = inst.variables();
  throw SatisfiablePoint(inst.generator + " is satisfiable with beta=" + inst.beta.to_string() + " at " +
                             mask_to_bits(*inst.witness, vars.size()),
                         describe_point(vars, *inst.witness));
}

inline void require_beta_outside_unit(const Scalar& beta) {
  const Field& f = beta.field();
  for (int v : {-1, 0, 1}) {
    if (beta == Scalar::from_int(f, v)) throw InvalidArgument("beta must avoid {-1, 0, 1}, got " + beta.to_string());
  }
}

inline Polynomial var_poly(const Field& f, Var v) { return Polynomial::variable(f, v); }

}  // namespace detail

/// x_1 + ... + x_n - beta.
inline Instance subset_sum(int n, const Scalar& beta, unsigned log_cap = kDefaultCubeLogCap) {
  if (n < 1) throw InvalidArgument("subset_sum: n must be positive");
  const Field& f = beta.field();
  Instance inst;
  inst.generator = "subset-sum";
  inst.params = {{"n", n}};
  inst.field = f;
  inst.beta = beta;
  inst.groups = {{"x", var_range("x", n)}};
  inst.factors = {Polynomial::sum_of(f, inst.groups[0].vars)};
  // The core takes exactly the values 0..n.
  for (int k = 0; k <= n; ++k) {
    if (beta == Scalar::from_int(f, k)) {
      inst.status = SatStatus::Satisfiable;
      inst.witness = (std::uint64_t{1} << k) - 1;
    }
  }
  if (inst.status != SatStatus::Satisfiable) {
    if (static_cast<unsigned>(n) <= log_cap) {
      classify(inst, log_cap);
    } else {
      inst.status = SatStatus::Unsatisfiable;
    }
  }
  detail::throw_if_satisfiable(inst);
  return inst;
}

/// e_{d,n}(x) - beta.
inline Instance symmetric_instance(int d, int n, const Scalar& beta, unsigned log_cap = kDefaultCubeLogCap) {
  const Field& f = beta.field();
  Instance inst;
  inst.generator = "sym";
  inst.params = {{"d", d}, {"n", n}};
  inst.field = f;
  inst.beta = beta;
  inst.groups = {{"x", var_range("x", n)}};
  inst.factors = {elementary(d, inst.groups[0].vars, f)};
  classify(inst, log_cap);
  return inst;
}

/// prod over odd i of (v_i w_{i+1} - w_i v_{i+1}); v, w of equal even length.
inline Polynomial q_tilde(const std::vector<Var>& v, const std::vector<Var>& w, const Field& f = Field::rationals()) {
  if (v.size() != w.size() || v.size() % 2 != 0) throw InvalidArgument("q_tilde: need |v| = |w| even");
  Polynomial p = Polynomial::constant(f, 1);
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
    const auto a = detail::var_poly(f, v[i]) * detail::var_poly(f, w[i + 1]);
    const auto b = detail::var_poly(f, w[i]) * detail::var_poly(f, v[i + 1]);
    p *= a - b;
  }
  return p;
}

inline Polynomial q_tilde(int n, const Field& f = Field::rationals()) {
  return q_tilde(var_range("x", 2 * n), var_range("y", 2 * n), f);
}

/// Q(x,y) = prod_{i odd} (x_i y_{i+1} - y_i x_{i+1}) - beta on 4n variables.
inline Instance invariant_Q(int n, const Scalar& beta, unsigned log_cap = kDefaultCubeLogCap) {
  if (n < 1) throw InvalidArgument("invariant_Q: n must be positive");
  detail::require_beta_outside_unit(beta);
  const Field& f = beta.field();
  Instance inst;
  inst.generator = "q";
  inst.params = {{"n", n}};
  inst.field = f;
  inst.beta = beta;
  inst.groups = {{"x", var_range("x", 2 * n)}, {"y", var_range("y", 2 * n)}};
  const auto& x = inst.groups[0].vars;
  const auto& y = inst.groups[1].vars;
  for (int i = 0; i < 2 * n; i += 2) {
    const auto a = detail::var_poly(f, x[i]) * detail::var_poly(f, y[i + 1]);
    const auto b = detail::var_poly(f, y[i]) * detail::var_poly(f, x[i + 1]);
    inst.factors.push_back(a - b);
  }
  classify(inst, log_cap);
  detail::throw_if_satisfiable(inst);
  return inst;
}

/// y_j -> x_j + y_j and y_{j+1} -> x_{j+1} + y_{j+1}, j odd; x untouched.
inline Polynomial apply_phi(int j, const Polynomial& f, std::optional<int> n = std::nullopt) {
  if (j < 1 || j % 2 == 0) throw InvalidArgument("apply_phi: j must be a positive odd index");
  if (n && j + 1 > 2 * *n) throw InvalidArgument("apply_phi: j+1 exceeds 2n");
  const Field& fd = f.field();
  Substitution s;
  for (int i : {j, j + 1}) {
    s.emplace(var("y", {i}), detail::var_poly(fd, var("x", {i})) + detail::var_poly(fd, var("y", {i})));
  }
  return substitute(f, s);
}

inline Var z_var(int i, int j, int k, int l) { return var("z", {i, j, k, l}); }

/// P(u,z) = prod_{i<j<k<l} (1 - z + z(u_i u_l - u_j u_k)) - beta, kept factored.
inline Instance lifted_P(int n, const Scalar& beta, unsigned log_cap = kDefaultCubeLogCap) {
  if (n < 1 || n > 6) throw InvalidArgument("lifted_P: n must be in [1, 6]");
  detail::require_beta_outside_unit(beta);
  const Field& f = beta.field();
  Instance inst;
  inst.generator = "p";
  inst.params = {{"n", n}};
  inst.field = f;
  inst.beta = beta;
  const int N = 4 * n;
  inst.groups = {{"u", var_range("u", N)}, {"z", {}}};
  const auto& u = inst.groups[0].vars;
  const auto one = Polynomial::constant(f, 1);
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      for (int k = j + 1; k <= N; ++k) {
        for (int l = k + 1; l <= N; ++l) {
          const Var z = z_var(i, j, k, l);
          inst.groups[1].vars.push_back(z);
          const auto zp = detail::var_poly(f, z);
          const auto det = detail::var_poly(f, u[i - 1]) * detail::var_poly(f, u[l - 1]) -
                           detail::var_poly(f, u[j - 1]) * detail::var_poly(f, u[k - 1]);
          inst.factors.push_back(one - zp + zp * det);
        }
      }
    }
  }
  classify(inst, log_cap);
  detail::throw_if_satisfiable(inst);
  return inst;
}

/// z-assignment planting Q(v,w) inside P, with the orders of v and w it plants.
struct PlantingAssignment {
  Point z;
  std::vector<Var> v;
  std::vector<Var> w;
  std::vector<std::array<int, 4>> quadruples;  // the z indices set to 1
};

namespace detail {

// Splits positions 1..4n into quadruples a<b<c<d with {a,d} and {b,c} each
// meeting both sides. Such a factor u_a u_d - u_b u_c has the shape
// v_i w_{i+1} - w_i v_{i+1}.
inline bool find_quadruples(std::vector<int>& rest, const std::vector<int>& side,
                            std::vector<std::array<int, 4>>& out) {
  if (rest.empty()) return true;
  const int a = rest.front();
  for (std::size_t i1 = 1; i1 < rest.size(); ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < rest.size(); ++i2) {
      for (std::size_t i3 = i2 + 1; i3 < rest.size(); ++i3) {
        const int b = rest[i1];
        const int c = rest[i2];
        const int d = rest[i3];
        if (side[a] == side[d] || side[b] == side[c]) continue;
        std::vector<int> next;
        for (std::size_t t = 1; t < rest.size(); ++t) {
          if (t != i1 && t != i2 && t != i3) next.push_back(rest[t]);
        }
        out.push_back({a, b, c, d});
        if (find_quadruples(next, side, out)) return true;
        out.pop_back();
      }
    }
  }
  return false;
}

}  // namespace detail

/// Planting assignment for a balanced partition (v, w) of u_1..u_{4n}.
/// Throws InvalidArgument when no quadruple split exists.
inline PlantingAssignment plant_Q(const std::vector<Var>& v_set, const std::vector<Var>& w_set, int n,
                                  const Field& f = Field::rationals()) {
  if (static_cast<int>(v_set.size()) != 2 * n || static_cast<int>(w_set.size()) != 2 * n) {
    throw InvalidArgument("plant_Q: partition must have |v| = |w| = 2n");
  }
  const int N = 4 * n;
  const auto u = var_range("u", N);
  std::vector<int> side(static_cast<std::size_t>(N) + 1, -1);
  std::unordered_map<Var, int, VarHash> pos;
  for (int i = 0; i < N; ++i) pos.emplace(u[i], i + 1);
  for (int s = 0; s < 2; ++s) {
    for (Var x : (s == 0 ? v_set : w_set)) {
      auto it = pos.find(x);
      if (it == pos.end() || side[it->second] != -1) throw InvalidArgument("plant_Q: not a partition of u_1..u_4n");
      side[it->second] = s;
    }
  }
  std::vector<int> rest(N);
  for (int i = 0; i < N; ++i) rest[i] = i + 1;
  PlantingAssignment out;
  if (!detail::find_quadruples(rest, side, out.quadruples)) {
    throw InvalidArgument("plant_Q: no planting of Q exists for this partition");
  }
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      for (int k = j + 1; k <= N; ++k) {
        for (int l = k + 1; l <= N; ++l) out.z.emplace(z_var(i, j, k, l), Scalar(f));
      }
    }
  }
  for (const auto& [a, b, c, d] : out.quadruples) {
    out.z[z_var(a, b, c, d)] = Scalar::one(f);
    // u_a u_d - u_b u_c == v_i w_{i+1} - w_i v_{i+1}
    const Var ua = u[a - 1], ub = u[b - 1], uc = u[c - 1], ud = u[d - 1];
    const Var vb_or_c = side[b] == 0 ? ub : uc;  // v_{i+1}
    const Var wb_or_c = side[b] == 0 ? uc : ub;  // w_i
    if (side[a] == 0) {
      out.v.insert(out.v.end(), {ua, vb_or_c});
      out.w.insert(out.w.end(), {wb_or_c, ud});
    } else {
      out.v.insert(out.v.end(), {ud, vb_or_c});
      out.w.insert(out.w.end(), {wb_or_c, ua});
    }
  }
  return out;
}

/// Lifted symmetric instance: f = sum lambda_i e_{i,n} becomes
/// sum lambda_i e_{i,m}(z_ij x_i x_j) - beta over m = C(2n,2) pairs.
inline Instance lifted_symmetric_star(const Polynomial& f, const std::vector<Var>& f_vars, const Scalar& beta,
                                      std::size_t term_cap = kDefaultTermCap) {
  const Field& fd = beta.field();
  require_same_field(fd, f.field());
  const auto dec = decompose_multilinear_symmetric(f, f_vars);
  const int n = static_cast<int>(f_vars.size());
  Instance inst;
  inst.generator = "sym-star";
  inst.params = {{"n", n}, {"f", f.to_string()}};
  inst.field = fd;
  inst.beta = beta;
  inst.groups = {{"z", {}}, {"x", var_range("x", 2 * n)}};
  std::vector<Polynomial> w;
  for (int i = 1; i <= 2 * n; ++i) {
    for (int j = i + 1; j <= 2 * n; ++j) {
      const Var z = var("z", {i, j});
      inst.groups[0].vars.push_back(z);
      w.push_back(Polynomial::term(Monomial::product({z, var("x", {i}), var("x", {j})}), Scalar::one(fd)));
    }
  }
  // e_k(w) for k <= n by the usual one-variable-at-a-time recurrence.
  std::vector<Polynomial> e(static_cast<std::size_t>(n) + 1, Polynomial(fd));
  e[0] = Polynomial::constant(fd, 1);
  for (std::size_t t = 0; t < w.size(); ++t) {
    for (std::size_t k = std::min<std::size_t>(n, t + 1); k >= 1; --k) {
      e[k] += e[k - 1] * w[t];
      if (e[k].size() > term_cap) throw CapExceeded("lifted_symmetric_star: term cap exceeded");
    }
  }
  Polynomial core(fd);
  for (std::size_t i = 0; i < dec.lambdas.size(); ++i) {
    if (!dec.lambdas[i].is_zero()) core += e[i] * dec.lambdas[i];
  }
  inst.factors = {core};
  classify(inst);
  return inst;
}

/// alpha_{2k-1,2k} = 1, all other z 0: pairs x_{2k-1} (as u_k) with x_{2k} (as v_k).
inline Point matching_assignment(int n, const Field& f = Field::rationals()) {
  Point pt;
  for (int i = 1; i <= 2 * n; ++i) {
    for (int j = i + 1; j <= 2 * n; ++j) {
      pt.emplace(var("z", {i, j}), (i % 2 == 1 && j == i + 1) ? Scalar::one(f) : Scalar(f));
    }
  }
  return pt;
}

// ---------------------------------------------------------------------------
// Words and knapsack over a word

struct Interval {
  int lo = 0;
  int hi = -1;
  int size() const { return hi - lo + 1; }
  bool meets(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
};

/// A word in Z^d with its positive/negative index sets and intervals.
class Word {
 public:
  explicit Word(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidArgument("word must be nonempty");
    int sp = 0;
    int sn = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const int e = entries_[i];
      if (e == 0) throw InvalidArgument("word entries must be nonzero");
      if (e > 0) {
        P_.push_back(static_cast<int>(i) + 1);
        A_.push_back({sp + 1, sp + e});
        sp += e;
      } else {
        N_.push_back(static_cast<int>(i) + 1);
        B_.push_back({sn + 1, sn - e});
        sn -= e;
      }
    }
    pos_sum_ = sp;
    neg_sum_ = sn;
  }

  const std::vector<int>& entries() const { return entries_; }
  const std::vector<int>& positive() const { return P_; }
  const std::vector<int>& negative() const { return N_; }
  /// A intervals, aligned with positive().
  const std::vector<Interval>& a_intervals() const { return A_; }
  /// B intervals, aligned with negative().
  const std::vector<Interval>& b_intervals() const { return B_; }
  int positive_sum() const { return pos_sum_; }
  int negative_sum() const { return neg_sum_; }
  int sum() const { return pos_sum_ - neg_sum_; }
  int max_abs() const {
    int m = 0;
    for (int e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  bool n_heavy() const { return neg_sum_ >= pos_sum_; }

  /// Every A interval meets some B interval and vice versa.
  bool balanced() const {
    for (const auto& a : A_) {
      if (std::none_of(B_.begin(), B_.end(), [&](const Interval& b) { return a.meets(b); })) return false;
    }
    for (const auto& b : B_) {
      if (std::none_of(A_.begin(), A_.end(), [&](const Interval& a) { return a.meets(b); })) return false;
    }
    return !A_.empty() && !B_.empty();
  }

  /// Number of B intervals met by each A interval.
  std::vector<int> meets_per_a() const {
    std::vector<int> out;
    for (const auto& a : A_) {
      out.push_back(static_cast<int>(std::count_if(B_.begin(), B_.end(), [&](const Interval& b) { return a.meets(b); })));
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? "," : "") + std::to_string(entries_[i]);
    return s + ")";
  }

 private:
  std::vector<int> entries_;
  std::vector<int> P_, N_;
  std::vector<Interval> A_, B_;
  int pos_sum_ = 0;
  int neg_sum_ = 0;
};

/// k copies of h, then k1 copies of -floor(h'), k2 copies of -ceil(h'),
/// with h' = hk/(d-k), k1 = (d-k)ceil(h') - kh, k2 = d-k-k1.
inline Word word_from_params(int h, int d, int k) {
  if (h < 1) throw InvalidArgument("word_from_params: h must be positive");
  if (!(0 < k && k < d)) throw InvalidArgument("word_from_params: need 0 < k < d");
  const int num = h * k;
  const int den = d - k;
  const int fl = num / den;
  const int ce = (num + den - 1) / den;
  const int k1 = den * ce - k * h;
  const int k2 = den - k1;
  if (k1 < 0 || k2 < 0) throw InvalidArgument("word_from_params: k1 or k2 negative");
  std::vector<int> w(static_cast<std::size_t>(k), h);
  w.insert(w.end(), static_cast<std::size_t>(k1), -fl);
  w.insert(w.end(), static_cast<std::size_t>(k2), -ce);
  for (int e : w) {
    if (e == 0) throw InvalidArgument("word_from_params: construction yields a zero entry");
    if (std::abs(e) > h) throw InvalidArgument("word_from_params: entry outside [-h, h]");
  }
  return Word(std::move(w));
}

inline mpq_class word_h_prime(int h, int d, int k) { return mpq_class(h * k, d - k); }

/// One variable block X(w_i): variables indexed by binary strings on an interval.
struct KsBlock {
  int index = 0;  // 1-based position in the word
  Interval interval;
  std::vector<Var> vars;  // vars[s]: bit t of s is the value at position interval.lo + t
};

struct KnapsackInstance {
  Instance instance;
  Word word;
  bool n_heavy = true;
  std::vector<KsBlock> positive;  // x blocks
  std::vector<KsBlock> negative;  // y blocks
  int max_core = 0;
};

inline std::string bitstring(std::uint64_t s, int len) {
  std::string out(static_cast<std::size_t>(len), '0');
  for (int t = 0; t < len; ++t) {
    if ((s >> t) & 1U) out[static_cast<std::size_t>(t)] = '1';
  }
  return out;
}

/// ks_w = sum_i sum_sigma x^{(i)}_sigma f^{(i)}_sigma - beta (roles swapped when
/// w is not N-heavy). Default beta is the largest core value plus one.
inline KnapsackInstance knapsack_word(const Word& w, std::optional<Scalar> beta_opt,
                                      const Field& f = Field::rationals(), std::size_t var_cap = 4096,
                                      unsigned log_cap = kDefaultCubeLogCap) {
  if (!w.balanced()) throw InvalidArgument("knapsack_word: word " + w.to_string() + " is not balanced");
  std::size_t nvars = 0;
  for (int e : w.entries()) {
    if (std::abs(e) > 30) throw CapExceeded("knapsack_word: entry too large");
    nvars += std::size_t{1} << std::abs(e);
  }
  if (nvars > var_cap) throw CapExceeded("knapsack_word: " + std::to_string(nvars) + " variables over cap");

  KnapsackInstance ks{Instance{}, w, w.n_heavy(), {}, {}, 0};
  const auto make_blocks = [&](const std::vector<int>& idx, const std::vector<Interval>& iv, const char* prefix) {
    std::vector<KsBlock> out;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      KsBlock blk{idx[b], iv[b], {}};
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << iv[b].size()); ++s) {
        blk.vars.push_back(var(std::string(prefix) + "_" + std::to_string(idx[b]) + "_" + bitstring(s, iv[b].size())));
      }
      out.push_back(std::move(blk));
    }
    return out;
  };
  ks.positive = make_blocks(w.positive(), w.a_intervals(), "x");
  ks.negative = make_blocks(w.negative(), w.b_intervals(), "y");

  const auto& outer = ks.n_heavy ? ks.positive : ks.negative;
  const auto& inner = ks.n_heavy ? ks.negative : ks.positive;
  // sigma on `o` and sigma_j on `in` agree on the overlap
  const auto compatible = [](const Interval& o, std::uint64_t s, const Interval& in, std::uint64_t t) {
    const int lo = std::max(o.lo, in.lo);
    const int hi = std::min(o.hi, in.hi);
    for (int p = lo; p <= hi; ++p) {
      if (((s >> (p - o.lo)) & 1U) != ((t >> (p - in.lo)) & 1U)) return false;
    }
    return true;
  };
  Polynomial core(f);
  long long max_core = 0;
  for (const auto& ob : outer) {
    for (std::uint64_t s = 0; s < ob.vars.size(); ++s) {
      Polynomial term = Polynomial::variable(f, ob.vars[s]);
      long long count = 1;
      for (const auto& ib : inner) {
        if (!ob.interval.meets(ib.interval)) continue;
        Polynomial sum(f);
        long long c = 0;
        for (std::uint64_t t = 0; t < ib.vars.size(); ++t) {
          if (compatible(ob.interval, s, ib.interval, t)) {
            sum.add_term(Monomial::of(ib.vars[t]), Scalar::one(f));
            ++c;
          }
        }
        term *= sum;
        count *= c;
      }
      core += term;
      max_core += count;
    }
  }
  ks.max_core = static_cast<int>(max_core);

  Instance& inst = ks.instance;
  inst.generator = "ks-word";
  nlohmann::json word_json = w.entries();
  inst.params = {{"word", word_json}, {"n_heavy", ks.n_heavy}, {"max_core", max_core}};
  inst.field = f;
  inst.beta = beta_opt ? *beta_opt : Scalar::from_int(f, max_core + 1);
  require_same_field(f, inst.beta.field());
  inst.factors = {core};
  VarGroup xg{"x", {}};
  VarGroup yg{"y", {}};
  for (const auto& b : ks.positive) xg.vars.insert(xg.vars.end(), b.vars.begin(), b.vars.end());
  for (const auto& b : ks.negative) yg.vars.insert(yg.vars.end(), b.vars.begin(), b.vars.end());
  inst.groups = {xg, yg};
  classify(inst, log_cap);
  return ks;
}

}  // namespace nsbench
