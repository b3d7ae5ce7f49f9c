#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nsbench/boolcube.hpp"
#include "nsbench/dimension.hpp"
#include "nsbench/instances.hpp"
#include "nsbench/measures.hpp"
#include "nsbench/nullsatz.hpp"
#include "nsbench/symmetric.hpp"

namespace nsbench {

inline constexpr const char* kReportSchema = "nsbench.report/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitSatisfiable = 3,
  kExitCapExceeded = 4,
  kExitError = 5,
};

struct LemmaResult {
  bool pass = false;
  std::string summary;
  nlohmann::json data = nlohmann::json::object();
};

/// Parameters shared by every lemma check; absent entries fall back to per-lemma defaults.
struct LemmaParams {
  Field field = Field::rationals();
  std::optional<int> n;
  std::optional<int> d;
  std::optional<int> k;
  std::optional<int> h;
  std::optional<std::string> beta;
  std::optional<std::string> word;
  std::uint64_t seed = 20240611;
  unsigned log_cap = kDefaultCubeLogCap;

  int get_n(int fallback) const { return n.value_or(fallback); }
  Scalar get_beta(const std::string& fallback) const { return parse_scalar(field, beta.value_or(fallback)); }
};

namespace detail {

inline std::string bits_of(std::uint64_t s, int n) { return bitstring(s, n); }

/// x_{S_sigma} y_{complement}: position 2i-1 or 2i goes to x as sigma_i is 0 or 1.
inline Monomial sigma_monomial(std::uint64_t sigma, int n) {
  std::vector<Var> vs;
  for (int i = 1; i <= n; ++i) {
    const bool bit = (sigma >> (i - 1)) & 1U;
    vs.push_back(var("x", {bit ? 2 * i : 2 * i - 1}));
    vs.push_back(var("y", {bit ? 2 * i - 1 : 2 * i}));
  }
  return Monomial::product(vs);
}

inline Polynomial q_inverse(int n, const Scalar& beta, unsigned log_cap) {
  const auto inst = invariant_Q(n, beta, log_cap);
  return inverse_on_cube(inst.axiom(), inst.variables(), log_cap);
}

inline std::pair<Scalar, Scalar> q_expected(const Scalar& beta) {
  const Scalar one = Scalar::one(beta.field());
  return {(beta * (one - beta)).inverse(), (beta * (one + beta)).inverse()};
}

inline LemmaResult lemma_xsyt(const LemmaParams& p) {
  const int n = p.get_n(1);
  const Scalar beta = p.get_beta("3");
  const Polynomial g = q_inverse(n, beta, p.log_cap);
  const auto [even, odd] = q_expected(beta);
  LemmaResult r;
  r.pass = true;
  nlohmann::json table = nlohmann::json::array();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const Monomial m = sigma_monomial(s, n);
    const Scalar want = (__builtin_popcountll(s) % 2 == 0) ? even : odd;
    const Scalar got = g.coeff(m);
    table.push_back({{"sigma", bits_of(s, n)}, {"monomial", m.to_string()}, {"coefficient", got.to_string()},
                     {"expected", want.to_string()}});
    if (!(got == want)) r.pass = false;
  }
  const Scalar c0 = g.coeff(sigma_monomial(0, n));
  r.data = {{"coefficient", c0.to_string()},
            {"expected_even", even.to_string()},
            {"expected_odd", odd.to_string()},
            {"sigma_table", table}};
  r.summary = "coefficient of x_S y_T = " + c0.to_string();
  return r;
}

inline LemmaResult lemma_phi(const LemmaParams& p) {
  const int n = p.get_n(2);
  const Polynomial qt = q_tilde(n, p.field);
  LemmaResult r;
  r.pass = true;
  nlohmann::json failing = nlohmann::json::array();
  for (int j = 1; j < 2 * n; j += 2) {
    if (!(apply_phi(j, qt, n) == qt)) {
      r.pass = false;
      failing.push_back(j);
    }
  }
  r.data = {{"n", n}, {"failing_j", failing}};
  r.summary = r.pass ? "phi_j fixes the product for every odd j" : "phi_j moves the product";
  return r;
}

inline LemmaResult lemma_q_four_conditions(const LemmaParams& p) {
  const int n = p.get_n(1);
  const Scalar beta = p.get_beta("3");
  LemmaResult r;
  const auto phi = lemma_phi(p);
  const auto part2 = lemma_xsyt(p);
  const Polynomial g = q_inverse(n, beta, p.log_cap);
  const auto xs = var_range("x", 2 * n);
  const std::unordered_set<Var, VarHash> xset(xs.begin(), xs.end());
  std::size_t part3_bad = 0;
  std::string part3_witness;
  for (const auto& [m, c] : g.terms()) {
    std::size_t sx = 0;
    std::size_t sy = 0;
    for (const auto& [v, e] : m.factors()) (xset.count(v) ? sx : sy) += 1;
    const auto mid = [n](std::size_t s) { return s > 0 && s < static_cast<std::size_t>(n); };
    if (mid(sx) || mid(sy)) {
      ++part3_bad;
      if (part3_witness.empty()) part3_witness = m.to_string();
    }
  }
  std::set<Monomial> sigma_monos;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) sigma_monos.insert(sigma_monomial(s, n));
  const Polynomial top = g.homogeneous_slice(static_cast<std::uint32_t>(2 * n));
  std::size_t part4_bad = 0;
  std::string part4_witness;
  for (const auto& [m, c] : top.terms()) {
    if (!sigma_monos.count(m)) {
      ++part4_bad;
      if (part4_witness.empty()) part4_witness = m.to_string();
    }
  }
  const bool part2_count = top.size() == (std::size_t{1} << n);
  r.pass = phi.pass && part2.pass && part2_count && part3_bad == 0 && part4_bad == 0;
  r.data = {{"part1_phi", phi.pass},
            {"part2_coefficients", part2.pass},
            {"part2_top_monomials", top.size()},
            {"part3_violations", part3_bad},
            {"part4_violations", part4_bad},
            {"coefficients", part2.data}};
  if (!part3_witness.empty()) r.data["part3_witness"] = part3_witness;
  if (!part4_witness.empty()) r.data["part4_witness"] = part4_witness;
  r.summary = "degree-" + std::to_string(2 * n) + " slice has " + std::to_string(top.size()) + " monomials";
  return r;
}

inline LemmaResult lemma_q_slice_dim(const LemmaParams& p) {
  const int n = p.get_n(2);
  const Scalar beta = p.get_beta("3");
  const Polynomial g = q_inverse(n, beta, p.log_cap);
  const auto slice = g.homogeneous_slice(static_cast<std::uint32_t>(2 * n));
  const std::size_t dim = coeff_dim(slice, {var_range("x", 2 * n), var_range("y", 2 * n)});
  LemmaResult r;
  r.pass = dim == (std::size_t{1} << n);
  r.data = {{"n", n}, {"coeff_dim", dim}, {"expected", std::size_t{1} << n}};
  r.summary = "coefficient dimension of the top slice = " + std::to_string(dim);
  return r;
}

inline LemmaResult lemma_sym_degree(const LemmaParams& p) {
  const int n = p.get_n(6);
  const int d = p.d.value_or(2);
  const Scalar beta = p.get_beta("3");
  const auto inst = symmetric_instance(d, n, beta, p.log_cap);
  detail::throw_if_satisfiable(inst);
  const int deg = functional_degree(inst, p.log_cap);
  LemmaResult r;
  r.pass = deg >= n - d + 1 && deg <= n && (d != 1 || deg == n);
  r.data = {{"n", n}, {"d", d}, {"degree", deg}, {"lower_bound", n - d + 1}, {"upper_bound", n}};
  r.summary = "observed degree " + std::to_string(deg) + " (bound " + std::to_string(n - d + 1) + ")";
  return r;
}

inline LemmaResult lemma_product_slice(const LemmaParams& p) {
  const int n = p.get_n(4);
  const int d = p.d.value_or(1);
  const int k = p.k.value_or(1);
  LemmaResult r;
  try {
    const auto s = product_leading_slice(d, k, n, p.field);
    r.pass = !s.c.is_zero();
    r.data = {{"c", s.c.to_string()}, {"binomial", binomial(d + k, d).get_str()},
              {"power_of_two", mpz_class(mpz_class(1) << (d + k)).get_str()}};
    r.summary = "top slice = " + s.c.to_string() + " * e_" + std::to_string(d + k);
  } catch (const Error& e) {
    if (dynamic_cast<const InvalidArgument*>(&e) != nullptr) throw;
    r.pass = false;
    r.summary = e.what();
  }
  return r;
}

inline std::vector<std::pair<std::vector<Var>, std::vector<Var>>> balanced_partitions(int n) {
  const auto u = var_range("u", 4 * n);
  std::vector<std::pair<std::vector<Var>, std::vector<Var>>> out;
  const int N = 4 * n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    if (__builtin_popcountll(mask) != 2 * n) continue;
    std::vector<Var> v;
    std::vector<Var> w;
    for (int i = 0; i < N; ++i) ((mask >> i) & 1U ? v : w).push_back(u[static_cast<std::size_t>(i)]);
    out.emplace_back(std::move(v), std::move(w));
  }
  return out;
}

struct PlantOutcome {
  bool planted = false;
  bool identity = false;
  std::string v;
  std::string w;
  std::string note;
};

inline PlantOutcome plant_one(const Instance& P, const std::vector<Var>& v, const std::vector<Var>& w, int n) {
  PlantOutcome o;
  const auto join = [](const std::vector<Var>& xs) {
    std::string s;
    for (Var x : xs) s += (s.empty() ? "" : ",") + var_name(x);
    return s;
  };
  o.v = join(v);
  o.w = join(w);
  try {
    const auto pl = plant_Q(v, w, n, P.field);
    o.planted = true;
    o.identity = P.core_under(pl.z) == q_tilde(pl.v, pl.w, P.field);
  } catch (const InvalidArgument& e) {
    o.note = e.what();
  }
  return o;
}

inline LemmaResult lemma_plant(const LemmaParams& p) {
  const int n = p.get_n(1);
  if (n < 1 || n > 2) throw InvalidArgument("plant: n must be 1 or 2");
  const Scalar beta = p.get_beta("3");
  const auto P = lifted_P(n, beta, p.log_cap);
  auto parts = balanced_partitions(n);
  if (n == 2 && p.k) {
    // a sample of k partitions drawn with the given seed
    std::mt19937_64 gen(p.seed);
    std::shuffle(parts.begin(), parts.end(), gen);
    parts.resize(std::min<std::size_t>(parts.size(), static_cast<std::size_t>(*p.k)));
  }
  LemmaResult r;
  r.pass = true;
  nlohmann::json rows = nlohmann::json::array();
  std::size_t ok = 0;
  for (const auto& [v, w] : parts) {
    const auto o = plant_one(P, v, w, n);
    const bool good = o.planted && o.identity;
    ok += good ? 1 : 0;
    r.pass = r.pass && good;
    nlohmann::json row{{"v", o.v}, {"w", o.w}, {"planted", o.planted}, {"identity", o.identity}};
    if (!o.note.empty()) row["note"] = o.note;
    rows.push_back(row);
  }
  r.data = {{"n", n}, {"partitions", parts.size()}, {"identity_holds", ok}, {"rows", rows}};
  r.summary = std::to_string(ok) + "/" + std::to_string(parts.size()) + " partitions planted";
  return r;
}

inline LemmaResult lemma_fphp(const LemmaParams& p) {
  const int n = p.get_n(2);
  const auto rep = fphp_knapsack_identity(n, p.field);
  LemmaResult r;
  r.pass = rep.identity_holds && rep.ideg_certificate <= 2;
  r.data = rep.to_json();
  r.summary = "individual degree " + std::to_string(rep.ideg_certificate);
  return r;
}

inline Word word_from_lemma_params(const LemmaParams& p) {
  if (p.word) {
    std::vector<int> entries;
    std::string cur;
    for (char ch : *p.word + "/") {
      if (ch == '/' || ch == ',') {
        if (!cur.empty()) entries.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return Word(entries);
  }
  return word_from_params(p.h.value_or(1), p.d.value_or(2), p.k.value_or(1));
}

inline LemmaResult lemma_ks_main_claim(const LemmaParams& p) {
  const Word w = word_from_lemma_params(p);
  std::optional<Scalar> beta;
  if (p.beta) beta = parse_scalar(p.field, *p.beta);
  const auto ks = knapsack_word(w, beta, p.field, 4096, p.log_cap);
  detail::throw_if_satisfiable(ks.instance);
  const auto rep = check_main_claim(ks, p.log_cap);
  LemmaResult r;
  r.pass = rep.ok();
  r.data = {{"word", w.entries()},      {"beta", ks.instance.beta.to_string()},
            {"alphas", rep.alphas},     {"gammas", rep.gammas},
            {"route_mismatches", rep.route_mismatches}, {"claim_violations", rep.claim_violations},
            {"rank", rep.rank}};
  if (!rep.failures.empty()) r.data["first_failure"] = rep.failures.front();
  r.summary = "h_alpha family rank " + std::to_string(rep.rank) + " of " + std::to_string(rep.alphas);
  return r;
}

inline LemmaResult lemma_ks_degree(const LemmaParams& p) {
  const int h = p.h.value_or(2);
  const int d = p.d.value_or(4);
  const int k = p.k.value_or(2);
  const Word w = word_from_params(h, d, k);
  const mpq_class hp = word_h_prime(h, d, k);
  const bool in_range = hp * 3 >= h && hp <= h;
  const auto ks = knapsack_word(w, std::nullopt, p.field, 1U << 16, 0);
  const int deg = ks.instance.core().degree();
  LemmaResult r;
  r.pass = w.sum() == 0 && (!in_range || deg <= 4);
  r.data = {{"word", w.entries()}, {"sum", w.sum()}, {"h_prime", hp.get_str()}, {"h_prime_in_range", in_range},
            {"core_degree", deg}};
  r.summary = "word " + w.to_string() + " core degree " + std::to_string(deg);
  return r;
}

inline LemmaResult lemma_lm_lift(const LemmaParams& p) {
  const int n = p.get_n(3);
  const Scalar beta = p.get_beta(std::to_string(n + 1));
  const auto xs = var_range("x", n);
  const auto ys = var_range("y", n);
  Polynomial lifted = Polynomial::constant(-beta);
  for (int i = 0; i < n; ++i) {
    lifted += Polynomial::term(Monomial::product({xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(i)]}),
                               Scalar::one(p.field));
  }
  std::vector<Var> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  const Polynomial g = inverse_on_cube(lifted, all, p.log_cap);
  std::vector<Polynomial> family;
  nlohmann::json lms = nlohmann::json::array();
  const auto grlex = MonomialOrder::grlex();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Point pt;
    for (int i = 0; i < n; ++i) pt.emplace(ys[static_cast<std::size_t>(i)], Scalar::from_int(p.field, (s >> i) & 1U));
    family.push_back(multilinearize(partial_evaluate(g, pt)));
    lms.push_back(leading_monomial(family.back(), grlex).to_string());
  }
  const std::size_t count = distinct_lm_count(family, grlex);
  LemmaResult r;
  r.pass = count == (std::size_t{1} << n);
  r.data = {{"n", n}, {"distinct_leading_monomials", count}, {"leading_monomials", lms}};
  r.summary = std::to_string(count) + " distinct leading monomials";
  return r;
}

inline LemmaResult lemma_ns_floor(const LemmaParams& p) {
  const int n = p.get_n(2);
  const auto inst = subset_sum(n, p.get_beta(std::to_string(n + 1)), p.log_cap);
  const auto reps = search_min_degree(inst, n + 1, false);
  LemmaResult r;
  r.pass = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& rep : reps) {
    const bool want_found = rep.degree == n + 1;
    const bool found = rep.outcome == SearchOutcome::Found;
    r.pass = r.pass && rep.outcome != SearchOutcome::CapExceeded && found == want_found &&
             (!found || verify(*rep.certificate));
    rows.push_back({{"degree", rep.degree}, {"outcome", to_string(rep.outcome)}});
  }
  r.data = {{"n", n}, {"probes", rows}};
  r.summary = r.pass ? "none up to degree " + std::to_string(n) + ", found at " + std::to_string(n + 1)
                     : "degree floor not matched";
  return r;
}

}  // namespace detail

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline int to_int(const std::string& s, const std::string& ctx) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument(ctx + ": expected an integer, got '" + s + "'");
}

}  // namespace detail

/// Generator result: the knapsack form keeps its block structure.
struct ParsedInstance {
  Instance instance;
  std::optional<KnapsackInstance> knapsack;
};

/// Instance spec language `name:params`:
///   subset-sum:N,B  q:N,B  p:N,B  sym:D,N,B  sym-star:D,N,B  ks-word:H,D,K[,B]  ks:w1/w2/...[,B]
inline ParsedInstance parse_instance_spec(const std::string& spec, const Field& f,
                                          unsigned log_cap = kDefaultCubeLogCap) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InvalidArgument("instance spec '" + spec + "' lacks ':'");
  const std::string name = spec.substr(0, colon);
  const auto args = detail::split(spec.substr(colon + 1), ',');
  const auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw InvalidArgument(name + ": expected " + std::to_string(lo) +
                            (lo == hi ? "" : "-" + std::to_string(hi)) + " parameters, got " +
                            std::to_string(args.size()));
    }
  };
  const auto I = [&](std::size_t i) { return detail::to_int(args[i], name); };
  const auto B = [&](std::size_t i) { return parse_scalar(f, args[i]); };
  ParsedInstance out;
  if (name == "subset-sum") {
    need(2, 2);
    out.instance = subset_sum(I(0), B(1), log_cap);
  } else if (name == "q") {
    need(2, 2);
    out.instance = invariant_Q(I(0), B(1), log_cap);
  } else if (name == "p") {
    need(2, 2);
    out.instance = lifted_P(I(0), B(1), log_cap);
  } else if (name == "sym") {
    need(3, 3);
    out.instance = symmetric_instance(I(0), I(1), B(2), log_cap);
  } else if (name == "sym-star") {
    need(3, 3);
    const auto xs = var_range("x", I(1));
    out.instance = lifted_symmetric_star(elementary(I(0), xs, f), xs, B(2));
  } else if (name == "ks-word" || name == "ks") {
    std::optional<Scalar> beta;
    Word w({1, -1});
    if (name == "ks-word") {
      need(3, 4);
      w = word_from_params(I(0), I(1), I(2));
      if (args.size() == 4) beta = B(3);
    } else {
      need(1, 2);
      std::vector<int> entries;
      for (const auto& e : detail::split(args[0], '/')) entries.push_back(detail::to_int(e, name));
      w = Word(entries);
      if (args.size() == 2) beta = B(1);
    }
    out.knapsack = knapsack_word(w, beta, f, 4096, log_cap);
    out.instance = out.knapsack->instance;
  } else {
    throw InvalidArgument("unknown generator '" + name + "'");
  }
  return out;
}

struct LemmaEntry {
  std::string id;
  std::string description;
  std::function<LemmaResult(const LemmaParams&)> run;
};

inline const std::vector<LemmaEntry>& lemma_registry() {
  static const std::vector<LemmaEntry> reg{
      {"xsyt", "coefficients of x_{S_sigma} y_{complement} in the inverse of Q (--n, --beta)", detail::lemma_xsyt},
      {"q-four-conditions", "phi invariance and the degree-2n structure of the inverse of Q (--n, --beta)",
       detail::lemma_q_four_conditions},
      {"q-slice-dim", "coefficient dimension 2^n of the top slice of the inverse of Q (--n, --beta)",
       detail::lemma_q_slice_dim},
      {"phi", "phi_j fixes the product of 2x2 determinants (--n)", detail::lemma_phi},
      {"sym-degree", "degree of the inverse of e_{d,n} - beta is at least n-d+1 (--n, --d, --beta)",
       detail::lemma_sym_degree},
      {"product-slice", "top slice of ml(e_d e_k) is a nonzero multiple of e_{d+k} (--n, --d, --k)",
       detail::lemma_product_slice},
      {"plant", "planting Q inside P for balanced partitions (--n, optional sample size --k, --seed)",
       detail::lemma_plant},
      {"fphp", "knapsack inverse substituted into pigeon sums has individual degree 2 (--n)", detail::lemma_fphp},
      {"ks-main-claim", "pi_gamma(h_alpha) != 0 iff sigma match (--word or --h --d --k, --beta)",
       detail::lemma_ks_main_claim},
      {"ks-degree", "word sum 0 and core degree <= 4 (--h --d --k)", detail::lemma_ks_degree},
      {"lm-lift", "distinct leading monomials of restricted lifted subset-sum inverses (--n, --beta)",
       detail::lemma_lm_lift},
      {"ns-floor", "subset-sum refutation degree is exactly n+1 (--n, --beta)", detail::lemma_ns_floor},
  };
  return reg;
}

inline const LemmaEntry* find_lemma(const std::string& id) {
  for (const auto& e : lemma_registry()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

/// Versioned report envelope shared by every subcommand.
struct ExperimentReport {
  std::vector<std::string> command;
  std::string field = "q";
  std::string status = "OK";
  nlohmann::json instance;
  nlohmann::json caps = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  double millis = 0;

  nlohmann::json to_json() const {
    nlohmann::json j{{"schema", kReportSchema}, {"command", command}, {"field", field},
                     {"status", status},        {"caps", caps},       {"results", results},
                     {"millis", millis}};
    if (!instance.is_null()) j["instance"] = instance;
    return j;
  }
};

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace nsbench
