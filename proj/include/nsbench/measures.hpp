#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nsbench/boolcube.hpp"
#include "nsbench/dimension.hpp"
#include "nsbench/instances.hpp"
#include "nsbench/polynomial.hpp"

namespace nsbench {

inline constexpr std::size_t kDefaultDerivativeCap = 200'000;

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Monomials of degree exactly k (or at most k) in n variables.
inline mpz_class count_monomials(long n, long k, bool at_most = false) {
  if (n < 0 || k < 0) throw InvalidArgument("count_monomials: n and k must be non-negative");
  if (n == 0) return (k == 0 || at_most) ? 1 : 0;
  const auto un = static_cast<unsigned long>(n);
  const auto uk = static_cast<unsigned long>(k);
  return at_most ? binomial(un + uk, uk) : binomial(un + uk - 1, uk);
}

/// residue_k(d_1..d_t): half the total distance of (k/d) d_j to the nearest integers.
inline mpq_class residue(long k, const std::vector<long>& degrees) {
  long d = 0;
  for (long dj : degrees) {
    if (dj < 0) throw InvalidArgument("residue: degrees must be non-negative");
    d += dj;
  }
  if (d < 1) throw InvalidArgument("residue: degrees must sum to at least 1");
  if (k < 0 || k >= d) throw InvalidArgument("residue: need 0 <= k < d");
  mpq_class total = 0;
  for (long dj : degrees) {
    mpq_class x(k * dj, d);
    x.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    const mpq_class frac = x - fl;
    const mpq_class other = 1 - frac;
    total += frac < other ? frac : other;
  }
  total /= 2;
  return total;
}

/// Affine map from source variables to forms over n0 target variables.
struct Projection {
  std::unordered_map<Var, Polynomial, VarHash> images;
  std::size_t n0 = 0;

  Projection(std::unordered_map<Var, Polynomial, VarHash> im, std::size_t targets)
      : images(std::move(im)), n0(targets) {
    for (const auto& [v, p] : images) {
      if (p.degree() > 1) throw InvalidArgument("projection image of " + var_name(v) + " is not affine");
    }
  }

  Polynomial apply(const Polynomial& p) const {
    for (Var v : p.variables()) {
      if (!images.count(v)) throw InvalidArgument("projection does not map " + var_name(v));
    }
    Substitution sub(images.begin(), images.end());
    return substitute(p, sub);
  }

  static Projection identity(const std::vector<Var>& vars, const Field& f = Field::rationals()) {
    std::unordered_map<Var, Polynomial, VarHash> im;
    for (Var v : vars) im.emplace(v, Polynomial::variable(f, v));
    return {std::move(im), vars.size()};
  }

  /// x -> 1 and y -> y.
  static Projection knapsack(const std::vector<Var>& xs, const std::vector<Var>& ys,
                             const Field& f = Field::rationals()) {
    std::unordered_map<Var, Polynomial, VarHash> im;
    for (Var v : xs) im.emplace(v, Polynomial::constant(f, 1));
    for (Var v : ys) {
      if (!im.emplace(v, Polynomial::variable(f, v)).second) throw InvalidArgument("projection: x and y overlap");
    }
    return {std::move(im), ys.size()};
  }
};

/// Distinct nonzero order-k partial derivatives of f.
inline std::vector<Polynomial> partials_span(const Polynomial& f, int k, std::size_t cap = kDefaultDerivativeCap) {
  if (k < 0) throw InvalidArgument("partials_span: k must be non-negative");
  if (k > f.degree()) throw InvalidArgument("partials_span: k exceeds deg f");
  const auto vars = f.variables();
  if (count_monomials(static_cast<long>(vars.size()), k) > cap) {
    throw CapExceeded("partials_span: more than " + std::to_string(cap) + " derivatives");
  }
  std::vector<Polynomial> out;
  std::unordered_set<std::string> seen;
  // multi-indices enumerated as non-decreasing variable sequences
  const auto rec = [&](auto&& self, const Polynomial& g, std::size_t from, int left) -> void {
    if (g.is_zero()) return;
    if (left == 0) {
      if (seen.insert(g.to_string()).second) out.push_back(g);
      return;
    }
    for (std::size_t i = from; i < vars.size(); ++i) self(self, derivative(g, vars[i]), i, left - 1);
  };
  rec(rec, f, 0, k);
  return out;
}

inline std::size_t app_dim(const Polynomial& f, int k, const Projection& L, std::size_t cap = kDefaultDerivativeCap) {
  std::vector<Polynomial> images;
  for (const auto& p : partials_span(f, k, cap)) images.push_back(L.apply(p));
  images.erase(std::remove_if(images.begin(), images.end(), [](const Polynomial& p) { return p.is_zero(); }),
               images.end());
  return span_rank(images);
}

// ---------------------------------------------------------------------------
// Knapsack-over-a-word claims

namespace detail {

inline std::vector<Var> block_vars(const std::vector<KsBlock>& blocks) {
  std::vector<Var> out;
  for (const auto& b : blocks) out.insert(out.end(), b.vars.begin(), b.vars.end());
  return out;
}

/// Block number and bit pattern of a block variable.
inline std::unordered_map<Var, std::pair<std::size_t, std::uint64_t>, VarHash> block_index(
    const std::vector<KsBlock>& blocks) {
  std::unordered_map<Var, std::pair<std::size_t, std::uint64_t>, VarHash> idx;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::uint64_t s = 0; s < blocks[b].vars.size(); ++s) idx.emplace(blocks[b].vars[s], std::make_pair(b, s));
  }
  return idx;
}

inline void require_set_multilinear(const std::vector<Var>& mono, const std::vector<KsBlock>& blocks) {
  const auto idx = block_index(blocks);
  std::vector<bool> used(blocks.size(), false);
  for (Var v : mono) {
    auto it = idx.find(v);
    if (it == idx.end()) throw InvalidArgument(var_name(v) + " is not a block variable");
    if (used[it->second.first]) throw InvalidArgument("monomial is not set-multilinear: two variables from one block");
    used[it->second.first] = true;
  }
}

}  // namespace detail

/// All monomials with exactly one variable from each block.
inline std::vector<std::vector<Var>> set_multilinear_monomials(const std::vector<KsBlock>& blocks) {
  std::vector<std::vector<Var>> out{{}};
  for (const auto& b : blocks) {
    std::vector<std::vector<Var>> next;
    for (const auto& m : out) {
      for (Var v : b.vars) {
        next.push_back(m);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Position -> bit for a set-multilinear monomial.
inline std::map<int, int> sigma_of(const std::vector<Var>& mono, const std::vector<KsBlock>& blocks) {
  detail::require_set_multilinear(mono, blocks);
  const auto idx = detail::block_index(blocks);
  std::map<int, int> sigma;
  for (Var v : mono) {
    const auto [b, s] = idx.at(v);
    const Interval& iv = blocks[b].interval;
    for (int p = iv.lo; p <= iv.hi; ++p) sigma[p] = static_cast<int>((s >> (p - iv.lo)) & 1U);
  }
  return sigma;
}

/// sum over mu subset of alpha of (-1)^|mu| tau_mu(ml g); tau_mu sends x in mu to 0, other x to 1.
inline Polynomial alternating_restriction(const Polynomial& g, const std::vector<Var>& alpha,
                                          const std::vector<KsBlock>& x_blocks) {
  detail::require_set_multilinear(alpha, x_blocks);
  if (alpha.size() >= 30) throw CapExceeded("alternating_restriction: alpha too large");
  const Polynomial mg = multilinearize(g);
  const auto xs = detail::block_vars(x_blocks);
  Polynomial h(g.field());
  for (std::uint64_t mu = 0; mu < (std::uint64_t{1} << alpha.size()); ++mu) {
    Point tau;
    for (Var v : xs) tau.emplace(v, Scalar::one(g.field()));
    int bits = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if ((mu >> i) & 1U) {
        tau[alpha[i]] = Scalar(g.field());
        ++bits;
      }
    }
    const Polynomial r = partial_evaluate(mg, tau);
    if (bits % 2 == 0) {
      h += r;
    } else {
      h -= r;
    }
  }
  return h;
}

/// sum over alpha' containing alpha of the y-coefficient of x^alpha' in ml g.
inline Polynomial h_alpha_by_definition(const Polynomial& g, const std::vector<Var>& alpha,
                                        const std::vector<KsBlock>& x_blocks) {
  detail::require_set_multilinear(alpha, x_blocks);
  const auto xs = detail::block_vars(x_blocks);
  const std::unordered_set<Var, VarHash> xset(xs.begin(), xs.end());
  const Monomial am = Monomial::product(alpha);
  const Polynomial mg = multilinearize(g);
  Polynomial h(g.field());
  for (const auto& [m, c] : mg.terms()) {
    const Monomial xpart = m.restricted([&](Var v) { return xset.count(v) != 0; });
    if (am.divides(xpart)) h.add_term(m.restricted([&](Var v) { return xset.count(v) == 0; }), c);
  }
  return h;
}

/// pi_gamma: y in gamma -> 1, every other y -> 0.
inline Polynomial pi_gamma(const Polynomial& h, const std::vector<Var>& gamma, const std::vector<Var>& ys) {
  const std::unordered_set<Var, VarHash> in(gamma.begin(), gamma.end());
  Point pt;
  for (Var v : ys) pt.emplace(v, in.count(v) ? Scalar::one(h.field()) : Scalar(h.field()));
  return partial_evaluate(h, pt);
}

struct MainClaimReport {
  std::size_t alphas = 0;
  std::size_t gammas = 0;
  std::size_t route_mismatches = 0;  // definition vs alternating sum
  std::size_t claim_violations = 0;  // pi_gamma(h_alpha) != 0 disagreeing with sigma match
  std::size_t rank = 0;              // dim span of the h_alpha family
  std::vector<std::string> failures;

  bool ok() const { return route_mismatches == 0 && claim_violations == 0 && rank == alphas; }
};

/// Exhaustive check of the sigma-match criterion for pi_gamma(h_alpha) on one knapsack instance.
inline MainClaimReport check_main_claim(const KnapsackInstance& ks, unsigned log_cap = kDefaultCubeLogCap) {
  const auto& xb = ks.n_heavy ? ks.positive : ks.negative;
  const auto& yb = ks.n_heavy ? ks.negative : ks.positive;
  const auto ys = detail::block_vars(yb);
  const Polynomial g = inverse_on_cube(ks.instance.axiom(), ks.instance.variables(), log_cap);
  MainClaimReport rep;
  const auto alphas = set_multilinear_monomials(xb);
  const auto gammas = set_multilinear_monomials(yb);
  rep.alphas = alphas.size();
  rep.gammas = gammas.size();
  std::vector<Polynomial> family;
  for (const auto& alpha : alphas) {
    const Polynomial h = alternating_restriction(g, alpha, xb);
    if (!(h == h_alpha_by_definition(g, alpha, xb))) {
      ++rep.route_mismatches;
      rep.failures.push_back("routes disagree at " + Monomial::product(alpha).to_string());
    }
    const auto sa = sigma_of(alpha, xb);
    for (const auto& gamma : gammas) {
      const bool nonzero = !pi_gamma(h, gamma, ys).is_zero();
      const bool match = sigma_of(gamma, yb) == sa;
      if (nonzero != match) {
        ++rep.claim_violations;
        rep.failures.push_back("alpha " + Monomial::product(alpha).to_string() + " gamma " +
                               Monomial::product(gamma).to_string());
      }
    }
    family.push_back(h);
  }
  rep.rank = span_rank(family);
  return rep;
}

}  // namespace nsbench
