#include <gtest/gtest.h>

#include <functional>

#include "nsbench/measures.hpp"
#include "support.hpp"

using namespace nsbench;
namespace tu = nsbench::testing;
using nsbench::testing::P;

namespace {

const Field Q = Field::rationals();

long brute_count(int n, int k, bool at_most) {
  long count = 0;
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n) {
      if (left == 0 || at_most) ++count;
      return;
    }
    for (int e = 0; e <= left; ++e) rec(var + 1, left - e);
  };
  rec(0, k);
  return count;
}

mpq_class brute_residue(long k, const std::vector<long>& ds) {
  long d = 0;
  for (long x : ds) d += x;
  const long box = 2 * d;
  mpq_class best = -1;
  std::vector<long> ks(ds.size(), -box);
  for (;;) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      mpq_class target(k * ds[j], d);
      target.canonicalize();
      s += abs(mpq_class(ks[j]) - target);
    }
    if (best < 0 || s < best) best = s;
    std::size_t j = 0;
    while (j < ks.size() && ++ks[j] > box) ks[j++] = -box;
    if (j == ks.size()) break;
  }
  return best / 2;
}

}  // namespace

TEST(Measures, CountMonomials) {
  EXPECT_EQ(count_monomials(2, 2), 3);
  EXPECT_EQ(count_monomials(2, 2, true), 6);
  EXPECT_EQ(count_monomials(3, 2), 6);
  for (int n = 0; n <= 5; ++n) {
    for (int k = 0; k <= 5; ++k) {
      EXPECT_EQ(count_monomials(n, k), brute_count(n, k, false)) << n << " " << k;
      EXPECT_EQ(count_monomials(n, k, true), brute_count(n, k, true)) << n << " " << k;
    }
  }
}

TEST(Measures, ResidueExamples) {
  EXPECT_EQ(residue(1, {2}), 0);
  EXPECT_EQ(residue(1, {1, 1}), mpq_class(1, 2));
  EXPECT_EQ(residue(2, {1, 2, 2}), mpq_class(2, 5));
  EXPECT_THROW(residue(3, {1, 2}), InvalidArgument);
}

TEST(Measures, ResidueMatchesBoxMinimization) {
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long> ds(static_cast<std::size_t>(tu::rand_int(1, 3)));
    long d = 0;
    for (auto& x : ds) d += (x = static_cast<long>(tu::rand_int(1, 3)));
    const long k = static_cast<long>(tu::rand_int(0, d - 1));
    EXPECT_EQ(residue(k, ds), brute_residue(k, ds));
  }
}

TEST(Measures, Partials) {
  const auto d1 = partials_span(P("x_1*x_2"), 1);
  EXPECT_EQ(d1.size(), 2U);
  EXPECT_EQ(span_rank(d1), 2U);
  const auto d2 = partials_span(P("x_1^2*x_2"), 2);
  EXPECT_EQ(span_rank(d2), 2U);
  for (const auto& p : d2) EXPECT_TRUE(p == P("2*x_2") || p == P("2*x_1")) << p;
  EXPECT_EQ(span_rank(partials_span(Polynomial::sum_of(Q, var_range("x", 5)), 1)), 1U);
  EXPECT_THROW(partials_span(P("x_1"), 2), InvalidArgument);
  EXPECT_THROW(partials_span(elementary(3, 20), 3, 100), CapExceeded);
}

TEST(Measures, AppDim) {
  const auto xs = std::vector<Var>{var("x_1"), var("x_2")};
  const auto ys = std::vector<Var>{var("y_1"), var("y_2")};
  const auto f = P("x_1*y_1 + x_2*y_2");
  EXPECT_EQ(app_dim(f, 1, Projection::knapsack(xs, ys)), 3U);
  std::vector<Var> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  EXPECT_EQ(app_dim(f, 1, Projection::identity(all)), span_rank(partials_span(f, 1)));
  EXPECT_THROW(app_dim(f, 1, Projection::identity(xs)), InvalidArgument);
}

TEST(Measures, ProjectionNeverRaisesRankAndIsSubadditive) {
  const auto xs = var_range("x", 4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = tu::rand_poly(Q, 4, 5, 2);
    const auto g = tu::rand_poly(Q, 4, 5, 2);
    const int k = 1;
    if (f.degree() < k || g.degree() < k || (f + g).degree() < k) continue;
    std::unordered_map<Var, Polynomial, VarHash> im;
    for (Var v : xs) {
      Polynomial l = Polynomial::constant(Q, tu::rand_int(-2, 2));
      l.add_term(Monomial::of(var("t_1")), Scalar::from_int(Q, tu::rand_int(-2, 2)));
      l.add_term(Monomial::of(var("t_2")), Scalar::from_int(Q, tu::rand_int(-2, 2)));
      im.emplace(v, l);
    }
    const Projection L(im, 2);
    EXPECT_LE(app_dim(f, k, L), span_rank(partials_span(f, k)));
    EXPECT_LE(app_dim(f + g, k, L), app_dim(f, k, L) + app_dim(g, k, L));
  }
}

TEST(Measures, AlternatingRestriction) {
  const auto ks = knapsack_word(Word({1, -1}), Scalar::from_int(Q, 3));
  const auto g = inverse_on_cube(ks.instance.axiom(), ks.instance.variables());
  const auto& xb = ks.positive;
  Point ones;
  for (Var v : ks.instance.group("x").vars) ones.emplace(v, Scalar::one(Q));
  EXPECT_EQ(alternating_restriction(g, {}, xb), partial_evaluate(g, ones));
  for (Var x : xb[0].vars) EXPECT_EQ(alternating_restriction(g, {x}, xb), h_alpha_by_definition(g, {x}, xb));
  EXPECT_THROW(alternating_restriction(g, xb[0].vars, xb), InvalidArgument);
}

TEST(Measures, AlternatingRestrictionOnRandomMultilinear) {
  // both routes agree on arbitrary multilinear g, not just on inverses
  const auto ks = knapsack_word(Word({1, 1, -2}), Scalar::from_int(Q, 9));
  const auto vars = ks.instance.variables();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> vals;
    for (std::size_t s = 0; s < (std::size_t{1} << vars.size()); ++s) vals.push_back(tu::rand_scalar(Q));
    const auto g = interpolate(CubeFunction::from_values(vars, vals));
    for (const auto& alpha : set_multilinear_monomials(ks.positive)) {
      EXPECT_EQ(alternating_restriction(g, alpha, ks.positive), h_alpha_by_definition(g, alpha, ks.positive));
    }
  }
}

TEST(Measures, MainClaim) {
  for (const auto& w : {Word({1, -1}), Word({2, -2})}) {
    const auto ks = knapsack_word(w, std::nullopt);
    const auto rep = check_main_claim(ks);
    EXPECT_EQ(rep.alphas, std::size_t{1} << w.positive_sum());
    EXPECT_EQ(rep.route_mismatches, 0U);
    EXPECT_EQ(rep.claim_violations, 0U);
    EXPECT_EQ(rep.rank, rep.alphas);
  }
  const auto ks = knapsack_word(Word({1, -1}), Scalar::from_int(Q, 3));
  const auto g = inverse_on_cube(ks.instance.axiom(), ks.instance.variables());
  EXPECT_EQ(app_dim(g, 1, Projection::knapsack(ks.instance.group("x").vars, ks.instance.group("y").vars)) >= 2, true);
}
