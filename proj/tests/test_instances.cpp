#include <gtest/gtest.h>

#include <set>

#include "nsbench/instances.hpp"
#include "support.hpp"

using namespace nsbench;
namespace tu = nsbench::testing;
using nsbench::testing::P;

namespace {

const Field Q = Field::rationals();

Scalar q(long long v) { return Scalar::from_int(Q, v); }

Point cube_point(const std::vector<Var>& vs, std::uint64_t mask, const Field& f = Field::rationals()) {
  Point pt;
  for (std::size_t i = 0; i < vs.size(); ++i) pt.emplace(vs[i], Scalar::from_int(f, (mask >> i) & 1U));
  return pt;
}

bool brute_unsat(const Polynomial& ax, const std::vector<Var>& vs) {
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << vs.size()); ++s) {
    if (eval(ax, cube_point(vs, s, ax.field())).is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(Instances, SubsetSum) {
  const auto inst = subset_sum(2, q(3));
  EXPECT_EQ(inst.axiom(), P("x_1 + x_2 - 3"));
  EXPECT_EQ(inst.status, SatStatus::Unsatisfiable);
  EXPECT_THROW(subset_sum(2, q(1)), SatisfiablePoint);
  EXPECT_EQ(subset_sum(3, parse_scalar(Q, "7/2")).status, SatStatus::Unsatisfiable);
  // over F_5 the value 6 is 1, hit by a single variable
  EXPECT_THROW(subset_sum(3, Scalar::from_int(Field::prime(5), 6)), SatisfiablePoint);
}

TEST(Instances, InvariantQ) {
  const auto inst = invariant_Q(1, q(3));
  EXPECT_EQ(inst.axiom(), P("x_1*y_2 - y_1*x_2 - 3"));
  EXPECT_TRUE(brute_unsat(inst.axiom(), inst.variables()));
  const auto two = invariant_Q(2, q(3));
  const auto vs = two.variables();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << vs.size()); ++s) {
    for (const auto& fac : two.factors) {
      const auto v = eval(fac, cube_point(vs, s));
      EXPECT_TRUE(v.is_zero() || v.is_one() || (-v).is_one());
    }
  }
  EXPECT_THROW(invariant_Q(1, q(1)), InvalidArgument);
  EXPECT_THROW(invariant_Q(1, q(-1)), InvalidArgument);
}

TEST(Instances, Phi) {
  EXPECT_EQ(apply_phi(1, P("x_1*y_2 - y_1*x_2")), P("x_1*y_2 - y_1*x_2"));
  EXPECT_EQ(apply_phi(1, P("y_1")), P("x_1 + y_1"));
  for (int n = 1; n <= 3; ++n) {
    const auto qt = q_tilde(n);
    for (int j = 1; j < 2 * n; j += 2) EXPECT_EQ(apply_phi(j, qt, n), qt);
  }
  EXPECT_THROW(apply_phi(2, P("y_1")), InvalidArgument);
}

TEST(Instances, LiftedP) {
  const auto p1 = lifted_P(1, q(3));
  ASSERT_EQ(p1.factors.size(), 1U);
  EXPECT_EQ(p1.factors[0], P("1 - z_1_2_3_4 + z_1_2_3_4*u_1*u_4 - z_1_2_3_4*u_2*u_3"));
  EXPECT_EQ(p1.status, SatStatus::Unsatisfiable);
  EXPECT_TRUE(brute_unsat(p1.axiom(), p1.variables()));

  const auto p2 = lifted_P(2, q(3));
  Point zeros;
  for (Var z : p2.group("z").vars) zeros.emplace(z, q(0));
  EXPECT_EQ(p2.group("z").vars.size(), 70U);
  EXPECT_EQ(p2.core_under(zeros), P("1"));
}

TEST(Instances, PlantingAtOne) {
  const auto u = var_range("u", 4);
  const auto p1 = lifted_P(1, q(3));
  const auto pl = plant_Q({u[0], u[1]}, {u[2], u[3]}, 1);
  ASSERT_EQ(pl.quadruples.size(), 1U);
  EXPECT_TRUE(pl.z.at(z_var(1, 2, 3, 4)).is_one());
  EXPECT_EQ(substitute(p1.core(), {{z_var(1, 2, 3, 4), P("1")}}), q_tilde(pl.v, pl.w));

  const auto sw = plant_Q({u[2], u[3]}, {u[0], u[1]}, 1);
  EXPECT_EQ(p1.core_under(sw.z), q_tilde(sw.v, sw.w));
  // n = 1 has a single z, so both orientations plant through it
  EXPECT_NE(sw.v, pl.v);
  EXPECT_EQ(q_tilde(sw.v, sw.w), q_tilde(pl.v, pl.w));

  // {u1,u4} | {u2,u3}: both products in u1u4 - u2u3 stay on one side
  EXPECT_THROW(plant_Q({u[0], u[3]}, {u[1], u[2]}, 1), InvalidArgument);
}

TEST(Instances, PlantingAtTwo) {
  const auto p2 = lifted_P(2, q(3));
  const auto u = var_range("u", 8);
  std::size_t planted = 0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4 || !(mask & 1U)) continue;  // unordered partitions
    std::vector<Var> v;
    std::vector<Var> w;
    for (int i = 0; i < 8; ++i) ((mask >> i) & 1U ? v : w).push_back(u[static_cast<std::size_t>(i)]);
    try {
      const auto pl = plant_Q(v, w, 2);
      EXPECT_EQ(std::set<Var>(pl.v.begin(), pl.v.end()), std::set<Var>(v.begin(), v.end()));
      EXPECT_EQ(p2.core_under(pl.z), q_tilde(pl.v, pl.w));
      ++planted;
    } catch (const InvalidArgument&) {
    }
  }
  EXPECT_EQ(planted, 33U);
}

TEST(Instances, LiftedSymmetricStar) {
  const auto x = var_range("x", 2);
  const auto e1 = elementary(1, x);
  const auto star = lifted_symmetric_star(e1, x, q(3));
  Polynomial expect(Q);
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) expect += P(("z_" + std::to_string(i) + "_" + std::to_string(j) + "*x_" +
                                                 std::to_string(i) + "*x_" + std::to_string(j))
                                                    .c_str());
  }
  EXPECT_EQ(star.core(), expect);

  // the matching assignment recovers f(u o v) with u_k = x_{2k-1}, v_k = x_{2k}
  const auto f = elementary(2, var_range("t", 3)) * q(2) + elementary(1, var_range("t", 3)) + P("5");
  const auto s3 = lifted_symmetric_star(f, var_range("t", 3), q(-7));
  Substitution uv;
  for (int k = 1; k <= 3; ++k) uv.emplace(var("t", {k}), P(("x_" + std::to_string(2 * k - 1) + "*x_" + std::to_string(2 * k)).c_str()));
  EXPECT_EQ(s3.core_under(matching_assignment(3)), substitute(f, uv));

  EXPECT_EQ(lifted_symmetric_star(P("1"), x, q(3)).axiom(), P("-2"));
}

TEST(Instances, Words) {
  EXPECT_EQ(word_from_params(2, 4, 2).to_string(), "(2,2,-2,-2)");
  EXPECT_EQ(word_from_params(3, 3, 1).to_string(), "(3,-1,-2)");
  for (int h = 1; h <= 6; ++h) {
    for (int d = 2; d <= 8; ++d) {
      for (int k = 1; k < d; ++k) {
        try {
          EXPECT_EQ(word_from_params(h, d, k).sum(), 0);
        } catch (const InvalidArgument&) {
        }
      }
    }
  }
  EXPECT_THROW(Word({1, 0, -1}), InvalidArgument);
}

TEST(Instances, KnapsackWord) {
  const auto ks = knapsack_word(Word({1, -1}), q(3));
  EXPECT_EQ(ks.instance.axiom(), P("x_1_0*y_2_0 + x_1_1*y_2_1 - 3"));
  EXPECT_EQ(ks.instance.status, SatStatus::Unsatisfiable);

  const auto ks2 = knapsack_word(Word({2, -2}), q(3));
  EXPECT_EQ(ks2.instance.variables().size(), 8U);
  EXPECT_EQ(ks2.instance.axiom(),
            P("x_1_00*y_2_00 + x_1_10*y_2_10 + x_1_01*y_2_01 + x_1_11*y_2_11 - 3"));
  EXPECT_TRUE(brute_unsat(ks2.instance.axiom(), ks2.instance.variables()) ==
              (ks2.instance.status == SatStatus::Unsatisfiable));

  const auto ks3 = knapsack_word(Word({3, -1, -2}), std::nullopt);
  EXPECT_EQ(ks3.instance.status, SatStatus::Unsatisfiable);
  EXPECT_LE(ks3.instance.core().degree(), 4);
}
