// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]
// Exit status is 0 when every selected criterion passes.

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nsbench/nsbench.hpp"

using namespace nsbench;

namespace {

const Field Q = Field::rationals();

// runtime budgets in seconds
constexpr double kBudgetC1 = 60;
constexpr double kBudgetC2 = 30;
constexpr double kBudgetC3 = 120;
constexpr double kBudgetC6 = 120;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

Scalar qi(long long v) { return Scalar::from_int(Q, v); }

std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

long long rand_int(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng()); }

// 1. degree of the inverse of e_{d,n} - 3
void c1(Verdict& v) {
  Stopwatch sw;
  int sat = 0;
  int checked = 0;
  int info_ok = 0;
  int info_total = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int d = 1; d <= std::min(3, n); ++d) {
      const auto label = "n=" + std::to_string(n) + " d=" + std::to_string(d);
      const auto inst = symmetric_instance(d, n, qi(3));
      if (inst.status == SatStatus::Satisfiable) {
        ++sat;
        v.require(false, label + " is satisfiable at beta=3");
      } else {
        ++checked;
        const int deg = functional_degree(inst);
        v.require(deg >= n - d + 1, label + " degree " + std::to_string(deg));
        if (d == 1) v.require(deg == n, label + " degree " + std::to_string(deg) + " != n");
      }
      // same bound at a beta that is never attained, for information
      const auto alt = symmetric_instance(d, n, parse_scalar(Q, "7/2"));
      const int deg = functional_degree(alt);
      ++info_total;
      info_ok += (deg >= n - d + 1 && (d != 1 || deg == n)) ? 1 : 0;
    }
  }
  const double secs = sw.millis() / 1000;
  v.require(secs < kBudgetC1, "runtime");
  v.detail << checked << " unsatisfiable pairs checked, " << sat << " satisfiable at beta=3; beta=7/2: " << info_ok
           << "/" << info_total << " meet the bound; " << secs << " s";
}

// 2. top slice of ml(e_d e_k)
void c2(Verdict& v) {
  Stopwatch sw;
  int cases = 0;
  int pow2_mismatch = 0;
  std::map<std::string, std::string> cs;
  for (int n = 2; n <= 8; ++n) {
    for (int d = 1; d < n; ++d) {
      for (int k = 1; d + k <= n; ++k) {
        ++cases;
        const auto label = "d=" + std::to_string(d) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
        try {
          const auto s = product_leading_slice(d, k, n);
          v.require(!s.c.is_zero(), label + " c = 0");
          // oracle: ordered ways to split a (d+k)-set into a d-set and a k-set
          long ways = 0;
          for (unsigned m = 0; m < (1U << (d + k)); ++m) ways += __builtin_popcount(m) == d ? 1 : 0;
          v.require(s.c == qi(ways), label + " c differs from the subset-split count");
          if (!(s.c == qi(1LL << (d + k)))) ++pow2_mismatch;
          cs["(" + std::to_string(d) + "," + std::to_string(k) + ")"] = s.c.to_string();
        } catch (const Error& e) {
          v.require(false, label + " " + e.what());
        }
      }
    }
  }
  const double secs = sw.millis() / 1000;
  v.require(secs < kBudgetC2, "runtime");
  v.detail << cases << " cases proportional and nonzero; c differs from 2^(d+k) in " << pow2_mismatch
           << " cases; c(d,k):";
  for (const auto& [key, c] : cs) v.detail << " " << key << "=" << c;
  v.detail << "; " << secs << " s";
}

LemmaResult lemma(const std::string& id, LemmaParams p) { return find_lemma(id)->run(p); }

// 3. exact coefficients of the inverse of Q
void c3(Verdict& v) {
  Stopwatch sw;
  for (const Field& f : {Q, Field::prime(7)}) {
    for (int n = 1; n <= 3; ++n) {
      LemmaParams p;
      p.field = f;
      p.n = n;
      p.beta = "3";
      const auto r = lemma("q-four-conditions", p);
      v.require(r.pass, f.tag() + " n=" + std::to_string(n) + " " + r.data.dump());
      v.detail << f.tag() << " n=" << n << ": " << r.data["part2_top_monomials"] << " top monomials, coeff "
               << r.data["coefficients"]["coefficient"].get<std::string>() << "; ";
    }
  }
  const double secs = sw.millis() / 1000;
  v.require(secs < kBudgetC3, "runtime");
  v.detail << secs << " s";
}

// 4. coefficient dimension of the top slice
void c4(Verdict& v) {
  for (int n = 1; n <= 3; ++n) {
    LemmaParams p;
    p.n = n;
    p.beta = "3";
    const auto r = lemma("q-slice-dim", p);
    v.require(r.pass, "n=" + std::to_string(n) + " dim " + r.data["coeff_dim"].dump());
    v.detail << "n=" << n << ": " << r.data["coeff_dim"] << " ";
  }
}

// 5. planting Q inside P
void c5(Verdict& v) {
  const auto u = [](int i) { return var("u", {i}); };
  const auto P1 = lifted_P(1, qi(3));
  int ok1 = 0;
  for (int partner = 2; partner <= 4; ++partner) {
    std::vector<Var> vs{u(1), u(partner)};
    std::vector<Var> ws;
    for (int i = 2; i <= 4; ++i) {
      if (i != partner) ws.push_back(u(i));
    }
    const auto o = detail::plant_one(P1, vs, ws, 1);
    const bool good = o.planted && o.identity;
    ok1 += good ? 1 : 0;
    v.require(good, "n=1 partition {" + o.v + "}|{" + o.w + "}" + (o.note.empty() ? "" : ": " + o.note));
  }
  // 20 distinct unordered partitions at n = 2, u_1 always on the v side
  const auto P2 = lifted_P(2, qi(3));
  std::vector<std::pair<std::vector<Var>, std::vector<Var>>> parts;
  for (auto& pr : detail::balanced_partitions(2)) {
    if (pr.first.front() == u(1)) parts.push_back(std::move(pr));
  }
  std::shuffle(parts.begin(), parts.end(), rng());
  parts.resize(20);
  int ok2 = 0;
  for (const auto& [vs, ws] : parts) {
    const auto o = detail::plant_one(P2, vs, ws, 2);
    const bool good = o.planted && o.identity;
    ok2 += good ? 1 : 0;
    v.require(good, "n=2 partition {" + o.v + "}|{" + o.w + "}");
  }
  v.detail << "n=1: " << ok1 << "/3 planted; n=2: " << ok2 << "/20 sampled partitions planted";
}

// 6. refutation degree floor for subset sum
void c6(Verdict& v) {
  Stopwatch sw;
  for (const Field& f : {Q, Field::prime(101)}) {
    for (int n = 1; n <= 3; ++n) {
      const auto inst = subset_sum(n, Scalar::from_int(f, n + 1));
      const auto reps = search_min_degree(inst, n + 1, false);
      const auto label = f.tag() + " n=" + std::to_string(n);
      v.require(reps.size() == static_cast<std::size_t>(n + 1), label + " probes");
      for (const auto& r : reps) {
        if (r.degree <= n) {
          v.require(r.outcome == SearchOutcome::NoneAtDegree, label + " D=" + std::to_string(r.degree));
        } else {
          v.require(r.outcome == SearchOutcome::Found && verify(*r.certificate), label + " not found at n+1");
        }
      }
    }
  }
  const double secs = sw.millis() / 1000;
  v.require(secs < kBudgetC6, "runtime");
  v.detail << "q and fp:101, n<=3, beta=n+1; " << secs << " s";
}

Polynomial random_sparse(int n, unsigned ideg) {
  const auto xs = var_range("x", n);
  Polynomial p(Q);
  const auto terms = rand_int(1, 6);
  for (long long t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> fs;
    for (Var x : xs) {
      if (rand_int(0, 2) == 0) fs.emplace_back(x, static_cast<std::uint32_t>(rand_int(1, ideg)));
    }
    long long c = 0;
    while (c == 0) c = rand_int(-5, 5);
    p.add_term(Monomial::from_factors(fs), qi(c));
  }
  return p;
}

// 7. evaluation dimension against coefficient dimension
void c7(Verdict& v) {
  const std::vector<Scalar> s01{qi(0), qi(1)};
  const std::vector<Scalar> s012{qi(0), qi(1), qi(2)};
  int equal_cases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rand_int(2, 6));
    const auto f = random_sparse(n, static_cast<unsigned>(rand_int(1, 2)));
    const auto xs = var_range("x", n);
    std::vector<Var> left;
    std::vector<Var> right;
    for (Var x : xs) (rand_int(0, 1) ? left : right).push_back(x);
    const VarPartition part(left, right);
    const auto cd = coeff_dim(f, part);
    const auto e01 = eval_dim(f, part, s01);
    const auto label = "trial " + std::to_string(trial) + " " + f.to_string();
    v.require(e01 <= cd, label + " eval_dim exceeds coeff_dim");
    if (f.individual_degree() < 2) {
      ++equal_cases;
      v.require(e01 == cd, label + " equality over {0,1}");
    }
    v.require(eval_dim(f, part, s012) == cd, label + " equality over {0,1,2}");
  }
  v.detail << "50 polynomials; " << equal_cases << " multilinear cases equal over {0,1}; all equal over {0,1,2}";
}

Roabp random_program(const std::vector<Var>& xs, std::size_t w) {
  std::vector<Roabp::Matrix> layers;
  for (Var x : xs) {
    Roabp::Matrix m(w, std::vector<Polynomial>(w, Polynomial(Q)));
    for (auto& row : m) {
      for (auto& e : row) {
        e = Polynomial::constant(Q, rand_int(-2, 2));
        e.add_term(Monomial::of(x), qi(rand_int(-2, 2)));
        e.add_term(Monomial::of(x, 2), qi(rand_int(-1, 1)));
      }
    }
    layers.push_back(std::move(m));
  }
  return Roabp(xs, layers);
}

// 8. closure of roABPs under sum and product
void c8(Verdict& v) {
  int trials = 0;
  for (int t = 0; t < 30; ++t) {
    const auto xs = var_range("x", static_cast<int>(rand_int(1, 5)));
    const auto r = static_cast<std::size_t>(rand_int(1, 3));
    const auto s = static_cast<std::size_t>(rand_int(1, 3));
    const auto p = random_program(xs, r);
    const auto q = random_program(xs, s);
    const auto fp = p.expand();
    const auto fq = q.expand();
    const auto sum = roabp_add(p, q);
    const auto prod = roabp_mul(p, q);
    const auto label = "trial " + std::to_string(t);
    v.require(sum.width() == r + s, label + " sum width");
    v.require(prod.width() == r * s, label + " product width");
    v.require(sum.expand() == fp + fq, label + " sum expansion");
    v.require(prod.expand() == fp * fq, label + " product expansion");
    v.require(roabp_width_bound(fp, xs) <= r, label + " width bound");
    Point pt;
    for (Var x : xs) pt.emplace(x, qi(rand_int(-3, 3)));
    v.require(p.eval(pt) == eval(fp, pt), label + " evaluation");
    ++trials;
  }
  v.detail << trials << " random program pairs, widths 1..3, up to 5 variables";
}

// 9. structure of the knapsack-over-a-word instances
void c9(Verdict& v) {
  int valid = 0;
  int invalid = 0;
  int deg_checked = 0;
  int small = 0;
  int small_unsat = 0;
  std::string sat_words;
  for (int h = 1; h <= 4; ++h) {
    for (int d = 2; d <= 6; ++d) {
      for (int k = 1; k < d; ++k) {
        std::optional<Word> w;
        try {
          w = word_from_params(h, d, k);
        } catch (const InvalidArgument&) {
          ++invalid;
          continue;
        }
        ++valid;
        const auto label = "(" + std::to_string(h) + "," + std::to_string(d) + "," + std::to_string(k) + ")";
        v.require(w->sum() == 0, label + " word sum");
        const mpq_class hp = word_h_prime(h, d, k);
        const auto ks = knapsack_word(*w, qi(3), Q, 4096, 0);
        if (hp * 3 >= h && hp <= h) {
          ++deg_checked;
          const int deg = ks.instance.core().degree();
          v.require(deg <= 4, label + " core degree " + std::to_string(deg));
        }
        if (ks.instance.variables().size() <= 16) {
          ++small;
          const auto full = knapsack_word(*w, qi(3), Q, 4096, 16);
          if (full.instance.status == SatStatus::Unsatisfiable) {
            ++small_unsat;
          } else {
            sat_words += " " + w->to_string();
            v.require(false, label + " word " + w->to_string() + " satisfiable at beta=3");
          }
        }
      }
    }
  }
  for (const auto& w : {Word({1, -1}), Word({2, -2})}) {
    const auto ks = knapsack_word(w, std::nullopt);
    const auto rep = check_main_claim(ks);
    v.require(rep.ok() && rep.rank == rep.alphas, "main claim at " + w.to_string());
    v.detail << "claim " << w.to_string() << " (beta " << ks.instance.beta.to_string() << "): rank " << rep.rank << "/"
             << rep.alphas << "; ";
  }
  v.detail << valid << " valid parameter triples (" << invalid << " rejected), " << deg_checked
           << " degree checks, " << small_unsat << "/" << small << " small instances unsatisfiable at beta=3";
  if (!sat_words.empty()) v.detail << "; satisfiable:" << sat_words;
}

mpq_class qpow(const mpq_class& b, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

long residue_box_twice_d(long k, const std::vector<long>& ds, long d) {
  // min over k_j in [-1, d+1] of sum |k_j d - k d_j|, all scaled by d
  long best = -1;
  std::vector<long> ks(ds.size(), -1);
  for (;;) {
    long s = 0;
    for (std::size_t j = 0; j < ds.size(); ++j) s += std::labs(ks[j] * d - k * ds[j]);
    if (best < 0 || s < best) best = s;
    std::size_t j = 0;
    while (j < ks.size() && ++ks[j] > d + 1) ks[j++] = -1;
    if (j == ks.size()) break;
  }
  return best;
}

// 10. counting bounds, residue, projected partials
void c10(Verdict& v) {
  constexpr int L = 12;
  long checks = 0;
  const auto M = [](long n, long k) { return mpq_class(count_monomials(n, k)); };
  const auto Mle = [](long n, long k) { return mpq_class(count_monomials(n, k, true)); };
  for (int n = 1; n <= L; ++n) {
    for (int k = 1; k <= n; ++k) {
      const mpq_class nk(n, k);
      v.require(qpow(nk, k) <= M(n, k) && M(n, k) <= Mle(n, k) && Mle(n, k) <= qpow(6 * nk, k),
                "(i) n=" + std::to_string(n) + " k=" + std::to_string(k));
      ++checks;
      for (int l = 1; l <= k; ++l) {
        const mpq_class ratio = M(n, k + l) / M(n, k);
        v.require(qpow(mpq_class(n, 2 * k), l) <= ratio && ratio <= qpow(mpq_class(2 * n, k), l),
                  "(ii) n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
        ++checks;
        for (int m = 1; m <= L; ++m) {
          v.require(M(l, m) / M(k, m) >= qpow(mpq_class(l, k), m),
                    "(iii) k=" + std::to_string(k) + " l=" + std::to_string(l) + " m=" + std::to_string(m));
          ++checks;
        }
      }
    }
  }
  long residues = 0;
  std::function<void(std::vector<long>&, long)> rec = [&](std::vector<long>& ds, long left) {
    if (!ds.empty()) {
      long d = 0;
      for (long x : ds) d += x;
      for (long k = 0; k < d; ++k) {
        mpq_class want(residue_box_twice_d(k, ds, d), 2 * d);
        want.canonicalize();
        v.require(residue(k, ds) == want, "residue k=" + std::to_string(k));
        ++residues;
      }
    }
    if (ds.size() == 4) return;
    for (long x = 1; x <= left; ++x) {
      ds.push_back(x);
      rec(ds, left - x);
      ds.pop_back();
    }
  };
  std::vector<long> ds;
  rec(ds, 10);
  const auto xs = std::vector<Var>{var("x_1"), var("x_2")};
  const auto ys = std::vector<Var>{var("y_1"), var("y_2")};
  const std::size_t app = app_dim(Polynomial::parse("x_1*y_1 + x_2*y_2", Q), 1, Projection::knapsack(xs, ys));
  v.require(app == 3, "toy projection rank " + std::to_string(app));
  v.detail << checks << " bound checks to parameter " << L << ", " << residues
           << " residues against box minimization, toy projection rank " << app;
}

// 11. knapsack substitution into pigeon sums
void c11(Verdict& v) {
  for (int n = 1; n <= 6; ++n) {
    const auto rep = fphp_knapsack_identity(n);
    v.require(rep.identity_holds, "n=" + std::to_string(n) + " identity");
    v.require(rep.ideg_certificate <= 2, "n=" + std::to_string(n) + " ideg " + std::to_string(rep.ideg_certificate));
    v.detail << "n=" << n << ": ideg " << rep.ideg_certificate << "; ";
  }
}

// 12. distinct leading monomials under the x -> xy lift
void c12(Verdict& v) {
  LemmaParams p;
  p.n = 3;
  p.beta = "4";
  const auto r = lemma("lm-lift", p);
  v.require(r.data["distinct_leading_monomials"] == 8, "count " + r.data["distinct_leading_monomials"].dump());
  v.detail << r.data["distinct_leading_monomials"] << " distinct leading monomials (beta=4)";
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  const std::vector<std::function<void(Verdict&)>> all{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::cerr << "criterion out of range\n";
    return 2;
  }
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Verdict v;
    try {
      all[i](v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << " | " << v.detail.str() << std::endl;
    ok = ok && v.pass;
  }
  return ok ? 0 : 1;
}
