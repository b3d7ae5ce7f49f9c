#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsbench/scalar.hpp"

namespace nsbench {

using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

inline constexpr std::size_t kDefaultSystemCap = 2'000'000;

struct LinalgStats {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  std::size_t rank = 0;
  std::size_t peak_row_nnz = 0;
  std::size_t reductions = 0;
  double millis = 0.0;
};

namespace detail {

// Row entries are (position, value) sorted by position. Positions come from
// the sparsest-column-first permutation, so the leading entry is the pivot.

struct RationalBackend {
  using Elem = mpz_class;
  using Row = std::vector<std::pair<std::uint32_t, mpz_class>>;

  Field field;

  Row convert(const std::vector<std::pair<std::uint32_t, Scalar>>& in) const {
    mpz_class l = 1;
    for (const auto& [p, s] : in) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
    Row r;
    r.reserve(in.size());
    for (const auto& [p, s] : in) {
      if (s.is_zero()) continue;
      r.emplace_back(p, mpz_class(s.rational().get_num() * (l / s.rational().get_den())));
    }
    make_primitive(r);
    return r;
  }

  static void make_primitive(Row& r) {
    if (r.empty()) return;
    mpz_class g = 0;
    for (const auto& e : r) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) break;
    }
    if (r.front().second < 0) g = -g;
    if (g != 1) {
      for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }
  }

  // r := a*r - b*pivot with a, b chosen so entry `k` of r cancels.
  Row eliminate(const Row& r, std::size_t k, const Row& pivot) const {
    mpz_class a = pivot.front().second;
    mpz_class b = r[k].second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    Row out;
    out.reserve(r.size() + pivot.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < r.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
        out.emplace_back(r[i].first, mpz_class(a * r[i].second));
        ++i;
      } else if (i == r.size() || pivot[j].first < r[i].first) {
        out.emplace_back(pivot[j].first, mpz_class(-b * pivot[j].second));
        ++j;
      } else {
        mpz_class v = a * r[i].second - b * pivot[j].second;
        if (v != 0) out.emplace_back(r[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    make_primitive(out);
    return out;
  }

  Scalar to_scalar(const mpz_class& v) const { return Scalar::from_mpz(field, v); }
};

struct PrimeBackend {
  using Elem = std::uint64_t;
  using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

  Field field;

  std::uint64_t p() const { return field.characteristic(); }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p());
  }

  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1;
    std::uint64_t e = p() - 2;
    while (e != 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }

  Row convert(const std::vector<std::pair<std::uint32_t, Scalar>>& in) const {
    Row r;
    r.reserve(in.size());
    for (const auto& [pos, s] : in) {
      if (!s.is_zero()) r.emplace_back(pos, s.residue());
    }
    normalize(r);
    return r;
  }

  void normalize(Row& r) const {
    if (r.empty() || r.front().second == 1) return;
    const auto li = inv(r.front().second);
    for (auto& e : r) e.second = mul(e.second, li);
  }

  Row eliminate(const Row& r, std::size_t k, const Row& pivot) const {
    const std::uint64_t b = r[k].second;  // pivot leads with 1
    Row out;
    out.reserve(r.size() + pivot.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < r.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
        out.push_back(r[i++]);
      } else if (i == r.size() || pivot[j].first < r[i].first) {
        const auto t = mul(b, pivot[j].second);
        out.emplace_back(pivot[j].first, t == 0 ? 0 : p() - t);
        ++j;
      } else {
        const auto t = mul(b, pivot[j].second);
        const auto v = r[i].second >= t ? r[i].second - t : r[i].second + (p() - t);
        if (v != 0) out.emplace_back(r[i].first, v);
        ++i;
        ++j;
      }
    }
    normalize(out);
    return out;
  }

  Scalar to_scalar(std::uint64_t v) const { return Scalar::from_int(field, static_cast<long long>(v)); }
};

/// Incremental row echelon form. Columns are permuted sparsest-first;
/// `forced_last` pins one column (the right-hand side) to the final position.
template <class Backend>
class Echelon {
 public:
  using Row = typename Backend::Row;

  Echelon(Backend be, std::size_t ncols, const std::vector<SparseRow>& rows, std::optional<std::uint32_t> forced_last)
      : be_(std::move(be)), ncols_(ncols), pos_of_col_(ncols), col_of_pos_(ncols), pivot_at_(ncols, npos) {
    std::vector<std::size_t> count(ncols, 0);
    for (const auto& r : rows) {
      for (const auto& e : r) ++count[e.first];
    }
    std::iota(col_of_pos_.begin(), col_of_pos_.end(), 0U);
    std::stable_sort(col_of_pos_.begin(), col_of_pos_.end(), [&](std::uint32_t a, std::uint32_t b) {
      const bool fa = forced_last && *forced_last == a;
      const bool fb = forced_last && *forced_last == b;
      if (fa != fb) return fb;
      return count[a] < count[b];
    });
    for (std::size_t i = 0; i < ncols; ++i) pos_of_col_[col_of_pos_[i]] = static_cast<std::uint32_t>(i);

    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
    for (std::size_t idx : order) insert(rows[idx]);
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t reductions() const { return reductions_; }
  std::size_t peak() const { return peak_; }

  bool has_pivot_in(std::uint32_t col) const { return pivot_at_[pos_of_col_[col]] != npos; }

  /// Back substitution with free variables set to zero. `rhs_col` is the
  /// augmented column; its value in each row is moved to the right side.
  std::vector<Scalar> back_substitute(std::uint32_t rhs_col) const {
    const std::uint32_t rhs_pos = pos_of_col_[rhs_col];
    std::vector<Scalar> x(ncols_, Scalar(be_.field));
    for (std::size_t pos = ncols_; pos-- > 0;) {
      const std::size_t pi = pivot_at_[pos];
      if (pi == npos || pos == rhs_pos) continue;
      const Row& r = pivots_[pi];
      Scalar acc(be_.field);
      for (std::size_t k = 1; k < r.size(); ++k) {
        const auto col = col_of_pos_[r[k].first];
        if (r[k].first == rhs_pos) {
          acc += be_.to_scalar(r[k].second);
        } else {
          acc -= be_.to_scalar(r[k].second) * x[col];
        }
      }
      x[col_of_pos_[pos]] = acc / be_.to_scalar(r.front().second);
    }
    return x;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void insert(const SparseRow& in) {
    SparseRow mapped;
    mapped.reserve(in.size());
    for (const auto& [c, s] : in) mapped.emplace_back(pos_of_col_[c], s);
    std::sort(mapped.begin(), mapped.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Row r = be_.convert(mapped);
    std::size_t k = 0;
    while (k < r.size()) {
      const std::size_t pi = pivot_at_[r[k].first];
      if (pi == npos) {
        ++k;
        continue;
      }
      const auto pos = r[k].first;
      r = be_.eliminate(r, k, pivots_[pi]);
      ++reductions_;
      peak_ = std::max(peak_, r.size());
      k = static_cast<std::size_t>(
          std::lower_bound(r.begin(), r.end(), pos, [](const auto& e, std::uint32_t p) { return e.first < p; }) -
          r.begin());
    }
    if (r.empty()) return;
    // The leading entry now sits at a column without a pivot.
    pivot_at_[r.front().first] = pivots_.size();
    peak_ = std::max(peak_, r.size());
    pivots_.push_back(std::move(r));
  }

  Backend be_;
  std::size_t ncols_;
  std::vector<std::uint32_t> pos_of_col_;
  std::vector<std::uint32_t> col_of_pos_;
  std::vector<std::size_t> pivot_at_;
  std::vector<Row> pivots_;
  std::size_t reductions_ = 0;
  std::size_t peak_ = 0;
};

inline std::size_t count_nnz(const std::vector<SparseRow>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

inline void check_system(const Field& f, std::size_t ncols, const std::vector<SparseRow>& rows, std::size_t cap) {
  const std::size_t nnz = count_nnz(rows);
  if (nnz > cap) {
    throw CapExceeded("linear system has " + std::to_string(nnz) + " nonzeros, cap is " + std::to_string(cap));
  }
  for (const auto& r : rows) {
    for (const auto& [c, s] : r) {
      if (c >= ncols) throw InvalidArgument("column index out of range");
      require_same_field(f, s.field());
    }
  }
}

template <class Fn>
auto with_backend(const Field& f, Fn&& fn) {
  if (f.is_rational()) return fn(RationalBackend{f});
  return fn(PrimeBackend{f});
}

}  // namespace detail

/// Exact rank of a sparse matrix given by rows.
inline std::size_t matrix_rank(const Field& f, std::size_t ncols, const std::vector<SparseRow>& rows,
                               LinalgStats* stats = nullptr, std::size_t cap = kDefaultSystemCap) {
  detail::check_system(f, ncols, rows, cap);
  const auto t0 = std::chrono::steady_clock::now();
  return detail::with_backend(f, [&](auto be) {
    detail::Echelon<decltype(be)> ech(be, ncols, rows, std::nullopt);
    if (stats != nullptr) {
      *stats = LinalgStats{rows.size(), ncols, detail::count_nnz(rows), ech.rank(), ech.peak(), ech.reductions(),
                           std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()};
    }
    return ech.rank();
  });
}

/// Solves A x = b exactly. `rhs[i]` is the right-hand side of row i (absent
/// rows read as zero). Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<Scalar>> solve_system(const Field& f, std::size_t ncols, std::vector<SparseRow> rows,
                                                       const std::vector<std::pair<std::size_t, Scalar>>& rhs,
                                                       LinalgStats* stats = nullptr,
                                                       std::size_t cap = kDefaultSystemCap) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rhs_col = static_cast<std::uint32_t>(ncols);
  for (const auto& [i, s] : rhs) {
    if (i >= rows.size()) rows.resize(i + 1);
    if (!s.is_zero()) rows[i].emplace_back(rhs_col, s);
  }
  detail::check_system(f, ncols + 1, rows, cap);
  return detail::with_backend(f, [&](auto be) -> std::optional<std::vector<Scalar>> {
    detail::Echelon<decltype(be)> ech(be, ncols + 1, rows, rhs_col);
    if (stats != nullptr) {
      *stats = LinalgStats{rows.size(), ncols, detail::count_nnz(rows), ech.rank(), ech.peak(), ech.reductions(),
                           std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()};
    }
    if (ech.has_pivot_in(rhs_col)) return std::nullopt;
    auto x = ech.back_substitute(rhs_col);
    x.pop_back();
    return x;
  });
}

}  // namespace nsbench
