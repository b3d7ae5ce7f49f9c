#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nsbench/var.hpp"

namespace nsbench {

/// Power product stored as (variable, exponent) pairs sorted by variable id.
/// Zero exponents are never stored; the empty product is the monomial 1.
class Monomial {
 public:
  using Factor = std::pair<Var, std::uint32_t>;

  Monomial() = default;

  static Monomial of(Var v, std::uint32_t e = 1) {
    Monomial m;
    if (e != 0) m.factors_.emplace_back(v, e);
    return m;
  }

  /// Accepts unsorted input with repeats; exponents of repeated variables add.
  static Monomial from_factors(std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (const auto& [v, e] : fs) {
      if (e == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == v) {
        m.factors_.back().second += e;
      } else {
        m.factors_.emplace_back(v, e);
      }
    }
    return m;
  }

  /// Product of distinct variables.
  static Monomial product(const std::vector<Var>& vars) {
    std::vector<Factor> fs;
    fs.reserve(vars.size());
    for (Var v : vars) fs.emplace_back(v, 1);
    return from_factors(std::move(fs));
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::size_t support_size() const { return factors_.size(); }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  std::uint32_t exponent(Var v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, Var x) { return f.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
  }

  std::uint32_t max_exponent() const {
    std::uint32_t m = 0;
    for (const auto& f : factors_) m = std::max(m, f.second);
    return m;
  }

  bool is_multilinear() const { return max_exponent() <= 1; }

  /// Every exponent clamped to 1.
  Monomial clamped() const {
    Monomial m = *this;
    for (auto& f : m.factors_) f.second = 1;
    return m;
  }

  std::vector<Var> support() const {
    std::vector<Var> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.first);
    return out;
  }

  /// Keeps only the factors whose variable satisfies `keep`.
  template <class Pred>
  Monomial restricted(Pred keep) const {
    Monomial m;
    for (const auto& f : factors_) {
      if (keep(f.first)) m.factors_.push_back(f);
    }
    return m;
  }

  /// Same monomial with `v` removed.
  Monomial without(Var v) const {
    return restricted([v](Var x) { return x != v; });
  }

  /// Exponent of `v` lowered by one; requires exponent(v) > 0.
  Monomial lowered(Var v) const {
    Monomial m = *this;
    for (auto it = m.factors_.begin(); it != m.factors_.end(); ++it) {
      if (it->first == v) {
        if (--it->second == 0) m.factors_.erase(it);
        return m;
      }
    }
    return m;
  }

  bool divides(const Monomial& o) const {
    std::size_t j = 0;
    for (const auto& [v, e] : factors_) {
      while (j < o.factors_.size() && o.factors_[j].first < v) ++j;
      if (j == o.factors_.size() || o.factors_[j].first != v || o.factors_[j].second < e) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.factors_.reserve(a.factors_.size() + b.factors_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.factors_.size() || j < b.factors_.size()) {
      if (j == b.factors_.size() || (i < a.factors_.size() && a.factors_[i].first < b.factors_[j].first)) {
        m.factors_.push_back(a.factors_[i++]);
      } else if (i == a.factors_.size() || b.factors_[j].first < a.factors_[i].first) {
        m.factors_.push_back(b.factors_[j++]);
      } else {
        m.factors_.emplace_back(a.factors_[i].first, a.factors_[i].second + b.factors_[j].second);
        ++i;
        ++j;
      }
    }
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Id-based total order; storage only, not a monomial order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& [v, e] : factors_) {
      h ^= (static_cast<std::size_t>(v.id) * 0x100000001b3ULL + e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  /// `x_1^2*y_3`, or `1`. Factors in canonical variable order.
  std::string to_string() const {
    if (factors_.empty()) return "1";
    auto fs = factors_;
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return canonical_less(a.first, b.first); });
    std::string s;
    for (const auto& [v, e] : fs) {
      if (!s.empty()) s += '*';
      s += var_name(v);
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::vector<Factor> factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Graded-lex or lex order over a variable precedence. The precedence list
/// runs from the largest variable down; unlisted variables rank below all
/// listed ones, among themselves in canonical order with x_1 > x_2 > ...
class MonomialOrder {
 public:
  enum class Kind { Grlex, Lex };

  static MonomialOrder grlex(std::vector<Var> precedence = {}) { return {Kind::Grlex, std::move(precedence)}; }
  static MonomialOrder lex(std::vector<Var> precedence = {}) { return {Kind::Lex, std::move(precedence)}; }

  Kind kind() const { return kind_; }

  /// true when `a` outranks `b` as a single variable.
  bool var_greater(Var a, Var b) const {
    if (a == b) return false;
    const auto ia = rank_.find(a.id);
    const auto ib = rank_.find(b.id);
    const bool la = ia != rank_.end();
    const bool lb = ib != rank_.end();
    if (la && lb) return ia->second < ib->second;
    if (la != lb) return la;
    return canonical_less(a, b);
  }

  /// Three-way comparison: negative when a < b.
  int compare(const Monomial& a, const Monomial& b) const {
    if (kind_ == Kind::Grlex) {
      const auto da = a.degree();
      const auto db = b.degree();
      if (da != db) return da < db ? -1 : 1;
    }
    // Find the highest-precedence variable whose exponents differ.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0;
    std::size_t j = 0;
    bool found = false;
    Var best{};
    int verdict = 0;
    const auto consider = [&](Var v, std::uint32_t ea, std::uint32_t eb) {
      if (ea == eb) return;
      if (!found || var_greater(v, best)) {
        found = true;
        best = v;
        verdict = ea < eb ? -1 : 1;
      }
    };
    while (i < fa.size() || j < fb.size()) {
      if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
        consider(fa[i].first, fa[i].second, 0);
        ++i;
      } else if (i == fa.size() || fb[j].first < fa[i].first) {
        consider(fb[j].first, 0, fb[j].second);
        ++j;
      } else {
        consider(fa[i].first, fa[i].second, fb[j].second);
        ++i;
        ++j;
      }
    }
    return verdict;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

 private:
  MonomialOrder(Kind k, std::vector<Var> precedence) : kind_(k) {
    for (std::size_t i = 0; i < precedence.size(); ++i) {
      rank_.emplace(precedence[i].id, i);
    }
  }

  Kind kind_;
  std::unordered_map<std::uint32_t, std::size_t> rank_;
};

}  // namespace nsbench
