#pragma once

#include <algorithm>
#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nsbench/monomial.hpp"
#include "nsbench/scalar.hpp"

namespace nsbench {

using Term = std::pair<Monomial, Scalar>;

/// Sparse multivariate polynomial over one field. Zero coefficients are never
/// stored, so equality is equality of term maps.
class Polynomial {
 public:
  using TermMap = std::unordered_map<Monomial, Scalar, MonomialHash>;

  explicit Polynomial(const Field& f = Field::rationals()) : field_(f) {}

  static Polynomial constant(const Scalar& c) {
    Polynomial p(c.field());
    p.add_term(Monomial(), c);
    return p;
  }
  static Polynomial constant(const Field& f, long long c) { return constant(Scalar::from_int(f, c)); }

  static Polynomial variable(const Field& f, Var v) { return term(Monomial::of(v), Scalar::one(f)); }

  static Polynomial term(const Monomial& m, const Scalar& c) {
    Polynomial p(c.field());
    p.add_term(m, c);
    return p;
  }

  /// Sum of the given variables.
  static Polynomial sum_of(const Field& f, const std::vector<Var>& vars) {
    Polynomial p(f);
    for (Var v : vars) p.add_term(Monomial::of(v), Scalar::one(f));
    return p;
  }

  const Field& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  Scalar coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(field_) : it->second;
  }

  Scalar constant_term() const { return coeff(Monomial()); }

  void add_term(const Monomial& m, const Scalar& c) {
    require_same_field(field_, c.field());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
  }

  std::uint32_t degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
  }

  /// Largest exponent of any single variable.
  std::uint32_t individual_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.max_exponent());
    return d;
  }

  bool is_multilinear() const { return individual_degree() <= 1; }

  /// Variables occurring with nonzero coefficient, in canonical order.
  std::vector<Var> variables() const {
    std::unordered_set<Var, VarHash> seen;
    for (const auto& [m, c] : terms_) {
      for (const auto& f : m.factors()) seen.insert(f.first);
    }
    std::vector<Var> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }

  /// Terms of total degree exactly `d`.
  Polynomial homogeneous_slice(std::uint32_t d) const {
    Polynomial p(field_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() == d) p.terms_.emplace(m, c);
    }
    return p;
  }

  /// Terms sorted descending under `ord` (grlex by default).
  std::vector<Term> sorted_terms(const MonomialOrder& ord = MonomialOrder::grlex()) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return ord.compare(a.first, b.first) > 0; });
    return out;
  }

  Polynomial operator-() const {
    Polynomial p(field_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same_field(field_, o.field_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    require_same_field(field_, o.field_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(const Scalar& s) {
    require_same_field(field_, s.field());
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_field(a.field_, b.field_);
    Polynomial p(a.field_);
    p.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    }
    return p;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(Scalar::one(field_));
    Polynomial base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e != 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  /// Text form of the ring grammar, terms in descending canonical grlex.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
      const bool negative = c.sign() < 0;
      const Scalar mag = negative ? -c : c;
      if (first) {
        if (negative) s += '-';
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        s += mag.to_string();
      } else if (mag.is_one()) {
        s += m.to_string();
      } else {
        s += mag.to_string() + "*" + m.to_string();
      }
    }
    return s;
  }

  static Polynomial parse(std::string_view text, const Field& f = Field::rationals());

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  Field field_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Field& f) : field_(f) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
    }
  }

  Polynomial run() {
    Polynomial p(field_);
    if (src_.empty()) fail("empty input");
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = get() == '-';
    term_into(p, negative);
    while (pos_ < src_.size()) {
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      term_into(p, op == '-');
    }
    return p;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char get() { return pos_ < src_.size() ? src_[pos_++] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return src_.substr(start, pos_ - start);
  }

  void term_into(Polynomial& p, bool negative) {
    Scalar coeff = Scalar::one(field_);
    Monomial mono;
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        num += "/" + digits();
      }
      coeff = parse_scalar(field_, num);
      if (peek() == '*') {
        ++pos_;
      } else {
        need_factor = false;
      }
    }
    if (need_factor) {
      mono = mono * factor();
      while (peek() == '*') {
        ++pos_;
        mono = mono * factor();
      }
    }
    p.add_term(mono, negative ? -coeff : coeff);
  }

  Monomial factor() {
    const std::size_t start = pos_;
    while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected variable");
    while (peek() == '_') {
      ++pos_;
      digits();
    }
    const Var v = var(std::string_view(src_).substr(start, pos_ - start));
    std::uint32_t e = 1;
    if (peek() == '^') {
      ++pos_;
      e = static_cast<std::uint32_t>(std::stoul(digits()));
    }
    return Monomial::of(v, e);
  }

  Field field_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text, const Field& f) {
  return detail::PolyParser(text, f).run();
}

// ---------------------------------------------------------------------------
// Free operations

using Substitution = std::unordered_map<Var, Polynomial, VarHash>;
using Point = std::unordered_map<Var, Scalar, VarHash>;

/// Simultaneous substitution; unmapped variables stay as they are.
inline Polynomial substitute(const Polynomial& f, const Substitution& map) {
  for (const auto& [v, img] : map) require_same_field(f.field(), img.field());
  if (map.empty()) return f;
  std::unordered_map<std::uint64_t, Polynomial> powers;
  const auto power = [&](Var v, std::uint32_t e) -> const Polynomial& {
    const std::uint64_t key = (static_cast<std::uint64_t>(v.id) << 32) | e;
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, map.at(v).pow(e)).first;
    return it->second;
  };
  Polynomial out(f.field());
  for (const auto& [m, c] : f.terms()) {
    Monomial kept;
    Polynomial acc = Polynomial::constant(c);
    for (const auto& [v, e] : m.factors()) {
      if (map.count(v) != 0) {
        acc = acc * power(v, e);
        if (acc.is_zero()) break;
      } else {
        kept = kept * Monomial::of(v, e);
      }
    }
    for (const auto& [am, ac] : acc.terms()) out.add_term(am * kept, ac);
  }
  return out;
}

/// Substitutes constants for some variables, leaving the rest symbolic.
inline Polynomial partial_evaluate(const Polynomial& f, const Point& point) {
  for (const auto& [v, s] : point) require_same_field(f.field(), s.field());
  Polynomial out(f.field());
  for (const auto& [m, c] : f.terms()) {
    Scalar coeff = c;
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      if (auto it = point.find(v); it != point.end()) {
        coeff *= it->second.pow(e);
        if (coeff.is_zero()) break;
      } else {
        kept = kept * Monomial::of(v, e);
      }
    }
    out.add_term(kept, coeff);
  }
  return out;
}

/// Full evaluation; every occurring variable must be assigned.
inline Scalar eval(const Polynomial& f, const Point& point) {
  Scalar total(f.field());
  for (const auto& [m, c] : f.terms()) {
    Scalar t = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw InvalidArgument("eval: no value for " + var_name(v));
      t *= it->second.pow(e);
    }
    total += t;
  }
  return total;
}

/// Leading monomial and coefficient under `ord`.
inline Term leading_term(const Polynomial& f, const MonomialOrder& ord = MonomialOrder::grlex()) {
  if (f.is_zero()) throw InvalidArgument("zero polynomial has neither leading nor trailing monomial");
  auto best = f.terms().begin();
  for (auto it = f.terms().begin(); it != f.terms().end(); ++it) {
    if (ord.compare(it->first, best->first) > 0) best = it;
  }
  return *best;
}

inline Term trailing_term(const Polynomial& f, const MonomialOrder& ord = MonomialOrder::grlex()) {
  if (f.is_zero()) throw InvalidArgument("zero polynomial has neither leading nor trailing monomial");
  auto best = f.terms().begin();
  for (auto it = f.terms().begin(); it != f.terms().end(); ++it) {
    if (ord.compare(it->first, best->first) < 0) best = it;
  }
  return *best;
}

inline Monomial leading_monomial(const Polynomial& f, const MonomialOrder& ord = MonomialOrder::grlex()) {
  return leading_term(f, ord).first;
}

/// Formal partial derivative with respect to `v`.
inline Polynomial derivative(const Polynomial& f, Var v) {
  Polynomial out(f.field());
  for (const auto& [m, c] : f.terms()) {
    const auto e = m.exponent(v);
    if (e == 0) continue;
    out.add_term(m.lowered(v), c * Scalar::from_int(f.field(), e));
  }
  return out;
}

/// Maps every coefficient into another field (Q -> F_p reduction, or identity).
inline Polynomial change_field(const Polynomial& f, const Field& to) {
  if (f.field() == to) return f;
  if (!f.field().is_rational()) throw FieldMismatch("can only map rational polynomials into another field");
  Polynomial out(to);
  for (const auto& [m, c] : f.terms()) out.add_term(m, Scalar::from_rational(to, c.rational()));
  return out;
}

}  // namespace nsbench
