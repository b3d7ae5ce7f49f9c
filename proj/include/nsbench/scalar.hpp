#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "nsbench/error.hpp"

namespace nsbench {

/// Prime test by trial division. Only primes below 2^40 are accepted, so
/// divisors up to 2^20 suffice.
inline bool is_small_prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 40)) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Field tag: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind : std::uint8_t { Rational, Prime };

  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime(std::uint64_t p) {
    if (!is_small_prime(p)) {
      throw InvalidArgument("not a prime below 2^40: " + std::to_string(p));
    }
    Field f;
    f.kind_ = Kind::Prime;
    f.p_ = p;
    return f;
  }

  /// Accepts "q" or "fp:<p>".
  static Field parse(std::string_view tag) {
    if (tag == "q" || tag == "Q") return rationals();
    if (tag.substr(0, 3) == "fp:") {
      const std::string digits(tag.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("bad field tag: " + std::string(tag));
      }
      return prime(std::stoull(digits));
    }
    throw ParseError("bad field tag: " + std::string(tag));
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  bool is_prime() const { return kind_ == Kind::Prime; }
  std::uint64_t characteristic() const { return p_; }

  std::string tag() const { return is_rational() ? "q" : "fp:" + std::to_string(p_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Kind kind_ = Kind::Rational;
  std::uint64_t p_ = 0;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("field mismatch: " + a.tag() + " vs " + b.tag());
}

/// Exact field element. Rationals are kept canonical by GMP (lowest terms,
/// positive denominator); residues live in [0, p).
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  explicit Scalar(const Field& f) : field_(f) {
    if (f.is_prime()) value_ = std::uint64_t{0};
  }

  static Scalar from_int(const Field& f, long long v) {
    Scalar s(f);
    if (f.is_rational()) {
      s.value_ = mpq_class(static_cast<long>(v));
    } else {
      const auto p = static_cast<long long>(f.characteristic());
      long long r = v % p;
      if (r < 0) r += p;
      s.value_ = static_cast<std::uint64_t>(r);
    }
    return s;
  }

  static Scalar from_mpz(const Field& f, const mpz_class& v) {
    Scalar s(f);
    if (f.is_rational()) {
      s.value_ = mpq_class(v);
    } else {
      mpz_class r = v % mpz_class(static_cast<unsigned long>(f.characteristic()));
      if (r < 0) r += static_cast<unsigned long>(f.characteristic());
      s.value_ = static_cast<std::uint64_t>(r.get_ui());
    }
    return s;
  }

  /// Maps a rational into `f`; in F_p this fails when p divides the denominator.
  static Scalar from_rational(const Field& f, const mpq_class& q) {
    if (f.is_rational()) {
      Scalar s(f);
      mpq_class c = q;
      c.canonicalize();
      s.value_ = std::move(c);
      return s;
    }
    const Scalar num = from_mpz(f, q.get_num());
    const Scalar den = from_mpz(f, q.get_den());
    return num / den;
  }

  static Scalar one(const Field& f) { return from_int(f, 1); }

  const Field& field() const { return field_; }

  bool is_zero() const {
    if (field_.is_rational()) return sgn(std::get<mpq_class>(value_)) == 0;
    return std::get<std::uint64_t>(value_) == 0;
  }

  bool is_one() const {
    if (field_.is_rational()) return std::get<mpq_class>(value_) == 1;
    return std::get<std::uint64_t>(value_) == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  /// -1, 0, 1 for rationals; residues report 0 or 1.
  int sign() const {
    if (field_.is_rational()) return sgn(rational());
    return is_zero() ? 0 : 1;
  }

  Scalar operator-() const {
    Scalar s(field_);
    if (field_.is_rational()) {
      s.value_ = mpq_class(-rational());
    } else {
      const auto r = residue();
      s.value_ = r == 0 ? 0 : field_.characteristic() - r;
    }
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    require_same_field(field_, o.field_);
    if (field_.is_rational()) {
      std::get<mpq_class>(value_) += o.rational();
    } else {
      const auto p = field_.characteristic();
      auto r = residue() + o.residue();
      if (r >= p) r -= p;
      value_ = r;
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    require_same_field(field_, o.field_);
    if (field_.is_rational()) {
      std::get<mpq_class>(value_) -= o.rational();
    } else {
      const auto p = field_.characteristic();
      const auto a = residue();
      const auto b = o.residue();
      value_ = a >= b ? a - b : a + (p - b);
    }
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    require_same_field(field_, o.field_);
    if (field_.is_rational()) {
      std::get<mpq_class>(value_) *= o.rational();
    } else {
      value_ = mulmod(residue(), o.residue(), field_.characteristic());
    }
    return *this;
  }

  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    Scalar s(field_);
    if (field_.is_rational()) {
      s.value_ = mpq_class(1 / rational());
    } else {
      const auto p = field_.characteristic();
      s.value_ = powmod(residue(), p - 2, p);
    }
    return s;
  }

  Scalar pow(unsigned e) const {
    Scalar result = one(field_);
    Scalar base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Elements of different fields compare unequal.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) return false;
    if (a.field_.is_rational()) return a.rational() == b.rational();
    return a.residue() == b.residue();
  }

  /// "p/q" (or "p") for rationals, the residue for F_p.
  std::string to_string() const {
    if (field_.is_rational()) return rational().get_str();
    return std::to_string(residue());
  }

  std::size_t hash() const {
    if (field_.is_rational()) {
      return std::hash<std::string>{}(rational().get_str());
    }
    return std::hash<std::uint64_t>{}(residue());
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }

  static std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e != 0) {
      if (e & 1U) r = mulmod(r, b, p);
      b = mulmod(b, b, p);
      e >>= 1U;
    }
    return r;
  }

  Field field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

/// Parses "a" or "a/b" (integers, optional leading '-') into `f`.
inline Scalar parse_scalar(const Field& f, std::string_view text) {
  std::string s(text);
  const auto ok = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!ok(s, true)) throw ParseError("bad scalar: " + s);
    return Scalar::from_mpz(f, mpz_class(s[0] == '+' ? s.substr(1) : s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!ok(num, true) || !ok(den, false)) throw ParseError("bad scalar: " + s);
  const mpz_class d(den);
  if (d == 0) throw ParseError("zero denominator: " + s);
  mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return Scalar::from_rational(f, q);
}

}  // namespace nsbench
