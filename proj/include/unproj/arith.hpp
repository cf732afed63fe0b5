#pragma once

// Exact coefficient arithmetic: arbitrary-precision integers (GMP), canonical
// rationals and word-sized prime fields.  Each field comes as a pair: an
// element type with ordinary operators, and a small descriptor type that
// knows how to build constants and is carried by polynomial rings.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace unproj {

using Integer = mpz_class;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Nonnegative greatest common divisor; gcd(0, 0) = 0.
inline Integer int_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// ---------------------------------------------------------------------------
// Rational

class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& v) : value_(v) {}

  /// Canonical n/d: gcd(|n|, d) = 1, d > 0.
  static Rational normalize(const Integer& n, const Integer& d) {
    if (d == 0) throw ArithmeticError("rational with zero denominator");
    Rational r;
    r.value_ = mpq_class(n, d);
    r.value_.canonicalize();
    return r;
  }

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_negative() const { return sgn(value_) < 0; }

  Rational inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero");
    Rational r;
    mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
    return r;
  }

  Rational operator-() const { return from(-value_); }
  friend Rational operator+(const Rational& a, const Rational& b) { return from(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return from(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return from(a.value_ * b.value_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero");
    return from(a.value_ / b.value_);
  }
  Rational& operator+=(const Rational& b) { value_ += b.value_; return *this; }
  Rational& operator-=(const Rational& b) { value_ -= b.value_; return *this; }
  Rational& operator*=(const Rational& b) { value_ *= b.value_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }

  /// "p" or "p/q" for the absolute value.
  std::string abs_string() const {
    mpq_class a = abs(value_);
    return a.get_str();
  }
  std::string to_string() const { return value_.get_str(); }

 private:
  static Rational from(mpq_class v) {
    Rational r;
    r.value_ = std::move(v);
    return r;
  }
  mpq_class value_;
};

inline Rational rat_normalize(const Integer& n, const Integer& d) { return Rational::normalize(n, d); }

struct RationalField {
  using Element = Rational;

  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element from_integer(const Integer& v) const { return Rational(v); }
  Element from_rational(const Rational& v) const { return v; }
  std::string name() const { return "q"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// ---------------------------------------------------------------------------
// Prime fields Z/p with p an odd prime below 2^32.

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

class PrimeFieldElement {
 public:
  PrimeFieldElement(std::uint64_t residue, std::uint32_t modulus)
      : residue_(static_cast<std::uint32_t>(residue % modulus)), modulus_(modulus) {}

  std::uint32_t residue() const { return residue_; }
  std::uint32_t modulus() const { return modulus_; }

  bool is_zero() const { return residue_ == 0; }
  bool is_one() const { return residue_ == 1; }
  /// Symmetric representative in (-p/2, p/2] is used for printing.
  bool is_negative() const { return residue_ > modulus_ / 2; }

  PrimeFieldElement inverse() const {
    if (residue_ == 0) throw ArithmeticError("inverse of zero modulo " + std::to_string(modulus_));
    // Extended Euclid on (residue, p).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = modulus_, new_r = residue_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += modulus_;
    return {static_cast<std::uint64_t>(t), modulus_};
  }

  PrimeFieldElement operator-() const { return {residue_ == 0 ? 0u : modulus_ - residue_, modulus_}; }
  friend PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check(a, b);
    return {std::uint64_t{a.residue_} + b.residue_, a.modulus_};
  }
  friend PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check(a, b);
    return {std::uint64_t{a.residue_} + a.modulus_ - b.residue_, a.modulus_};
  }
  friend PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check(a, b);
    return {std::uint64_t{a.residue_} * b.residue_, a.modulus_};
  }
  friend PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    return a * b.inverse();
  }
  PrimeFieldElement& operator+=(const PrimeFieldElement& b) { return *this = *this + b; }
  PrimeFieldElement& operator-=(const PrimeFieldElement& b) { return *this = *this - b; }
  PrimeFieldElement& operator*=(const PrimeFieldElement& b) { return *this = *this * b; }

  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    return a.residue_ == b.residue_ && a.modulus_ == b.modulus_;
  }

  std::string abs_string() const {
    return std::to_string(is_negative() ? modulus_ - residue_ : residue_);
  }
  std::string to_string() const { return std::to_string(residue_); }

 private:
  static void check(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    if (a.modulus_ != b.modulus_) throw ArithmeticError("mixed prime moduli");
  }

  std::uint32_t residue_;
  std::uint32_t modulus_;
};

inline PrimeFieldElement prime_inverse(const PrimeFieldElement& x) { return x.inverse(); }

class PrimeField {
 public:
  using Element = PrimeFieldElement;

  static constexpr std::uint32_t kDefaultModulus = 65521;

  explicit PrimeField(std::uint32_t p = kDefaultModulus) : p_(p) {
    if (p < 3 || !is_prime(p)) throw ArithmeticError("modulus " + std::to_string(p) + " is not an odd prime");
  }

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return {0, p_}; }
  Element one() const { return {1, p_}; }
  Element from_integer(const Integer& v) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
    return {r.get_ui(), p_};
  }
  /// Throws when p divides the denominator.
  Element from_rational(const Rational& v) const {
    Element den = from_integer(v.denominator());
    if (den.is_zero())
      throw ArithmeticError("denominator of " + v.to_string() + " vanishes modulo " + std::to_string(p_));
    return from_integer(v.numerator()) / den;
  }
  std::string name() const { return "fp:" + std::to_string(p_); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

template <class F>
concept CoefficientField = requires(const F& f, const typename F::Element& a, const Integer& z, const Rational& q) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_integer(z) } -> std::same_as<typename F::Element>;
  { f.from_rational(q) } -> std::same_as<typename F::Element>;
  { f.name() } -> std::convertible_to<std::string>;
  { a + a } -> std::same_as<typename F::Element>;
  { a - a } -> std::same_as<typename F::Element>;
  { a * a } -> std::same_as<typename F::Element>;
  { a / a } -> std::same_as<typename F::Element>;
  { -a } -> std::same_as<typename F::Element>;
  { a.inverse() } -> std::same_as<typename F::Element>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.is_one() } -> std::same_as<bool>;
  { a.is_negative() } -> std::same_as<bool>;
  { a.abs_string() } -> std::same_as<std::string>;
};

static_assert(CoefficientField<RationalField>);
static_assert(CoefficientField<PrimeField>);

}  // namespace unproj
