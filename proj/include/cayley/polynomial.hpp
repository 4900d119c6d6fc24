#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cayley {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial in x with exact integer coefficients, index = exponent.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coefficients);
  Polynomial(std::initializer_list<long long> coefficients);

  static Polynomial constant(const BigInt& c);
  static Polynomial monomial(const BigInt& c, std::size_t k);

  const std::vector<BigInt>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  BigInt operator[](std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  const BigInt& leading() const { return c_.back(); }
  /// Lowest non-zero coefficient.
  const BigInt& trailing() const;

  /// gcd of the coefficients, non-negative.
  BigInt content() const;
  Polynomial primitive() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial scaled(const BigInt& k) const;
  Polynomial divided(const BigInt& k) const;  // exact, throws std::domain_error

  bool operator==(const Polynomial&) const = default;

  /// "1 - 5x + 6x^2"
  std::string to_string() const;

 private:
  std::vector<BigInt> c_;
  void trim();
};

/// a / b when b divides a in Z[x]; throws std::domain_error otherwise.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// A rational function num/den kept in normal form: coprime, no common
/// integer content, lowest non-zero coefficient of den positive.
class RationalGF {
 public:
  RationalGF() : den_({1}) {}
  RationalGF(Polynomial num, Polynomial den);
  RationalGF(const Polynomial& p) : RationalGF(p, Polynomial{1}) {}  // NOLINT

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalGF operator-() const { return RationalGF(-num_, den_); }
  friend RationalGF operator+(const RationalGF& a, const RationalGF& b);
  friend RationalGF operator-(const RationalGF& a, const RationalGF& b);
  friend RationalGF operator*(const RationalGF& a, const RationalGF& b);
  friend RationalGF operator/(const RationalGF& a, const RationalGF& b);

  /// a.num * b.den == b.num * a.den
  bool cross_equal(const RationalGF& other) const;
  bool operator==(const RationalGF&) const = default;

  /// "(x - 2x^2)/(1 - 5x)", or just the numerator when den = 1.
  std::string to_string() const;
  /// {"num": [...], "den": [...]}; coefficients too large for 64 bits are strings.
  std::string to_json() const;
  static RationalGF from_json(std::string_view text);
  /// Reads expressions such as "(4x^4 - 2x^3 + 1)/((x - 1)^3 (2x - 1))".
  static RationalGF parse(std::string_view text);

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Coefficients of x^1..x^n. Requires a non-zero constant term in the
/// denominator; throws std::domain_error if the expansion is not integral.
std::vector<BigInt> series(const RationalGF& g, std::size_t n);
/// Coefficients of x^0..x^n.
std::vector<BigInt> taylor(const RationalGF& g, std::size_t n);

}  // namespace cayley
