#ifndef MDE_EISENSTEIN_HPP
#define MDE_EISENSTEIN_HPP

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "mde/arith.hpp"

namespace mde {

// Elements of Z[zeta] and K = Q(zeta), zeta a primitive cube root of unity,
// written in the basis {1, zeta} with zeta^2 = -zeta - 1.

class EisensteinInt {
 public:
  EisensteinInt() = default;
  EisensteinInt(long u) : u_(u) {}  // NOLINT: integers embed in Z[zeta]
  EisensteinInt(BigInt u) : u_(std::move(u)) {}  // NOLINT
  EisensteinInt(BigInt u, BigInt v) : u_(std::move(u)), v_(std::move(v)) {}

  static EisensteinInt zeta() { return {BigInt(0), BigInt(1)}; }

  const BigInt& u() const { return u_; }
  const BigInt& v() const { return v_; }

  /// u^2 - uv + v^2, the absolute value squared.
  BigInt norm() const { return u_ * u_ - u_ * v_ + v_ * v_; }
  EisensteinInt conj() const { return {BigInt(u_ - v_), BigInt(-v_)}; }
  bool is_zero() const { return u_ == 0 && v_ == 0; }
  bool is_rational() const { return v_ == 0; }
  std::complex<double> to_complex() const;

  EisensteinInt operator-() const { return {BigInt(-u_), BigInt(-v_)}; }
  EisensteinInt& operator+=(const EisensteinInt& o);
  EisensteinInt& operator-=(const EisensteinInt& o);
  EisensteinInt& operator*=(const EisensteinInt& o);

  friend EisensteinInt operator+(EisensteinInt a, const EisensteinInt& b) { return a += b; }
  friend EisensteinInt operator-(EisensteinInt a, const EisensteinInt& b) { return a -= b; }
  friend EisensteinInt operator*(EisensteinInt a, const EisensteinInt& b) { return a *= b; }
  friend bool operator==(const EisensteinInt& a, const EisensteinInt& b) {
    return a.u_ == b.u_ && a.v_ == b.v_;
  }
  friend bool operator<(const EisensteinInt& a, const EisensteinInt& b) {
    return a.u_ < b.u_ || (a.u_ == b.u_ && a.v_ < b.v_);
  }

  std::string to_string() const;

 private:
  BigInt u_ = 0;
  BigInt v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z);

/// Euclidean division with the quotient rounded to the nearest lattice point;
/// the remainder satisfies norm(r) <= 3/4 norm(b).
std::pair<EisensteinInt, EisensteinInt> divmod(const EisensteinInt& a,
                                               const EisensteinInt& b);

/// Exact division; throws DomainError when b does not divide a.
EisensteinInt exact_div(const EisensteinInt& a, const EisensteinInt& b);

class KElement {
 public:
  KElement() = default;
  KElement(long a) : a_(a) {}  // NOLINT
  KElement(Rational a) : a_(std::move(a)) {}  // NOLINT
  KElement(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  explicit KElement(const EisensteinInt& z) : a_(z.u()), b_(z.v()) {}

  static KElement zeta() { return {Rational(0), Rational(1)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  Rational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  Rational trace() const { return 2 * a_ - b_; }
  KElement conj() const { return {Rational(a_ - b_), Rational(-b_)}; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  KElement inverse() const;
  std::complex<double> to_complex() const;

  KElement operator-() const { return {Rational(-a_), Rational(-b_)}; }
  KElement& operator+=(const KElement& o);
  KElement& operator-=(const KElement& o);
  KElement& operator*=(const KElement& o);
  KElement& operator/=(const KElement& o) { return *this *= o.inverse(); }

  friend KElement operator+(KElement x, const KElement& y) { return x += y; }
  friend KElement operator-(KElement x, const KElement& y) { return x -= y; }
  friend KElement operator*(KElement x, const KElement& y) { return x *= y; }
  friend KElement operator/(KElement x, const KElement& y) { return x /= y; }
  friend bool operator==(const KElement& x, const KElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const KElement& x, const KElement& y) {
    return x.a_ < y.a_ || (x.a_ == y.a_ && x.b_ < y.b_);
  }

  std::string to_string() const;

 private:
  Rational a_ = 0;
  Rational b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const KElement& x);

KElement pow(KElement base, unsigned long exponent);

/// A cube root of c in K when one exists. The returned r satisfies r^3 == c
/// exactly; the search is numeric but every answer is confirmed by cubing.
/// A rational root is preferred; otherwise the smallest of the three.
std::optional<KElement> is_cube_in_K(const KElement& c);

}  // namespace mde

namespace Eigen {

template <>
struct NumTraits<mde::EisensteinInt> : GenericNumTraits<mde::EisensteinInt> {
  typedef mde::EisensteinInt Real;
  typedef mde::EisensteinInt NonInteger;
  typedef mde::EisensteinInt Nested;
  typedef mde::EisensteinInt Literal;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 16,
    MulCost = 64
  };
};

}  // namespace Eigen

#endif  // MDE_EISENSTEIN_HPP
