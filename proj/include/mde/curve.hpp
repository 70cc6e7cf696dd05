#ifndef MDE_CURVE_HPP
#define MDE_CURVE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mde/arith.hpp"
#include "mde/eisenstein.hpp"
#include "mde/prime_field.hpp"

namespace mde {

/// Imaginary quadratic order Z + f O_K.
struct OrderData {
  long D = -3;  // squarefree, negative
  long f = 1;

  long disc_field() const { return ((D % 4) + 4) % 4 == 1 ? D : 4 * D; }
  double covolume() const;
};

/// y^2 = x^3 + A x + B over Q.
class Curve {
 public:
  Curve(BigInt A, BigInt B, std::optional<OrderData> cm = std::nullopt);

  /// Builds the curve and looks its j-invariant up in the class-number-one table.
  static Curve with_detected_cm(BigInt A, BigInt B);

  const BigInt& A() const { return A_; }
  const BigInt& B() const { return B_; }
  const BigInt& discriminant() const { return disc_; }
  const Rational& j() const { return j_; }
  const std::optional<OrderData>& cm() const { return cm_; }

 private:
  BigInt A_, B_, disc_;
  Rational j_;
  std::optional<OrderData> cm_;
};

/// (Delta, j) of y^2 = x^3 + A x + B. Throws DomainError when singular.
std::pair<BigInt, Rational> curve_invariants(const BigInt& A, const BigInt& B);

/// CM order for the thirteen rational CM j-invariants.
std::optional<OrderData> cm_order_for_j(const Rational& j);

template <class F>
struct Point {
  bool infinity = true;
  F x{}, y{};

  static Point at_infinity() { return {}; }
  static Point affine(F x, F y) { return {false, std::move(x), std::move(y)}; }

  friend bool operator==(const Point& P, const Point& Q) {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return P.x == Q.x && P.y == Q.y;
  }
};

/// Short Weierstrass model over a field F, carrying F's zero and one.
template <class F>
struct CurveModel {
  F a, b, zero, one;
};

CurveModel<Rational> model_q(const Curve& E);
CurveModel<KElement> model_k(const Curve& E);

/// Reduction modulo a prime p >= 5 of good reduction.
CurveModel<Fp> reduce_mod_p(const Curve& E, std::uint64_t p);

/// Image of a rational point; points with p in a denominator go to infinity.
Point<Fp> reduce_point(const Point<Rational>& P, std::uint64_t p);

/// #E(F_p) by naive character sum.
std::uint64_t group_order(const CurveModel<Fp>& E);

template <class F>
bool on_curve(const CurveModel<F>& E, const Point<F>& P) {
  if (P.infinity) return true;
  return P.y * P.y == P.x * P.x * P.x + E.a * P.x + E.b;
}

template <class F>
Point<F> neg(const Point<F>& P) {
  if (P.infinity) return P;
  return Point<F>::affine(P.x, -P.y);
}

template <class F>
Point<F> add(const CurveModel<F>& E, const Point<F>& P, const Point<F>& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  F slope;
  if (P.x == Q.x) {
    if (P.y != Q.y || P.y == E.zero) return Point<F>::at_infinity();
    const F x2 = P.x * P.x;
    slope = (x2 + x2 + x2 + E.a) / (P.y + P.y);
  } else {
    slope = (Q.y - P.y) / (Q.x - P.x);
  }
  F x3 = slope * slope - P.x - Q.x;
  F y3 = slope * (P.x - x3) - P.y;
  return Point<F>::affine(std::move(x3), std::move(y3));
}

template <class F>
Point<F> dbl(const CurveModel<F>& E, const Point<F>& P) {
  return add(E, P, P);
}

template <class F>
Point<F> scalar_mul(const CurveModel<F>& E, const BigInt& m, const Point<F>& P) {
  Point<F> base = m < 0 ? neg(P) : P;
  const BigInt k = abs(m);
  Point<F> result = Point<F>::at_infinity();
  const auto bits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
  for (long i = bits - 1; i >= 0; --i) {
    result = dbl(E, result);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = add(E, result, base);
  }
  return result;
}

template <class F>
Point<F> scalar_mul(const CurveModel<F>& E, long m, const Point<F>& P) {
  return scalar_mul(E, BigInt(m), P);
}

/// (x, y) -> (root x, y) on a curve with a = 0.
template <class F>
Point<F> cm_apply(const CurveModel<F>& E, const F& root, const Point<F>& P) {
  if (!(E.a == E.zero)) throw DomainError("cm_apply: curve must have j = 0");
  if (root == E.one || !(root * root * root == E.one)) {
    throw DomainError("cm_apply: root must be a primitive cube root of unity");
  }
  if (P.infinity) return P;
  return Point<F>::affine(root * P.x, P.y);
}

/// [u + v zeta] P, where zeta acts through root.
template <class F>
Point<F> eisenstein_mul(const CurveModel<F>& E, const F& root, const EisensteinInt& c,
                        const Point<F>& P) {
  const Point<F> zp = cm_apply(E, root, P);
  return add(E, scalar_mul(E, c.u(), P), scalar_mul(E, c.v(), zp));
}

/// Embedding of a rational point into E(K).
Point<KElement> to_k(const Point<Rational>& P);

}  // namespace mde

#endif  // MDE_CURVE_HPP
