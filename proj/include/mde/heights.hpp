#ifndef MDE_HEIGHTS_HPP
#define MDE_HEIGHTS_HPP

#include "mde/curve.hpp"

namespace mde {

/// A height in natural-log units with a guaranteed absolute error bound.
struct HeightValue {
  double value = 0;
  double precision = 0;
};

/// Absolute logarithmic Weil height of a rational.
double weil_height(const Rational& q);

/// Absolute logarithmic Weil height of an element of K.
double weil_height(const KElement& alpha);

/// Height of (1 : x : y) with the max norm at every place; 0 at infinity.
double point_weil_height(const Point<Rational>& P);
double point_weil_height(const Point<KElement>& P);

/// Same with the archimedean max replaced by the euclidean norm.
double point_h2(const Point<Rational>& P);
double point_h2(const Point<KElement>& P);

/// (h(Delta) + 3 h(j)) / 4 + (h(A) + h(B)) / 2 + 4.
double c_of_e(const Curve& E);

/// Uniform bound on |h(x(P)) - lim h(x(2^k P)) / 4^k|.
double x_height_difference_bound(const Curve& E);

bool is_torsion(const Curve& E, const Point<Rational>& P);
bool is_torsion(const Curve& E, const Point<KElement>& P);

/// Canonical height, normalized as 3/2 lim h(x(2^k P)) / 4^k, with error <= eps.
HeightValue canonical_height(const Curve& E, const Point<Rational>& P, double eps = 1e-6);
HeightValue canonical_height(const Curve& E, const Point<KElement>& P, double eps = 1e-6);

}  // namespace mde

#endif  // MDE_HEIGHTS_HPP
