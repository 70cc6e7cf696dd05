#ifndef MDE_INTERVAL_HPP
#define MDE_INTERVAL_HPP

#include <algorithm>
#include <ostream>
#include <string>

#include <boost/math/special_functions/next.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mde/arith.hpp"

namespace mde {

using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Closed interval [lo, hi] over a floating scalar. Every operation widens its
/// result outward by a few units in the last place, so the true value of an
/// expression built from exact inputs stays inside.
template <class T>
class Interval {
 public:
  Interval() = default;
  Interval(const T& x) : lo_(x), hi_(x) {}  // NOLINT: exact points
  Interval(const T& lo, const T& hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw DomainError("Interval: lo > hi");
  }
  Interval(long x) : lo_(x), hi_(x) {}  // NOLINT

  static Interval from_bigint(const BigInt& z) { return widen(T(z.get_str())); }
  static Interval from_rational(const Rational& q) {
    return from_bigint(q.get_num()) / from_bigint(q.get_den());
  }
  static Interval pi() { return widen(boost::math::constants::pi<T>()); }

  const T& lo() const { return lo_; }
  const T& hi() const { return hi_; }
  T mid() const { return (lo_ + hi_) / 2; }
  double lower() const { return static_cast<double>(boost::math::float_prior(lo_)); }
  double upper() const { return static_cast<double>(boost::math::float_next(hi_)); }
  bool contains(const T& x) const { return lo_ <= x && x <= hi_; }
  bool positive() const { return lo_ > 0; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return outward(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return outward(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const T p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0 && b.hi_ >= 0) throw DomainError("Interval: division by an interval containing 0");
    return a * outward(1 / b.hi_, 1 / b.lo_);
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  friend Interval log(const Interval& a) {
    if (a.lo_ <= 0) throw DomainError("Interval: log of a non-positive interval");
    return outward(boost::multiprecision::log(a.lo_), boost::multiprecision::log(a.hi_));
  }
  friend Interval sqrt(const Interval& a) {
    if (a.lo_ < 0) throw DomainError("Interval: sqrt of a negative interval");
    return outward(boost::multiprecision::sqrt(a.lo_), boost::multiprecision::sqrt(a.hi_));
  }
  /// a^e for a > 0 and real e.
  friend Interval pow(const Interval& a, const Interval& e) {
    if (a.lo_ <= 0) throw DomainError("Interval: pow of a non-positive base");
    const Interval l = log(a) * e;
    return outward(boost::multiprecision::exp(l.lo_), boost::multiprecision::exp(l.hi_));
  }
  friend Interval pow(const Interval& a, long e) {
    Interval r(1);
    Interval b = e < 0 ? Interval(1) / a : a;
    for (long k = e < 0 ? -e : e; k > 0; --k) r = r * b;
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo_.str(36) << ", " << a.hi_.str(36) << ']';
  }

 private:
  // Four ulps outward covers the error of the underlying elementary functions.
  static Interval outward(const T& lo, const T& hi) {
    T l = lo, h = hi;
    for (int i = 0; i < 4; ++i) {
      l = boost::math::float_prior(l);
      h = boost::math::float_next(h);
    }
    return {l, h};
  }
  static Interval widen(const T& x) { return outward(x, x); }

  T lo_ = 0;
  T hi_ = 0;
};

using IntervalQ = Interval<Quad>;

}  // namespace mde

#endif  // MDE_INTERVAL_HPP
