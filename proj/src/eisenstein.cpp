#include "mde/eisenstein.hpp"

#include <algorithm>
#include <initializer_list>
#include <cmath>
#include <sstream>
#include <vector>

#include <mpfr.h>

namespace mde {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676;

// Round a rational to the nearest integer, ties towards +infinity.
BigInt round_nearest(const Rational& q) {
  Rational shifted = q + Rational(1, 2);
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

BigInt lcm(const BigInt& x, const BigInt& y) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return out;
}

}  // namespace

std::complex<double> EisensteinInt::to_complex() const {
  const double u = u_.get_d();
  const double v = v_.get_d();
  return {u - 0.5 * v, kHalfSqrt3 * v};
}

EisensteinInt& EisensteinInt::operator+=(const EisensteinInt& o) {
  u_ += o.u_;
  v_ += o.v_;
  return *this;
}

EisensteinInt& EisensteinInt::operator-=(const EisensteinInt& o) {
  u_ -= o.u_;
  v_ -= o.v_;
  return *this;
}

EisensteinInt& EisensteinInt::operator*=(const EisensteinInt& o) {
  // (u + v z)(s + t z) = (us - vt) + (ut + vs - vt) z
  const BigInt vt = v_ * o.v_;
  BigInt u = u_ * o.u_ - vt;
  BigInt v = u_ * o.v_ + v_ * o.u_ - vt;
  u_ = std::move(u);
  v_ = std::move(v);
  return *this;
}

std::string EisensteinInt::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z) {
  return os << '(' << z.u() << ',' << z.v() << ')';
}

std::pair<EisensteinInt, EisensteinInt> divmod(const EisensteinInt& a,
                                               const EisensteinInt& b) {
  if (b.is_zero()) throw DomainError("divmod: division by zero");
  const EisensteinInt numerator = a * b.conj();
  const BigInt n = b.norm();
  EisensteinInt q(round_nearest(make_rational(numerator.u(), n)),
                  round_nearest(make_rational(numerator.v(), n)));
  EisensteinInt r = a - q * b;
  return {std::move(q), std::move(r)};
}

EisensteinInt exact_div(const EisensteinInt& a, const EisensteinInt& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("exact_div: not divisible");
  return q;
}

KElement KElement::inverse() const {
  const Rational n = norm();
  if (n == 0) throw DomainError("KElement: inverse of zero");
  const KElement c = conj();
  return {Rational(c.a_ / n), Rational(c.b_ / n)};
}

std::complex<double> KElement::to_complex() const {
  const double a = a_.get_d();
  const double b = b_.get_d();
  return {a - 0.5 * b, kHalfSqrt3 * b};
}

KElement& KElement::operator+=(const KElement& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

KElement& KElement::operator-=(const KElement& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

KElement& KElement::operator*=(const KElement& o) {
  const Rational bd = b_ * o.b_;
  Rational a = a_ * o.a_ - bd;
  Rational b = a_ * o.b_ + b_ * o.a_ - bd;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::string KElement::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const KElement& x) {
  return os << '(' << x.a() << ',' << x.b() << ')';
}

KElement pow(KElement base, unsigned long exponent) {
  KElement result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

namespace {

// RAII holder for a handful of MPFR variables at one precision.
class MpfrScope {
 public:
  MpfrScope(std::size_t count, mpfr_prec_t precision) : vars_(count) {
    for (auto& v : vars_) mpfr_init2(&v, precision);
  }
  ~MpfrScope() {
    for (auto& v : vars_) mpfr_clear(&v);
  }
  MpfrScope(const MpfrScope&) = delete;
  MpfrScope& operator=(const MpfrScope&) = delete;
  mpfr_ptr operator[](std::size_t i) { return &vars_[i]; }

 private:
  std::vector<__mpfr_struct> vars_;
};

// Integral cube root of beta in Z[zeta], if any.
std::optional<EisensteinInt> integral_cube_root(const EisensteinInt& beta) {
  if (beta.is_zero()) return EisensteinInt(0);
  const std::size_t bits = std::max(mpz_sizeinbase(beta.u().get_mpz_t(), 2),
                                    mpz_sizeinbase(beta.v().get_mpz_t(), 2));
  const auto precision = static_cast<mpfr_prec_t>(bits / 3 + 96);

  MpfrScope m(10, precision);
  mpfr_ptr re = m[0], im = m[1], rad = m[2], arg = m[3], tmp = m[4],
           sqrt3 = m[5], s = m[6], c = m[7], p = m[8], q = m[9];

  // beta = s + t zeta  ->  (s - t/2) + i (t sqrt3 / 2)
  mpfr_sqrt_ui(sqrt3, 3, MPFR_RNDN);
  mpfr_set_z(re, beta.u().get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(tmp, beta.v().get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(tmp, tmp, 1, MPFR_RNDN);
  mpfr_sub(re, re, tmp, MPFR_RNDN);
  mpfr_mul(im, tmp, sqrt3, MPFR_RNDN);

  mpfr_hypot(rad, re, im, MPFR_RNDN);
  mpfr_cbrt(rad, rad, MPFR_RNDN);
  mpfr_atan2(arg, im, re, MPFR_RNDN);

  BigInt pz, qz;
  for (int k = 0; k < 3; ++k) {
    // angle = (arg + 2 pi k) / 3
    mpfr_const_pi(tmp, MPFR_RNDN);
    mpfr_mul_ui(tmp, tmp, 2 * k, MPFR_RNDN);
    mpfr_add(tmp, tmp, arg, MPFR_RNDN);
    mpfr_div_ui(tmp, tmp, 3, MPFR_RNDN);
    mpfr_sin_cos(s, c, tmp, MPFR_RNDN);
    mpfr_mul(c, c, rad, MPFR_RNDN);  // real part
    mpfr_mul(s, s, rad, MPFR_RNDN);  // imaginary part
    // w = P + Q zeta: Q = 2 Im / sqrt3, P = Re + Q / 2
    mpfr_mul_2ui(q, s, 1, MPFR_RNDN);
    mpfr_div(q, q, sqrt3, MPFR_RNDN);
    mpfr_div_2ui(p, q, 1, MPFR_RNDN);
    mpfr_add(p, p, c, MPFR_RNDN);
    mpfr_round(p, p);
    mpfr_round(q, q);
    mpfr_get_z(pz.get_mpz_t(), p, MPFR_RNDN);
    mpfr_get_z(qz.get_mpz_t(), q, MPFR_RNDN);
    EisensteinInt candidate(pz, qz);
    if (candidate * candidate * candidate == beta) return candidate;
  }
  return std::nullopt;
}

}  // namespace

std::optional<KElement> is_cube_in_K(const KElement& c) {
  if (c.is_zero()) return KElement(0);
  // c d^3 is integral; a cube root of an integral element is integral.
  const BigInt d = lcm(c.a().get_den(), c.b().get_den());
  const BigInt d2 = d * d;
  const EisensteinInt beta(BigInt(c.a().get_num() * (d / c.a().get_den()) * d2),
                           BigInt(c.b().get_num() * (d / c.b().get_den()) * d2));
  auto root = integral_cube_root(beta);
  if (!root) return std::nullopt;
  KElement r(make_rational(root->u(), d), make_rational(root->v(), d));
  if (r * r * r != c) throw InternalError("is_cube_in_K: verification failed");
  // Canonical choice among r, r zeta, r zeta^2: a rational root if any, else the smallest.
  const KElement rz = r * KElement::zeta();
  const KElement rzz = rz * KElement::zeta();
  for (const KElement* cand : std::initializer_list<const KElement*>{&r, &rz, &rzz}) {
    if (cand->is_rational()) return *cand;
  }
  return std::min({r, rz, rzz});
}

}  // namespace mde
