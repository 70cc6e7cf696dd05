#include "mde/heights.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace mde {

namespace {

namespace bmp = boost::multiprecision;
using Real = bmp::number<bmp::cpp_bin_float<400, bmp::digit_base_2>, bmp::et_off>;

struct Cx {
  Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }
Cx operator/(const Cx& a, const Cx& b) {
  const Real n = abs2(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Real to_real(const Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

Cx to_cx(const KElement& x) {
  const Real a = to_real(x.a()), b = to_real(x.b());
  return {a - b / 2, b * bmp::sqrt(Real(3)) / 2};
}

BigInt lcm(const BigInt& x, const BigInt& y) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return out;
}

EisensteinInt gcd(EisensteinInt a, EisensteinInt b) {
  while (!b.is_zero()) {
    EisensteinInt r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

EisensteinInt reduce(const EisensteinInt& z, const BigInt& m) {
  BigInt u, v;
  mpz_fdiv_r(u.get_mpz_t(), z.u().get_mpz_t(), m.get_mpz_t());
  mpz_fdiv_r(v.get_mpz_t(), z.v().get_mpz_t(), m.get_mpz_t());
  return {u, v};
}

// Fraction-free determinant.
BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// |Res(F, G)| of the homogeneous x-doubling forms
// F = X^4 - 2A X^2 Z^2 - 8B X Z^3 + A^2 Z^4, G = 4Z(X^3 + A X Z^2 + B Z^3).
BigInt doubling_resultant(const Curve& E) {
  const BigInt& A = E.A();
  const BigInt& B = E.B();
  const std::vector<BigInt> f = {1, 0, -2 * A, -8 * B, A * A};
  const std::vector<BigInt> g = {0, 4, 0, 4 * A, 4 * B};
  std::vector<std::vector<BigInt>> s(8, std::vector<BigInt>(8, 0));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 5; ++c) {
      s[r][r + c] = f[c];
      s[r + 4][r + c] = g[c];
    }
  }
  return abs(bareiss_det(std::move(s)));
}

// Integral (X, Z) with X / Z = x and coprime in Z[zeta].
std::pair<EisensteinInt, EisensteinInt> primitive_pair(const KElement& x) {
  const BigInt d = lcm(x.a().get_den(), x.b().get_den());
  EisensteinInt X(BigInt(x.a().get_num() * (d / x.a().get_den())),
                  BigInt(x.b().get_num() * (d / x.b().get_den())));
  EisensteinInt Z(d);
  const EisensteinInt g = gcd(X, Z);
  return {exact_div(X, g), exact_div(Z, g)};
}

double log_norm(const EisensteinInt& z) { return log_abs(z.norm()); }

double point_height_impl(const Point<KElement>& P, bool euclidean) {
  if (P.infinity) return 0.0;
  const std::vector<KElement> coords = {KElement(1), P.x, P.y};
  BigInt d = 1;
  for (const auto& c : coords) d = lcm(lcm(d, c.a().get_den()), c.b().get_den());
  std::vector<EisensteinInt> v;
  EisensteinInt g;
  for (const auto& c : coords) {
    v.emplace_back(BigInt(c.a().get_num() * (d / c.a().get_den())),
                   BigInt(c.b().get_num() * (d / c.b().get_den())));
    g = gcd(g, v.back());
  }
  BigInt arch = 0;
  for (const auto& z : v) {
    arch = euclidean ? BigInt(arch + z.norm()) : std::max(arch, z.norm());
  }
  return 0.5 * (log_abs(arch) - log_norm(g));
}

}  // namespace

double weil_height(const Rational& q) { return log_height(q); }

double weil_height(const KElement& alpha) {
  if (alpha.is_rational()) return log_height(alpha.a());
  // Minimal polynomial X^2 - Tr X + N; c is its primitive leading coefficient.
  const Rational tr = alpha.trace();
  const Rational n = alpha.norm();
  const BigInt l = lcm(tr.get_den(), n.get_den());
  BigInt content;
  mpz_gcd(content.get_mpz_t(), l.get_mpz_t(), BigInt(tr.get_num() * (l / tr.get_den())).get_mpz_t());
  mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
          BigInt(n.get_num() * (l / n.get_den())).get_mpz_t());
  const BigInt c = l / content;
  const double log_n = log_abs(n.get_num()) - log_abs(n.get_den());
  return 0.5 * (log_abs(c) + std::max(0.0, log_n));
}

double point_weil_height(const Point<Rational>& P) { return point_height_impl(to_k(P), false); }
double point_weil_height(const Point<KElement>& P) { return point_height_impl(P, false); }
double point_h2(const Point<Rational>& P) { return point_height_impl(to_k(P), true); }
double point_h2(const Point<KElement>& P) { return point_height_impl(P, true); }

double c_of_e(const Curve& E) {
  return (weil_height(Rational(E.discriminant())) + 3 * weil_height(E.j())) / 4 +
         (weil_height(Rational(E.A())) + weil_height(Rational(E.B()))) / 2 + 4;
}

double x_height_difference_bound(const Curve& E) {
  // Twice the larger side of Silverman's difference bound, with margin.
  return 2 * (weil_height(E.j()) / 4 + weil_height(Rational(E.discriminant())) / 6 + 2.5);
}

bool is_torsion(const Curve& E, const Point<Rational>& P) { return is_torsion(E, to_k(P)); }

bool is_torsion(const Curve& E, const Point<KElement>& P) {
  // Torsion points have h(x) within the difference bound of 0.
  if (!P.infinity && weil_height(P.x) > x_height_difference_bound(E)) return false;
  // Torsion points over quadratic fields have order at most 18.
  const auto M = model_k(E);
  Point<KElement> Q = P;
  for (int m = 1; m <= 24; ++m) {
    if (Q.infinity) return true;
    Q = add(M, Q, P);
  }
  return false;
}

HeightValue canonical_height(const Curve& E, const Point<Rational>& P, double eps) {
  return canonical_height(E, to_k(P), eps);
}

HeightValue canonical_height(const Curve& E, const Point<KElement>& P, double eps) {
  if (!(eps > 0)) throw DomainError("canonical_height: eps must be positive");
  if (eps < 1e-12) throw DomainError("canonical_height: eps below double resolution");
  if (!on_curve(model_k(E), P)) throw DomainError("canonical_height: point not on curve");
  if (P.infinity || is_torsion(E, P)) return {0.0, eps};

  const double bx = x_height_difference_bound(E);
  int k = 1;
  while (1.5 * bx / std::ldexp(1.0, 2 * k) > eps / 2) ++k;

  // h(x_{i+1}) = 4 h(x_i) + arch(x_i) - log N(g_i) / 2, where g_i = gcd of the
  // doubled coordinates. g_i divides the resultant R, so the coordinates are
  // only needed modulo a power of R.
  const BigInt R = doubling_resultant(E);
  const EisensteinInt Rz(R);
  BigInt modulus = pow_int(R, static_cast<unsigned long>(k + 2));
  auto [X, Z] = primitive_pair(P.x);
  X = reduce(X, modulus);
  Z = reduce(Z, modulus);

  const EisensteinInt a(E.A()), b(E.B());
  const Cx ca{Real(E.A().get_str()), Real(0)}, cb{Real(E.B().get_str()), Real(0)};
  Cx x = to_cx(P.x);
  Real scaled = weil_height(P.x);
  Real weight = 1;
  for (int i = 0; i < k; ++i) {
    const Cx x2 = x * x;
    const Cx num = x2 * x2 - Real(2) * (ca * x2) - Real(8) * (cb * x) + ca * ca;
    const Cx den = Real(4) * (x2 * x + ca * x + cb);
    const Real big = std::max(abs2(num), abs2(den));
    const Real arch = bmp::log(big) / 2 - Real(2) * bmp::log(std::max(abs2(x), Real(1)));

    const EisensteinInt X2 = X * X, Z2 = Z * Z;
    const EisensteinInt Xn = reduce(X2 * X2 - 2 * a * X2 * Z2 - 8 * b * X * Z2 * Z + a * a * Z2 * Z2,
                                    modulus);
    const EisensteinInt Zn = reduce(4 * Z * (X2 * X + a * X * Z2 + b * Z2 * Z), modulus);
    const EisensteinInt g = gcd(gcd(Xn, Zn), Rz);
    modulus /= R;
    X = reduce(exact_div(Xn, g), modulus);
    Z = reduce(exact_div(Zn, g), modulus);

    weight /= 4;
    scaled += weight * (arch - Real(log_norm(g)) / 2);
    x = num / den;
  }
  return {1.5 * static_cast<double>(scaled), 1.5 * bx / std::ldexp(1.0, 2 * k) + 1e-13};
}

}  // namespace mde
