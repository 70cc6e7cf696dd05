#include "mde/gon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>

namespace mde {

namespace {

namespace bmp = boost::multiprecision;

Quad quad_of(const BigInt& z) { return Quad(z.get_str()); }

Quad abs2(const ComplexQ& z) {
  const Quad re = z.real(), im = z.imag();
  return re * re + im * im;
}

// A coordinate a + b zeta (b = 0 over Z) during enumeration.
struct Coord {
  long long a = 0;
  long long b = 0;
  long long norm(bool eis) const { return eis ? a * a - a * b + b * b : a * a; }
  bool operator<(const Coord& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool operator==(const Coord& o) const { return a == o.a && b == o.b; }
};

// Every ring element of norm <= budget, in a fixed order.
std::vector<Coord> elements_up_to(long long budget, bool eis) {
  std::vector<Coord> out;
  if (budget < 0) return out;
  if (!eis) {
    const auto r = static_cast<long long>(std::sqrt(static_cast<long double>(budget)));
    for (long long a = -r - 1; a <= r + 1; ++a) {
      if (a * a <= budget) out.push_back({a, 0});
    }
    return out;
  }
  const auto rb = static_cast<long long>(std::sqrt(4.0L * budget / 3.0L)) + 1;
  for (long long b = -rb; b <= rb; ++b) {
    const long double rest = budget - 0.75L * b * b;
    if (rest < -1) continue;
    const long double s = std::sqrt(std::max(rest, 0.0L));
    const auto lo = static_cast<long long>(std::floor(b / 2.0L - s)) - 1;
    const auto hi = static_cast<long long>(std::ceil(b / 2.0L + s)) + 1;
    for (long long a = lo; a <= hi; ++a) {
      const Coord c{a, b};
      if (c.norm(true) <= budget) out.push_back(c);
    }
  }
  return out;
}

template <class R>
R to_ring(const Coord& c);

template <>
BigInt to_ring<BigInt>(const Coord& c) {
  return BigInt(static_cast<long>(c.a));
}

template <>
EisensteinInt to_ring<EisensteinInt>(const Coord& c) {
  return {BigInt(static_cast<long>(c.a)), BigInt(static_cast<long>(c.b))};
}

std::complex<long double> coord_complex(const Coord& c, bool eis) {
  if (!eis) return {static_cast<long double>(c.a), 0.0L};
  const long double h = std::sqrt(3.0L) / 2;
  return {c.a - 0.5L * c.b, h * c.b};
}

template <class R>
Mat<R> minor_of(const Mat<R>& M, Eigen::Index skip_row, Eigen::Index skip_col) {
  const Eigen::Index n = M.rows();
  Mat<R> out(n - 1, M.cols() - 1);
  for (Eigen::Index i = 0, r = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (Eigen::Index j = 0, c = 0; j < M.cols(); ++j) {
      if (j == skip_col) continue;
      out(r, c++) = M(i, j);
    }
    ++r;
  }
  return out;
}

template <class R>
bool lex_less(const Vec<R>& a, const Vec<R>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

Quad pi_q() { return boost::math::constants::pi<Quad>(); }

double unit_ball_volume(long dim) {
  return std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1);
}

}  // namespace

BigInt Ring<BigInt>::exact_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("exact_div: division by zero");
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw DomainError("exact_div: not divisible");
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt Ring<BigInt>::quotient(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("quotient: division by zero");
  BigInt num = 2 * a + b, den = 2 * b;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

ComplexQ Ring<BigInt>::to_complex(const BigInt& z) { return ComplexQ(quad_of(z), Quad(0)); }

BigInt Ring<EisensteinInt>::real(const EisensteinInt& z) {
  if (!z.is_rational()) throw InternalError("expected a real Eisenstein integer");
  return z.u();
}

ComplexQ Ring<EisensteinInt>::to_complex(const EisensteinInt& z) {
  const Quad u = quad_of(z.u()), v = quad_of(z.v());
  return ComplexQ(u - v / 2, v * bmp::sqrt(Quad(3)) / 2);
}

EisensteinInt Ring<EisensteinInt>::unit_to_canonical(const EisensteinInt& z) {
  if (z.is_zero()) return 1;
  const EisensteinInt zeta = EisensteinInt::zeta();
  EisensteinInt e = 1;
  for (int k = 0; k < 6; ++k) {
    const EisensteinInt w = z * e;
    if (w.u() > w.v() && w.v() >= 0) return e;
    e = -(e * zeta);  // -zeta generates the six units
  }
  throw InternalError("unit_to_canonical: no associate in the fundamental sector");
}

template <class R>
R det_bareiss(Mat<R> a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DomainError("det: matrix is not square");
  if (n == 0) return R(1);
  R prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == R(0)) {
      Eigen::Index r = k + 1;
      while (r < n && a(r, k) == R(0)) ++r;
      if (r == n) return R(0);
      a.row(k).swap(a.row(r));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = Ring<R>::exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      }
    }
    prev = a(k, k);
  }
  return negate ? R(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

template <class R>
R det_leibniz(const Mat<R>& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw DomainError("det: matrix is not square");
  std::vector<Eigen::Index> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  R total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    R term(1);
    for (Eigen::Index i = 0; i < n; ++i) term = term * M(i, p[static_cast<std::size_t>(i)]);
    total = inversions % 2 ? R(total - term) : R(total + term);
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

template <class R>
Mat<R> adjugate(const Mat<R>& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw DomainError("adjugate: matrix is not square");
  if (n == 0) throw DomainError("adjugate: empty matrix");
  Mat<R> adj(n, n);
  if (n == 1) {
    adj(0, 0) = R(1);
    return adj;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const R d = det_bareiss<R>(minor_of(M, i, j));
      adj(j, i) = (i + j) % 2 ? R(-d) : d;
    }
  }
  return adj;
}

template <class R>
Mat<R> hermitian_gram(const Mat<R>& M) {
  Mat<R> G(M.rows(), M.rows());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.rows(); ++j) {
      R s(0);
      for (Eigen::Index k = 0; k < M.cols(); ++k) s = s + M(i, k) * Ring<R>::conj(M(j, k));
      G(i, j) = s;
    }
  }
  return G;
}

template <class R>
BigInt gram_determinant(const Mat<R>& M) {
  return Ring<R>::real(det_bareiss<R>(hermitian_gram(M)));
}

template <class R>
BigInt norm_sq(const Vec<R>& v) {
  BigInt s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += Ring<R>::norm(v(i));
  return s;
}

double AdjugateNorm::value() const { return std::sqrt(direct_sq.get_d()); }

template <class R>
AdjugateNorm first_column_adjugate_norm(const Mat<R>& M) {
  const Mat<R> adj = adjugate(M);
  AdjugateNorm out;
  for (Eigen::Index i = 0; i < adj.rows(); ++i) out.direct_sq += Ring<R>::norm(adj(i, 0));
  const Mat<R> B = M.bottomRows(M.rows() - 1);
  out.cauchy_binet_sq = gram_determinant<R>(B);
  return out;
}

template <class R>
LatticeBasis<R> LatticeBasis<R>::from_rows(Mat<R> rows) {
  LatticeBasis b;
  b.gram_det = gram_determinant<R>(rows);
  if (b.gram_det <= 0) throw DomainError("lattice basis rows are linearly dependent");
  b.rows = std::move(rows);
  return b;
}

template <class R>
double LatticeBasis<R>::det() const {
  return std::sqrt(gram_det.get_d());
}

template <class R>
LatticeBasis<R> orthogonal_lattice(const Vec<R>& u) {
  const Eigen::Index n = u.size();
  if (n < 2) throw DomainError("orthogonal_lattice: need at least two coordinates");
  bool nonzero = false;
  for (Eigen::Index i = 0; i < n; ++i) nonzero = nonzero || !(u(i) == R(0));
  if (!nonzero) throw DomainError("orthogonal_lattice: u is zero");

  // Column reduce w = conj(u) to (g, 0, ..., 0) by unimodular V; the other
  // columns of V span the kernel of x -> sum x_i conj(u_i).
  std::vector<R> w(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = Ring<R>::conj(u(i));
  Mat<R> V(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) V(i, j) = R(i == j ? 1 : 0);

  Eigen::Index pivot = 0;
  while (true) {
    pivot = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      const R& wj = w[static_cast<std::size_t>(j)];
      if (wj == R(0)) continue;
      if (pivot < 0 || Ring<R>::norm(wj) < Ring<R>::norm(w[static_cast<std::size_t>(pivot)])) pivot = j;
    }
    bool done = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == pivot || w[static_cast<std::size_t>(j)] == R(0)) continue;
      const R q = Ring<R>::quotient(w[static_cast<std::size_t>(j)], w[static_cast<std::size_t>(pivot)]);
      w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j)] - q * w[static_cast<std::size_t>(pivot)];
      V.col(j) = (V.col(j) - V.col(pivot) * q).eval();
      if (!(w[static_cast<std::size_t>(j)] == R(0))) done = false;
    }
    if (done) break;
  }

  Mat<R> rows(n - 1, n);
  for (Eigen::Index j = 0, r = 0; j < n; ++j) {
    if (j == pivot) continue;
    Eigen::Index lead = 0;
    while (V(lead, j) == R(0)) ++lead;
    const R unit = Ring<R>::unit_to_canonical(V(lead, j));
    for (Eigen::Index i = 0; i < n; ++i) rows(r, i) = V(i, j) * unit;
    ++r;
  }
  LatticeBasis<R> perp = LatticeBasis<R>::from_rows(std::move(rows));
  if (!determinant_split(u, perp).holds())
    throw InternalError("orthogonal_lattice: determinant identity failed");
  return perp;
}

template <class R>
DeterminantSplit determinant_split(const Vec<R>& u, const LatticeBasis<R>& perp) {
  const Eigen::Index n = u.size();
  if (perp.rows.rows() != n - 1 || perp.rows.cols() != n)
    throw DomainError("determinant_split: shape mismatch");
  Mat<R> U(n, n);
  U.row(0) = u.transpose();
  U.bottomRows(n - 1) = perp.rows;
  DeterminantSplit s;
  s.det_U_sq = Ring<R>::norm(det_bareiss<R>(U));
  s.lambda_sq = norm_sq(u);
  s.perp_sq = perp.gram_det;
  return s;
}

template <class R>
BigInt subgroup_degree(const Vec<R>& u) {
  const long N = static_cast<long>(u.size());
  if (N < 1) throw DomainError("subgroup_degree: empty vector");
  const BigInt s = norm_sq(u);
  if (s == 0) throw DomainError("subgroup_degree: u is zero");
  BigInt f = 1;
  for (long i = 2; i <= N - 1; ++i) f *= i;
  return pow_int(BigInt(3), static_cast<unsigned long>(N - 1)) * f * s;
}

template <class R>
TranslateBounds translate_bounds(const Vec<R>& u, const IntervalQ& hhat_uP, const Curve& E) {
  if (hhat_uP.lo() < 0) throw DomainError("translate_bounds: negative height");
  const long N = static_cast<long>(u.size());
  TranslateBounds b;
  b.degree = subgroup_degree(u);
  const IntervalQ scale = pow(IntervalQ(3), N - 1) * factorial(N);
  b.h2 = scale * (hhat_uP + IntervalQ(N) * c_of_e_interval(E) * IntervalQ::from_bigint(norm_sq(u)));
  return b;
}

Quad LinearForm::norm_sq() const {
  Quad s = 0;
  for (const auto& c : coeffs) s += abs2(c);
  return s;
}

Quad LinearForm::norm() const { return bmp::sqrt(norm_sq()); }

bool LinearForm::is_real() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const ComplexQ& c) { return c.imag() == 0; });
}

template <class R>
ComplexQ LinearForm::operator()(const Vec<R>& u) const {
  if (static_cast<std::size_t>(u.size()) != coeffs.size())
    throw DomainError("LinearForm: dimension mismatch");
  ComplexQ s(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * Ring<R>::to_complex(u(static_cast<Eigen::Index>(i)));
  return s;
}

template <class R>
Quad kappa_threshold(long N) {
  if (N < 2) throw DomainError("kappa_threshold: N must be at least 2");
  const Quad e = Quad(N) / Quad(N - 1);
  if (Ring<R>::is_eisenstein) return bmp::pow(2 * bmp::sqrt(Quad(3)) / pi_q(), e / 2);
  return bmp::pow(Quad(2), e);
}

template <class R>
MinkowskiResult<R> minkowski_search(const std::vector<LinearForm>& forms, const Quad& T,
                                    const Quad& kappa, std::size_t max_points) {
  constexpr bool eis = Ring<R>::is_eisenstein;
  const long N = static_cast<long>(forms.size()) + 1;
  if (N < 2) throw DomainError("minkowski_search: need at least one form");
  for (const auto& L : forms) {
    if (static_cast<long>(L.coeffs.size()) != N) throw DomainError("minkowski_search: form length must be N");
    if (!eis && !L.is_real()) throw DomainError("minkowski_search: forms over Z must be real");
    if (L.norm_sq() == 0) throw DomainError("minkowski_search: zero form");
  }
  if (T < 1) throw DomainError("minkowski_search: T must be at least 1");
  // Inputs often come from doubles; allow for their rounding at the threshold.
  if (kappa < kappa_threshold<R>(N) * (1 - Quad(1e-15)))
    throw DomainError("minkowski_search: kappa below the convex body threshold");

  // Independence of the forms via the Gram determinant relative to Hadamard's bound.
  {
    const Eigen::Index m = N - 1;
    Eigen::MatrixXcd F(m, N);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < N; ++j) {
        const auto& c = forms[static_cast<std::size_t>(i)].coeffs[static_cast<std::size_t>(j)];
        F(i, j) = {static_cast<double>(c.real()), static_cast<double>(c.imag())};
      }
    const Eigen::MatrixXcd G = F * F.adjoint();
    double hadamard = 1;
    for (Eigen::Index i = 0; i < m; ++i) hadamard *= G(i, i).real();
    if (std::abs(G.determinant()) <= 1e-12 * hadamard)
      throw DomainError("minkowski_search: forms are dependent");
  }

  MinkowskiResult<R> res;
  const Quad t = bmp::pow(T, Quad(1) / Quad(N - 1));
  Quad total = 0;
  for (const auto& L : forms) total += L.norm_sq();
  res.radius_sq = T * T + kappa * kappa / (t * t) * total;
  std::vector<Quad> bound_sq;
  for (const auto& L : forms) {
    res.form_bound.push_back(kappa * L.norm() / t);
    bound_sq.push_back(res.form_bound.back() * res.form_bound.back());
  }
  if (res.radius_sq > Quad(1e12)) throw DomainError("minkowski_search: search ball too large");
  const auto B = static_cast<long long>(bmp::floor(res.radius_sq));
  const double est = eis ? unit_ball_volume(2 * N) * std::pow(static_cast<double>(B), N) /
                               std::pow(std::sqrt(3.0) / 2, N)
                         : unit_ball_volume(N) * std::pow(static_cast<double>(B), N / 2.0);
  if (est > static_cast<double>(max_points))
    throw DomainError("minkowski_search: search ball too large for exhaustive enumeration");

  const std::vector<Coord> elems = elements_up_to(B, eis);
  std::vector<std::vector<std::complex<long double>>> lc(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (const auto& c : forms[i].coeffs)
      lc[i].emplace_back(static_cast<long double>(c.real()), static_cast<long double>(c.imag()));

  std::vector<Coord> cur(static_cast<std::size_t>(N));
  std::vector<Coord> best;
  long long best_norm = -1;

  auto admissible = [&](const std::vector<Coord>& v) {
    // Fast rejection in long double, then a conservative check in quad precision.
    for (std::size_t i = 0; i < forms.size(); ++i) {
      std::complex<long double> s = 0;
      for (std::size_t k = 0; k < v.size(); ++k) s += lc[i][k] * coord_complex(v[k], eis);
      if (std::norm(s) > static_cast<long double>(bound_sq[i]) * (1 + 1e-12L) + 1e-30L) return false;
    }
    Vec<R> u(N);
    for (Eigen::Index k = 0; k < N; ++k) u(k) = to_ring<R>(v[static_cast<std::size_t>(k)]);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      const ComplexQ val = forms[i](u);
      Quad scale = 0;
      for (Eigen::Index k = 0; k < N; ++k)
        scale += bmp::abs(forms[i].coeffs[static_cast<std::size_t>(k)]) * bmp::sqrt(abs2(Ring<R>::to_complex(u(k))));
      const Quad err = scale * scale * bmp::ldexp(Quad(1), -100);
      if (abs2(val) + err > bound_sq[i]) return false;
    }
    return true;
  };

  auto visit = [&](auto&& self, std::size_t pos, long long used) -> void {
    if (pos == cur.size()) {
      if (used == 0) return;
      ++res.enumerated;
      if (best_norm >= 0 && (used > best_norm || (used == best_norm && !(cur < best)))) return;
      if (admissible(cur)) {
        best = cur;
        best_norm = used;
      }
      return;
    }
    for (const Coord& c : elems) {
      const long long nn = c.norm(eis);
      if (used + nn > B) continue;
      cur[pos] = c;
      self(self, pos + 1, used + nn);
    }
  };
  visit(visit, 0, 0);

  if (best_norm < 0)
    throw InternalError("minkowski_search: no admissible vector in the guaranteed ball");
  res.u = Vec<R>(N);
  for (Eigen::Index k = 0; k < N; ++k) res.u(k) = to_ring<R>(best[static_cast<std::size_t>(k)]);
  res.norm_sq = norm_sq(res.u);
  for (const auto& L : forms) res.form_abs.push_back(bmp::sqrt(abs2(L(res.u))));
  return res;
}

template <class R>
MinimaResult<R> successive_minima(const LatticeBasis<R>& basis, std::size_t max_points) {
  constexpr bool eis = Ring<R>::is_eisenstein;
  const Eigen::Index r = basis.rows.rows();
  if (r < 1 || r > 3) throw DomainError("successive_minima: rank must be between 1 and 3");
  // Pairwise size reduction; the minima do not depend on the basis.
  Mat<R> B = basis.rows;
  for (bool changed = true; changed;) {
    changed = false;
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) {
        if (i == j) continue;
        const Mat<R> G = hermitian_gram(B);
        const R q = Ring<R>::quotient(G(i, j), G(j, j));
        if (q == R(0)) continue;
        Mat<R> row = B.row(i) - q * B.row(j);
        if (norm_sq<R>(row.transpose()) < Ring<R>::real(G(i, i))) {
          B.row(i) = row;
          changed = true;
        }
      }
    }
  }
  const Mat<R> G = hermitian_gram(B);
  const Mat<R> adjG = adjugate(G);

  // The basis rows give r independent vectors, so every minimum is at most rho.
  BigInt rho_sq = 0;
  for (Eigen::Index i = 0; i < r; ++i) rho_sq = std::max(rho_sq, Ring<R>::real(G(i, i)));
  // A vector x M of norm <= rho has |x_i|^2 <= rho^2 (G^{-1})_{ii}.
  std::vector<long long> coeff_bound(static_cast<std::size_t>(r));
  double count = 1;
  for (Eigen::Index i = 0; i < r; ++i) {
    BigInt b;
    const BigInt num = rho_sq * Ring<R>::real(adjG(i, i));
    mpz_fdiv_q(b.get_mpz_t(), num.get_mpz_t(), basis.gram_det.get_mpz_t());
    if (b > BigInt(1000000000L)) throw DomainError("successive_minima: basis too skewed");
    coeff_bound[static_cast<std::size_t>(i)] = b.get_si();
    count *= static_cast<double>(elements_up_to(b.get_si(), eis).size());
  }
  if (count > static_cast<double>(max_points))
    throw DomainError("successive_minima: enumeration box too large");

  std::vector<std::vector<Coord>> elems;
  for (Eigen::Index i = 0; i < r; ++i) elems.push_back(elements_up_to(coeff_bound[static_cast<std::size_t>(i)], eis));

  struct Cand {
    BigInt q;
    Vec<R> x;
  };
  std::vector<Cand> cands;
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  Vec<R> x(r);
  while (true) {
    bool zero = true;
    for (Eigen::Index i = 0; i < r; ++i) {
      const Coord& c = elems[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      x(i) = to_ring<R>(c);
      zero = zero && c.a == 0 && c.b == 0;
    }
    if (!zero) {
      R s(0);
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) s = s + x(i) * G(i, j) * Ring<R>::conj(x(j));
      const BigInt q = Ring<R>::real(s);
      if (q <= rho_sq) cands.push_back({q, x});
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == elems[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.q < b.q || (a.q == b.q && lex_less(a.x, b.x));
  });

  MinimaResult<R> res;
  Mat<R> chosen(0, r);
  for (const Cand& c : cands) {
    Mat<R> trial(chosen.rows() + 1, r);
    trial.topRows(chosen.rows()) = chosen;
    trial.row(chosen.rows()) = c.x.transpose();
    if (gram_determinant<R>(trial) == 0) continue;
    chosen = trial;
    res.minima_sq.push_back(c.q);
    res.vectors.push_back((c.x.transpose() * B).transpose());
    if (chosen.rows() == r) break;
  }
  if (chosen.rows() != r) throw InternalError("successive_minima: fewer than r independent vectors");

  double prod_sq = 1;
  for (const auto& q : res.minima_sq) prod_sq *= q.get_d();
  const double rd = static_cast<double>(r);
  if (eis) {
    res.lhs = unit_ball_volume(2 * r) * prod_sq;
    res.rhs = std::pow(2.0, rd) * std::pow(3.0, rd / 2) * basis.gram_det.get_d();
  } else {
    res.lhs = unit_ball_volume(r) * std::sqrt(prod_sq);
    res.rhs = std::pow(2.0, rd) * basis.det();
  }
  return res;
}

IntervalQ linear_forms_constant(long N, long m, long disc_field) {
  if (m < 1 || N < m) throw DomainError("linear_forms_constant: need 1 <= m <= N");
  return pow(IntervalQ(m), 3) * pow(factorial(2 * m), 2) * pow(IntervalQ(std::labs(disc_field)), m) *
         IntervalQ(N) / pow(IntervalQ(2), 2 * m - 2);
}

template <class R>
std::vector<LinearForm> build_bounded_forms(const Eigen::MatrixXcd& gram, const Mat<R>& coeffs) {
  const Eigen::Index m = gram.rows();
  if (gram.cols() != m || coeffs.cols() != m)
    throw DomainError("build_bounded_forms: gram must be m x m with m = columns of coeffs");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DomainError("build_bounded_forms: gram is not hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.eigenvalues().minCoeff() < -1e-9 * scale)
    throw DomainError("build_bounded_forms: gram is not positive semidefinite");

  const Eigen::Index N = coeffs.rows();
  std::vector<Quad> h(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    h[static_cast<std::size_t>(j)] = Quad(gram(j, j).real()) / 2;
    if (!(h[static_cast<std::size_t>(j)] > 0)) throw DomainError("build_bounded_forms: generator of height zero");
  }
  Quad A = 0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      A = std::max(A, quad_of(Ring<R>::norm(coeffs(i, j))) * h[static_cast<std::size_t>(j)]);
  if (A == 0) return {};

  std::vector<LinearForm> out;
  for (Eigen::Index j = 0; j < m; ++j) {
    const Quad s = bmp::sqrt(h[static_cast<std::size_t>(j)] / (Quad(N) * A));
    LinearForm L;
    for (Eigen::Index i = 0; i < N; ++i) L.coeffs.push_back(ComplexQ(s) * Ring<R>::to_complex(coeffs(i, j)));
    out.push_back(std::move(L));
  }
  return out;
}

template <class R>
AuxiliaryTranslate<R> auxiliary_translate(long N, const std::vector<LinearForm>& forms,
                                          const Quad& T, const Quad& kappa, const Curve& E) {
  if (static_cast<long>(forms.size()) != N - 1)
    throw DomainError("auxiliary_translate: need N-1 forms");
  for (const auto& L : forms)
    if (L.norm_sq() > 1 + Quad(1e-30)) throw DomainError("auxiliary_translate: forms must have norm <= 1");
  if (T < 1) throw DomainError("auxiliary_translate: T must be at least 1");

  IntervalQ coeff, c4;
  if constexpr (Ring<R>::is_eisenstein) {
    if (!E.cm() || E.cm()->disc_field() != -3 || E.cm()->f != 1)
      throw DomainError("auxiliary_translate: Z[zeta] requires CM by the maximal order of discriminant -3");
    const ConstantSet s = cm_constants(static_cast<int>(N), E);
    coeff = s.at("c3");
    c4 = s.at("c4");
  } else {
    const ConstantSet s = noncm_constants(static_cast<int>(N), E);
    coeff = s.at("c11");
    c4 = s.at("c4");
  }

  AuxiliaryTranslate<R> out;
  const MinkowskiResult<R> m = minkowski_search<R>(forms, bmp::sqrt(T), kappa);
  out.u = m.u;
  out.degree = subgroup_degree(m.u);
  const IntervalQ Ti(T), k2 = IntervalQ(kappa) * IntervalQ(kappa);
  const IntervalQ t = pow(Ti, IntervalQ(1) / IntervalQ(N - 1));
  const IntervalQ body = Ti + IntervalQ(N - 1) * k2 / t;
  out.deg_bound = pow(IntervalQ(3), N - 1) * factorial(N - 1) * body;
  out.h2_hhat_coeff = coeff * k2 / t;
  out.h2_constant = c4 * body;
  if (IntervalQ::from_bigint(out.degree).lo() > out.deg_bound.hi())
    throw InternalError("auxiliary_translate: subgroup degree exceeds its bound");
  return out;
}

#define MDE_GON_INSTANTIATE(R)                                                                   \
  template R det_bareiss<R>(Mat<R>);                                                             \
  template R det_leibniz<R>(const Mat<R>&);                                                      \
  template Mat<R> adjugate<R>(const Mat<R>&);                                                    \
  template Mat<R> hermitian_gram<R>(const Mat<R>&);                                              \
  template BigInt gram_determinant<R>(const Mat<R>&);                                            \
  template BigInt norm_sq<R>(const Vec<R>&);                                                     \
  template AdjugateNorm first_column_adjugate_norm<R>(const Mat<R>&);                            \
  template struct LatticeBasis<R>;                                                               \
  template LatticeBasis<R> orthogonal_lattice<R>(const Vec<R>&);                                 \
  template DeterminantSplit determinant_split<R>(const Vec<R>&, const LatticeBasis<R>&);         \
  template BigInt subgroup_degree<R>(const Vec<R>&);                                             \
  template TranslateBounds translate_bounds<R>(const Vec<R>&, const IntervalQ&, const Curve&);   \
  template ComplexQ LinearForm::operator()<R>(const Vec<R>&) const;                              \
  template Quad kappa_threshold<R>(long);                                                        \
  template MinkowskiResult<R> minkowski_search<R>(const std::vector<LinearForm>&, const Quad&,   \
                                                  const Quad&, std::size_t);                     \
  template MinimaResult<R> successive_minima<R>(const LatticeBasis<R>&, std::size_t);            \
  template std::vector<LinearForm> build_bounded_forms<R>(const Eigen::MatrixXcd&, const Mat<R>&); \
  template AuxiliaryTranslate<R> auxiliary_translate<R>(long, const std::vector<LinearForm>&,    \
                                                        const Quad&, const Quad&, const Curve&);

MDE_GON_INSTANTIATE(BigInt)
MDE_GON_INSTANTIATE(EisensteinInt)

}  // namespace mde
