#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mde/gon.hpp"

using namespace mde;
namespace bmp = boost::multiprecision;

namespace {

using Z = BigInt;
using E = EisensteinInt;

const Curve kCurve(0, 2, OrderData{-3, 1});

E eis(long u, long v) { return {BigInt(u), BigInt(v)}; }

template <class R>
R random_elem(std::mt19937& rng, int range);

template <>
Z random_elem<Z>(std::mt19937& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  return Z(d(rng));
}

template <>
E random_elem<E>(std::mt19937& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  return eis(d(rng), d(rng));
}

template <class R>
Mat<R> random_matrix(std::mt19937& rng, long rows, long cols, int range) {
  Mat<R> M(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) M(i, j) = random_elem<R>(rng, range);
  return M;
}

template <class R>
Mat<R> mul(const Mat<R>& A, const Mat<R>& B) {
  Mat<R> C(A.rows(), B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < B.cols(); ++j) {
      R s(0);
      for (long k = 0; k < A.cols(); ++k) s = s + A(i, k) * B(k, j);
      C(i, j) = s;
    }
  return C;
}

template <class R>
Vec<R> vec(std::initializer_list<R> xs) {
  Vec<R> v(static_cast<long>(xs.size()));
  long i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

std::complex<double> cd(const Z& z) { return {z.get_d(), 0}; }
std::complex<double> cd(const E& z) { return z.to_complex(); }

template <class R>
BigInt content_norm(const Vec<R>& u);

template <>
BigInt content_norm<Z>(const Vec<Z>& u) {
  BigInt g = 0;
  for (long i = 0; i < u.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), u(i).get_mpz_t());
  return g * g;
}

template <>
BigInt content_norm<E>(const Vec<E>& u) {
  E g = 0;
  for (long i = 0; i < u.size(); ++i) {
    E a = g, b = u(i);
    while (!b.is_zero()) {
      E r = divmod(a, b).second;
      a = b;
      b = r;
    }
    g = a;
  }
  return g.norm();
}

LinearForm form_of(std::initializer_list<std::complex<double>> cs) {
  LinearForm L;
  for (const auto& c : cs) L.coeffs.emplace_back(Quad(c.real()), Quad(c.imag()));
  return L;
}

LinearForm random_form(std::mt19937& rng, long N, bool real) {
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> cs;
  double n2 = 0;
  for (long i = 0; i < N; ++i) {
    cs.emplace_back(g(rng), real ? 0.0 : g(rng));
    n2 += std::norm(cs.back());
  }
  std::uniform_real_distribution<double> s(0.2, 1.0);
  const double scale = s(rng) / std::sqrt(n2);
  LinearForm L;
  for (const auto& c : cs) L.coeffs.emplace_back(Quad(c.real() * scale), Quad(c.imag() * scale));
  return L;
}

double qd(const Quad& q) { return q.convert_to<double>(); }

template <class R>
std::complex<double> eval_double(const LinearForm& L, const Vec<R>& u) {
  std::complex<double> s = 0;
  for (long i = 0; i < u.size(); ++i)
    s += std::complex<double>(qd(L.coeffs[static_cast<std::size_t>(i)].real()),
                              qd(L.coeffs[static_cast<std::size_t>(i)].imag())) * cd(u(i));
  return s;
}

// Every nonzero vector with coordinates of norm <= b, by nested boxes.
template <class R>
std::vector<Vec<R>> box_vectors(long N, int b) {
  std::vector<R> elems;
  for (int x = -b; x <= b; ++x) {
    if constexpr (Ring<R>::is_eisenstein) {
      for (int y = -b; y <= b; ++y) elems.push_back(eis(x, y));
    } else {
      elems.push_back(R(x));
    }
  }
  std::vector<Vec<R>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
  while (true) {
    Vec<R> v(N);
    bool zero = true;
    for (long i = 0; i < N; ++i) {
      v(i) = elems[idx[static_cast<std::size_t>(i)]];
      zero = zero && v(i) == R(0);
    }
    if (!zero) out.push_back(v);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

template <class R>
void check_minkowski_instance(const std::vector<LinearForm>& forms, double T, const Quad& kappa) {
  const long N = static_cast<long>(forms.size()) + 1;
  const MinkowskiResult<R> r = minkowski_search<R>(forms, Quad(T), kappa);
  double sum = 0;
  for (const auto& L : forms) sum += qd(L.norm_sq());
  const double k = qd(kappa);
  const double t = std::pow(T, 1.0 / (N - 1));
  EXPECT_LE(r.norm_sq.get_d(), T * T + k * k / (t * t) * sum + 1e-9);
  EXPECT_GT(r.norm_sq, 0);
  for (const auto& L : forms) EXPECT_LE(std::abs(eval_double(L, r.u)), k * qd(L.norm()) / t + 1e-12);
  // Nothing strictly shorter passes (oracle: coordinate box scan, clear margin).
  const int b = static_cast<int>(std::ceil(std::sqrt(r.norm_sq.get_d())));
  for (const Vec<R>& v : box_vectors<R>(N, b)) {
    if (!(norm_sq(v) < r.norm_sq)) continue;
    bool ok = true;
    for (const auto& L : forms)
      ok = ok && std::abs(eval_double(L, v)) < k * qd(L.norm()) / t - 1e-9;
    EXPECT_FALSE(ok);
  }
}

}  // namespace

TEST(Adjugate, Examples) {
  Mat<Z> M(2, 2);
  M << Z(2), Z(3), Z(5), Z(7);
  const Mat<Z> A = adjugate(M);
  EXPECT_EQ(A(0, 0), 7);
  EXPECT_EQ(A(0, 1), -3);
  EXPECT_EQ(A(1, 0), -5);
  EXPECT_EQ(A(1, 1), 2);
  Mat<Z> I(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) I(i, j) = Z(i == j ? 1 : 0);
  const Mat<Z> AI = adjugate(I);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(AI(i, j), I(i, j));
  EXPECT_THROW(adjugate(Mat<Z>(2, 3)), DomainError);
}

template <class R>
void adjugate_property(std::mt19937& rng) {
  for (int trial = 0; trial < 60; ++trial) {
    const long n = 1 + trial % 5;
    const Mat<R> M = random_matrix<R>(rng, n, n, 6);
    const R det = det_bareiss<R>(M);
    EXPECT_EQ(det, det_leibniz<R>(M));
    const Mat<R> A = adjugate(M);
    const Mat<R> MA = mul(M, A), AM = mul(A, M);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        EXPECT_EQ(MA(i, j), i == j ? det : R(0));
        EXPECT_EQ(AM(i, j), i == j ? det : R(0));
      }
  }
}

TEST(Adjugate, TimesMatrixIsDeterminant) {
  std::mt19937 rng(11);
  adjugate_property<Z>(rng);
  adjugate_property<E>(rng);
}

TEST(Adjugate, FirstColumnNorm) {
  Mat<Z> M(2, 2);
  M << Z(1), Z(0), Z(3), Z(4);
  const AdjugateNorm a = first_column_adjugate_norm<Z>(M);
  EXPECT_EQ(a.direct_sq, 25);
  EXPECT_EQ(a.cauchy_binet_sq, 25);
  EXPECT_DOUBLE_EQ(a.value(), 5.0);
  Mat<Z> D(3, 3);
  D << Z(1), Z(2), Z(3), Z(2), Z(4), Z(6), Z(1), Z(2), Z(3);
  const AdjugateNorm d = first_column_adjugate_norm<Z>(D);
  EXPECT_EQ(d.direct_sq, 0);
  EXPECT_EQ(d.cauchy_binet_sq, 0);
}

template <class R>
void cauchy_binet_property(std::mt19937& rng) {
  for (int trial = 0; trial < 200; ++trial) {
    const long n = 3 + trial % 2;
    const Mat<R> M = random_matrix<R>(rng, n, n, 9);
    const AdjugateNorm a = first_column_adjugate_norm<R>(M);
    EXPECT_EQ(a.direct_sq, a.cauchy_binet_sq);
  }
}

TEST(Adjugate, CauchyBinetExact) {
  std::mt19937 rng(12);
  cauchy_binet_property<Z>(rng);
  cauchy_binet_property<E>(rng);
}

TEST(Orthogonal, Examples) {
  const LatticeBasis<Z> p = orthogonal_lattice<Z>(vec<Z>({Z(1), Z(0)}));
  ASSERT_EQ(p.rows.rows(), 1);
  EXPECT_EQ(p.rows(0, 0), 0);
  EXPECT_EQ(p.rows(0, 1), 1);

  const Vec<E> u = vec<E>({E(1), E(1)});
  const LatticeBasis<E> q = orthogonal_lattice<E>(u);
  EXPECT_EQ(q.rows(0, 0), E(1));
  EXPECT_EQ(q.rows(0, 1), E(-1));
  const DeterminantSplit s = determinant_split(u, q);
  EXPECT_EQ(s.det_U_sq, 4);
  EXPECT_EQ(s.lambda_sq, 2);
  EXPECT_EQ(s.perp_sq, 2);
  EXPECT_NEAR(q.det(), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(orthogonal_lattice<Z>(vec<Z>({Z(0), Z(0)})), DomainError);
}

template <class R>
void orthogonal_property(std::mt19937& rng) {
  int done = 0;
  while (done < 150) {
    const long N = 2 + done % 3;
    Vec<R> u(N);
    for (long i = 0; i < N; ++i) u(i) = random_elem<R>(rng, 3);
    if (norm_sq(u) == 0 || norm_sq(u) > 10 * N) continue;
    ++done;
    const LatticeBasis<R> p = orthogonal_lattice<R>(u);
    ASSERT_EQ(p.rows.rows(), N - 1);
    for (long r = 0; r < N - 1; ++r) {
      R dot(0);
      for (long i = 0; i < N; ++i) dot = dot + p.rows(r, i) * Ring<R>::conj(u(i));
      EXPECT_EQ(dot, R(0));
    }
    EXPECT_TRUE(determinant_split(u, p).holds());
    // The complement of u is the complement of its primitive part, of determinant ||u|| / |content|.
    EXPECT_EQ(p.gram_det * content_norm<R>(u), norm_sq(u));
  }
}

TEST(Orthogonal, DeterminantFactorization) {
  std::mt19937 rng(13);
  orthogonal_property<Z>(rng);
  orthogonal_property<E>(rng);
}

TEST(SubgroupDegree, Values) {
  EXPECT_EQ(subgroup_degree<Z>(vec<Z>({Z(1), Z(1)})), 6);
  EXPECT_EQ(subgroup_degree<E>(vec<E>({E::zeta(), E(1)})), 6);
  EXPECT_EQ(subgroup_degree<Z>(vec<Z>({Z(1), Z(0), Z(0)})), 18);
  for (long N = 1; N <= 6; ++N) {
    long expected = 1;
    for (long i = 1; i < N; ++i) expected *= 3 * i;
    for (long k = 0; k < N; ++k) {
      Vec<E> e(N);
      for (long i = 0; i < N; ++i) e(i) = E(i == k ? 1 : 0);
      EXPECT_EQ(subgroup_degree<E>(e), expected);
    }
  }
  const Vec<E> a = vec<E>({eis(2, 1), eis(-1, 3), eis(0, 1)});
  const Vec<E> b = vec<E>({eis(0, 1), eis(2, 1), eis(-1, 3)});
  EXPECT_EQ(subgroup_degree<E>(a), subgroup_degree<E>(b));
}

TEST(TranslateBounds, Values) {
  const double ce = c_of_e_interval(kCurve).mid().convert_to<double>();
  const TranslateBounds unit = translate_bounds<Z>(vec<Z>({Z(1), Z(0)}), IntervalQ(0), kCurve);
  EXPECT_EQ(unit.degree, 3);
  EXPECT_NEAR(qd(unit.h2.mid()), 6 * 2 * ce, 1e-12);
  const TranslateBounds s3 = translate_bounds<Z>(vec<Z>({Z(3), Z(0)}), IntervalQ(0), kCurve);
  EXPECT_EQ(s3.degree, 27);
  const TranslateBounds d = translate_bounds<E>(vec<E>({E(1), E(1)}), IntervalQ(5), kCurve);
  EXPECT_EQ(d.degree, 6);
  EXPECT_NEAR(qd(d.h2.mid()), 6 * (5 + 2 * ce * 2), 1e-11);
  EXPECT_NEAR(qd(d.h2.mid()), 6 * (5 + 2 * 6.2103 * 2), 1e-2);
  EXPECT_THROW(translate_bounds<Z>(vec<Z>({Z(1), Z(0)}), IntervalQ(-1), kCurve), DomainError);
}

TEST(Minkowski, KernelVectorOverZ) {
  const MinkowskiResult<Z> r = minkowski_search<Z>({form_of({1.0, 0.0})}, Quad(4), Quad(4));
  EXPECT_EQ(r.norm_sq, 1);
  EXPECT_EQ(r.u(0), 0);
  EXPECT_EQ(abs(r.u(1)), 1);
  EXPECT_NEAR(qd(r.radius_sq), 17, 1e-25);
  EXPECT_EQ(qd(r.form_abs[0]), 0);
}

TEST(Minkowski, Thresholds) {
  EXPECT_NEAR(qd(kappa_threshold<E>(2)), 2 * std::sqrt(3.0) / M_PI, 1e-15);
  EXPECT_NEAR(qd(kappa_threshold<Z>(2)), 4, 1e-15);
  EXPECT_NEAR(qd(kappa_threshold<Z>(3)), std::pow(2, 1.5), 1e-14);
  const std::vector<LinearForm> f = {form_of({1.0, 0.0})};
  EXPECT_THROW(minkowski_search<Z>(f, Quad(4), Quad(3.9)), DomainError);
  EXPECT_THROW(minkowski_search<Z>(f, Quad(0.5), Quad(4)), DomainError);
  EXPECT_THROW(minkowski_search<Z>({form_of({{1.0, 1.0}, 0.0})}, Quad(4), Quad(4)), DomainError);
  EXPECT_THROW(minkowski_search<Z>({form_of({1.0, 2.0, 0.0}), form_of({2.0, 4.0, 0.0})}, Quad(2), Quad(3)),
               DomainError);
}

TEST(Minkowski, EisensteinUnitForm) {
  std::mt19937 rng(14);
  const Quad kappa = kappa_threshold<E>(2);
  for (int i = 0; i < 20; ++i) {
    LinearForm L = random_form(rng, 2, false);
    const Quad n = L.norm();
    for (auto& c : L.coeffs) c /= ComplexQ(n);
    check_minkowski_instance<E>({L}, 1.0 + i * 0.25, kappa);
  }
}

TEST(Minkowski, RandomCampaign) {
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> tdist(1.0, 2.5);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const long N = 2 + i % 3;
    const bool cm = (i / 3) % 2 == 0;
    std::vector<LinearForm> forms;
    for (long j = 0; j < N - 1; ++j) forms.push_back(random_form(rng, N, !cm));
    const double T = tdist(rng);
    if (cm) {
      check_minkowski_instance<E>(forms, T, kappa_threshold<E>(N));
    } else {
      check_minkowski_instance<Z>(forms, T, kappa_threshold<Z>(N));
    }
    ok += !::testing::Test::HasFailure();
  }
  EXPECT_EQ(ok, 200);
}

TEST(Minima, Examples) {
  Mat<E> one(1, 1);
  one(0, 0) = E(1);
  const MinimaResult<E> r1 = successive_minima(LatticeBasis<E>::from_rows(one));
  ASSERT_EQ(r1.minima_sq.size(), 1u);
  EXPECT_EQ(r1.minima_sq[0], 1);
  EXPECT_NEAR(r1.lhs, M_PI, 1e-12);
  EXPECT_NEAR(r1.rhs, 2 * std::sqrt(3.0), 1e-12);
  EXPECT_TRUE(r1.second_theorem_holds());

  Mat<E> two(2, 2);
  two << E(2), E(0), E(0), E(2);
  const MinimaResult<E> r2 = successive_minima(LatticeBasis<E>::from_rows(two));
  EXPECT_EQ(r2.minima_sq[0], 4);
  EXPECT_EQ(r2.minima_sq[1], 4);
  EXPECT_TRUE(r2.second_theorem_holds());

  Mat<Z> z(2, 2);
  z << Z(1), Z(0), Z(0), Z(3);
  const MinimaResult<Z> rz = successive_minima(LatticeBasis<Z>::from_rows(z));
  EXPECT_EQ(rz.minima_sq[0], 1);
  EXPECT_EQ(rz.minima_sq[1], 9);
  EXPECT_TRUE(rz.second_theorem_holds());
  EXPECT_THROW(successive_minima(LatticeBasis<Z>::from_rows(random_matrix<Z>(*new std::mt19937(1), 4, 4, 9))),
               DomainError);
}

template <class R>
Mat<R> random_unimodular(std::mt19937& rng, long r) {
  Mat<R> U(r, r);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) U(i, j) = R(i == j ? 1 : 0);
  std::uniform_int_distribution<long> pick(0, r - 1);
  for (int k = 0; k < 6; ++k) {
    const long i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const R c = random_elem<R>(rng, 2);
    for (long col = 0; col < r; ++col) U(i, col) = U(i, col) + c * U(j, col);
  }
  return U;
}

template <class R>
void minima_property(std::mt19937& rng, long r, long N) {
  int done = 0;
  while (done < 40) {
    const Mat<R> M = random_matrix<R>(rng, r, N, 5);
    if (gram_determinant<R>(M) == 0) continue;
    ++done;
    const LatticeBasis<R> L = LatticeBasis<R>::from_rows(M);
    const MinimaResult<R> m = successive_minima(L);
    EXPECT_TRUE(m.second_theorem_holds()) << m.lhs << " " << m.rhs;
    for (std::size_t i = 0; i + 1 < m.minima_sq.size(); ++i) EXPECT_LE(m.minima_sq[i], m.minima_sq[i + 1]);
    for (std::size_t i = 0; i < m.vectors.size(); ++i) EXPECT_EQ(norm_sq(m.vectors[i]), m.minima_sq[i]);
    const MinimaResult<R> m2 = successive_minima(LatticeBasis<R>::from_rows(mul(random_unimodular<R>(rng, r), M)));
    EXPECT_EQ(m.minima_sq, m2.minima_sq);
    // Shortest vector oracle: small coefficient box.
    BigInt best = -1;
    for (const Vec<R>& x : box_vectors<R>(r, 3)) {
      const BigInt q = norm_sq<R>((x.transpose() * M).transpose());
      if (best < 0 || q < best) best = q;
    }
    EXPECT_LE(m.minima_sq[0], best);
  }
}

TEST(Minima, SecondTheoremAndInvariance) {
  std::mt19937 rng(16);
  minima_property<E>(rng, 2, 2);
  minima_property<E>(rng, 2, 3);
  minima_property<Z>(rng, 2, 3);
  minima_property<Z>(rng, 3, 3);
}

TEST(BoundedForms, SingleGenerator) {
  Eigen::MatrixXcd gram(1, 1);
  gram(0, 0) = 2 * 1.1319;
  Mat<E> V(3, 1);
  V << eis(2, 0), eis(1, 1), eis(0, -3);
  const std::vector<LinearForm> f = build_bounded_forms<E>(gram, V);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_LE(qd(f[0].norm()), 1 + 1e-15);
  const std::complex<double> ratio0 = eval_double(f[0], vec<E>({E(1), E(0), E(0)})) / cd(V(0, 0));
  for (long i = 0; i < 3; ++i) {
    Vec<E> e(3);
    for (long k = 0; k < 3; ++k) e(k) = E(k == i ? 1 : 0);
    const std::complex<double> ratio = eval_double(f[0], e) / cd(V(i, 0));
    EXPECT_NEAR(std::abs(ratio - ratio0), 0, 1e-15);
  }
  Mat<E> zero(3, 1);
  for (long i = 0; i < 3; ++i) zero(i, 0) = E(0);
  EXPECT_TRUE(build_bounded_forms<E>(gram, zero).empty());
  Eigen::MatrixXcd bad(1, 1);
  bad(0, 0) = -1;
  EXPECT_THROW(build_bounded_forms<E>(bad, V), DomainError);
}

TEST(BoundedForms, LinearFormsInequality) {
  std::mt19937 rng(17);
  const long N = 3, m = 2;
  const double c2 = linear_forms_constant(N, m, -3).mid().convert_to<double>();
  EXPECT_NEAR(c2, 8 * 576 * 9 * 3 / 4.0, 1e-9);
  EXPECT_NEAR(linear_forms_constant(2, 1, -3).mid().convert_to<double>(), 24, 1e-12);
  Eigen::MatrixXcd G(2, 2);
  G << 2 * 1.1319, std::complex<double>(0.3, -0.2), std::complex<double>(0.3, 0.2), 2 * 2.7;
  Mat<E> V(N, m);
  V << eis(1, 0), eis(0, 2), eis(-2, 1), eis(1, 1), eis(3, -1), eis(0, 0);
  const std::vector<LinearForm> f = build_bounded_forms<E>(G, V);
  ASSERT_EQ(f.size(), 2u);
  for (const auto& L : f) EXPECT_LE(qd(L.norm()), 1 + 1e-15);
  auto hhat = [&](const Eigen::RowVectorXcd& w) { return 0.5 * (w * G * w.adjoint())(0, 0).real(); };
  double hP = 0;
  for (long i = 0; i < N; ++i) {
    Eigen::RowVectorXcd w(m);
    for (long j = 0; j < m; ++j) w(j) = cd(V(i, j));
    hP += hhat(w);
  }
  std::uniform_int_distribution<int> d(-20, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    Vec<E> t(N);
    for (long i = 0; i < N; ++i) t(i) = eis(d(rng), d(rng));
    Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Zero(m);
    for (long j = 0; j < m; ++j)
      for (long i = 0; i < N; ++i) w(j) += cd(t(i)) * cd(V(i, j));
    double mx = 0;
    for (const auto& L : f) mx = std::max(mx, std::norm(eval_double(L, t)));
    EXPECT_LE(hhat(w), c2 * mx * hP * (1 + 1e-12));
  }
}

TEST(AuxiliaryTranslate, CmTwo) {
  const Quad kappa = kappa_threshold<E>(2);
  const double k = qd(kappa);
  std::mt19937 rng(18);
  for (int i = 0; i < 10; ++i) {
    const LinearForm L = random_form(rng, 2, false);
    const AuxiliaryTranslate<E> a = auxiliary_translate<E>(2, {L}, Quad(1), kappa, kCurve);
    EXPECT_NEAR(qd(a.deg_bound.mid()), 3 * (1 + k * k), 1e-12);
    EXPECT_LE(a.degree.get_d(), a.deg_bound.upper());
    const ConstantSet s = cm_constants(2, kCurve);
    EXPECT_NEAR(qd(a.h2_hhat_coeff.mid()), qd(s.at("c3").mid()) * k * k, 1e-9);
    EXPECT_NEAR(qd(a.h2_constant.mid()), qd(s.at("c4").mid()) * (1 + k * k), 1e-9);
  }
  EXPECT_THROW(auxiliary_translate<E>(2, {form_of({1.0, 0.0})}, Quad(1), kappa, Curve(1, 1)), DomainError);
  EXPECT_THROW(auxiliary_translate<E>(2, {form_of({2.0, 0.0})}, Quad(1), kappa, kCurve), DomainError);
}

TEST(AuxiliaryTranslate, NonCmThree) {
  const Curve E11(1, 1);
  const Quad kappa = kappa_threshold<Z>(3);
  const double k = qd(kappa);
  std::mt19937 rng(19);
  for (int i = 0; i < 10; ++i) {
    const std::vector<LinearForm> f = {random_form(rng, 3, true), random_form(rng, 3, true)};
    const double T = 4;
    const AuxiliaryTranslate<Z> a = auxiliary_translate<Z>(3, f, Quad(T), kappa, E11);
    EXPECT_NEAR(qd(a.h2_hhat_coeff.mid()), 3 * 8 * 9 * 6 * 16 / 4.0 * k * k / std::sqrt(T), 1e-9);
    EXPECT_NEAR(qd(a.deg_bound.mid()), 18 * (T + 2 * k * k / std::sqrt(T)), 1e-10);
    EXPECT_LE(a.degree.get_d(), a.deg_bound.upper());
  }
}
