#ifndef MDE_GON_HPP
#define MDE_GON_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_complex.hpp>

#include "mde/bounds.hpp"
#include "mde/eisenstein.hpp"
#include "mde/interval.hpp"

namespace mde {

// Geometry of numbers over Z (no CM) and Z[zeta] (CM by the maximal order of Q(sqrt -3)).

template <class R>
using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
template <class R>
using Vec = Eigen::Matrix<R, Eigen::Dynamic, 1>;

using ComplexQ = boost::multiprecision::cpp_complex_quad;

template <class R>
struct Ring;

template <>
struct Ring<BigInt> {
  static constexpr bool is_eisenstein = false;
  static BigInt conj(const BigInt& z) { return z; }
  static BigInt norm(const BigInt& z) { return z * z; }
  static BigInt exact_div(const BigInt& a, const BigInt& b);
  /// Quotient rounded to nearest; the remainder has smaller norm than b.
  static BigInt quotient(const BigInt& a, const BigInt& b);
  /// Real integer value of z; throws when z is not real.
  static BigInt real(const BigInt& z) { return z; }
  static ComplexQ to_complex(const BigInt& z);
  /// The associate of z singled out by a sign convention (positive).
  static BigInt canonical(const BigInt& z) { return z < 0 ? BigInt(-z) : z; }
  static BigInt unit_to_canonical(const BigInt& z) { return z < 0 ? BigInt(-1) : BigInt(1); }
};

template <>
struct Ring<EisensteinInt> {
  static constexpr bool is_eisenstein = true;
  static EisensteinInt conj(const EisensteinInt& z) { return z.conj(); }
  static BigInt norm(const EisensteinInt& z) { return z.norm(); }
  static EisensteinInt exact_div(const EisensteinInt& a, const EisensteinInt& b) {
    return mde::exact_div(a, b);
  }
  static EisensteinInt quotient(const EisensteinInt& a, const EisensteinInt& b) {
    return divmod(a, b).first;
  }
  static BigInt real(const EisensteinInt& z);
  static ComplexQ to_complex(const EisensteinInt& z);
  /// The associate with u > v >= 0 (argument in [0, pi/3)).
  static EisensteinInt canonical(const EisensteinInt& z) { return z * unit_to_canonical(z); }
  static EisensteinInt unit_to_canonical(const EisensteinInt& z);
};

template <class R>
R det_bareiss(Mat<R> M);

/// Permutation expansion; exponential, used as a cross-check on small matrices.
template <class R>
R det_leibniz(const Mat<R>& M);

/// Transpose of the cofactor matrix; M adj(M) = adj(M) M = det(M) Id.
template <class R>
Mat<R> adjugate(const Mat<R>& M);

/// M M^dagger.
template <class R>
Mat<R> hermitian_gram(const Mat<R>& M);

/// det(M M^dagger) as an integer.
template <class R>
BigInt gram_determinant(const Mat<R>& M);

template <class R>
BigInt norm_sq(const Vec<R>& v);

struct AdjugateNorm {
  BigInt direct_sq;         // squared norm of the first column of adj(M)
  BigInt cauchy_binet_sq;   // det(B B^dagger), B = rows 2..n of M
  double value() const;
};

/// The first column of the adjugate holds the signed maximal minors of rows 2..n,
/// so its norm equals sqrt(det(B B^dagger)).
template <class R>
AdjugateNorm first_column_adjugate_norm(const Mat<R>& M);

/// Lattice spanned by the rows of a full-rank integral matrix.
template <class R>
struct LatticeBasis {
  Mat<R> rows;
  BigInt gram_det;  // det(rows rows^dagger) > 0

  static LatticeBasis from_rows(Mat<R> rows);
  long rank() const { return static_cast<long>(rows.rows()); }
  long dim() const { return static_cast<long>(rows.cols()); }
  /// sqrt(det(M M^dagger)).
  double det() const;
};

/// Vectors x in R^N with sum x_i conj(u_i) = 0, as N-1 rows.
template <class R>
LatticeBasis<R> orthogonal_lattice(const Vec<R>& u);

struct DeterminantSplit {
  BigInt det_U_sq;      // |det U|^2, U = (u; rows of the complement)
  BigInt lambda_sq;     // (det <u>)^2 = ||u||^2
  BigInt perp_sq;       // (det complement)^2
  bool holds() const { return det_U_sq == lambda_sq * perp_sq; }
};

template <class R>
DeterminantSplit determinant_split(const Vec<R>& u, const LatticeBasis<R>& perp);

/// 3^{N-1} (N-1)! sum |a_i|^2.
template <class R>
BigInt subgroup_degree(const Vec<R>& u);

struct TranslateBounds {
  BigInt degree;   // bound on deg(H + P)
  IntervalQ h2;    // bound on h2(H + P)
};

/// deg <= 3^{N-1}(N-1)! ||u||^2, h2 <= 3^{N-1} N! (hhat(u(P)) + N C(E) ||u||^2).
template <class R>
TranslateBounds translate_bounds(const Vec<R>& u, const IntervalQ& hhat_uP, const Curve& E);

struct LinearForm {
  std::vector<ComplexQ> coeffs;

  Quad norm_sq() const;
  Quad norm() const;
  bool is_real() const;
  template <class R>
  ComplexQ operator()(const Vec<R>& u) const;
};

/// Smallest kappa allowed by the convex body argument in dimension N:
/// (2 sqrt 3 / pi)^{N/(2(N-1))} over Z[zeta], 2^{N/(N-1)} over Z.
template <class R>
Quad kappa_threshold(long N);

template <class R>
struct MinkowskiResult {
  Vec<R> u;
  BigInt norm_sq;
  Quad radius_sq;                // T^2 + kappa^2 / T^{2/(N-1)} sum ||L_i||^2
  std::vector<Quad> form_abs;    // |L_i(u)|
  std::vector<Quad> form_bound;  // kappa ||L_i|| / T^{1/(N-1)}
  std::size_t enumerated = 0;
};

/// Nonzero u in R^N inside the ball with |L_i(u)| <= kappa ||L_i|| / T^{1/(N-1)}.
/// Exhaustive over the ball; the smallest norm wins, ties broken lexicographically.
template <class R>
MinkowskiResult<R> minkowski_search(const std::vector<LinearForm>& forms, const Quad& T,
                                    const Quad& kappa, std::size_t max_points = 20000000);

template <class R>
struct MinimaResult {
  std::vector<BigInt> minima_sq;  // lambda_i^2
  std::vector<Vec<R>> vectors;    // lattice vectors attaining them
  double lhs = 0;                 // omega lambda-product side of Minkowski's second theorem
  double rhs = 0;
  bool second_theorem_holds() const { return lhs <= rhs; }
};

/// Successive minima of a lattice of rank at most 3 by exhaustive enumeration.
template <class R>
MinimaResult<R> successive_minima(const LatticeBasis<R>& basis, std::size_t max_points = 5000000);

/// m^3 (2m)!^2 |D_K|^m N / 2^{2m-2}, the constant of the linear forms lemma.
IntervalQ linear_forms_constant(long N, long m, long disc_field);

/// Forms L_j = (hhat(g_j) / (N A))^{1/2} sum_i v_ij X_i with ||L_j|| <= 1, where
/// hhat(g_j) = gram(j, j) / 2 and A = max |v_ij|^2 hhat(g_j). Empty when A = 0.
template <class R>
std::vector<LinearForm> build_bounded_forms(const Eigen::MatrixXcd& gram, const Mat<R>& coeffs);

template <class R>
struct AuxiliaryTranslate {
  Vec<R> u;
  BigInt degree;          // subgroup_degree(u)
  IntervalQ deg_bound;    // 3^{N-1}(N-1)! (T + (N-1) kappa^2 / T^{1/(N-1)})
  IntervalQ h2_hhat_coeff;  // coefficient of hhat(P) in the h2 bound
  IntervalQ h2_constant;    // c4 (T + (N-1) kappa^2 / T^{1/(N-1)})
};

/// Codimension-one subgroup from a Minkowski search at sqrt(T).
template <class R>
AuxiliaryTranslate<R> auxiliary_translate(long N, const std::vector<LinearForm>& forms,
                                          const Quad& T, const Quad& kappa, const Curve& E);

}  // namespace mde

#endif  // MDE_GON_HPP
