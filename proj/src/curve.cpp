#include "mde/curve.hpp"

#include <array>
#include <cmath>

namespace mde {

double OrderData::covolume() const {
  return 0.5 * static_cast<double>(f) * std::sqrt(std::fabs(static_cast<double>(disc_field())));
}

std::pair<BigInt, Rational> curve_invariants(const BigInt& A, const BigInt& B) {
  const BigInt core = 4 * A * A * A + 27 * B * B;
  if (core == 0) throw DomainError("singular curve: 4A^3 + 27B^2 = 0");
  const BigInt disc = -16 * core;
  const BigInt fourA = 4 * A;
  const BigInt numer = -1728 * fourA * fourA * fourA;
  return {disc, make_rational(numer, disc)};
}

std::optional<OrderData> cm_order_for_j(const Rational& j) {
  struct Entry {
    const char* j;
    long D;
    long f;
  };
  static const std::array<Entry, 13> table = {{
      {"0", -3, 1},
      {"54000", -3, 2},
      {"-12288000", -3, 3},
      {"1728", -1, 1},
      {"287496", -1, 2},
      {"-3375", -7, 1},
      {"16581375", -7, 2},
      {"8000", -2, 1},
      {"-32768", -11, 1},
      {"-884736", -19, 1},
      {"-884736000", -43, 1},
      {"-147197952000", -67, 1},
      {"-262537412640768000", -163, 1},
  }};
  if (j.get_den() != 1) return std::nullopt;
  for (const auto& e : table) {
    if (j.get_num() == BigInt(e.j)) return OrderData{e.D, e.f};
  }
  return std::nullopt;
}

Curve::Curve(BigInt A, BigInt B, std::optional<OrderData> cm)
    : A_(std::move(A)), B_(std::move(B)), cm_(cm) {
  auto [disc, j] = curve_invariants(A_, B_);
  disc_ = std::move(disc);
  j_ = std::move(j);
  if (cm_) {
    if (cm_->D >= 0 || cm_->f < 1) throw DomainError("CM data: need D < 0 and f >= 1");
    const auto expected = cm_order_for_j(j_);
    if (!expected || expected->D != cm_->D || expected->f != cm_->f) {
      throw DomainError("CM data does not match the j-invariant");
    }
  }
}

Curve Curve::with_detected_cm(BigInt A, BigInt B) {
  auto inv = curve_invariants(A, B);
  return Curve(std::move(A), std::move(B), cm_order_for_j(inv.second));
}

CurveModel<Rational> model_q(const Curve& E) {
  return {Rational(E.A()), Rational(E.B()), Rational(0), Rational(1)};
}

CurveModel<KElement> model_k(const Curve& E) {
  return {KElement(Rational(E.A())), KElement(Rational(E.B())), KElement(0), KElement(1)};
}

CurveModel<Fp> reduce_mod_p(const Curve& E, std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw DomainError("reduce_mod_p: need a prime p >= 5");
  if (Fp::from_bigint(E.discriminant(), p).is_zero()) {
    throw DomainError("reduce_mod_p: bad reduction at p");
  }
  return {Fp::from_bigint(E.A(), p), Fp::from_bigint(E.B(), p), Fp(0, p), Fp(1, p)};
}

Point<Fp> reduce_point(const Point<Rational>& P, std::uint64_t p) {
  if (P.infinity) return Point<Fp>::at_infinity();
  if (Fp::from_bigint(P.x.get_den(), p).is_zero()) return Point<Fp>::at_infinity();
  return Point<Fp>::affine(Fp::from_rational(P.x, p), Fp::from_rational(P.y, p));
}

std::uint64_t group_order(const CurveModel<Fp>& E) {
  const std::uint64_t p = E.a.modulus();
  // multiplicity[r] = number of y with y^2 = r
  std::vector<std::uint8_t> multiplicity(p, 0);
  for (std::uint64_t y = 0; y < p; ++y) {
    ++multiplicity[static_cast<std::uint64_t>(static_cast<unsigned __int128>(y) * y % p)];
  }
  std::uint64_t count = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const Fp fx(x, p);
    count += multiplicity[(fx * fx * fx + E.a * fx + E.b).value()];
  }
  return count;
}

Point<KElement> to_k(const Point<Rational>& P) {
  if (P.infinity) return Point<KElement>::at_infinity();
  return Point<KElement>::affine(KElement(P.x), KElement(P.y));
}

}  // namespace mde
