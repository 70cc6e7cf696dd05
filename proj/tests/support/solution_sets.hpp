#ifndef MDE_TESTS_SOLUTION_SETS_HPP
#define MDE_TESTS_SOLUTION_SETS_HPP

#include <algorithm>
#include <vector>

#include "mde/sieve.hpp"

namespace mde::testing {

inline SolutionPair pair_of(const EisensteinInt& a, const EisensteinInt& b) {
  const ExampleSetup& ex = ExampleSetup::get();
  const auto Ek = model_k(ex.curve);
  const PointK g = to_k(ex.generator);
  return {eisenstein_mul(Ek, KElement::zeta(), a, g), eisenstein_mul(Ek, KElement::zeta(), b, g)};
}

inline const EisensteinInt kZeta = EisensteinInt::zeta();
inline const EisensteinInt kZeta2 = kZeta * kZeta;

// The stated solution set, closed under zeta acting on the second point, with (O, O).
inline std::vector<SolutionPair> expected_set(Family family, long n) {
  std::vector<EisensteinInt> as, bs;
  const std::vector<EisensteinInt> roots{1, kZeta, kZeta2};
  const std::vector<EisensteinInt> units{1, -1, kZeta, -kZeta, kZeta2, -kZeta2};
  if (family == Family::Cn) {
    const long r = n % 6;
    as = (r == 0 || r == 3) ? units : std::vector<EisensteinInt>{1, -1};
    for (const auto& w : roots) bs.push_back((r % 2 == 0) ? w : -w);
  } else {
    long m = n;
    if (m % 2 == 0) m /= 2;
    long q = 2;
    while (q * q <= m && m % q != 0) ++q;
    if (m % q == 0) {
      while (m % q == 0) m /= q;
    } else {
      m = 1;
    }
    const bool twice_prime_power = n % 2 == 0 && m == 1 && n > 2;
    if (!(n == 1 || n == 2 || twice_prime_power)) {
      as = {1, -1};
      bs = {1};
    }
  }
  std::vector<SolutionPair> out{{PointK::at_infinity(), PointK::at_infinity()}};
  const auto Ek = model_k(ExampleSetup::get().curve);
  for (const auto& a : as) {
    for (const auto& b : bs) {
      auto s = pair_of(a, b);
      for (int k = 0; k < 3; ++k) {
        out.push_back(s);
        s.second = cm_apply(Ek, KElement::zeta(), s.second);
      }
    }
  }
  std::sort(out.begin(), out.end(), solution_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<CoeffPair> known_canonical(Family family, long n) {
  std::vector<CoeffPair> out;
  for (const auto& s : expected_set(family, n)) {
    if (s.first.infinity) continue;
    for (const CoeffPair c : {CoeffPair{1, 0}, CoeffPair{0, 1}, CoeffPair{1, 1}}) {
      const auto P = pair_of(EisensteinInt(BigInt(c.first), BigInt(c.second)), 1).first;
      if (P.x == s.first.x) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mde::testing

#endif  // MDE_TESTS_SOLUTION_SETS_HPP
