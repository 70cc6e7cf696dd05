#include "mde/prime_field.hpp"

#include <algorithm>

namespace mde {

Fp Fp::from_int(long long value, std::uint64_t modulus) {
  const long long m = static_cast<long long>(modulus);
  long long r = value % m;
  if (r < 0) r += m;
  return {static_cast<std::uint64_t>(r), modulus};
}

Fp Fp::from_bigint(const BigInt& value, std::uint64_t modulus) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), modulus);
  return {r.get_ui(), modulus};
}

Fp Fp::from_rational(const Rational& value, std::uint64_t modulus) {
  const Fp den = from_bigint(value.get_den(), modulus);
  if (den.is_zero()) throw DomainError("Fp: denominator divisible by p");
  return from_bigint(value.get_num(), modulus) / den;
}

Fp Fp::pow(std::uint64_t exponent) const {
  Fp result(1, modulus_);
  Fp base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Fp Fp::inverse() const {
  if (value_ == 0) throw DomainError("Fp: inverse of zero");
  // Extended Euclid on signed 128-bit values.
  __int128 r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    const __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const __int128 s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (s0 < 0) s0 += modulus_;
  return {static_cast<std::uint64_t>(s0), modulus_};
}

Fp cube_root_of_unity(std::uint64_t p) {
  if (p % 3 != 1 || !is_prime(p)) {
    throw DomainError("cube_root_of_unity: p must be a prime congruent to 1 mod 3");
  }
  const std::uint64_t e = (p - 1) / 3;
  for (std::uint64_t g = 2; g < p; ++g) {
    const Fp w = Fp(g, p).pow(e);
    if (w.value() != 1) {
      const Fp w2 = w * w;
      return w.value() < w2.value() ? w : w2;
    }
  }
  throw InternalError("cube_root_of_unity: no primitive root found");
}

bool is_cube_fp(const Fp& t) {
  const std::uint64_t p = t.modulus();
  if (p % 3 != 1) throw DomainError("is_cube_fp: p must be congruent to 1 mod 3");
  return t.is_zero() || t.pow((p - 1) / 3).value() == 1;
}

}  // namespace mde
