#include "mde/arith.hpp"

#include <cmath>
#include <numbers>

namespace mde {

double log_abs(const BigInt& z) {
  if (z == 0) throw DomainError("log_abs: zero argument");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(std::fabs(mantissa)) +
         static_cast<double>(exponent) * std::numbers::ln2;
}

double log_height(const Rational& q) {
  if (q == 0) return 0.0;
  const BigInt num = abs(q.get_num());
  const BigInt& den = q.get_den();
  return log_abs(num > den ? num : den);
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt pow_int(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for every n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_congruent(std::uint64_t after, std::uint64_t residue,
                                   std::uint64_t modulus) {
  std::uint64_t candidate = after + 1;
  while (candidate % modulus != residue % modulus || !is_prime(candidate)) {
    ++candidate;
  }
  return candidate;
}

}  // namespace mde
