#ifndef MDE_ARITH_HPP
#define MDE_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <Eigen/Core>

namespace mde {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when an input violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a result contradicts a proven guarantee (signals a bug).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Natural log of |z| for z != 0, accurate for arbitrarily large integers.
double log_abs(const BigInt& z);

/// log max(|num|, |den|) of a rational in lowest terms; 0 for 0.
double log_height(const Rational& q);

/// num / den in canonical form.
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt pow_int(const BigInt& base, unsigned long exponent);

std::string to_string(const BigInt& z);
std::string to_string(const Rational& q);

/// Deterministic primality test for 64-bit integers.
bool is_prime(std::uint64_t n);

/// Smallest prime p > after with p % modulus == residue.
std::uint64_t next_prime_congruent(std::uint64_t after, std::uint64_t residue,
                                   std::uint64_t modulus);

}  // namespace mde

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 8,
    MulCost = 16
  };
};

}  // namespace Eigen

#endif  // MDE_ARITH_HPP
