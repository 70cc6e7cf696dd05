#ifndef MDE_PRIME_FIELD_HPP
#define MDE_PRIME_FIELD_HPP

#include <cstdint>
#include <ostream>

#include "mde/arith.hpp"

namespace mde {

/// Element of F_p for a prime p < 2^63. Each value carries its modulus.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t modulus)
      : value_(value % modulus), modulus_(modulus) {}

  static Fp from_int(long long value, std::uint64_t modulus);
  static Fp from_bigint(const BigInt& value, std::uint64_t modulus);
  /// Image of a rational with denominator prime to p.
  static Fp from_rational(const Rational& value, std::uint64_t modulus);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  Fp inverse() const;
  Fp pow(std::uint64_t exponent) const;

  Fp operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_}; }
  Fp& operator+=(const Fp& o) {
    value_ += o.value_;
    if (value_ >= modulus_) value_ -= modulus_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    value_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(value_) *
                                        o.value_ % modulus_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Fp& x) {
  return os << x.value();
}

/// Smallest r in [2, p) with r^3 == 1 mod p. Requires p == 1 mod 3.
Fp cube_root_of_unity(std::uint64_t p);

/// True iff t == 0 or t^((p-1)/3) == 1. Requires p == 1 mod 3.
bool is_cube_fp(const Fp& t);

}  // namespace mde

#endif  // MDE_PRIME_FIELD_HPP
