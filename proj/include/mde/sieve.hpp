#ifndef MDE_SIEVE_HPP
#define MDE_SIEVE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mde/bounds.hpp"
#include "mde/curve.hpp"
#include "mde/eisenstein.hpp"

namespace mde {

// Search for the points (P1, P2) of E^2 on
//   C_n: y(P2) = x(P1)^n    and    D_n: y(P2) = Phi_n(x(P1))
// for E: y^2 = x^3 + 2 with P1 = [u + v zeta] g, g = (-1, 1).

enum class GridMode { PaperFaithful, NormBall };

std::string to_string(GridMode m);
GridMode parse_grid_mode(const std::string& s);

/// Coefficients of Phi_n, constant term first.
std::vector<BigInt> cyclotomic(long n);

/// Coefficients of x^n (Cn) or Phi_n (Dn), constant term first.
std::vector<BigInt> family_polynomial(Family family, long n);

using CoeffPair = std::pair<long, long>;  // (u, v) for u + v zeta

/// v >= 1, or v = 0 and u >= 1. Every nonzero c has exactly one of c, -c here.
bool is_canonical(const CoeffPair& c);

/// Candidate coefficients of P1, stored as a bitmap over a bounding box.
class CandidateGrid {
 public:
  /// Throws DomainError when the box needs more than max_bits bits.
  static CandidateGrid build(Family family, long n, double Ma, double Mb, GridMode mode,
                             std::uint64_t max_bits = std::uint64_t{1} << 32);
  /// Grid holding exactly the given canonical pairs.
  static CandidateGrid from_pairs(Family family, long n, const std::vector<CoeffPair>& pairs);

  /// Number of bits the box of build() would need.
  static std::uint64_t box_bits(double Ma, double Mb, GridMode mode);

  Family family() const { return family_; }
  long n() const { return n_; }
  GridMode mode() const { return mode_; }
  long Ma() const { return Ma_; }
  long Mb() const { return Mb_; }

  std::uint64_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(const CoeffPair& c) const;
  /// Members ordered by (v, u).
  std::vector<CoeffPair> members() const;

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<std::uint64_t>& eliminated() const { return eliminated_; }

 private:
  friend std::uint64_t sieve_prime(CandidateGrid& grid, std::uint64_t p, unsigned threads);

  void set(long u, long v);
  std::uint64_t index(long u, long v) const {
    return static_cast<std::uint64_t>(v - v_lo_) * width_ + static_cast<std::uint64_t>(u - u_lo_);
  }

  Family family_ = Family::Cn;
  long n_ = 1;
  GridMode mode_ = GridMode::NormBall;
  long Ma_ = 0, Mb_ = 0;
  long u_lo_ = 0, v_lo_ = 0;
  std::uint64_t width_ = 1, height_ = 0;
  std::vector<std::uint64_t> bits_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> eliminated_;
};

/// Whether the residue class of Q in E(F_p) passes the necessary condition:
/// Q = O, or f(x(Q))^2 - 2 is a cube in F_p.
bool residue_survives(const CurveModel<Fp>& Ep, const std::vector<Fp>& f, const Point<Fp>& Q);

/// Removes every member whose image [u] g + [v] zeta g mod p fails residue_survives.
/// Requires p prime, p = 1 mod 3, p >= 7. Returns the number removed.
std::uint64_t sieve_prime(CandidateGrid& grid, std::uint64_t p, unsigned threads = 1);

using PointK = Point<KElement>;
using SolutionPair = std::pair<PointK, PointK>;

/// Total order: O first, then by x, then by y.
bool point_less(const PointK& P, const PointK& Q);
bool solution_less(const SolutionPair& a, const SolutionPair& b);

/// Exact check of P1 = [u + v zeta] g. Returns the pairs (P1, P2) with
/// y(P2) = f(x(P1)), one per cube root of f(x(P1))^2 - 2, or nullopt.
std::optional<std::vector<SolutionPair>> exact_verify(const CoeffPair& c, Family family, long n);

/// Closes the verified pairs under P1 -> -P1, appends (O, O), sorts and dedups.
std::vector<SolutionPair> assemble_solutions(const std::vector<SolutionPair>& verified);

struct SieveOptions {
  long stall = 15;                  // consecutive primes without eliminations
  long prime_cap = 1000;            // maximum number of primes
  GridMode mode = GridMode::NormBall;
  unsigned threads = 1;
  std::uint64_t first_prime = 7;
  std::uint64_t max_grid_bits = std::uint64_t{1} << 32;
  std::uint64_t max_survivors = 1000;     // survivors beyond this are not verified
  std::uint64_t verify_norm_cap = 20000;  // survivors of larger norm are not verified
  std::optional<double> Ma;         // override of the proven coefficient bounds
  std::optional<double> Mb;
};

struct SieveReport {
  Family family = Family::Cn;
  long n = 1;
  GridMode mode = GridMode::NormBall;
  double Ma = 0, Mb = 0;
  std::uint64_t grid_size = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> eliminated;
  std::vector<CoeffPair> survivors;
  std::vector<CoeffPair> unverified;
  std::vector<SolutionPair> solutions;
  bool complete = false;
  double wall_ms = 0;
};

SieveReport run_sieve(Family family, long n, const SieveOptions& options = {});

nlohmann::json point_to_json(const PointK& P);
/// Report as JSON; wall_ms is omitted when include_timing is false.
nlohmann::json to_json(const SieveReport& report, bool include_timing = true);

}  // namespace mde

#endif  // MDE_SIEVE_HPP
