#ifndef MDE_BOUNDS_HPP
#define MDE_BOUNDS_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mde/curve.hpp"
#include "mde/heights.hpp"
#include "mde/interval.hpp"

namespace mde {

enum class Variant { CmSharp, NonCmSharp, Simplified };
enum class Family { Cn, Dn };
enum class LambdaMode { PaperFaithful, StandardSplitting };

std::string to_string(Variant v);
std::string to_string(Family f);
std::string to_string(LambdaMode m);
Variant parse_variant(const std::string& s);
Family parse_family(const std::string& s);
LambdaMode parse_lambda_mode(const std::string& s);

/// Named constants of one theorem variant, in evaluation order.
struct ConstantSet {
  Variant variant = Variant::CmSharp;
  int N = 2;
  std::vector<std::pair<std::string, IntervalQ>> values;

  const IntervalQ& at(const std::string& name) const;
  bool has(const std::string& name) const;
  void set(const std::string& name, const IntervalQ& value);
};

IntervalQ factorial(long n);

/// Arithmetic Bezout constant: sum_{i<=d1, j<=d2} 1/(2(i+j+1)) + (m - (d1+d2)/2) log 2.
IntervalQ bezout_c0(long d1, long d2, long m);

/// C(E) evaluated from the exact invariants.
IntervalQ c_of_e_interval(const Curve& E);

/// c1(r) = 2^{2r-2} / (r^2 (2r)!^2 |D_K|^r).
IntervalQ good_generators_c1(long r, long disc_field);

ConstantSet cm_constants(int N, const Curve& E);
ConstantSet noncm_constants(int N, const Curve& E);
ConstantSet simplified_constants(int N, const Curve& E);
ConstantSet constants_for(Variant variant, int N, const Curve& E);

struct HeightBoundReport {
  ConstantSet constants;
  IntervalQ upper_h2;
  IntervalQ upper_hhat;
  double Ma = 0;
  double Mb = 0;
};

/// Upper bound for points of rank <= N-1 on a transverse curve of the given
/// degree and height. upper_hhat = upper_h2 + N C(E).
HeightBoundReport main_bound(int N, const Curve& E, long degC, const IntervalQ& h2C, Variant variant);

long euler_phi(long n);

struct FamilyData {
  Family family = Family::Cn;
  long n = 1;
  long effective_n = 1;  // n for Cn, phi(n) for Dn
  long degree = 0;
  IntervalQ h2_bound;
};

FamilyData family_data(Family family, long n);

struct CoeffBounds {
  double Ma = 0;
  double Mb = 0;
};

/// Bounds on |a| and |b| for P = ([a]g, [b]g) from an upper bound h2P on h2(P).
CoeffBounds coeff_bounds(long n_eff, const IntervalQ& h2P, const IntervalQ& hhat_g);

/// The fixed example: y^2 = x^3 + 2 with CM by Z[zeta] and generator (-1, 1).
struct ExampleSetup {
  Curve curve;
  Point<Rational> generator;
  IntervalQ hhat_g;
  static const ExampleSetup& get();
};

/// main_bound for a family member plus the coefficient bounds.
HeightBoundReport family_bound(Family family, long n, Variant variant = Variant::CmSharp);

/// Whether ell is admissible for the lower bound over the field of discriminant disc.
bool lambda_admissible(long disc_field, std::uint64_t ell, LambdaMode mode);

/// Smallest a > 0 with [a] P0 reducing to infinity modulo ell.
BigInt reduction_index(const Curve& E, const Point<Rational>& P0, std::uint64_t ell,
                       long bad_prime_cap = 200);

struct LambdaResult {
  IntervalQ lambda;
  std::uint64_t ell = 0;
  BigInt a_ell;
  long exponent = 0;  // 2 ceil(d1/d2) - 2
};

LambdaResult lambda_lower_bound(const Curve& E, const std::set<std::uint64_t>& S, long d1,
                                long d2, const Point<Rational>& P0, const IntervalQ& hhat_P0,
                                LambdaMode mode, std::uint64_t ell_bound = 1000);

struct CrossoverRow {
  long n = 0;
  long d1 = 0;
  IntervalQ lambda;  // 0 when d1 <= d2
  IntervalQ upper;
  bool exceeds = false;
};

struct CrossoverReport {
  Family family = Family::Cn;
  LambdaMode mode = LambdaMode::PaperFaithful;
  long index = 0;
  std::uint64_t smallest_ell = 0;
  long certified_from = 0;  // beyond this every n is covered by the growth argument
  std::vector<CrossoverRow> table;
};

/// Smallest n* with lambda(m) > upper_hhat(m) for every m >= n*.
CrossoverReport crossover(Family family, LambdaMode mode, Variant variant = Variant::CmSharp);

}  // namespace mde

#endif  // MDE_BOUNDS_HPP
