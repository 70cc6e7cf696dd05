#include "mde/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace mde {

namespace {

IntervalQ log2_q() { return log(IntervalQ(2)); }

IntervalQ big(const BigInt& z) { return IntervalQ::from_bigint(z); }

IntervalQ weil_height_q(const Rational& q) {
  if (q == 0) return IntervalQ(0);
  const BigInt num = abs(q.get_num());
  return log(big(num > q.get_den() ? num : q.get_den()));
}

// x^e for an exact integer base and a rational exponent num/den.
IntervalQ pow_rational(long base, long num, long den) {
  return pow(IntervalQ(base), IntervalQ(num) / IntervalQ(den));
}

const OrderData& require_cm(const Curve& E) {
  if (!E.cm()) throw DomainError("CM constants requested for a curve without CM data");
  return *E.cm();
}

void check_n(int N) {
  if (N < 2) throw DomainError("N must be at least 2");
  if (N > 12) throw DomainError("N larger than 12 is outside the supported range");
}

// N! (N/(N-1))^{N-1} 3^{N-1} c^{N-1} factor
IntervalQ leading_factor(int N, const IntervalQ& c) {
  return factorial(N) * pow(IntervalQ(N) / IntervalQ(N - 1), N - 1) * pow(IntervalQ(3), N - 1) *
         pow(c, N - 1);
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::CmSharp: return "cm-sharp";
    case Variant::NonCmSharp: return "noncm-sharp";
    case Variant::Simplified: return "simplified";
  }
  return "";
}

std::string to_string(Family f) { return f == Family::Cn ? "cn" : "dn"; }

std::string to_string(LambdaMode m) {
  return m == LambdaMode::PaperFaithful ? "paper-faithful" : "standard-splitting";
}

Variant parse_variant(const std::string& s) {
  if (s == "cm-sharp") return Variant::CmSharp;
  if (s == "noncm-sharp") return Variant::NonCmSharp;
  if (s == "simplified") return Variant::Simplified;
  throw DomainError("unknown variant: " + s);
}

Family parse_family(const std::string& s) {
  if (s == "cn") return Family::Cn;
  if (s == "dn") return Family::Dn;
  throw DomainError("unknown family: " + s);
}

LambdaMode parse_lambda_mode(const std::string& s) {
  if (s == "paper-faithful") return LambdaMode::PaperFaithful;
  if (s == "standard-splitting") return LambdaMode::StandardSplitting;
  throw DomainError("unknown lambda mode: " + s);
}

const IntervalQ& ConstantSet::at(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw DomainError("constant not present: " + name);
}

bool ConstantSet::has(const std::string& name) const {
  return std::any_of(values.begin(), values.end(), [&](const auto& kv) { return kv.first == name; });
}

void ConstantSet::set(const std::string& name, const IntervalQ& value) {
  for (auto& [k, v] : values) {
    if (k == name) {
      v = value;
      return;
    }
  }
  values.emplace_back(name, value);
}

IntervalQ factorial(long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return big(f);
}

IntervalQ bezout_c0(long d1, long d2, long m) {
  if (d1 < 0 || d2 < 0 || d1 > m || d2 > m) throw DomainError("bezout_c0: need 0 <= d1, d2 <= m");
  Rational s = 0;
  for (long i = 0; i <= d1; ++i) {
    for (long j = 0; j <= d2; ++j) s += Rational(1, 2 * (i + j + 1));
  }
  s.canonicalize();
  return IntervalQ::from_rational(s) +
         IntervalQ::from_rational(make_rational(BigInt(2 * m - d1 - d2), BigInt(2))) * log2_q();
}

IntervalQ c_of_e_interval(const Curve& E) {
  return (weil_height_q(Rational(E.discriminant())) + IntervalQ(3) * weil_height_q(E.j())) /
             IntervalQ(4) +
         (weil_height_q(Rational(E.A())) + weil_height_q(Rational(E.B()))) / IntervalQ(2) +
         IntervalQ(4);
}

IntervalQ good_generators_c1(long r, long disc_field) {
  const long d = std::labs(disc_field);
  return pow(IntervalQ(2), 2 * r - 2) /
         (IntervalQ(r * r) * pow(factorial(2 * r), 2) * pow(IntervalQ(d), r));
}

ConstantSet cm_constants(int N, const Curve& E) {
  check_n(N);
  const OrderData& cm = require_cm(E);
  const long dk = std::labs(cm.disc_field());
  ConstantSet s;
  s.variant = Variant::CmSharp;
  s.N = N;
  const IntervalQ ce = c_of_e_interval(E);
  const IntervalQ c0 = bezout_c0(1, N - 1, [&] {
    long p = 1;
    for (int i = 0; i < N; ++i) p *= 3;
    return p - 1;
  }());
  const IntervalQ c1 = good_generators_c1(N - 1, cm.disc_field());
  const IntervalQ c2 = IntervalQ((N - 1) * N) / c1;
  // Closed form of 3^{N-1} N! c2(N, N-1).
  const IntervalQ c3 = IntervalQ(N) * pow(IntervalQ(N - 1), 3) * pow(IntervalQ(3), N - 1) *
                       pow(factorial(2 * N - 2), 2) * factorial(N) * pow(IntervalQ(dk), N - 1) /
                       pow(IntervalQ(2), 2 * N - 4);
  const IntervalQ c4 = IntervalQ(N) * pow(IntervalQ(3), N - 1) * factorial(N) * ce;
  const IntervalQ kappa_base = IntervalQ(2 * cm.f) * sqrt(IntervalQ(dk)) / IntervalQ::pi();
  const IntervalQ kappa = pow(kappa_base, IntervalQ(N) / IntervalQ(2 * (N - 1)));
  const IntervalQ C1 = leading_factor(N, c3) * pow(kappa_base, N);
  const IntervalQ tail = IntervalQ(N * N) * ce + c0;
  const IntervalQ C3 = pow(IntervalQ(4), N - 1) * IntervalQ((2 * N - 1) * (2 * N - 1)) /
                       (IntervalQ(N - 1) * pow(factorial(2 * N), 2) * pow(IntervalQ(dk), N - 1));
  s.set("CE", ce);
  s.set("C0", c0);
  s.set("kappa", kappa);
  s.set("c1", c1);
  s.set("c2", c2);
  s.set("c3", c3);
  s.set("c4", c4);
  s.set("C1", C1);
  s.set("C2", C1 * tail);
  s.set("C3", C3);
  s.set("C4", C3 * tail + IntervalQ(N) * ce);
  const ConstantSet d = simplified_constants(N, E);
  for (const auto& [k, v] : d.values) {
    if (!s.has(k)) s.set(k, v);
  }
  return s;
}

ConstantSet noncm_constants(int N, const Curve& E) {
  check_n(N);
  ConstantSet s;
  s.variant = Variant::NonCmSharp;
  s.N = N;
  const IntervalQ ce = c_of_e_interval(E);
  long three_n = 1;
  for (int i = 0; i < N; ++i) three_n *= 3;
  const IntervalQ c0 = bezout_c0(1, N - 1, three_n - 1);
  const IntervalQ fact_nm1_4 = pow(factorial(N - 1), 4);
  const IntervalQ c11 = IntervalQ(N) * pow(IntervalQ(N - 1), 3) * pow(IntervalQ(3), N - 1) *
                        factorial(N) * fact_nm1_4 / pow(IntervalQ(4), N - 2);
  const IntervalQ c12 =
      IntervalQ(N) * pow(IntervalQ(N - 1), 3) * fact_nm1_4 / pow(IntervalQ(4), N - 2);
  const IntervalQ c4 = IntervalQ(N) * pow(IntervalQ(3), N - 1) * factorial(N) * ce;
  const IntervalQ kappa = pow(IntervalQ(2), IntervalQ(N) / IntervalQ(N - 1));
  const IntervalQ C5 = leading_factor(N, c11) * pow(IntervalQ(4), N);
  const IntervalQ tail = IntervalQ(N * N) * ce + c0;
  const IntervalQ C7 = pow(IntervalQ(4), N - 1) /
                       (IntervalQ(N - 1) * pow(factorial(N), 2) * pow(factorial(N - 1), 2));
  s.set("CE", ce);
  s.set("C0", c0);
  s.set("kappa", kappa);
  s.set("c11", c11);
  s.set("c12", c12);
  s.set("c4", c4);
  s.set("C5", C5);
  s.set("C6", C5 * tail);
  s.set("C7", C7);
  s.set("C8", C7 * tail + IntervalQ(N) * ce);
  const ConstantSet d = simplified_constants(N, Curve(E.A(), E.B()));
  for (const auto& [k, v] : d.values) {
    if (!s.has(k)) s.set(k, v);
  }
  return s;
}

ConstantSet simplified_constants(int N, const Curve& E) {
  check_n(N);
  ConstantSet s;
  s.variant = Variant::Simplified;
  s.N = N;
  const IntervalQ ce = c_of_e_interval(E);
  const IntervalQ three_n_log2 = pow(IntervalQ(3), N) * log2_q();
  const IntervalQ d3 = IntervalQ(N + 1) * ce + IntervalQ(1);
  s.set("CE", ce);
  if (E.cm()) {
    const long dk = std::labs(E.cm()->disc_field());
    const IntervalQ inner = IntervalQ(N) * pow(IntervalQ(N - 1), 3) * pow(IntervalQ(3), N - 1) *
                            pow(factorial(2 * N - 2), 2) * factorial(N) /
                            pow(IntervalQ(2), 2 * N - 5);
    const IntervalQ c = IntervalQ(2) * factorial(N) * pow(inner, N - 1);
    // |D_K|^{N^2 - 3N/2 + 1} with the exponent (2N^2 - 3N + 2) / 2.
    const IntervalQ scale =
        c * pow(IntervalQ(E.cm()->f), N) * pow_rational(dk, 2L * N * N - 3L * N + 2, 2);
    s.set("c", c);
    s.set("D1", scale + IntervalQ(1));
    s.set("D2", scale * (IntervalQ(N * N) * ce + three_n_log2));
    s.set("D3", d3);
  } else {
    const IntervalQ inner = IntervalQ(N * N) * IntervalQ((N - 1) * (N - 1)) * pow(IntervalQ(3), N) /
                            pow(IntervalQ(4), N - 3) * factorial(N) * pow(factorial(N - 1), 4);
    const IntervalQ d4 = IntervalQ(4) * factorial(N) * pow(inner, N - 1);
    s.set("D4", d4);
    s.set("D5", d4 * (IntervalQ(N * N) * ce + three_n_log2));
    s.set("D6", d3);
  }
  return s;
}

ConstantSet constants_for(Variant variant, int N, const Curve& E) {
  switch (variant) {
    case Variant::CmSharp: return cm_constants(N, E);
    case Variant::NonCmSharp:
      if (E.cm()) throw DomainError("noncm-sharp requested for a curve with CM");
      return noncm_constants(N, E);
    case Variant::Simplified: return simplified_constants(N, E);
  }
  throw DomainError("unknown variant");
}

HeightBoundReport main_bound(int N, const Curve& E, long degC, const IntervalQ& h2C,
                             Variant variant) {
  if (degC < 1) throw DomainError("main_bound: degree must be positive");
  if (h2C.lo() < 0) throw DomainError("main_bound: height must be non-negative");
  HeightBoundReport r;
  r.constants = constants_for(variant, N, E);
  const ConstantSet& s = r.constants;
  const IntervalQ deg(degC);
  const IntervalQ degNm1 = pow(deg, N - 1);
  const IntervalQ degN = degNm1 * deg;
  switch (variant) {
    case Variant::CmSharp:
      r.upper_h2 = s.at("C1") * h2C * degNm1 + s.at("C2") * degN + s.at("C3") * h2C + s.at("C4");
      break;
    case Variant::NonCmSharp:
      r.upper_h2 = s.at("C5") * h2C * degNm1 + s.at("C6") * degN + s.at("C7") * h2C + s.at("C8");
      break;
    case Variant::Simplified:
      if (E.cm()) {
        r.upper_h2 = s.at("D1") * h2C * degNm1 + s.at("D2") * degN + s.at("D3");
      } else {
        r.upper_h2 = s.at("D4") * h2C * degNm1 + s.at("D5") * degN + s.at("D6");
      }
      break;
  }
  r.upper_hhat = r.upper_h2 + IntervalQ(N) * s.at("CE");
  return r;
}

long euler_phi(long n) {
  if (n < 1) throw DomainError("euler_phi: n must be positive");
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

FamilyData family_data(Family family, long n) {
  if (n < 1) throw DomainError("family_data: n must be positive");
  FamilyData d;
  d.family = family;
  d.n = n;
  d.effective_n = family == Family::Cn ? n : euler_phi(n);
  const long k = d.effective_n;
  d.degree = 6 * k + 9;
  const IntervalQ log5 = log(IntervalQ(5));
  if (family == Family::Cn) {
    d.h2_bound = IntervalQ(6) * log5 * IntervalQ(2 * k + 3);
  } else {
    d.h2_bound = IntervalQ(6) * IntervalQ(2 * k + 3) * (IntervalQ(k) * log2_q() + log5);
  }
  return d;
}

CoeffBounds coeff_bounds(long n_eff, const IntervalQ& h2P, const IntervalQ& hhat_g) {
  if (!(h2P.hi() > 0) || !hhat_g.positive()) throw DomainError("coeff_bounds: need positive heights");
  const IntervalQ n(n_eff);
  const IntervalQ den = IntervalQ(2 * n_eff + 3) * IntervalQ(hhat_g.lo());
  const IntervalQ h(h2P.hi());
  const IntervalQ a = sqrt((IntervalQ(3) * h + IntervalQ::from_rational(Rational(1015, 100)) * n +
                            IntervalQ(6)) / den);
  const IntervalQ b = sqrt((IntervalQ(2 * n_eff) * h +
                            IntervalQ::from_rational(Rational(771, 100)) * n + IntervalQ(18)) / den);
  return {a.upper(), b.upper()};
}

const ExampleSetup& ExampleSetup::get() {
  static const ExampleSetup setup = [] {
    Curve E(0, 2, OrderData{-3, 1});
    const auto g = Point<Rational>::affine(Rational(-1), Rational(1));
    const HeightValue h = canonical_height(E, g, 1e-9);
    const Quad v(h.value), p(h.precision);
    return ExampleSetup{E, g, IntervalQ(v - 2 * p, v + 2 * p)};
  }();
  return setup;
}

HeightBoundReport family_bound(Family family, long n, Variant variant) {
  const ExampleSetup& ex = ExampleSetup::get();
  const FamilyData fd = family_data(family, n);
  HeightBoundReport r = main_bound(2, ex.curve, fd.degree, fd.h2_bound, variant);
  const CoeffBounds cb = coeff_bounds(fd.effective_n, r.upper_h2, ex.hhat_g);
  r.Ma = cb.Ma;
  r.Mb = cb.Mb;
  return r;
}

bool lambda_admissible(long disc_field, std::uint64_t ell, LambdaMode mode) {
  if (!is_prime(ell)) return false;
  const long m8 = ((disc_field % 8) + 8) % 8;
  if (ell == 2) {
    if (mode == LambdaMode::PaperFaithful) return ((disc_field % 4) + 4) % 4 == 1;
    return m8 == 1;
  }
  const auto l = static_cast<long>(ell);
  const long r = ((disc_field % l) + l) % l;
  if (r == 0) return false;
  // Euler's criterion.
  return Fp(static_cast<std::uint64_t>(r), ell).pow((ell - 1) / 2).value() == 1;
}

BigInt reduction_index(const Curve& E, const Point<Rational>& P0, std::uint64_t ell,
                       long bad_prime_cap) {
  if (P0.infinity) throw DomainError("reduction_index: point at infinity");
  const auto divides_den = [&](const Point<Rational>& Q) {
    return Q.infinity || Fp::from_bigint(Q.x.get_den(), ell).is_zero();
  };
  if (divides_den(P0)) return 1;
  const bool good = ell >= 5 && !Fp::from_bigint(E.discriminant(), ell).is_zero();
  if (good) {
    const auto Ep = reduce_mod_p(E, ell);
    const auto base = reduce_point(P0, ell);
    auto Q = base;
    for (std::uint64_t a = 1;; ++a) {
      if (Q.infinity) return BigInt(static_cast<unsigned long>(a));
      Q = add(Ep, Q, base);
    }
  }
  const auto M = model_q(E);
  Point<Rational> Q = P0;
  for (long a = 2; a <= bad_prime_cap; ++a) {
    Q = add(M, Q, P0);
    if (divides_den(Q)) return a;
  }
  throw DomainError("reduction_index: cap reached at a bad prime");
}

LambdaResult lambda_lower_bound(const Curve& E, const std::set<std::uint64_t>& S, long d1,
                                long d2, const Point<Rational>& P0, const IntervalQ& hhat_P0,
                                LambdaMode mode, std::uint64_t ell_bound) {
  if (d2 < 1 || d1 <= d2) throw DomainError("lambda_lower_bound: need d1 > d2 >= 1");
  const long disc = E.cm() ? E.cm()->disc_field() : 1;
  const long k = (d1 + d2 - 1) / d2;
  const auto e = static_cast<unsigned long>(2 * k - 2);
  LambdaResult best;
  BigInt best_value = -1;
  for (std::uint64_t ell = 2; ell <= ell_bound; ++ell) {
    if (!is_prime(ell) || S.count(ell) || !lambda_admissible(disc, ell, mode)) continue;
    const BigInt le = pow_int(BigInt(static_cast<unsigned long>(ell)), e);
    if (best_value >= 0 && le >= best_value) break;
    const BigInt a = reduction_index(E, P0, ell);
    const BigInt value = a * a * le;
    if (best_value < 0 || value < best_value) {
      best_value = value;
      best.ell = ell;
      best.a_ell = a;
    }
  }
  if (best_value < 0) throw DomainError("lambda_lower_bound: no admissible prime below the bound");
  best.exponent = static_cast<long>(e);
  best.lambda = IntervalQ(hhat_P0.lo()) * IntervalQ::from_bigint(best_value);
  return best;
}

CrossoverReport crossover(Family family, LambdaMode mode, Variant variant) {
  const ExampleSetup& ex = ExampleSetup::get();
  const long d2 = 3;
  const int N = 2;
  CrossoverReport rep;
  rep.family = family;
  rep.mode = mode;
  const long disc = ex.curve.cm()->disc_field();
  std::uint64_t ell = 2;
  while (!lambda_admissible(disc, ell, mode)) ++ell;
  rep.smallest_ell = ell;

  // Envelope: lambda(m) >= hhat lo * ell^{2 d1 / d2 - 2} with d1 = 2k, k = m or phi(m).
  // The upper bound is a polynomial with non-negative coefficients of degree D in
  // t = 2k + 3 (Cn, D = N) or in k (Dn, D = N + 1), so its log-slope in k is at
  // most 2N / (2k + 3), resp. (N + 1) / k, while the envelope's is 4/3 log ell.
  const IntervalQ slope = IntervalQ(4) / IntervalQ(3) * log(IntervalQ(static_cast<long>(ell)));
  const auto envelope = [&](long k) {
    return IntervalQ(ex.hhat_g.lo()) *
           pow(IntervalQ(static_cast<long>(ell)), IntervalQ(4 * k - 6) / IntervalQ(3));
  };
  const auto upper_at = [&](long k) {
    const IntervalQ log5 = log(IntervalQ(5));
    const IntervalQ h2 = family == Family::Cn
                             ? IntervalQ(6) * log5 * IntervalQ(2 * k + 3)
                             : IntervalQ(6) * IntervalQ(2 * k + 3) * (IntervalQ(k) * log2_q() + log5);
    return main_bound(N, ex.curve, 6 * k + 9, h2, variant).upper_hhat;
  };
  long k0 = 2;
  for (;; ++k0) {
    const IntervalQ slope_needed = family == Family::Cn ? IntervalQ(2 * N) / IntervalQ(2 * k0 + 3)
                                                        : IntervalQ(N + 1) / IntervalQ(k0);
    if (slope.lo() >= slope_needed.hi() && envelope(k0).lo() > upper_at(k0).hi()) break;
    if (k0 > 100000) throw InternalError("crossover: envelope never dominates");
  }
  rep.certified_from = k0;
  // Explicit range: Cn needs m < k0; Dn needs every m with phi(m) < k0, and
  // phi(m) >= sqrt(m / 2) bounds those by 2 k0^2.
  const long last = family == Family::Cn ? k0 : 2 * k0 * k0;
  long last_failure = 0;
  for (long m = 1; m <= last; ++m) {
    CrossoverRow row;
    row.n = m;
    const long k = family == Family::Cn ? m : euler_phi(m);
    row.d1 = 2 * k;
    row.upper = upper_at(k);
    if (row.d1 > d2) {
      row.lambda = lambda_lower_bound(ex.curve, {}, row.d1, d2, ex.generator, ex.hhat_g, mode).lambda;
    } else {
      row.lambda = IntervalQ(0);
    }
    row.exceeds = row.lambda.lo() > row.upper.hi();
    if (!row.exceeds) last_failure = m;
    rep.table.push_back(row);
  }
  rep.index = last_failure + 1;
  return rep;
}

}  // namespace mde
