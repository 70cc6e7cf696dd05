#include "mde/sieve.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <thread>

namespace mde {

namespace {

// Runs body(lo, hi) on contiguous chunks of [0, n).
template <class Body>
void parallel_for(std::uint64_t n, unsigned threads, Body body) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    body(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min(n, t * chunk);
    const std::uint64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

std::uint64_t mod_n(long a, std::uint64_t n) {
  const long m = static_cast<long>(n);
  const long r = a % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

template <class F>
F horner(const std::vector<F>& coeffs, const F& x, const F& zero) {
  F acc = zero;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<BigInt> poly_divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw InternalError("cyclotomic: inexact division");
  }
  return q;
}

long norm_of(const CoeffPair& c) { return c.first * c.first - c.first * c.second + c.second * c.second; }

}  // namespace

std::string to_string(GridMode m) { return m == GridMode::PaperFaithful ? "paper-faithful" : "norm-ball"; }

GridMode parse_grid_mode(const std::string& s) {
  if (s == "paper-faithful") return GridMode::PaperFaithful;
  if (s == "norm-ball") return GridMode::NormBall;
  throw DomainError("unknown grid mode: " + s);
}

std::vector<BigInt> cyclotomic(long n) {
  if (n < 1) throw DomainError("cyclotomic: n must be positive");
  std::vector<BigInt> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) poly = poly_divide_exact(poly, cyclotomic(d));
  }
  return poly;
}

std::vector<BigInt> family_polynomial(Family family, long n) {
  if (n < 1) throw DomainError("family_polynomial: n must be positive");
  if (family == Family::Dn) return cyclotomic(n);
  std::vector<BigInt> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[static_cast<std::size_t>(n)] = 1;
  return poly;
}

bool is_canonical(const CoeffPair& c) { return c.second >= 1 || (c.second == 0 && c.first >= 1); }

std::uint64_t CandidateGrid::box_bits(double Ma, double Mb, GridMode mode) {
  if (mode == GridMode::PaperFaithful) {
    const auto a = static_cast<std::uint64_t>(std::floor(Ma));
    const auto b = static_cast<std::uint64_t>(std::floor(Mb));
    return (2 * a + 1) * (b + 1);
  }
  const auto V = static_cast<std::uint64_t>(std::floor(2 * Ma / std::sqrt(3.0))) + 1;
  return (2 * V + 1) * (V + 1);
}

CandidateGrid CandidateGrid::build(Family family, long n, double Ma, double Mb, GridMode mode,
                                   std::uint64_t max_bits) {
  if (!(Ma > 0) || !(Mb > 0)) throw DomainError("build_grid: bounds must be positive");
  if (n < 1) throw DomainError("build_grid: n must be positive");
  const std::uint64_t need = box_bits(Ma, Mb, mode);
  if (need > max_bits) {
    throw DomainError("build_grid: grid needs " + std::to_string(need) + " bits (" +
                      std::to_string(need / 8 / (1 << 20)) + " MiB), cap is " +
                      std::to_string(max_bits));
  }
  CandidateGrid g;
  g.family_ = family;
  g.n_ = n;
  g.mode_ = mode;
  g.Ma_ = static_cast<long>(std::floor(Ma));
  g.Mb_ = static_cast<long>(std::floor(Mb));
  long u_hi = 0, v_hi = 0;
  if (mode == GridMode::PaperFaithful) {
    u_hi = g.Ma_;
    v_hi = g.Mb_;
  } else {
    u_hi = v_hi = static_cast<long>(std::floor(2 * Ma / std::sqrt(3.0))) + 1;
  }
  g.u_lo_ = -u_hi;
  g.v_lo_ = 0;
  g.width_ = static_cast<std::uint64_t>(2 * u_hi + 1);
  g.height_ = static_cast<std::uint64_t>(v_hi + 1);
  g.bits_.assign((g.width_ * g.height_ + 63) / 64, 0);
  if (mode == GridMode::PaperFaithful) {
    for (long u = 1; u <= g.Ma_; ++u) g.set(u, 0);
    for (long v = 1; v <= g.Mb_; ++v) {
      for (long u = -g.Ma_; u <= g.Ma_; ++u) g.set(u, v);
    }
  } else {
    const long double r2 = static_cast<long double>(Ma) * Ma;
    for (long v = 0; v <= v_hi; ++v) {
      for (long u = -u_hi; u <= u_hi; ++u) {
        if (!is_canonical({u, v})) continue;
        if (static_cast<long double>(norm_of({u, v})) <= r2) g.set(u, v);
      }
    }
  }
  return g;
}

CandidateGrid CandidateGrid::from_pairs(Family family, long n, const std::vector<CoeffPair>& pairs) {
  if (n < 1) throw DomainError("from_pairs: n must be positive");
  CandidateGrid g;
  g.family_ = family;
  g.n_ = n;
  long u_lo = 0, u_hi = 0, v_hi = 0;
  for (const auto& c : pairs) {
    if (!is_canonical(c)) throw DomainError("from_pairs: pair outside the canonical region");
    u_lo = std::min(u_lo, c.first);
    u_hi = std::max(u_hi, c.first);
    v_hi = std::max(v_hi, c.second);
    g.Ma_ = std::max(g.Ma_, std::abs(c.first));
    g.Mb_ = std::max(g.Mb_, c.second);
  }
  g.u_lo_ = u_lo;
  g.v_lo_ = 0;
  g.width_ = static_cast<std::uint64_t>(u_hi - u_lo + 1);
  g.height_ = static_cast<std::uint64_t>(v_hi + 1);
  g.bits_.assign((g.width_ * g.height_ + 63) / 64, 0);
  for (const auto& c : pairs) g.set(c.first, c.second);
  return g;
}

void CandidateGrid::set(long u, long v) {
  const std::uint64_t i = index(u, v);
  std::uint64_t& word = bits_[i / 64];
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (!(word & mask)) {
    word |= mask;
    ++count_;
  }
}

bool CandidateGrid::contains(const CoeffPair& c) const {
  const long u = c.first, v = c.second;
  if (v < v_lo_ || u < u_lo_) return false;
  if (static_cast<std::uint64_t>(u - u_lo_) >= width_ || static_cast<std::uint64_t>(v - v_lo_) >= height_) {
    return false;
  }
  const std::uint64_t i = index(u, v);
  return (bits_[i / 64] >> (i % 64)) & 1;
}

std::vector<CoeffPair> CandidateGrid::members() const {
  std::vector<CoeffPair> out;
  out.reserve(count_);
  for (std::uint64_t w = 0; w < bits_.size(); ++w) {
    for (std::uint64_t m = bits_[w]; m; m &= m - 1) {
      const std::uint64_t i = w * 64 + static_cast<std::uint64_t>(std::countr_zero(m));
      out.emplace_back(u_lo_ + static_cast<long>(i % width_), v_lo_ + static_cast<long>(i / width_));
    }
  }
  return out;
}

bool residue_survives(const CurveModel<Fp>& Ep, const std::vector<Fp>& f, const Point<Fp>& Q) {
  if (Q.infinity) return true;
  const Fp y = horner(f, Q.x, Ep.zero);
  return is_cube_fp(y * y - Fp::from_int(2, Q.x.modulus()));
}

std::uint64_t sieve_prime(CandidateGrid& grid, std::uint64_t p, unsigned threads) {
  if (p < 7 || p % 3 != 1 || !is_prime(p)) {
    throw DomainError("sieve_prime: need a prime p = 1 mod 3 with p >= 7, got " + std::to_string(p));
  }
  threads = std::max(1u, threads);
  const ExampleSetup& ex = ExampleSetup::get();
  const CurveModel<Fp> Ep = reduce_mod_p(ex.curve, p);
  const std::uint64_t N = group_order(Ep);
  const Point<Fp> g = reduce_point(ex.generator, p);
  const Point<Fp> zg = cm_apply(Ep, cube_root_of_unity(p), g);
  std::vector<Fp> f;
  for (const BigInt& c : family_polynomial(grid.family_, grid.n_)) f.push_back(Fp::from_bigint(c, p));

  // Residue table over all N^2 classes, or direct evaluation when few members remain.
  const double table_cost = static_cast<double>(N) * static_cast<double>(N);
  const double direct_cost = static_cast<double>(grid.count_) * 4 * std::log2(static_cast<double>(N) + 1);
  const bool use_table = table_cost <= 6.7e7 && table_cost <= direct_cost;
  std::vector<std::uint8_t> keep;
  if (use_table) {
    keep.assign(N * N, 0);
    parallel_for(N, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t ub = lo; ub < hi; ++ub) {
        Point<Fp> Q = scalar_mul(Ep, static_cast<long>(ub), g);
        for (std::uint64_t vb = 0; vb < N; ++vb) {
          keep[ub * N + vb] = residue_survives(Ep, f, Q) ? 1 : 0;
          Q = add(Ep, Q, zg);
        }
      }
    });
  }

  std::vector<std::uint64_t> removed(threads, 0);
  const std::uint64_t words = grid.bits_.size();
  const std::uint64_t chunk = (words + threads - 1) / threads;
  auto scan = [&](unsigned t) {
    const std::uint64_t lo = std::min(words, t * chunk);
    const std::uint64_t hi = std::min(words, lo + chunk);
    for (std::uint64_t w = lo; w < hi; ++w) {
      std::uint64_t word = grid.bits_[w];
      for (std::uint64_t m = word; m; m &= m - 1) {
        const int b = std::countr_zero(m);
        const std::uint64_t i = w * 64 + static_cast<std::uint64_t>(b);
        const std::uint64_t um = mod_n(grid.u_lo_ + static_cast<long>(i % grid.width_), N);
        const std::uint64_t vm = mod_n(grid.v_lo_ + static_cast<long>(i / grid.width_), N);
        bool ok;
        if (use_table) {
          ok = keep[um * N + vm] != 0;
        } else {
          const Point<Fp> Q = add(Ep, scalar_mul(Ep, static_cast<long>(um), g),
                                  scalar_mul(Ep, static_cast<long>(vm), zg));
          ok = residue_survives(Ep, f, Q);
        }
        if (!ok) {
          word &= ~(std::uint64_t{1} << b);
          ++removed[t];
        }
      }
      grid.bits_[w] = word;
    }
  };
  if (threads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(scan, t);
    for (auto& th : pool) th.join();
  }
  std::uint64_t total = 0;
  for (auto r : removed) total += r;
  grid.count_ -= total;
  grid.primes_.push_back(p);
  grid.eliminated_.push_back(total);
  return total;
}

bool point_less(const PointK& P, const PointK& Q) {
  if (P.infinity || Q.infinity) return P.infinity && !Q.infinity;
  if (!(P.x == Q.x)) return P.x < Q.x;
  return P.y < Q.y;
}

bool solution_less(const SolutionPair& a, const SolutionPair& b) {
  if (point_less(a.first, b.first)) return true;
  if (point_less(b.first, a.first)) return false;
  return point_less(a.second, b.second);
}

std::optional<std::vector<SolutionPair>> exact_verify(const CoeffPair& c, Family family, long n) {
  if (!is_canonical(c)) throw DomainError("exact_verify: pair outside the canonical region");
  const ExampleSetup& ex = ExampleSetup::get();
  const CurveModel<KElement> Ek = model_k(ex.curve);
  const PointK P1 =
      eisenstein_mul(Ek, KElement::zeta(), EisensteinInt(BigInt(c.first), BigInt(c.second)), to_k(ex.generator));
  if (P1.infinity) return std::vector<SolutionPair>{{PointK::at_infinity(), PointK::at_infinity()}};
  std::vector<KElement> f;
  for (const BigInt& a : family_polynomial(family, n)) f.emplace_back(Rational(a));
  const KElement y2 = horner(f, P1.x, KElement(0));
  const auto X = is_cube_in_K(y2 * y2 - KElement(2));
  if (!X) return std::nullopt;
  std::vector<SolutionPair> out;
  KElement x2 = *X;
  for (int k = 0; k < 3; ++k) {
    const PointK P2 = PointK::affine(x2, y2);
    if (!on_curve(Ek, P2)) throw InternalError("exact_verify: reconstructed point off the curve");
    out.emplace_back(P1, P2);
    if (X->is_zero()) break;
    x2 = x2 * KElement::zeta();
  }
  std::sort(out.begin(), out.end(), solution_less);
  return out;
}

std::vector<SolutionPair> assemble_solutions(const std::vector<SolutionPair>& verified) {
  std::vector<SolutionPair> out{{PointK::at_infinity(), PointK::at_infinity()}};
  for (const auto& s : verified) {
    out.push_back(s);
    out.emplace_back(neg(s.first), s.second);
  }
  std::sort(out.begin(), out.end(), solution_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SieveReport run_sieve(Family family, long n, const SieveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (n < 1) throw DomainError("run_sieve: n must be positive");
  SieveReport report;
  report.family = family;
  report.n = n;
  report.mode = options.mode;
  if (options.Ma && options.Mb) {
    report.Ma = *options.Ma;
    report.Mb = *options.Mb;
  } else {
    const HeightBoundReport hb = family_bound(family, n);
    report.Ma = options.Ma.value_or(hb.Ma);
    report.Mb = options.Mb.value_or(hb.Mb);
  }
  CandidateGrid grid =
      CandidateGrid::build(family, n, report.Ma, report.Mb, options.mode, options.max_grid_bits);
  report.grid_size = grid.size();

  std::uint64_t p = next_prime_congruent(std::max<std::uint64_t>(options.first_prime, 7) - 1, 1, 3);
  long idle = 0;
  for (long used = 0; !grid.empty() && idle < options.stall && used < options.prime_cap; ++used) {
    idle = sieve_prime(grid, p, options.threads) == 0 ? idle + 1 : 0;
    p = next_prime_congruent(p, 1, 3);
  }
  report.primes = grid.primes();
  report.eliminated = grid.eliminated();
  report.survivors = grid.members();

  std::vector<CoeffPair> todo;
  for (const auto& c : report.survivors) {
    const bool small = static_cast<std::uint64_t>(norm_of(c)) <= options.verify_norm_cap;
    if (report.survivors.size() <= options.max_survivors && small) {
      todo.push_back(c);
    } else {
      report.unverified.push_back(c);
    }
  }
  std::vector<std::optional<std::vector<SolutionPair>>> results(todo.size());
  parallel_for(todo.size(), options.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) results[i] = exact_verify(todo[i], family, n);
  });
  std::vector<SolutionPair> verified;
  for (const auto& r : results) {
    if (r) verified.insert(verified.end(), r->begin(), r->end());
  }
  report.solutions = assemble_solutions(verified);
  report.complete = report.unverified.empty();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json point_to_json(const PointK& P) {
  if (P.infinity) return "O";
  return {{"x", {to_string(P.x.a()), to_string(P.x.b())}}, {"y", {to_string(P.y.a()), to_string(P.y.b())}}};
}

nlohmann::json to_json(const SieveReport& r, bool include_timing) {
  nlohmann::json j;
  j["family"] = to_string(r.family);
  j["n"] = r.n;
  j["mode"] = to_string(r.mode);
  j["Ma"] = r.Ma;
  j["Mb"] = r.Mb;
  j["grid_size"] = r.grid_size;
  j["primes"] = r.primes;
  j["eliminated"] = r.eliminated;
  auto pairs = [](const std::vector<CoeffPair>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : v) a.push_back({c.first, c.second});
    return a;
  };
  j["survivors"] = pairs(r.survivors);
  j["unverified"] = pairs(r.unverified);
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : r.solutions) sols.push_back({point_to_json(s.first), point_to_json(s.second)});
  j["solutions"] = sols;
  j["status"] = r.complete ? "complete" : "incomplete";
  if (include_timing) j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace mde
