#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mde/bounds.hpp"
#include "mde/gon.hpp"
#include "mde/sieve.hpp"

using nlohmann::json;
using namespace mde;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIncomplete = 2;

struct Output {
  std::string path;
  std::string format = "json";
  int verbose = 0;

  void write(const json& j) const {
    const std::string text = format == "pretty" ? j.dump(2) : j.dump();
    if (path.empty()) {
      std::cout << text << '\n';
      return;
    }
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open output file " + path);
    out << text << '\n';
  }
  void log(const std::string& msg) const {
    if (verbose > 0) std::cerr << "[mde] " << msg << '\n';
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

BigInt parse_int(const std::string& s) {
  BigInt z;
  if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) {
    throw DomainError("not an integer: '" + s + "'");
  }
  return z;
}

// Exact value of a decimal such as -48.28 or 1.5e3.
Rational parse_decimal(const std::string& s) {
  std::string mant = s;
  long exp10 = 0;
  const auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mant = s.substr(0, e);
    exp10 = std::stol(s.substr(e + 1));
  }
  const auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  Rational q(parse_int(mant));
  const BigInt p = pow_int(10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0) {
    q *= p;
  } else {
    q /= p;
  }
  q.canonicalize();
  return q;
}

// Numbers outside the double range are written as decimal strings.
json quad_json(const Quad& q) {
  const double d = static_cast<double>(q);
  if (std::isfinite(d)) return d;
  return q.str(20, std::ios_base::scientific);
}

json interval_json(const IntervalQ& x) {
  const bool finite = std::isfinite(x.lower()) && std::isfinite(x.upper());
  return {{"lower", finite ? json(x.lower()) : quad_json(x.lo())},
          {"upper", finite ? json(x.upper()) : quad_json(x.hi())},
          {"value", quad_json(x.mid())}};
}

json constants_json(const ConstantSet& s) {
  json a = json::array();
  for (const auto& [name, value] : s.values) {
    json item = interval_json(value);
    item["name"] = name;
    a.push_back(item);
  }
  return a;
}

Curve make_curve(const std::string& text, const std::string& cm) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw DomainError("--curve expects A,B");
  BigInt A = parse_int(parts[0]), B = parse_int(parts[1]);
  if (cm == "auto") return Curve::with_detected_cm(std::move(A), std::move(B));
  if (cm == "none") return Curve(std::move(A), std::move(B));
  const auto df = split(cm, ',');
  if (df.size() != 2) throw DomainError("--cm expects auto, none or D,f");
  return Curve(std::move(A), std::move(B), OrderData{std::stol(df[0]), std::stol(df[1])});
}

json curve_json(const Curve& E) {
  json j{{"A", to_string(E.A())}, {"B", to_string(E.B())}, {"discriminant", to_string(E.discriminant())},
         {"j", to_string(E.j())}};
  if (E.cm()) {
    j["cm"] = {{"D", E.cm()->D}, {"f", E.cm()->f}};
  } else {
    j["cm"] = nullptr;
  }
  return j;
}

// Ring elements are written "a" over Z and "u" or "u:v" (u + v zeta) over Z[zeta].
template <class R>
R parse_elem(const std::string& s) {
  if constexpr (Ring<R>::is_eisenstein) {
    const auto uv = split(s, ':');
    if (uv.size() == 1) return EisensteinInt(parse_int(uv[0]));
    if (uv.size() == 2) return EisensteinInt(parse_int(uv[0]), parse_int(uv[1]));
    throw DomainError("bad Eisenstein integer: '" + s + "'");
  } else {
    return parse_int(s);
  }
}

template <class R>
json elem_json(const R& z) {
  if constexpr (Ring<R>::is_eisenstein) {
    return json::array({to_string(z.u()), to_string(z.v())});
  } else {
    return to_string(z);
  }
}

template <class R>
json vec_json(const Vec<R>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(elem_json(v(i)));
  return a;
}

template <class R>
Vec<R> parse_vec(const std::string& s) {
  const auto items = split(s, ',');
  Vec<R> v(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_elem<R>(items[i]);
  return v;
}

template <class R>
Mat<R> parse_mat(const std::string& s) {
  const auto rows = split(s, ';');
  std::vector<Vec<R>> vs;
  for (const auto& r : rows) vs.push_back(parse_vec<R>(r));
  if (vs.empty()) throw DomainError("empty matrix");
  Mat<R> M(static_cast<Eigen::Index>(vs.size()), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != M.cols()) throw DomainError("matrix rows have different lengths");
    M.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  }
  return M;
}

// Forms are ';'-separated, coefficients ','-separated, each "re" or "re:im".
std::vector<LinearForm> parse_forms(const std::string& s) {
  std::vector<LinearForm> out;
  for (const auto& row : split(s, ';')) {
    LinearForm L;
    for (const auto& c : split(row, ',')) {
      const auto ri = split(c, ':');
      if (ri.empty() || ri.size() > 2) throw DomainError("bad form coefficient: '" + c + "'");
      const Quad re(ri[0]);
      const Quad im(ri.size() == 2 ? ri[1] : std::string("0"));
      L.coeffs.emplace_back(re, im);
    }
    out.push_back(std::move(L));
  }
  return out;
}

// x_i - sqrt(p_i) x_N for the first N-1 primes.
std::vector<LinearForm> default_forms(long N) {
  const long primes[] = {2, 3, 5, 7, 11, 13};
  if (N < 2 || N > 7) throw DomainError("--N must be between 2 and 7");
  std::vector<LinearForm> out;
  for (long i = 0; i + 1 < N; ++i) {
    LinearForm L;
    L.coeffs.assign(static_cast<std::size_t>(N), ComplexQ(0));
    L.coeffs[static_cast<std::size_t>(i)] = ComplexQ(1);
    L.coeffs[static_cast<std::size_t>(N - 1)] = ComplexQ(-sqrt(Quad(primes[i])));
    out.push_back(std::move(L));
  }
  return out;
}

struct LatticeArgs {
  std::string ring = "eisenstein";
  long N = 2;
  std::string u;
  std::string basis;
  std::string forms;
  std::string T = "1";
  std::string kappa = "auto";
};

template <class R>
json lattice_search(const LatticeArgs& a) {
  const auto forms = a.forms.empty() ? default_forms(a.N) : parse_forms(a.forms);
  const Quad T(a.T);
  const Quad threshold = kappa_threshold<R>(a.N);
  const Quad kappa = a.kappa == "auto" ? threshold : Quad(a.kappa);
  const MinkowskiResult<R> r = minkowski_search<R>(forms, T, kappa);
  json checks = json::array();
  bool all = true;
  for (std::size_t i = 0; i < r.form_abs.size(); ++i) {
    const bool ok = r.form_abs[i] <= r.form_bound[i];
    all = all && ok;
    checks.push_back({{"form", i}, {"abs", static_cast<double>(r.form_abs[i])},
                      {"bound", static_cast<double>(r.form_bound[i])}, {"ok", ok}});
  }
  const bool ball_ok = Quad(r.norm_sq.get_str()) <= r.radius_sq;
  return {{"command", "lattice search"}, {"ring", a.ring}, {"N", a.N}, {"T", static_cast<double>(T)},
          {"kappa", static_cast<double>(kappa)}, {"kappa_threshold", static_cast<double>(threshold)},
          {"u", vec_json(r.u)}, {"norm_sq", to_string(r.norm_sq)},
          {"radius_sq", static_cast<double>(r.radius_sq)}, {"forms", checks},
          {"ball_ok", ball_ok}, {"verified", all && ball_ok}, {"enumerated", r.enumerated}};
}

template <class R>
json lattice_minima(const LatticeArgs& a) {
  if (a.basis.empty()) throw DomainError("--basis is required");
  const auto L = LatticeBasis<R>::from_rows(parse_mat<R>(a.basis));
  const MinimaResult<R> r = successive_minima(L);
  json minima = json::array(), minima_sq = json::array(), vectors = json::array();
  for (std::size_t i = 0; i < r.minima_sq.size(); ++i) {
    minima.push_back(std::sqrt(r.minima_sq[i].get_d()));
    minima_sq.push_back(to_string(r.minima_sq[i]));
    vectors.push_back(vec_json(r.vectors[i]));
  }
  return {{"command", "lattice minima"}, {"ring", a.ring}, {"rank", L.rank()}, {"dim", L.dim()},
          {"det", L.det()}, {"minima", minima}, {"minima_sq", minima_sq}, {"vectors", vectors},
          {"second_theorem", {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.second_theorem_holds()}}}};
}

template <class R>
json lattice_degree(const LatticeArgs& a) {
  if (a.u.empty()) throw DomainError("--u is required");
  const Vec<R> u = parse_vec<R>(a.u);
  if (u.size() != a.N) throw DomainError("--u must have N entries");
  return {{"command", "lattice degree"}, {"ring", a.ring}, {"N", a.N}, {"u", vec_json(u)},
          {"norm_sq", to_string(norm_sq(u))}, {"degree", to_string(subgroup_degree(u))}};
}

template <class R>
json run_lattice(const std::string& sub, const LatticeArgs& a) {
  if (sub == "search") return lattice_search<R>(a);
  if (sub == "minima") return lattice_minima<R>(a);
  return lattice_degree<R>(a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit bounds and sieving for points of rank one on curves in E^2"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file, one [section] per command");

  Output out;
  app.add_option("--out", out.path, "Write the report to this file instead of stdout");
  app.add_option("--format", out.format, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
  app.add_flag("-v,--verbose", out.verbose, "Log progress to stderr");
  // Global options may also follow the command name.
  app.fallthrough();

  std::string curve = "0,2", cm = "auto", variant = "cm-sharp";
  long N = 2;

  auto* constants = app.add_subcommand("constants", "Evaluate the constants of one bound variant");
  constants->add_option("--curve", curve, "Coefficients A,B of y^2 = x^3 + A x + B");
  constants->add_option("--cm", cm, "auto, none or D,f");
  constants->add_option("--N", N, "Dimension of the ambient power E^N")->check(CLI::Range(2, 64));
  constants->add_option("--variant", variant, "cm-sharp, noncm-sharp or simplified");

  std::string family;
  long n = 0, deg = 0;
  std::string h2;
  auto* bound = app.add_subcommand("bound", "Height bound for a family member or explicit curve data");
  bound->add_option("--family", family, "cn or dn");
  bound->add_option("--n", n, "Family index")->check(CLI::PositiveNumber);
  bound->add_option("--deg", deg, "Degree of the curve in E^N")->check(CLI::PositiveNumber);
  bound->add_option("--h2", h2, "Height h2 of the curve (decimal)");
  bound->add_option("--N", N, "Dimension of the ambient power E^N")->check(CLI::Range(2, 64));
  bound->add_option("--curve", curve, "Coefficients A,B");
  bound->add_option("--cm", cm, "auto, none or D,f");
  bound->add_option("--variant", variant, "cm-sharp, noncm-sharp or simplified");

  std::string lambda_mode = "paper-faithful";
  auto* cross = app.add_subcommand("crossover", "Index from which only integral points remain");
  cross->add_option("--family", family, "cn or dn")->required();
  cross->add_option("--lambda-mode", lambda_mode, "paper-faithful or standard-splitting");
  cross->add_option("--variant", variant, "cm-sharp, noncm-sharp or simplified");

  SieveOptions so;
  std::string mode = "norm-ball";
  double max_grid_mib = 512;
  double Ma = 0, Mb = 0;
  bool no_timing = false;
  auto* sieve = app.add_subcommand("sieve", "Sieve and verify the points of C_n or D_n");
  sieve->add_option("--family", family, "cn or dn")->required();
  sieve->add_option("--n", n, "Family index")->required()->check(CLI::PositiveNumber);
  sieve->add_option("--mode", mode, "norm-ball or paper-faithful");
  sieve->add_option("--threads", so.threads, "Worker threads")->envname("MDE_THREADS")->check(CLI::Range(1, 1024));
  sieve->add_option("--stall", so.stall, "Stop after this many primes without eliminations")
      ->check(CLI::PositiveNumber);
  sieve->add_option("--prime-cap", so.prime_cap, "Maximum number of primes")->check(CLI::PositiveNumber);
  sieve->add_option("--first-prime", so.first_prime, "Start at the first prime = 1 mod 3 from here");
  sieve->add_option("--max-grid-mib", max_grid_mib, "Memory cap for the candidate bitmap");
  sieve->add_option("--max-survivors", so.max_survivors, "Verify survivors only up to this count");
  sieve->add_option("--verify-norm-cap", so.verify_norm_cap, "Largest coefficient norm verified exactly");
  sieve->add_option("--Ma", Ma, "Override the bound on |a|");
  sieve->add_option("--Mb", Mb, "Override the bound on |b|");
  sieve->add_flag("--no-timing", no_timing, "Omit wall_ms from the report");

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "Geometry of numbers over Z or Z[zeta]");
  lattice->require_subcommand(1);
  auto add_lattice_common = [&](CLI::App* c) {
    c->add_option("--ring", la.ring, "integer or eisenstein")->check(CLI::IsMember({"integer", "eisenstein"}));
  };
  auto* search = lattice->add_subcommand("search", "Minkowski search for a vector small under given forms");
  search->add_option("--N", la.N, "Number of variables")->check(CLI::Range(2, 7));
  search->add_option("--T", la.T, "Ball parameter T >= 1");
  search->add_option("--kappa", la.kappa, "auto or a value above the threshold");
  search->add_option("--forms", la.forms, "Forms 'c,c;c,c', coefficients re or re:im");
  add_lattice_common(search);
  auto* minima = lattice->add_subcommand("minima", "Successive minima of a lattice of rank <= 3");
  minima->add_option("--basis", la.basis, "Rows 'a,b;c,d', Eisenstein entries u or u:v")->required();
  add_lattice_common(minima);
  auto* degree = lattice->add_subcommand("degree", "Degree bound of the subgroup orthogonal to u");
  degree->add_option("--u", la.u, "Entries 'a,b', Eisenstein entries u or u:v")->required();
  degree->add_option("--N", la.N, "Length of u")->check(CLI::Range(1, 64));
  add_lattice_common(degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*constants) {
      const Curve E = make_curve(curve, cm);
      const Variant v = parse_variant(variant);
      if (v == Variant::CmSharp && !E.cm()) throw DomainError("cm-sharp needs a curve with CM");
      const ConstantSet s = constants_for(v, static_cast<int>(N), E);
      out.write({{"command", "constants"}, {"curve", curve_json(E)}, {"N", N}, {"variant", variant},
                 {"constants", constants_json(s)}});
      return kExitOk;
    }

    if (*bound) {
      const Variant v = parse_variant(variant);
      json j{{"command", "bound"}, {"variant", variant}};
      HeightBoundReport r;
      if (!family.empty()) {
        if (n < 1) throw DomainError("--n is required with --family");
        const Family f = parse_family(family);
        const FamilyData fd = family_data(f, n);
        r = family_bound(f, n, v);
        j["family"] = family;
        j["n"] = n;
        j["effective_n"] = fd.effective_n;
        j["deg"] = fd.degree;
        j["h2C"] = interval_json(fd.h2_bound);
        j["N"] = 2;
        j["curve"] = curve_json(ExampleSetup::get().curve);
        j["Ma"] = r.Ma;
        j["Mb"] = r.Mb;
      } else {
        if (deg < 1 || h2.empty()) throw DomainError("give --family and --n, or --deg and --h2");
        const Curve E = make_curve(curve, cm);
        if (v == Variant::CmSharp && !E.cm()) throw DomainError("cm-sharp needs a curve with CM");
        const IntervalQ h2C = IntervalQ::from_rational(parse_decimal(h2));
        r = main_bound(static_cast<int>(N), E, deg, h2C, v);
        j["deg"] = deg;
        j["h2C"] = interval_json(h2C);
        j["N"] = N;
        j["curve"] = curve_json(E);
      }
      j["upper_h2"] = interval_json(r.upper_h2);
      j["upper_hhat"] = interval_json(r.upper_hhat);
      j["constants"] = constants_json(r.constants);
      out.write(j);
      return kExitOk;
    }

    if (*cross) {
      const CrossoverReport r = crossover(parse_family(family), parse_lambda_mode(lambda_mode), parse_variant(variant));
      json table = json::array();
      for (const auto& row : r.table) {
        table.push_back({{"n", row.n}, {"d1", row.d1}, {"lambda", interval_json(row.lambda)},
                         {"upper", interval_json(row.upper)}, {"exceeds", row.exceeds}});
      }
      out.write({{"command", "crossover"}, {"family", family}, {"lambda_mode", lambda_mode},
                 {"variant", variant}, {"index", r.index}, {"smallest_ell", r.smallest_ell},
                 {"certified_from", r.certified_from}, {"table", table}});
      return kExitOk;
    }

    if (*sieve) {
      const Family f = parse_family(family);
      so.mode = parse_grid_mode(mode);
      so.max_grid_bits = static_cast<std::uint64_t>(max_grid_mib * 8.0 * 1024 * 1024);
      if (Ma > 0) so.Ma = Ma;
      if (Mb > 0) so.Mb = Mb;
      out.log("sieving " + family + std::to_string(n) + " in " + mode + " mode with " +
              std::to_string(so.threads) + " threads");
      SieveReport r;
      try {
        r = run_sieve(f, n, so);
      } catch (const DomainError& e) {
        // Resource limits: report what is known and flag the run as incomplete.
        out.write({{"command", "sieve"}, {"family", family}, {"n", n}, {"mode", mode},
                   {"status", "incomplete"}, {"error", e.what()}});
        std::cerr << "mde: " << e.what() << '\n';
        return kExitIncomplete;
      }
      out.log("used " + std::to_string(r.primes.size()) + " primes, " + std::to_string(r.survivors.size()) +
              " survivors, " + std::to_string(r.solutions.size()) + " solutions");
      json j = to_json(r, !no_timing);
      j["command"] = "sieve";
      out.write(j);
      return r.complete ? kExitOk : kExitIncomplete;
    }

    if (*lattice) {
      std::string sub = *search ? "search" : *minima ? "minima" : "degree";
      const json j = la.ring == "integer" ? run_lattice<BigInt>(sub, la) : run_lattice<EisensteinInt>(sub, la);
      out.write(j);
      return kExitOk;
    }
  } catch (const DomainError& e) {
    std::cerr << "mde: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mde: internal error: " << e.what() << '\n';
    return kExitIncomplete;
  }
  return kExitUsage;
}
