#include "torimass/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "torimass/identity.hpp"

namespace torimass {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

namespace {

using Q = Rational;

// Portable integer draw in [lo, hi]; std distributions differ between
// standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Vec<Q> random_slope(std::mt19937_64& rng, std::size_t n, long box, bool degenerate, const Vec<Q>& anchor) {
  Vec<Q> a(n);
  for (auto& x : a) x = draw(rng, -box, box);
  if (degenerate) {
    if (n == 1) {
      a = anchor;
    } else {
      a[n - 1] = anchor[n - 1];
    }
  }
  return a;
}

Q random_offset(std::mt19937_64& rng, long box) { return Q(draw(rng, -2 * box, 2 * box), 2); }

template <class S>
bool leq(const S& a, const S& b) {
  if constexpr (Arith<S>::kExact) {
    return a <= b;
  } else {
    return a <= b + 1e-9 * std::max(1.0, std::fabs(b));
  }
}

template <class S>
bool eq(const S& a, const S& b) {
  return leq(a, b) && leq(b, a);
}

template <class S>
std::string fmt(const S& v) {
  return Arith<S>::format(v);
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

template <class S>
PLConvexFunction<S> reference_function_t(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g) {
  const std::size_t n = f.dim();
  Vec<S> lo = f.pieces()[0].slope, hi = lo;
  for (const auto* h : {&f, &g}) {
    for (const auto& p : h->pieces()) {
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], p.slope[k]);
        hi[k] = std::max(hi[k], p.slope[k]);
      }
    }
  }
  std::vector<AffinePiece<S>> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    AffinePiece<S> c;
    c.slope.resize(n);
    for (std::size_t k = 0; k < n; ++k) c.slope[k] = (mask >> k) & 1 ? S(hi[k] + S(1)) : S(lo[k] - S(1));
    corners.push_back(std::move(c));
  }
  return PLConvexFunction<S>(n, std::move(corners));
}

bool comparable(SingularityOrder o) {
  return o == SingularityOrder::kLessSingular || o == SingularityOrder::kEquivalent;
}

template <class S>
S restricted(const AtomicMeasure<S>& mu, const PLConvexFunction<S>& f, const PLConvexFunction<S>& g,
             RestrictMode mode = RestrictMode::kStrictBelow) {
  return restrict_measure(mu, f, g, mode).total();
}

std::string eps_tag(const Q& eps) {
  std::string s = format_rational(eps);
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

}  // namespace

ComparablePair generate_comparable_pair(std::size_t n, std::size_t k_f, std::size_t k_g, std::uint64_t seed,
                                        const GeneratorOptions& options) {
  if (n < 1 || n > 3) throw InvalidInput("generate_comparable_pair: n must be 1, 2 or 3");
  if (k_g < 1 || k_f < k_g) throw InvalidInput("generate_comparable_pair: need 1 <= k_g <= k_f");
  std::mt19937_64 rng(seed);
  Vec<Q> anchor(n);
  for (auto& x : anchor) x = draw(rng, -options.slope_box, options.slope_box);

  std::vector<AffinePiece<Q>> g_pieces, f_pieces;
  for (std::size_t i = 0; i < k_g; ++i) {
    AffinePiece<Q> p{random_slope(rng, n, options.slope_box, options.degenerate, anchor),
                     random_offset(rng, options.offset_box)};
    f_pieces.push_back({p.slope, random_offset(rng, options.offset_box)});
    g_pieces.push_back(std::move(p));
  }
  for (std::size_t i = k_g; i < k_f; ++i)
    f_pieces.push_back({random_slope(rng, n, options.slope_box + 2, options.degenerate, anchor),
                        random_offset(rng, options.offset_box)});

  ComparablePair pair{PLConvexFunction<Q>(n, std::move(f_pieces)), PLConvexFunction<Q>(n, std::move(g_pieces)),
                      SingularityOrder::kEquivalent};
  pair.order = compare_singularity(pair.f, pair.g);
  if (!comparable(pair.order)) throw InternalError("generate_comparable_pair: produced an incomparable pair");
  return pair;
}

DominationTriple generate_domination_triple(std::size_t n, std::uint64_t seed, bool raw) {
  if (n < 1 || n > 3) throw InvalidInput("generate_domination_triple: n must be 1, 2 or 3");
  std::mt19937_64 rng(seed);
  auto random_fn = [&](std::size_t pieces) {
    std::vector<AffinePiece<Q>> out;
    for (std::size_t i = 0; i < pieces; ++i) out.push_back({random_slope(rng, n, 2, false, {}), random_offset(rng, 3)});
    return out;
  };
  auto psi_pieces = random_fn(static_cast<std::size_t>(draw(rng, 2, 4)));
  auto rho_pieces = random_fn(static_cast<std::size_t>(draw(rng, 2, 4)));
  std::vector<AffinePiece<Q>> phi_pieces;
  for (const auto* src : {&psi_pieces, &rho_pieces})
    for (const auto& p : *src) phi_pieces.push_back({p.slope, random_offset(rng, 3)});
  // a large simplex of slopes keeps P_phi full-dimensional
  for (std::size_t k = 0; k <= n; ++k) {
    Vec<Q> a(n, Q(k == n ? -4 : 0));
    if (k < n) a[k] = 4;
    phi_pieces.push_back({a, random_offset(rng, 3)});
  }
  DominationTriple t{PLConvexFunction<Q>(n, std::move(phi_pieces)), PLConvexFunction<Q>(n, std::move(psi_pieces)),
                     PLConvexFunction<Q>(n, std::move(rho_pieces))};
  if (!raw) {
    const auto atoms = ma_measure(t.phi).atoms;
    if (!atoms.empty()) {
      Q c = t.psi(atoms[0].location) - t.phi(atoms[0].location);
      for (const auto& a : atoms) c = std::max(c, Q(t.psi(a.location) - t.phi(a.location)));
      t.psi = shift(t.psi, Q(-c));
    }
  }
  return t;
}

PLConvexFunction<Rational> reference_function(const PLConvexFunction<Rational>& f,
                                              const PLConvexFunction<Rational>& g) {
  return reference_function_t(f, g);
}

template <class S>
CaseResult monotonicity_case(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g) {
  CaseResult r;
  const auto order = compare_singularity(f, g);
  r.values.emplace_back("order", to_string(order));
  if (!comparable(order)) {
    r.reason = "precondition failed: f is not less singular than g";
    return r;
  }
  const S mf = total_mass(f), mg = total_mass(g);
  r.values.emplace_back("mass_f", fmt(mf));
  r.values.emplace_back("mass_g", fmt(mg));
  bool ok = leq(mg, mf);
  if (!ok) r.reason = "mass(f) < mass(g)";

  const auto u0 = reference_function_t(f, g);
  for (std::size_t n : {1, 2, 4, 8}) {
    const S a = moment_integral(u0, f, n).value, b = moment_integral(u0, g, n).value;
    r.values.emplace_back("moment_f_N" + std::to_string(n), fmt(a));
    r.values.emplace_back("moment_g_N" + std::to_string(n), fmt(b));
    if (!leq(b, a)) {
      ok = false;
      if (r.reason.empty()) r.reason = "moment inequality fails at N=" + std::to_string(n);
    }
  }
  const std::vector<std::size_t> ns{4, 8, 16, 32, 64};
  for (const auto& [name, fn] : {std::pair{"f", &f}, std::pair{"g", &g}}) {
    const auto lr = limit_check(u0, *fn, ns);
    double worst = 0.0;
    for (const auto& x : lr.ratios) worst = std::max(worst, x.ratio);
    r.values.emplace_back(std::string("limit_error_") + name + "_N64", fmt(lr.points.back().error));
    r.values.emplace_back(std::string("limit_worst_ratio_") + name, format_double(worst));
    if (!lr.pass) {
      ok = false;
      if (r.reason.empty()) r.reason = std::string("limit ratio above bound for ") + name;
    }
  }
  r.pass = ok;
  return r;
}

template <class S>
CaseResult comparison_case(const PLConvexFunction<S>& phi, const PLConvexFunction<S>& psi) {
  CaseResult r;
  const auto order = compare_singularity(phi, psi);
  r.values.emplace_back("order", to_string(order));
  if (!comparable(order)) {
    r.reason = "precondition failed: phi is not less singular than psi";
    return r;
  }
  const auto ma_phi = ma_measure(phi), ma_psi = ma_measure(psi);
  const S lhs = restricted(ma_psi, phi, psi), rhs = restricted(ma_phi, phi, psi);
  r.values.emplace_back("mass_psi_on_phi_lt_psi", fmt(lhs));
  r.values.emplace_back("mass_phi_on_phi_lt_psi", fmt(rhs));
  bool ok = leq(lhs, rhs);
  if (!ok) r.reason = "comparison inequality fails";

  const S total_phi = total_mass(phi);
  for (const Q& e : {Q(1), Q(1, 2), Q(1, 4)}) {
    const S eps = Arith<S>::from_rational(e);
    const auto psi_e = shift(psi, S(-eps));
    const auto phi_e = max_of(phi, psi_e);
    const S mass_e = total_mass(phi_e);
    const S chain_l = restricted(ma_psi, phi, psi_e);
    const S chain_r = restricted(ma_phi, phi, psi_e, RestrictMode::kBelowOrEqual);
    const S local = restricted(ma_measure(phi_e), phi, psi_e);
    const std::string tag = "_eps" + eps_tag(e);
    r.values.emplace_back("mass_max" + tag, fmt(mass_e));
    r.values.emplace_back("chain_lhs" + tag, fmt(chain_l));
    r.values.emplace_back("chain_rhs" + tag, fmt(chain_r));
    r.values.emplace_back("local_mass" + tag, fmt(local));
    const bool step_ok = eq(mass_e, total_phi) && leq(chain_l, chain_r) && eq(local, chain_l);
    if (!step_ok && r.reason.empty()) r.reason = "epsilon step fails at eps=" + format_rational(e);
    ok = ok && step_ok;
  }
  r.pass = ok;
  return r;
}

template <class S>
CaseResult domination_case(const PLConvexFunction<S>& phi, const PLConvexFunction<S>& psi,
                           const PLConvexFunction<S>& rho) {
  CaseResult r;
  const auto o_psi = compare_singularity(phi, psi), o_rho = compare_singularity(phi, rho);
  r.values.emplace_back("order_psi", to_string(o_psi));
  r.values.emplace_back("order_rho", to_string(o_rho));
  if (!comparable(o_psi) || !comparable(o_rho)) {
    r.reason = "precondition failed: phi is not less singular than psi and rho";
    return r;
  }
  const auto ma_phi = ma_measure(phi);
  const S hyp = restricted(ma_phi, phi, psi);
  r.values.emplace_back("mass_phi_on_phi_lt_psi", fmt(hyp));
  if (!ma_phi.empty() && !restrict_measure(ma_phi, phi, psi).empty()) {
    r.skipped = true;
    r.pass = true;
    r.reason = "hypothesis fails: MA(phi) charges {phi < psi}";
    return r;
  }
  const auto ma_rho = ma_measure(rho);
  const auto concl = restrict_measure(ma_rho, phi, psi);
  const auto sup = sup_difference(psi, phi);
  r.values.emplace_back("mass_rho_on_phi_lt_psi", fmt(concl.total()));
  r.values.emplace_back("sup_psi_minus_phi", sup ? fmt(*sup) : std::string("inf"));
  bool ok = concl.empty() && sup && leq(*sup, S(0));
  if (!ok) r.reason = "domination conclusion fails";

  for (const Q& e : {Q(1, 2), Q(1, 4)}) {
    const S eps = Arith<S>::from_rational(e);
    const auto w = combine(eps, psi, rho);
    S scale = 1;
    for (long k = 0; k < static_cast<long>(phi.dim()); ++k) scale *= eps;
    const S a = scale * restricted(ma_rho, phi, w);
    const S b = restricted(ma_measure(w), phi, w);
    const S c = restricted(ma_phi, phi, w);
    const std::string tag = "_eps" + eps_tag(e);
    r.values.emplace_back("scaled_rho_mass" + tag, fmt(a));
    r.values.emplace_back("mix_mass" + tag, fmt(b));
    r.values.emplace_back("phi_mass" + tag, fmt(c));
    const bool step_ok = leq(a, b) && leq(b, c);
    if (!step_ok && r.reason.empty()) r.reason = "epsilon chain fails at eps=" + format_rational(e);
    ok = ok && step_ok;
  }
  r.pass = ok;
  return r;
}

template <class S>
CaseResult keyprop_case(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n,
                        std::size_t samples, std::uint64_t seed, double tol) {
  CaseResult r;
  const auto k = keyprop_check(u, v, big_n, samples, seed, tol);
  r.values.emplace_back("N", std::to_string(big_n));
  r.values.emplace_back("lhs", format_double(k.lhs.value));
  r.values.emplace_back("rhs", fmt(k.rhs));
  r.values.emplace_back("tol", format_double(k.tol));
  r.values.emplace_back("abs_floor", format_double(k.abs_floor));
  r.values.emplace_back("normalization", k.normalization);
  r.values.emplace_back("samples", std::to_string(samples));
  r.values.emplace_back("mc_seed", std::to_string(seed));
  r.values.emplace_back("error_bound", format_double(k.lhs.error_bound));
  const auto& d = *k.lhs.diagnostics;
  r.values.emplace_back("kinks_skipped", std::to_string(d.kinks_skipped));
  r.values.emplace_back("max_interior_y", format_double(d.max_interior_y));
  r.values.emplace_back("support_bound", format_double(d.support_bound));
  r.values.emplace_back("support_ok", fmt_bool(d.support_ok));
  r.pass = k.pass && d.support_ok;
  if (!k.pass) r.reason = "gradient-image mass differs from the moment integral";
  else if (!d.support_ok) r.reason = "interior sample outside the support bound";
  return r;
}

template <class S>
CaseResult limit_case(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v) {
  CaseResult r;
  const auto lr = limit_check(u, v, {4, 8, 16, 32, 64});
  for (const auto& p : lr.points) r.values.emplace_back("error_N" + std::to_string(p.big_n), fmt(p.error));
  for (const auto& x : lr.ratios) r.values.emplace_back("ratio_N" + std::to_string(x.big_n), format_double(x.ratio));
  r.pass = lr.pass;
  if (!r.pass) r.reason = "error(2N) > 0.6 error(N)";
  return r;
}

namespace {

std::vector<CaseResult> run_cases(std::size_t count, std::size_t jobs, std::uint64_t seed,
                                  const std::function<CaseResult(std::size_t, std::uint64_t)>& fn) {
  std::vector<CaseResult> results(count);
  auto one = [&](std::size_t i) {
    const std::uint64_t s = case_seed(seed, i);
    CaseResult r;
    try {
      r = fn(i, s);
    } catch (const std::exception& e) {
      r = CaseResult{};
      r.reason = std::string("error: ") + e.what();
    }
    r.index = i;
    r.seed = s;
    results[i] = std::move(r);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) one(i);
    });
  for (auto& th : pool) th.join();
  return results;
}

VerificationReport make_report(const std::string& suite, const SuiteConfig& config) {
  VerificationReport r;
  r.suite = suite;
  r.profile = config.profile;
  r.seed = config.seed;
  return r;
}

template <class S>
PLConvexFunction<S> as(const PLConvexFunction<Q>& f) {
  return convert_function<S>(f);
}

std::string pair_label(std::size_t n, std::size_t k_f, std::size_t k_g, bool degenerate) {
  std::string s = "n=" + std::to_string(n) + " kf=" + std::to_string(k_f) + " kg=" + std::to_string(k_g);
  if (degenerate) s += " degenerate";
  return s;
}

template <class S>
VerificationReport monotonicity_suite(const SuiteConfig& config) {
  VerificationReport rep = make_report("monotonicity", config);
  const std::size_t count = config.cases ? config.cases : default_case_count("monotonicity");
  rep.cases = run_cases(count, config.jobs, config.seed, [](std::size_t i, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const std::size_t n = 1 + i % 3;
    const auto k_g = static_cast<std::size_t>(draw(rng, 2, 5));
    const auto k_f = k_g + static_cast<std::size_t>(draw(rng, 0, 3));
    GeneratorOptions opt;
    opt.degenerate = i % 10 == 9;
    const auto pair = generate_comparable_pair(n, k_f, k_g, rng(), opt);
    CaseResult r = monotonicity_case(as<S>(pair.f), as<S>(pair.g));
    r.label = pair_label(n, k_f, k_g, opt.degenerate);
    return r;
  });
  return rep;
}

template <class S>
VerificationReport comparison_suite(const SuiteConfig& config) {
  VerificationReport rep = make_report("comparison", config);
  const std::size_t count = config.cases ? config.cases : default_case_count("comparison");
  rep.cases = run_cases(count, config.jobs, config.seed, [](std::size_t i, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const std::size_t n = 1 + i % 3;
    const auto k_g = static_cast<std::size_t>(draw(rng, 2, 4));
    const auto k_f = k_g + static_cast<std::size_t>(draw(rng, 0, 3));
    const auto pair = generate_comparable_pair(n, k_f, k_g, rng());
    CaseResult r = comparison_case(as<S>(pair.f), as<S>(pair.g));
    r.label = pair_label(n, k_f, k_g, false);
    return r;
  });
  return rep;
}

template <class S>
VerificationReport domination_suite(const SuiteConfig& config) {
  VerificationReport rep = make_report("domination", config);
  const std::size_t count = config.cases ? config.cases : default_case_count("domination");
  rep.cases = run_cases(count, config.jobs, config.seed, [](std::size_t i, std::uint64_t s) {
    const std::size_t n = 1 + i % 3;
    const bool raw = i % 4 == 3;
    const auto t = generate_domination_triple(n, s, raw);
    CaseResult r = domination_case(as<S>(t.phi), as<S>(t.psi), as<S>(t.rho));
    r.label = "n=" + std::to_string(n) + (raw ? " raw" : " shifted");
    return r;
  });
  return rep;
}

struct KeypropFixture {
  std::string label;
  PLConvexFunction<Q> u, v;
  std::size_t big_n;
};

PLConvexFunction<Q> fn1(std::initializer_list<std::pair<long, long>> pieces) {
  std::vector<AffinePiece<Q>> out;
  for (const auto& [a, b] : pieces) out.push_back({Vec<Q>{Q(a)}, Q(b)});
  return PLConvexFunction<Q>(1, std::move(out));
}

std::vector<KeypropFixture> keyprop_fixtures() {
  const auto abs_x = fn1({{1, 0}, {-1, 0}});
  const auto relu = fn1({{0, 0}, {1, 0}});
  auto fn2 = [](std::initializer_list<std::pair<long, long>> slopes) {
    std::vector<AffinePiece<Q>> out;
    for (const auto& [a, b] : slopes) out.push_back({Vec<Q>{Q(a), Q(b)}, Q(0)});
    return PLConvexFunction<Q>(2, std::move(out));
  };
  const auto square = fn2({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto triangle = fn2({{0, 0}, {1, 0}, {0, 1}});
  return {{"P_u=[-1,1] P_v=[0,1] N=1", abs_x, relu, 1},
          {"u=v=|x| N=1", abs_x, abs_x, 1},
          {"u=v=|x| N=2", abs_x, abs_x, 2},
          {"P_u=square P_v=triangle N=1", square, triangle, 1},
          {"P_u=[-1,1] P_v=[0,1] N=3", abs_x, relu, 3}};
}

template <class S>
VerificationReport keyprop_suite(const SuiteConfig& config) {
  VerificationReport rep = make_report("keyprop", config);
  const auto fixtures = keyprop_fixtures();
  const std::size_t count = config.cases ? config.cases : default_case_count("keyprop");
  rep.cases = run_cases(count, config.jobs, config.seed, [&](std::size_t i, std::uint64_t s) {
    if (i < fixtures.size()) {
      const auto& fx = fixtures[i];
      CaseResult r = keyprop_case(as<S>(fx.u), as<S>(fx.v), fx.big_n, config.samples, s, config.tol);
      r.label = fx.label;
      return r;
    }
    // seeded extras with n + N <= 3
    std::mt19937_64 rng(s);
    const std::size_t n = 1 + i % 2, big_n = n == 1 ? 1 + i % 2 : 1;
    const auto pair = generate_comparable_pair(n, 4, 3, rng(), GeneratorOptions{2, 2, false});
    CaseResult r = keyprop_case(as<S>(pair.f), as<S>(pair.g), big_n, config.samples, s, config.tol);
    r.label = "seeded n=" + std::to_string(n) + " N=" + std::to_string(big_n);
    return r;
  });
  return rep;
}

template <class S>
VerificationReport limit_suite(const SuiteConfig& config) {
  VerificationReport rep = make_report("limit", config);
  const std::size_t count = config.cases ? config.cases : default_case_count("limit");
  rep.cases = run_cases(count, config.jobs, config.seed, [](std::size_t i, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const std::size_t n = 1 + i % 3;
    const auto k_g = static_cast<std::size_t>(draw(rng, 2, 5));
    const auto k_f = k_g + static_cast<std::size_t>(draw(rng, 1, 3));
    const auto pair = generate_comparable_pair(n, k_f, k_g, rng());
    CaseResult r = limit_case(as<S>(pair.f), as<S>(pair.g));
    r.label = pair_label(n, k_f, k_g, false);
    return r;
  });
  return rep;
}

template <template <class> class Suite>
VerificationReport dispatch(const SuiteConfig& config) {
  return config.profile == Profile::kRational ? Suite<Q>::run(config) : Suite<double>::run(config);
}

#define TORIMASS_SUITE_ADAPTER(name)                                             \
  template <class S>                                                             \
  struct name##_adapter {                                                        \
    static VerificationReport run(const SuiteConfig& c) { return name##_suite<S>(c); } \
  };
TORIMASS_SUITE_ADAPTER(monotonicity)
TORIMASS_SUITE_ADAPTER(comparison)
TORIMASS_SUITE_ADAPTER(domination)
TORIMASS_SUITE_ADAPTER(keyprop)
TORIMASS_SUITE_ADAPTER(limit)
#undef TORIMASS_SUITE_ADAPTER

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass && !c.skipped; }));
}

std::size_t VerificationReport::failed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

std::size_t VerificationReport::skipped() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.skipped; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"monotonicity", "keyprop", "comparison", "domination", "limit"};
  return names;
}

std::size_t default_case_count(const std::string& suite) {
  if (suite == "monotonicity") return 300;
  if (suite == "keyprop") return 5;
  if (suite == "comparison") return 100;
  if (suite == "domination") return 50;
  if (suite == "limit") return 20;
  throw InvalidInput("unknown suite '" + suite + "'");
}

VerificationReport verify_monotonicity(const SuiteConfig& c) { return dispatch<monotonicity_adapter>(c); }
VerificationReport verify_keyprop(const SuiteConfig& c) { return dispatch<keyprop_adapter>(c); }
VerificationReport verify_comparison_principle(const SuiteConfig& c) { return dispatch<comparison_adapter>(c); }
VerificationReport verify_domination_principle(const SuiteConfig& c) { return dispatch<domination_adapter>(c); }
VerificationReport verify_limit(const SuiteConfig& c) { return dispatch<limit_adapter>(c); }

VerificationReport run_suite(const std::string& suite, const SuiteConfig& config) {
  if (suite == "monotonicity") return verify_monotonicity(config);
  if (suite == "keyprop") return verify_keyprop(config);
  if (suite == "comparison") return verify_comparison_principle(config);
  if (suite == "domination") return verify_domination_principle(config);
  if (suite == "limit") return verify_limit(config);
  throw InvalidInput("unknown suite '" + suite + "'");
}

Json report_body(const VerificationReport& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json values = Json::object();
    for (const auto& [k, v] : c.values) values[k] = v;
    cases.push_back(Json{{"index", c.index},
                         {"seed", c.seed},
                         {"label", c.label},
                         {"pass", c.pass},
                         {"skipped", c.skipped},
                         {"reason", c.reason},
                         {"values", values}});
  }
  const std::size_t total = report.cases.size();
  const double skipped_fraction = total ? static_cast<double>(report.skipped()) / static_cast<double>(total) : 0.0;
  return Json{{"suite", report.suite},
              {"profile", to_string(report.profile)},
              {"seed", report.seed},
              {"version", report.version},
              {"normalization", "toric-lebesgue"},
              {"pass", report.pass()},
              {"summary",
               {{"cases", total},
                {"passed", report.passed()},
                {"failed", report.failed()},
                {"skipped", report.skipped()},
                {"skipped_fraction", format_double(skipped_fraction)}}},
              {"cases", cases}};
}

VerificationReport report_from_body(const Json& body) {
  try {
    VerificationReport r;
    r.suite = body.at("suite").get<std::string>();
    r.profile = parse_profile(body.at("profile").get<std::string>());
    r.seed = body.at("seed").get<std::uint64_t>();
    r.version = body.at("version").get<std::string>();
    for (const auto& c : body.at("cases")) {
      CaseResult cr;
      cr.index = c.at("index").get<std::size_t>();
      cr.seed = c.at("seed").get<std::uint64_t>();
      cr.label = c.at("label").get<std::string>();
      cr.pass = c.at("pass").get<bool>();
      cr.skipped = c.at("skipped").get<bool>();
      cr.reason = c.at("reason").get<std::string>();
      for (const auto& [k, v] : c.at("values").items()) cr.values.emplace_back(k, v.get<std::string>());
      r.cases.push_back(std::move(cr));
    }
    return r;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
}

Json report_document(const std::vector<VerificationReport>& reports, const Json& metadata) {
  Json suites = Json::array();
  bool pass = true;
  for (const auto& r : reports) {
    suites.push_back(report_body(r));
    pass = pass && r.pass();
  }
  return Json{{"schema", kSchema}, {"pass", pass}, {"suites", suites}, {"metadata", metadata}};
}

std::vector<VerificationReport> reports_from_document(const Json& document) {
  if (!document.is_object() || document.value("schema", std::string()) != kSchema)
    throw InvalidInput(std::string("report document must carry \"schema\": \"") + kSchema + "\"");
  if (!document.contains("suites") || !document["suites"].is_array()) throw InvalidInput("report document lacks suites");
  std::vector<VerificationReport> out;
  for (const auto& s : document["suites"]) out.push_back(report_from_body(s));
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << "suite,profile,seed,case,case_seed,label,pass,skipped,key,value\n";
  for (const auto& r : reports) {
    for (const auto& c : r.cases) {
      std::vector<std::pair<std::string, std::string>> rows = c.values;
      if (!c.reason.empty()) rows.emplace_back("reason", c.reason);
      if (rows.empty()) rows.emplace_back("", "");
      for (const auto& [k, v] : rows) {
        out << csv_field(r.suite) << ',' << to_string(r.profile) << ',' << r.seed << ',' << c.index << ',' << c.seed
            << ',' << csv_field(c.label) << ',' << (c.pass ? "true" : "false") << ','
            << (c.skipped ? "true" : "false") << ',' << csv_field(k) << ',' << csv_field(v) << '\n';
      }
    }
  }
  return out.str();
}

#define TORIMASS_HARNESS_INSTANTIATE(S)                                                                       \
  template CaseResult monotonicity_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&);              \
  template CaseResult comparison_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&);                \
  template CaseResult domination_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&,                 \
                                      const PLConvexFunction<S>&);                                            \
  template CaseResult keyprop_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&, std::size_t,       \
                                   std::size_t, std::uint64_t, double);                                       \
  template CaseResult limit_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&);

TORIMASS_HARNESS_INSTANTIATE(Rational)
TORIMASS_HARNESS_INSTANTIATE(double)

}  // namespace torimass
