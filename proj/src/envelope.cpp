#include "torimass/envelope.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "torimass/hull.hpp"

namespace torimass {

Rational SimplexDomain::slab_volume(const Rational& t) const {
  Rational power = 1;
  for (std::size_t i = 0; i < n; ++i) power *= t;
  return power / factorial(static_cast<unsigned>(n));
}

std::string to_string(GradientRegion region) {
  switch (region) {
    case GradientRegion::kInterior:
      return "interior";
    case GradientRegion::kBoundary:
      return "boundary";
    case GradientRegion::kKink:
      return "kink";
  }
  return "?";
}

template <class S>
Vec<S> simplex_project(const Vec<S>& c) {
  if (c.empty()) throw InvalidInput("simplex_project: empty point");
  Vec<S> out(c.size());
  S positive_sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = c[i] > S(0) ? c[i] : S(0);
    positive_sum += out[i];
  }
  if (positive_sum <= S(1)) return out;

  // Project onto {sum x = 1, x >= 0}: x = max(c - lambda, 0).
  Vec<S> sorted = c;
  std::sort(sorted.begin(), sorted.end(), std::greater<S>());
  S cumulative = 0, lambda = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    S candidate = (cumulative - S(1)) / S(static_cast<long>(j + 1));
    if (sorted[j] - candidate > S(0)) lambda = candidate;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    S xi = c[i] - lambda;
    out[i] = xi > S(0) ? xi : S(0);
  }
  return out;
}

template <class S>
EnvelopeFunction<S>::EnvelopeFunction(PLConvexFunction<S> u, PLConvexFunction<S> v, std::size_t big_n)
    : u_(std::move(u)), v_(std::move(v)), big_n_(big_n) {
  if (u_.dim() != v_.dim()) throw DimensionMismatch("envelope: u and v have different dimensions");
  if (big_n_ == 0) throw InvalidInput("envelope: N must be positive");
}

namespace {

template <class S>
Vec<S> gap_vector(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y, S* u_at_p) {
  if (p.size() != e.n()) throw DimensionMismatch("envelope: p has wrong dimension");
  if (y.size() != e.big_n()) throw DimensionMismatch("envelope: y has wrong dimension");
  const S up = e.u()(p);
  const S d = e.v()(p) - up;
  Vec<S> c(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) c[i] = y[i] + d;
  if (u_at_p) *u_at_p = up;
  return c;
}

template <class S>
Vec<S> half(const Vec<S>& c) {
  Vec<S> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] / S(2);
  return out;
}

template <class S>
std::size_t active_piece(const PLConvexFunction<S>& f, const Vec<S>& p, bool* kink) {
  if (auto i = unique_active_piece(f, p)) return *i;
  *kink = true;
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.pieces().size(); ++i)
    if (f.pieces()[i](p) > f.pieces()[best](p)) best = i;
  return best;
}

}  // namespace

template <class S>
Vec<S> envelope_maximizer(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y) {
  return simplex_project(half(gap_vector(e, p, y, static_cast<S*>(nullptr))));
}

template <class S>
S envelope_eval(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y) {
  S up = 0;
  const Vec<S> c = gap_vector(e, p, y, &up);
  const Vec<S> x = simplex_project(half(c));
  return up + dot(x, c) - dot(x, x);
}

template <class S>
EnvelopeGradient<S> envelope_gradient(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y) {
  EnvelopeGradient<S> g;
  g.grad_y = envelope_maximizer(e, p, y);
  bool kink = false;
  const auto& au = e.u().pieces()[active_piece(e.u(), p, &kink)].slope;
  const auto& av = e.v().pieces()[active_piece(e.v(), p, &kink)].slope;
  S mass = 0;
  for (const auto& xi : g.grad_y) mass += xi;
  g.grad_p.resize(e.n());
  for (std::size_t k = 0; k < e.n(); ++k) g.grad_p[k] = (S(1) - mass) * au[k] + mass * av[k];
  if (kink) {
    g.region = GradientRegion::kKink;
  } else if (SimplexDomain{e.big_n()}.interior(g.grad_y)) {
    g.region = GradientRegion::kInterior;
  } else {
    g.region = GradientRegion::kBoundary;
  }
  return g;
}

template <class S>
SamplingBox default_sampling_box(const EnvelopeFunction<S>& e) {
  const std::size_t n = e.n();
  std::vector<Vec<S>> anchors;
  auto add_atoms = [&](const PLConvexFunction<S>& f) {
    for (const auto& a : ma_measure(f).atoms) anchors.push_back(a.location);
  };
  add_atoms(e.u());
  add_atoms(e.v());
  for (long k = 1; k < 8; ++k) add_atoms(combine(S(Arith<S>::from_rational(Rational(k, 8))), e.u(), e.v()));
  for (const auto* f : {&e.u(), &e.v()}) {
    const auto pruned = prune(*f);
    for (std::size_t i = 0; i < pruned.pieces().size(); ++i)
      if (auto w = piece_witness(pruned, i)) anchors.push_back(*w);
  }
  if (anchors.empty()) anchors.push_back(Vec<S>(n, S(0)));

  Box<S> box{anchors.front(), anchors.front()};
  for (const auto& a : anchors) {
    for (std::size_t k = 0; k < n; ++k) {
      box.lo[k] = std::min(box.lo[k], a[k]);
      box.hi[k] = std::max(box.hi[k], a[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    box.lo[k] -= S(2);
    box.hi[k] += S(2);
  }

  const auto c = sup_difference(e.u(), e.v(), std::optional<Box<S>>(box));
  const auto neg_min = sup_difference(e.v(), e.u(), std::optional<Box<S>>(box));
  if (!c || !neg_min) throw InternalError("sampling box: unbounded difference on a bounded box");

  SamplingBox out;
  out.p_lo = convert_vec<double>(box.lo);
  out.p_hi = convert_vec<double>(box.hi);
  out.sup_gap = convert_scalar<Rational>(*c);
  const S lower = std::max(S(0), *neg_min) + S(2);
  out.y_lo = -Arith<S>::to_double(lower);
  out.y_hi = Arith<S>::to_double(*c) + 2.0;
  return out;
}

template <class S>
MassEstimate exact_newton_mass(const PLConvexFunction<S>& f) {
  MassEstimate m;
  const S mass = total_mass(f);
  m.value = Arith<S>::to_double(mass);
  if constexpr (Arith<S>::kExact) m.exact = mass;
  m.method = "exact-newton";
  return m;
}

ShiftedHalton::ShiftedHalton(std::size_t dim, std::uint64_t seed) {
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim == 0 || dim > std::size(kPrimes)) throw InvalidInput("halton: unsupported dimension");
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < dim; ++k) {
    bases_.push_back(kPrimes[k]);
    shift_.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
  }
}

Vec<double> ShiftedHalton::next() {
  ++index_;
  Vec<double> out(bases_.size());
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    const double base = bases_[k];
    double f = 1.0, r = 0.0;
    for (std::uint64_t i = index_; i > 0; i /= bases_[k]) {
      f /= base;
      r += f * static_cast<double>(i % bases_[k]);
    }
    r += shift_[k];
    out[k] = r >= 1.0 ? r - 1.0 : r;
  }
  return out;
}

template <class S>
MassEstimate gradient_image_mass(const EnvelopeFunction<S>& e, std::size_t samples, std::uint64_t seed,
                                 const std::optional<SamplingBox>& box_in) {
  const std::size_t n = e.n(), big_n = e.big_n(), dim = n + big_n;
  if (samples < dim + 1) throw InvalidInput("gradient_image_mass: need at least n + N + 1 samples");
  const SamplingBox box = box_in ? *box_in : default_sampling_box(e);
  if (box.p_lo.size() != n || box.p_hi.size() != n) throw DimensionMismatch("gradient_image_mass: box dimension");

  const EnvelopeFunction<double> ed(convert_function<double>(prune(e.u())), convert_function<double>(prune(e.v())),
                                    big_n);
  MassDiagnostics diag;
  diag.support_bound = box.y_hi;
  diag.max_interior_y = box.y_lo;

  std::vector<bool> seen_u(ed.u().pieces().size(), false), seen_v(ed.v().pieces().size(), false);
  std::vector<Vec<double>> points;
  points.reserve(samples);
  ShiftedHalton halton(dim, seed);
  const std::size_t max_draws = 10 * samples + 1000;
  Vec<double> p(n), y(big_n);
  while (points.size() < samples) {
    if (diag.draws >= max_draws) throw SamplingError("gradient_image_mass: too few non-kink samples");
    ++diag.draws;
    const Vec<double> r = halton.next();
    for (std::size_t k = 0; k < n; ++k) p[k] = box.p_lo[k] + r[k] * (box.p_hi[k] - box.p_lo[k]);
    for (std::size_t i = 0; i < big_n; ++i) y[i] = box.y_lo + r[n + i] * (box.y_hi - box.y_lo);
    const auto g = envelope_gradient(ed, p, y);
    if (g.region == GradientRegion::kKink) {
      ++diag.kinks_skipped;
      continue;
    }
    seen_u[*unique_active_piece(ed.u(), p)] = true;
    seen_v[*unique_active_piece(ed.v(), p)] = true;
    if (g.region == GradientRegion::kInterior) {
      for (double yi : y) {
        diag.max_interior_y = std::max(diag.max_interior_y, yi);
        if (yi > box.y_hi + 1e-9) diag.support_ok = false;
      }
    }
    Vec<double> point = g.grad_p;
    point.insert(point.end(), g.grad_y.begin(), g.grad_y.end());
    points.push_back(std::move(point));
  }

  // Every extreme slope must be realized somewhere in the box.
  auto check_seen = [](const PLConvexFunction<double>& f, const std::vector<bool>& seen, const char* name) {
    const auto newton = newton_polytope(f);
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
      const auto& s = f.pieces()[i].slope;
      const bool vertex = std::find(newton.vertices().begin(), newton.vertices().end(), s) != newton.vertices().end();
      if (vertex && !seen[i])
        throw SamplingError(std::string("gradient_image_mass: sampling box too small, an extreme slope of ") + name +
                            " is never active");
    }
  };
  check_seen(ed.u(), seen_u, "u");
  check_seen(ed.v(), seen_v, "v");

  IncrementalHull<double> hull(dim);
  const std::size_t mid = points.size() / 2;
  hull.add(std::vector<Vec<double>>(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(mid)));
  diag.half_value = hull.volume();
  hull.add(std::vector<Vec<double>>(points.begin() + static_cast<std::ptrdiff_t>(mid), points.end()));

  MassEstimate m;
  m.value = hull.volume();
  m.method = "mc-hull";
  m.error_bound = std::max(0.0, m.value - diag.half_value);
  m.samples = samples;
  m.seed = seed;
  diag.hull_points = hull.full_dimensional() ? hull.extreme_indices().size() : 0;
  m.diagnostics = diag;
  return m;
}

#define TORIMASS_ENVELOPE_INSTANTIATE(S)                                                                    \
  template Vec<S> simplex_project(const Vec<S>&);                                                           \
  template class EnvelopeFunction<S>;                                                                       \
  template S envelope_eval(const EnvelopeFunction<S>&, const Vec<S>&, const Vec<S>&);                       \
  template Vec<S> envelope_maximizer(const EnvelopeFunction<S>&, const Vec<S>&, const Vec<S>&);             \
  template EnvelopeGradient<S> envelope_gradient(const EnvelopeFunction<S>&, const Vec<S>&, const Vec<S>&); \
  template SamplingBox default_sampling_box(const EnvelopeFunction<S>&);                                    \
  template MassEstimate exact_newton_mass(const PLConvexFunction<S>&);                                      \
  template MassEstimate gradient_image_mass(const EnvelopeFunction<S>&, std::size_t, std::uint64_t,         \
                                            const std::optional<SamplingBox>&);

TORIMASS_ENVELOPE_INSTANTIATE(Rational)
TORIMASS_ENVELOPE_INSTANTIATE(double)

}  // namespace torimass
