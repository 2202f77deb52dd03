#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "torimass/polytope.hpp"

using namespace torimass;
using namespace torimass::testing;

namespace {

Polytope<Q> poly(std::vector<QVec> pts) { return Polytope<Q>::hull_of(pts); }

Polytope<Q> interval(double a, double b) { return poly({qv({a}), qv({b})}); }

Polytope<Q> simplex2() { return poly({qv({0, 0}), qv({1, 0}), qv({0, 1})}); }

Polytope<Q> square(double side) { return poly({qv({0, 0}), qv({side, 0}), qv({0, side}), qv({side, side})}); }

Polytope<Q> random_poly(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::vector<QVec> pts;
  for (std::size_t i = 0; i < count; ++i) {
    QVec p;
    for (std::size_t k = 0; k < dim; ++k) p.push_back(random_q(rng, -2, 2, 4));
    pts.push_back(std::move(p));
  }
  return poly(std::move(pts));
}

}  // namespace

TEST_CASE("hull_normalize examples") {
  auto p = poly({qv({0, 0}), qv({1, 0}), qv({0, 1}), qv({0.25, 0.25})});
  CHECK(p.vertices() == std::vector<QVec>{qv({0, 0}), qv({0, 1}), qv({1, 0})});
  auto s = poly({qv({0}), qv({1})});
  CHECK(s.vertices() == std::vector<QVec>{qv({0}), qv({1})});
  CHECK(s.volume() == 1);

  std::mt19937_64 rng(5);
  std::vector<QVec> pts;
  for (int i = 0; i < 50; ++i) pts.push_back({random_q(rng, 0, 1, 64), random_q(rng, 0, 1, 64)});
  auto h = poly(pts);
  for (const auto& x : pts) CHECK(contains(h, poly({x})));
  CHECK(poly(h.vertices()) == h);

  CHECK_THROWS_AS(poly({}), InvalidInput);
  CHECK_THROWS_AS(poly({qv({0, 0}), qv({1})}), DimensionMismatch);
}

TEST_CASE("volume examples") {
  CHECK(volume(simplex2()) == q(1, 2));
  CHECK(volume(square(1)) == 1);
  CHECK(volume(poly({qv({0, 0}), qv({1, 0}), qv({2, 0})})) == 0);
  // Sigma_N has volume 1/N!
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<QVec> pts{QVec(n, q(0))};
    for (std::size_t i = 0; i < n; ++i) {
      QVec e(n, q(0));
      e[i] = 1;
      pts.push_back(e);
    }
    CHECK(volume(poly(pts)) == Q(1) / factorial(static_cast<unsigned>(n)));
  }
}

TEST_CASE("minkowski_combination examples") {
  auto p = interval(-1, 1), qq = interval(0, 1);
  CHECK(minkowski_combination(p, qq, q(1, 2)) == interval(-0.5, 1));
  CHECK(minkowski_combination(p, qq, q(0)) == p);
  CHECK(minkowski_combination(p, qq, q(1)) == qq);
  for (auto t : {q(0), q(1, 3), q(1)}) CHECK(minkowski_combination(simplex2(), simplex2(), t) == simplex2());
  CHECK_THROWS_AS(minkowski_combination(p, qq, q(2)), InvalidInput);
  CHECK_THROWS_AS(minkowski_combination(p, simplex2(), q(0)), DimensionMismatch);
}

TEST_CASE("mixed_volume_polynomial examples") {
  auto m = mixed_volume_polynomial(interval(-1, 1), interval(0, 1));
  CHECK(m.coeffs == std::vector<Q>{q(2), q(-1)});
  auto c = mixed_volume_polynomial(square(1), square(1));
  CHECK(c.coeffs == std::vector<Q>{q(1), q(0), q(0)});
  auto s = mixed_volume_polynomial(square(1), square(2));
  CHECK(s.coeffs == std::vector<Q>{q(1), q(2), q(1)});
  CHECK(s(q(0)) == 1);
  CHECK(s(q(1)) == 4);
}

TEST_CASE("contains examples") {
  CHECK(contains(interval(-1, 1), interval(0, 1)));
  CHECK_FALSE(contains(interval(0, 1), interval(-1, 1)));
  CHECK(contains(square(1), simplex2()));
  CHECK_FALSE(contains(simplex2(), square(1)));
  CHECK_THROWS_AS(contains(simplex2(), interval(0, 1)), DimensionMismatch);
}

TEST_CASE("polytope properties on random inputs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> tden(1, 97);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    auto p = random_poly(rng, dim, 3 + trial % 6);
    auto r = random_poly(rng, dim, 3 + (trial * 7) % 6);

    CHECK(poly(p.vertices()) == p);
    CHECK((p.volume() == 0) == !p.full_dimensional());

    auto m = mixed_volume_polynomial(p, r);
    CHECK(m.degree() <= dim);
    CHECK(m(q(0)) == p.volume());
    CHECK(m(q(1)) == r.volume());
    for (int k = 0; k < 20; ++k) {
      int den = tden(rng);
      std::uniform_int_distribution<int> num(0, den);
      Q t(num(rng), den);
      CHECK(minkowski_combination(p, r, t).volume() == m(t));
      CHECK(m(t) >= 0);
    }
    auto mp = mixed_volume_polynomial(p, p);
    for (std::size_t k = 1; k < mp.coeffs.size(); ++k) CHECK(mp.coeffs[k] == 0);

    bool pr = contains(p, r), rp = contains(r, p);
    CHECK((pr && rp) == same_vertices(p, r));
    if (pr) CHECK(p.volume() >= r.volume());
    std::vector<QVec> both = p.vertices();
    both.insert(both.end(), r.vertices().begin(), r.vertices().end());
    CHECK(contains(poly(both), minkowski_combination(p, r, q(1, 2))));
  }
}

TEST_CASE("float profile tracks the exact profile") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    auto p = random_poly(rng, dim, 6);
    auto r = random_poly(rng, dim, 5);
    std::vector<Vec<double>> pd, rd;
    for (auto& v : p.vertices()) pd.push_back(convert_vec<double>(v));
    for (auto& v : r.vertices()) rd.push_back(convert_vec<double>(v));
    auto fp = Polytope<double>::hull_of(pd), fr = Polytope<double>::hull_of(rd);
    auto mq = mixed_volume_polynomial(p, r);
    auto md = mixed_volume_polynomial(fp, fr);
    for (int k = 0; k <= 20; ++k) {
      double t = k / 20.0;
      CHECK(md(t) == doctest::Approx(mq(Q(k, 20)).convert_to<double>()).epsilon(1e-9));
      CHECK(minkowski_combination(fp, fr, t).volume() == doctest::Approx(md(t)).epsilon(1e-9));
    }
    CHECK(contains(fp, fr) == contains(p, r));
  }
}
