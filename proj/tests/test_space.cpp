#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "banachgeo/rng.hpp"
#include "banachgeo/space.hpp"

using namespace banachgeo;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

// Independent oracle for dual norms: coarse maximization of <f,x> over the
// unit ball by many random sphere shots plus local refinement.
double dual_norm_sampling_oracle(const Space& s, const VectorXd& f, int shots, uint64_t seed) {
  double best = 0.0;
  for (int k = 0; k < shots; ++k) {
    VectorXd x = rng::gaussian_vector(seed, static_cast<uint64_t>(k), s.dim());
    x /= s.norm(x);
    best = std::max(best, f.dot(x));
    // greedy sign alignment helps the max in unconditional balls
    for (int i = 0; i < s.dim(); ++i) {
      if (f[i] * x[i] < 0) x[i] = -x[i];
    }
    best = std::max(best, f.dot(x) / s.norm(x));
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("space");

TEST_CASE("exponent conjugation") {
  CHECK(Exponent::one().conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate() == Exponent::one());
  CHECK(Exponent::two().conjugate() == Exponent::two());
  for (double p : {1.0, 1.25, 1.5, 2.0, 3.0, 7.5}) {
    const Exponent e(p);
    CHECK(e.conjugate().conjugate().value() == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS(Exponent(0.5));
}

TEST_CASE("lp norms: stated examples") {
  CHECK(Space::lp(Exponent::two(), 2).norm(vec({3, 4})) == doctest::Approx(5.0));

  const Space s = Space::sum(Space::lp(Exponent::infinity(), 2),
                             {Space::lp(Exponent::one(), 2), Space::lp(Exponent::two(), 2)});
  CHECK(s.norm(vec({1, 1, 3, 4})) == doctest::Approx(5.0));  // max(2, 5)

  CHECK(Space::weighted_lp(Exponent::one(), vec({2, 3})).norm(vec({1, -1})) ==
        doctest::Approx(5.0));
}

TEST_CASE("norm errors") {
  const Space s = Space::lp(Exponent::two(), 3);
  CHECK_THROWS_AS(s.norm(vec({1, 2})), DimensionError);
  VectorXd bad = vec({1, 2, 3});
  bad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(s.norm(bad));
}

TEST_CASE("dual norms: stated examples") {
  CHECK(Space::lp(Exponent::one(), 3).dual_norm(vec({1, -2, 3})) == doctest::Approx(3.0));

  const Space l2 = Space::lp(Exponent::two(), 4);
  const VectorXd f = vec({0.3, -1.2, 2.0, 0.7});
  CHECK(l2.dual_norm(f) == doctest::Approx(f.norm()));

  // sum over linf dualizes to the l1-sum of block duals
  const Space s = Space::sum(Space::lp(Exponent::infinity(), 2),
                             {Space::lp(Exponent::two(), 2), Space::lp(Exponent::two(), 2)});
  const VectorXd ff = vec({3, 4, 0, 1});
  CHECK(s.dual_norm(ff) == doctest::Approx(6.0));
  const double oracle = dual_norm_sampling_oracle(s, ff, 4000, 77);
  CHECK(s.dual_norm(ff) == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("duality round trip on lp and weighted lp") {
  const uint64_t seed = 4242;
  for (double pv : {1.0, 1.5, 2.0, 4.0}) {
    for (int rep = 0; rep < 40; ++rep) {
      const int n = 1 + static_cast<int>(rng::uniform_index(seed, rep, 900 + pv, 6));
      Space s = Space::lp(Exponent(pv), n);
      if (rep % 2) {
        VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = 0.25 + 3.0 * rng::uniform01(seed, rep, 10 + i);
        s = Space::weighted_lp(Exponent(pv), w);
      }
      const VectorXd x = rng::gaussian_vector(rng::derive(seed, rep), 5, n);
      CHECK(s.dual().dual().norm(x) == doctest::Approx(s.norm(x)).epsilon(1e-9));
      CHECK(s.dual().dual_norm(x) == doctest::Approx(s.norm(x)).epsilon(1e-9));
    }
  }
  // p = inf round trip
  const Space si = Space::weighted_lp(Exponent::infinity(), vec({2, 0.5, 1}));
  const VectorXd x = vec({0.2, -1.4, 0.9});
  CHECK(si.dual().dual().norm(x) == doctest::Approx(si.norm(x)).epsilon(1e-12));
}

TEST_CASE("holder inequality on random pairs") {
  const uint64_t seed = 31337;
  const Space spaces[] = {
      Space::lp(Exponent(1.5), 4), Space::lp(Exponent::infinity(), 3),
      Space::weighted_lp(Exponent::one(), vec({0.5, 2, 1, 3})),
      Space::sum(Space::lp(Exponent::two(), 2),
                 {Space::lp(Exponent::one(), 2), Space::lp(Exponent(4), 3)})};
  for (const Space& s : spaces) {
    const Space dual = s.dual();
    for (int rep = 0; rep < 2500; ++rep) {
      const VectorXd x = rng::gaussian_vector(rng::derive(seed, 2 * rep), 1, s.dim());
      const VectorXd f = rng::gaussian_vector(rng::derive(seed, 2 * rep + 1), 2, s.dim());
      CHECK(f.dot(x) <= dual.norm(f) * s.norm(x) * (1.0 + 1e-12) + 1e-12);
    }
  }
}

TEST_CASE("norm axioms on random triples") {
  const uint64_t seed = 555;
  const Space spaces[] = {
      Space::lp(Exponent(3), 5), Space::weighted_lp(Exponent::two(), vec({1, 4, 0.25})),
      Space::sum(Space::lp(Exponent::one(), 2),
                 {Space::lp(Exponent::infinity(), 2), Space::lp(Exponent::two(), 2)})};
  for (const Space& s : spaces) {
    for (int rep = 0; rep < 400; ++rep) {
      const VectorXd x = rng::gaussian_vector(rng::derive(seed, 3 * rep), 1, s.dim());
      const VectorXd y = rng::gaussian_vector(rng::derive(seed, 3 * rep + 1), 2, s.dim());
      const double lam = 4.0 * rng::uniform01(seed, rep, 7) - 2.0;
      CHECK(s.norm(x) >= 0.0);
      CHECK(s.norm(x + y) <= s.norm(x) + s.norm(y) + 1e-9);
      CHECK(s.norm(lam * x) == doctest::Approx(std::abs(lam) * s.norm(x)).epsilon(1e-9));
    }
    CHECK(s.norm(VectorXd::Zero(s.dim())) == 0.0);
  }
}

TEST_CASE("unconditionality: sign flips leave the norm unchanged exactly") {
  const uint64_t seed = 808;
  const Space s = Space::sum(Space::lp(Exponent(2.5), 2),
                             {Space::weighted_lp(Exponent::one(), vec({1, 2})),
                              Space::lp(Exponent::infinity(), 3)});
  for (int rep = 0; rep < 200; ++rep) {
    const VectorXd x = rng::gaussian_vector(rng::derive(seed, rep), 1, s.dim());
    VectorXd flipped = x;
    for (int i = 0; i < s.dim(); ++i) {
      if (rng::uniform01(seed, rep, 100 + i) < 0.5) flipped[i] = -flipped[i];
    }
    CHECK(s.norm(flipped) == s.norm(x));  // exact, |.| is applied coordinatewise
  }
}

TEST_CASE("sum construction enforces unit outer basis by folding scales into parts") {
  // weighted outer: 2||x(1)|| + 3||x(2)|| must survive normalization untouched
  const Space raw_outer = Space::weighted_lp(Exponent::one(), vec({2, 3}));
  const Space s =
      Space::sum(raw_outer, {Space::lp(Exponent::two(), 2), Space::lp(Exponent::one(), 2)});
  CHECK(s.outer().family() == Space::Family::Lp);
  CHECK(s.outer().is_normalized());
  const VectorXd x = vec({3, 4, 1, -1});
  CHECK(s.norm(x) == doctest::Approx(2.0 * 5.0 + 3.0 * 2.0).epsilon(1e-12));
  CHECK(Space::sum(Space::lp(Exponent::two(), 2),
                   {Space::lp(Exponent::two(), 1), Space::lp(Exponent::two(), 1)})
            .is_normalized());
}

TEST_CASE("sum dimension bookkeeping") {
  const Space s = Space::sum(Space::lp(Exponent::two(), 3),
                             {Space::lp(Exponent::one(), 2), Space::lp(Exponent::two(), 4),
                              Space::lp(Exponent::infinity(), 1)});
  CHECK(s.dim() == 7);
  const auto off = s.block_offsets();
  CHECK(off == std::vector<int>({0, 2, 6, 7}));
  CHECK_THROWS_AS(Space::sum(Space::lp(Exponent::two(), 2), {Space::lp(Exponent::two(), 2)}),
                  DimensionError);
}

TEST_CASE("norm subgradient satisfies the euler identity and dual feasibility") {
  const uint64_t seed = 99;
  const Space spaces[] = {
      Space::lp(Exponent(1.7), 4), Space::lp(Exponent::one(), 3),
      Space::lp(Exponent::infinity(), 3),
      Space::sum(Space::lp(Exponent::two(), 2),
                 {Space::lp(Exponent::one(), 2), Space::lp(Exponent::infinity(), 2)})};
  for (const Space& s : spaces) {
    const Space dual = s.dual();
    for (int rep = 0; rep < 100; ++rep) {
      const VectorXd x = rng::gaussian_vector(rng::derive(seed, rep), 3, s.dim());
      const VectorXd g = s.norm_subgradient(x);
      CHECK(g.dot(x) == doctest::Approx(s.norm(x)).epsilon(1e-9));
      CHECK(dual.norm(g) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("extreme point enumeration") {
  CHECK(ball_extreme_point_count(Space::lp(Exponent::one(), 4)) == 8);
  CHECK(ball_extreme_point_count(Space::lp(Exponent::infinity(), 3)) == 8);
  CHECK(ball_extreme_point_count(Space::lp(Exponent::two(), 3)) == -1);

  // l1-sum: union of block extreme points
  const Space s1 = Space::sum(Space::lp(Exponent::one(), 2),
                              {Space::lp(Exponent::one(), 2), Space::lp(Exponent::infinity(), 2)});
  CHECK(ball_extreme_point_count(s1) == 4 + 4);
  // linf-sum: product of block extreme points
  const Space s2 =
      Space::sum(Space::lp(Exponent::infinity(), 2),
                 {Space::lp(Exponent::one(), 2), Space::lp(Exponent::infinity(), 2)});
  CHECK(ball_extreme_point_count(s2) == 16);

  int count = 0;
  double max_norm = 0.0;
  for_each_ball_extreme_point(s2, [&](const VectorXd& x) {
    ++count;
    max_norm = std::max(max_norm, std::abs(s2.norm(x) - 1.0));
  });
  CHECK(count == 16);
  CHECK(max_norm <= 1e-12);

  const Space w = Space::weighted_lp(Exponent::one(), vec({2, 4}));
  bool seen_half = false;
  for_each_ball_extreme_point(w, [&](const VectorXd& x) {
    CHECK(w.norm(x) == doctest::Approx(1.0));
    if (std::abs(x[0] - 0.5) < 1e-15) seen_half = true;
  });
  CHECK(seen_half);
}

TEST_CASE("scaled spaces") {
  const Space s = Space::lp(Exponent(1.5), 3).scaled(2.5);
  const VectorXd x = vec({1, -2, 0.5});
  CHECK(s.norm(x) == doctest::Approx(2.5 * Space::lp(Exponent(1.5), 3).norm(x)).epsilon(1e-12));
  const Space t = Space::sum(Space::lp(Exponent::infinity(), 2),
                             {Space::lp(Exponent::one(), 1), Space::lp(Exponent::two(), 2)})
                      .scaled(0.5);
  const VectorXd y = vec({1, 3, 4});
  CHECK(t.norm(y) == doctest::Approx(0.5 * std::max(1.0, 5.0)).epsilon(1e-12));
}

TEST_CASE("euclidean recognition") {
  CHECK(Space::lp(Exponent::two(), 3).is_euclidean());
  CHECK(!Space::lp(Exponent(2.5), 3).is_euclidean());
  const Space s = Space::sum(Space::lp(Exponent::two(), 2),
                             {Space::lp(Exponent::two(), 2), Space::lp(Exponent::two(), 3)});
  CHECK(s.is_euclidean());
  const VectorXd x = rng::gaussian_vector(5, 6, 5);
  CHECK(s.norm(x) == doctest::Approx(x.norm()).epsilon(1e-12));
  const Space w = Space::weighted_lp(Exponent::two(), vec({4, 9}));
  CHECK(w.is_euclidean());
  const VectorXd d = w.euclidean_scaling();
  const VectorXd y = vec({1, -1});
  CHECK(w.norm(y) == doctest::Approx((d.asDiagonal() * y).norm()).epsilon(1e-12));
}

TEST_SUITE_END();
