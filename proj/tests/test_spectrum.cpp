#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "rabi2q/spectrum.hpp"

using namespace rabi2q;

TEST_CASE("eigensolve: diagonal example") {
  TruncatedOperator op;
  op.ncut = 1;
  op.matrix = Eigen::Vector4d(0.5, 1.5, -0.5, 0.5).asDiagonal();
  const auto r = eigensolve(op, 4);
  CHECK(r.energies == std::vector<double>{-0.5, 0.5, 0.5, 1.5});
  CHECK(r.converged);
  CHECK(r.ncut_used == 1);
  CHECK(eigensolve(op, 0).energies.empty());
}

TEST_CASE("eigensolve: errors") {
  TruncatedOperator op;
  op.ncut = 1;
  op.matrix = Eigen::Matrix4d::Identity();
  CHECK_THROWS_AS(eigensolve(op, 5), std::invalid_argument);
  op.matrix(0, 1) = 1e-9;
  CHECK_THROWS_AS(eigensolve(op, 1), std::domain_error);
}

TEST_CASE("eigensolve: deterministic for fixed input") {
  const auto op = build_block({Block::a, 0.1, 0.3, 0.0, 0.8, 1.0}, 50);
  const auto x = eigensystem(op, 5), y = eigensystem(op, 5);
  CHECK(x.spectrum.energies == y.spectrum.energies);
  CHECK(x.vectors == y.vectors);
}

TEST_CASE("eigensolve: decoupled block b of the isotropic case") {
  const auto [a, b] = reduce_params({0, 0, 1, 0.3, 0.3, 0, 0.4, 0.4});
  const auto r = eigensolve(build_block(b, 10), 3);
  CHECK(r.energies[0] == doctest::Approx(-0.6).epsilon(1e-14));
  // next doublet member is 1 - 0.6, then +0.6
  CHECK(r.energies[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(r.energies[2] == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("eigensolve: anisotropic block a at the crossing g = 0.714") {
  const auto r = converge_ground({Block::a, 0.0, 0.2, 0.0, 0.714, 1.0});
  CHECK(r.converged);
  CHECK(r.energies[0] == doctest::Approx(-0.6).epsilon(1e-3));
}

TEST_CASE("schedule_start") {
  CHECK(schedule_start(0.0) == 40);
  CHECK(schedule_start(1.0) == 40);
  CHECK(schedule_start(1.5) == 59);  // ceil(27 + 12) + 20
  CHECK(schedule_start(-1.5) == 59);
  CHECK(schedule_start(3.0) == 152);
}

TEST_CASE("converge_ground: g = 0 is exact at the first step") {
  const auto r = converge_ground({Block::b, 0.3, 0.4, 0.0, 0.0, 1.0});
  CHECK(r.converged);
  CHECK(r.conv_estimate == 0.0);
  CHECK(r.ncut_used == 40);
  CHECK(r.energies[0] == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("converge_ground: DQHO limit -g^2/omega") {
  const auto r = converge_ground({Block::a, 0.0, 0.0, 0.0, 1.2, 1.0}, 1e-8);
  CHECK(r.converged);
  CHECK(r.conv_estimate < 1e-8);
  CHECK(std::abs(r.energies[0] + 1.44) < 1e-8);
}

TEST_CASE("converge_ground: mixed coupling case, block b ground meets -(1.5 g)^2 near g = 0.491") {
  const double g = 0.491;
  const auto [a, b] = reduce_params({0, 0, 1, 0.2, 0.2, 0, 1.25 * g, 0.25 * g});
  CHECK(a.g == doctest::Approx(1.5 * g));
  CHECK(b.g == doctest::Approx(g));
  const auto r = converge_ground(b, 1e-8);
  CHECK(r.converged);
  CHECK(r.energies[0] == doctest::Approx(-std::pow(1.5 * g, 2)).epsilon(1e-3));
}

TEST_CASE("converge_ground: reports non-convergence at nmax") {
  const auto r = converge_ground({Block::a, 0.0, 0.5, 0.0, 3.0, 1.0}, 1e-8, 30);
  CHECK_FALSE(r.converged);
  CHECK(r.ncut_used == 30);
  CHECK(r.conv_estimate > 1e-8);
  CHECK_THROWS_AS(converge_ground({}, 0.0), std::invalid_argument);
}

TEST_CASE("converge_block: pinned ncut") {
  SolverOptions opts;
  opts.ncut = 80;
  const auto es = converge_block({Block::a, 0.0, 0.2, 0.0, 0.5, 1.0}, opts, 3);
  CHECK(es.ncut == 80);
  CHECK(es.spectrum.converged);
  CHECK(es.vectors.cols() == 3);
  opts.ncut = 10;
  const auto small = converge_block({Block::a, 0.0, 0.2, 0.0, 0.5, 1.0}, opts, 1);
  CHECK_FALSE(small.spectrum.converged);
  CHECK(std::isinf(small.spectrum.conv_estimate));
}

TEST_CASE("E0(N) is non-increasing in N") {
  for (double g : {0.3, 0.9, 1.5}) {
    const BlockParams bp{Block::a, 0.2, 0.3, 0.0, g, 1.0};
    double prev = INFINITY;
    for (int n = 1; n <= 80; ++n) {
      const double e = eigensolve(build_block(bp, n), 1).energies[0];
      CHECK(e <= prev + 1e-13);
      prev = e;
    }
  }
}

TEST_CASE("dqho_spectrum") {
  const auto lv = dqho_spectrum({Block::a, 0.0, 0.0, 0.0, 0.775, 1.0}, 1);
  REQUIRE(lv.size() == 2);
  CHECK(lv[0].energy == doctest::Approx(-0.600625).epsilon(1e-14));
  CHECK(lv[1].energy == doctest::Approx(-0.600625).epsilon(1e-14));

  const auto free = dqho_spectrum({Block::a, 0.3, 0.0, 0.0, 0.0, 1.0}, 3);
  CHECK(free[0].energy == doctest::Approx(-0.3));
  CHECK(free[0].sign == Spin::minus);
  CHECK(free[1].energy == doctest::Approx(0.3));
  CHECK(free[2].energy == doctest::Approx(0.7));
  CHECK(free[2].n == 1);

  const auto two = dqho_spectrum({Block::a, 0.5, 0.0, 0.0, 1.0, 1.0}, 3);
  std::vector<double> n2;
  for (const auto& l : two)
    if (l.n == 2) n2.push_back(l.energy);
  CHECK(n2 == std::vector<double>{0.5, 1.5});

  const auto neg = dqho_spectrum({Block::a, -0.2, 0.0, 0.0, 0.0, 1.0}, 1);
  CHECK(neg[0].energy == doctest::Approx(-0.2));
  CHECK(neg[0].sign == Spin::plus);

  CHECK_THROWS_AS(dqho_spectrum({Block::a, 0.0, 0.1, 0.0, 0.5, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("doublet_spectrum") {
  CHECK(doublet_spectrum({Block::b, 0.0, 0.6, 0.0, 0.0, 1.0}, 1)[0].energy == doctest::Approx(-0.6));
  std::vector<double> n1;
  for (const auto& l : doublet_spectrum({Block::b, 0.5, 0.0, 0.0, 0.0, 1.0}, 2))
    if (l.n == 1) n1.push_back(l.energy);
  CHECK(n1 == std::vector<double>{0.5, 1.5});
  const auto t = doublet_spectrum({Block::b, 0.3, 0.4, 0.0, 0.0, 1.0}, 1);
  CHECK(t[0].energy == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(t[1].energy == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(doublet_spectrum({Block::b, 0.0, 0.6, -0.1, 0.0, 1.0}, 1)[0].energy == doctest::Approx(-0.7));
  CHECK_THROWS_AS(doublet_spectrum({Block::b, 0.0, 0.6, 0.0, 0.1, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("analytic backends agree with diagonalization") {
  for (double g : {0.2, 0.7, 1.2}) {
    const BlockParams dq{Block::a, 0.35, 0.0, 0.1, g, 1.0};
    const auto num = converge_block(dq, {}, 8);
    const auto an = dqho_spectrum(dq, 8);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(num.spectrum.energies[i] - an[i].energy) < 1e-8);
  }
  const BlockParams db{Block::b, 0.2, 0.45, -0.1, 0.0, 1.0};
  const auto num = converge_block(db, {}, 8);
  const auto an = doublet_spectrum(db, 8);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(num.spectrum.energies[i] - an[i].energy) < 1e-12);
}

TEST_CASE("best_backend and block_ground_energy") {
  CHECK(best_backend({Block::a, 0.1, 0.0, 0.0, 0.5, 1.0}) == Backend::dqho);
  CHECK(best_backend({Block::a, 0.1, 0.2, 0.0, 0.0, 1.0}) == Backend::doublet);
  CHECK(best_backend({Block::a, 0.1, 0.2, 0.0, 0.5, 1.0}) == Backend::diagonalization);
  const auto ge = block_ground_energy({Block::a, 0.4, 0.0, 0.0, 0.5, 1.0});
  CHECK(ge.backend == Backend::dqho);
  CHECK(ge.energy == doctest::Approx(-0.25 - 0.4));
  const auto gd = block_ground_energy({Block::a, 0.0, 0.2, 0.0, 0.5, 1.0});
  CHECK(gd.backend == Backend::diagonalization);
  CHECK(gd.ncut >= 40);
  CHECK(gd.converged);
}

TEST_CASE("four_series_spectrum: anisotropic unbiased, block b flat doublet at -0.6/+0.6") {
  for (double g : {0.1, 0.5, 1.0}) {
    const auto lv = four_series_spectrum({0, 0, 1, 0.4, 0.2, 0, g / 2, g / 2}, 12);
    REQUIRE(lv.size() == 12);
    CHECK(std::is_sorted(lv.begin(), lv.end(), [](auto& x, auto& y) { return x.energy < y.energy; }));
    std::vector<double> eb;
    for (const auto& l : lv)
      if (l.block == Block::b) {
        CHECK(l.backend == Backend::doublet);
        eb.push_back(l.energy);
      }
    REQUIRE(eb.size() >= 3);
    CHECK(eb[0] == doctest::Approx(-0.6).epsilon(1e-14));
    CHECK(std::count_if(eb.begin(), eb.end(), [](double e) { return std::abs(e - 0.6) < 1e-14; }) == 1);
  }
}

TEST_CASE("four_series_spectrum: biased isotropic, block a levels -g^2 +- 0.5") {
  // with eps_a = 0.5 the upper n = 0 level coincides with the lower n = 1 level
  for (double g : {0.2, 0.6, 1.1}) {
    const auto lv = four_series_spectrum({0.25, 0.25, 1, 0.3, 0.3, 0, g / 2, g / 2}, 10);
    std::vector<double> ea;
    for (const auto& l : lv)
      if (l.block == Block::a) {
        CHECK(l.backend == Backend::dqho);
        CHECK(l.ncut == 0);
        ea.push_back(l.energy);
      }
    REQUIRE(!ea.empty());
    CHECK(ea[0] == doctest::Approx(-g * g - 0.5).epsilon(1e-14));
    CHECK(std::count_if(ea.begin(), ea.end(), [&](double e) { return std::abs(e - (-g * g + 0.5)) < 1e-13; }) >= 1);
  }
}

TEST_CASE("four_series_spectrum: g = 0 is the union of both doublet ladders") {
  const ModelParams p{0.2, -0.1, 1.0, 0.3, 0.15, 0.07, 0.0, 0.0};
  const int k = 14;
  const auto lv = four_series_spectrum(p, k);
  std::vector<double> expected;
  const double ra = std::hypot(0.1, 0.15), rb = std::hypot(0.3, 0.45);
  for (int n = 0; n < k; ++n)
    for (double e : {n - ra + 0.07, n + ra + 0.07, n - rb - 0.07, n + rb - 0.07}) expected.push_back(e);
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < k; ++i) CHECK(lv[i].energy == doctest::Approx(expected[i]).epsilon(1e-14));
  CHECK(four_series_spectrum(p, 0).empty());
}

TEST_CASE("four_series_spectrum: gz shift covariance") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 5; ++trial) {
    ModelParams p{u(rng), u(rng), 1.0, u(rng), u(rng), 0.0, u(rng), u(rng)};
    ModelParams q = p;
    q.gz = 0.17;
    SolverOptions opts;
    opts.ncut = 40;
    const auto l0 = four_series_spectrum(p, 30, opts);
    const auto l1 = four_series_spectrum(q, 30, opts);
    for (const auto& x : l1)
      for (const auto& y : l0)
        if (x.block == y.block && x.level == y.level)
          CHECK(std::abs(x.energy - y.energy - (x.block == Block::a ? 0.17 : -0.17)) < 1e-12);
  }
}
