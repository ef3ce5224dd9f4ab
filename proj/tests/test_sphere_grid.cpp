#include <doctest.h>

#include <cmath>

#include "dualmink/sphere_grid.hpp"

using namespace dualmink;

namespace {

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

ScalarField sample(const GridPtr& g, const SphereFunction& f) {
  Eigen::VectorXd vals(g->node_count());
  for (Eigen::Index i = 0; i < g->node_count(); ++i) vals[i] = f(g->node(i));
  return ScalarField(g, std::move(vals));
}

}  // namespace

TEST_CASE("grid construction invariants") {
  for (int L : {8, 16, 32}) {
    auto g = build_grid(3, L);
    CHECK(g->node_count() == L * 2 * L);
    CHECK(g->weights.minCoeff() > 0.0);
    CHECK(std::abs(g->weights.sum() - 4.0 * kPi) <= 1e-12 * 4.0 * kPi);
    for (Eigen::Index i = 0; i < g->node_count(); ++i) {
      CHECK(std::abs(g->nodes.row(i).norm() - 1.0) <= 1e-14);
      CHECK(std::abs(g->nodes.row(i).dot(g->tangent1.row(i))) <= 1e-13);
      CHECK(std::abs(g->nodes.row(i).dot(g->tangent2.row(i))) <= 1e-13);
    }
  }
  auto c = build_grid(2, 256);
  CHECK(c->node_count() == 256);
  CHECK(std::abs(c->weights[0] - 2.0 * kPi / 256) <= 1e-18);
  CHECK(std::abs(c->weights.sum() - 2.0 * kPi) <= 1e-12 * 2.0 * kPi);

  CHECK_THROWS_AS(build_grid(4, 32), InvalidInput);
  CHECK_THROWS_AS(build_grid(3, 3), InvalidInput);
}

TEST_CASE("quadrature on simple integrands") {
  auto g = build_grid(3, 32);
  CHECK(std::abs(integrate(constant_field(g, 1.0)) - 4.0 * kPi) <= 1e-12 * 4.0 * kPi);

  auto z2 = sample(g, [](const Vec& v) { return v[2] * v[2]; });
  CHECK(std::abs(integrate(z2) - 4.0 * kPi / 3.0) <= 1e-12);

  auto y20 = spherical_harmonic_field(g, 2, 0);
  CHECK(std::abs(integrate(y20)) <= 1e-12);
}

TEST_CASE("harmonics are orthonormal under the grid quadrature") {
  auto g = build_grid(3, 32);
  std::vector<ScalarField> basis;
  std::vector<std::pair<int, int>> km;
  for (int k = 0; k <= 8; ++k)
    for (int m = -k; m <= k; ++m) {
      basis.push_back(spherical_harmonic_field(g, k, m));
      km.emplace_back(k, m);
    }
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a; b < basis.size(); ++b) {
      double ip = integrate(ScalarField(g, basis[a].values.cwiseProduct(basis[b].values)));
      double expect = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(ip - expect) <= 1e-8);
    }

  auto g2 = build_grid(2, 64);
  auto c3 = spherical_harmonic_field(g2, 3, 0);
  auto s3 = spherical_harmonic_field(g2, 3, 1);
  CHECK(std::abs(integrate(ScalarField(g2, c3.values.cwiseProduct(c3.values))) - 1.0) <= 1e-12);
  CHECK(std::abs(integrate(ScalarField(g2, c3.values.cwiseProduct(s3.values)))) <= 1e-12);
}

TEST_CASE("harmonic field normalization examples") {
  auto g = build_grid(3, 16);
  auto y00 = spherical_harmonic_field(g, 0, 0);
  CHECK(std::abs(y00.values[0] - 1.0 / std::sqrt(4.0 * kPi)) <= 1e-15);
  auto y10 = spherical_harmonic_field(g, 1, 0);
  double ratio = y10.values[5] / g->nodes(5, 2);
  for (Eigen::Index i = 0; i < g->node_count(); ++i)
    CHECK(y10.values[i] == doctest::Approx(ratio * g->nodes(i, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(spherical_harmonic_field(g, 2, 5), InvalidInput);
}

TEST_CASE("gradient matches analytic oracles") {
  auto g = build_grid(3, 32);

  auto zero = gradient(constant_field(g, 3.7));
  CHECK(zero.vectors.cwiseAbs().maxCoeff() <= 1e-10);

  // u(v) = <v, e3>: spherical gradient is e3 - <v,e3> v
  auto lin = sample(g, [](const Vec& v) { return v[2]; });
  auto glin = gradient(lin);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g->node_count(); ++i) {
    Vec v = g->node(i);
    Vec expect = vec3(0, 0, 1) - v[2] * v;
    worst = std::max(worst, (glin.vectors.row(i).transpose() - expect).norm());
  }
  CHECK(worst <= 1e-7);

  // support function of a ball of radius 2 centered at c
  Vec c = vec3(0.3, -0.2, 0.5);
  auto ball = sample(g, [&](const Vec& v) { return 2.0 + c.dot(v); });
  auto gball = gradient(ball);
  worst = 0.0;
  for (Eigen::Index i = 0; i < g->node_count(); ++i) {
    Vec v = g->node(i);
    Vec expect = c - c.dot(v) * v;
    worst = std::max(worst, (gball.vectors.row(i).transpose() - expect).norm());
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("frame hessian on constants and translated balls") {
  auto g = build_grid(3, 32);

  double r = 1.7;
  auto hessc = sphere_hessian(constant_field(g, r));
  CHECK((hessc.entries.col(0).array() - r).abs().maxCoeff() <= 1e-10);
  CHECK(hessc.entries.col(1).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((hessc.entries.col(2).array() - r).abs().maxCoeff() <= 1e-10);
  CHECK((hessc.determinant().array() - r * r).abs().maxCoeff() <= 1e-9);

  // translate of the radius-2 ball: the curvature determinant stays 4
  auto ball = sample(g, [](const Vec& v) { return 2.0 + 0.4 * v[2] - 0.1 * v[0]; });
  auto dets = sphere_hessian(ball).determinant();
  CHECK((dets.array() - 4.0).abs().maxCoeff() <= 1e-6);
}

TEST_CASE("frame hessian determinant at a spheroid pole") {
  // half axes (1,1,2): both principal curvature radii at the pole are 1/2
  SphereFunction h = [](const Vec& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + 4.0 * v[2] * v[2]);
  };
  Mat frame(3, 2);
  frame.col(0) = vec3(1, 0, 0);
  frame.col(1) = vec3(0, 1, 0);
  auto d = sphere_derivatives_at(h, vec3(0, 0, 1), frame);
  double det = d.frame_hessian(0, 0) * d.frame_hessian(1, 1) - d.frame_hessian(0, 1) * d.frame_hessian(1, 0);
  CHECK(det == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("laplacian eigenvalue check up to degree 8") {
  for (int dim : {2, 3}) {
    auto g = build_grid(dim, dim == 2 ? 512 : 32);
    for (int k = 0; k <= 8; ++k) {
      auto y = spherical_harmonic_field(g, k, dim == 2 ? (k > 0 ? 1 : 0) : std::min(k, 2));
      auto lap = laplacian(y);
      double lambda = laplace_eigenvalue(dim, k);
      double err = (lap.values + lambda * y.values).cwiseAbs().maxCoeff();
      CAPTURE(dim);
      CAPTURE(k);
      CHECK(err <= 1e-6);
    }
  }
}

TEST_CASE("eigenvalue error decreases with resolution") {
  // refine the FD step together with the grid
  double prev = 1e100;
  for (auto [L, h] : {std::pair{16, 8e-3}, std::pair{32, 2e-3}, std::pair{64, 1e-3}}) {
    auto g = build_grid(3, L);
    double worst = 0.0;
    for (int k = 2; k <= 8; k += 3) {
      auto y = spherical_harmonic_field(g, k, 1);
      auto lap = laplacian(y, h);
      worst = std::max(worst, (lap.values + laplace_eigenvalue(3, k) * y.values).cwiseAbs().maxCoeff());
    }
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("trace of frame hessian is consistent with the laplacian") {
  auto g = build_grid(3, 32);
  auto u = sample(g, [](const Vec& v) { return 1.0 + 0.2 * v[2] + 0.1 * v[0] * v[1]; });
  auto jet = sphere_jet(u);
  auto lap = laplacian(u);
  Eigen::VectorXd gap = jet.hess.trace() - (lap.values + 2.0 * jet.u.values);
  CHECK(gap.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("laplacian self-consistency for every harmonic through degree 8") {
  auto g = build_grid(3, 32);
  for (int k = 1; k <= 8; ++k)
    for (int m : {-k, 0, k}) {
      auto y = spherical_harmonic_field(g, k, m);
      auto lap = laplacian(y);
      CHECK((lap.values + laplace_eigenvalue(3, k) * y.values).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("interpolant reproduces band-limited fields off the grid") {
  auto g = build_grid(3, 32);
  auto u = sample(g, [](const Vec& v) { return 2.0 + 0.3 * v[2] + 0.2 * v[0] * v[1]; });
  SphereInterpolant interp(u);
  Vec x = vec3(0.3, -0.5, 0.4).normalized();
  CHECK(interp(x) == doctest::Approx(2.0 + 0.3 * x[2] + 0.2 * x[0] * x[1]).epsilon(1e-11));
}

TEST_CASE("grid and field mismatches are rejected") {
  auto a = build_grid(3, 16);
  auto b = build_grid(3, 32);
  auto u = constant_field(b, 1.0);
  CHECK_THROWS_AS(integrate(a, u.values), InvalidInput);
  CHECK_THROWS_AS(ScalarField(a, u.values), InvalidInput);
}
