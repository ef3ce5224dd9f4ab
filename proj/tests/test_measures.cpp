#include <doctest.h>

#include <cmath>

#include "dualmink/measures.hpp"
#include "dualmink/rng.hpp"

using namespace dualmink;

namespace {

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

Eigen::VectorXd axes3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

ScalarField sample(const GridPtr& g, const SphereFunction& f) {
  Eigen::VectorXd vals(g->node_count());
  for (Eigen::Index i = 0; i < g->node_count(); ++i) vals[i] = f(g->node(i));
  return ScalarField(g, std::move(vals));
}

const GridPtr& grid32() {
  static GridPtr g = build_grid(3, 32);
  return g;
}

}  // namespace

TEST_CASE("surface area density on balls and translates") {
  auto g = grid32();
  auto m = sk_density(constant_field(g, 1.4));
  CHECK((m.density.values.array() - 1.4 * 1.4).abs().maxCoeff() <= 1e-10);

  auto translated = sample(g, [](const Vec& v) { return 2.0 + v[2]; });
  auto mt = sk_density(translated);
  CHECK((mt.density.values.array() - 4.0).abs().maxCoeff() <= 1e-6);

  auto ball = sk_density(constant_field(g, 1.7));
  CHECK(total(ball) == doctest::Approx(4.0 * kPi * 1.7 * 1.7).epsilon(1e-12));
}

TEST_CASE("cone volume density totals the volume") {
  auto g = grid32();
  auto ball = cone_volume_density(constant_field(g, 1.5));
  CHECK((ball.density.values.array() - std::pow(1.5, 3) / 3.0).abs().maxCoeff() <= 1e-10);
  CHECK(total(ball) == doctest::Approx(4.0 * kPi / 3.0 * std::pow(1.5, 3)).epsilon(1e-12));

  Ellipsoid e = make_ellipsoid(axes3(1, 2, 3));
  SupportBody sb = to_support_field(e, g);
  CHECK(total(cone_volume_density(sb)) == doctest::Approx(volume(e)).epsilon(1e-6));

  auto translated = sample(g, [](const Vec& v) { return 2.0 + v[2]; });
  CHECK(total(cone_volume_density(translated)) == doctest::Approx(4.0 * kPi / 3.0 * 8.0).epsilon(1e-6));
}

TEST_CASE("dual curvature density on constants and special cases") {
  auto g = grid32();
  for (double r : {0.5, 1.0, 2.0})
    for (double p : {-0.5, 0.0, 0.5})
      for (double q : {1.0, 2.5, 3.0}) {
        auto m = lp_dual_density(constant_field(g, r), p, q);
        CHECK((m.density.values.array() - std::pow(r, q - p)).abs().maxCoeff() <= 1e-9 * std::pow(r, q - p));
      }

  // p = 0, q = n is exactly n times the cone volume density
  auto u = sample(g, [](const Vec& v) { return 1.0 + 0.2 * v[2] + 0.1 * v[0] * v[1]; });
  auto lhs = lp_dual_density(u, 0.0, 3.0);
  auto cone = cone_volume_density(u);
  CHECK((lhs.density.values - 3.0 * cone.density.values).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK_THROWS_AS(lp_dual_density(u, 0.0, -1.0), InvalidInput);
  auto bad = sample(g, [](const Vec& v) { return v[2]; });
  CHECK_THROWS_AS(lp_dual_density(bad, 0.0, 3.0), InvariantViolation);
}

TEST_CASE("scaling law lambda^(q-p) holds pointwise on the test lattice") {
  auto g = grid32();
  auto u = sample(g, [](const Vec& v) { return 1.0 + 0.25 * v[2] + 0.1 * v[0]; });
  for (double lambda : {0.5, 2.0})
    for (double p : {-0.5, 0.0, 0.5, 2.0})
      for (double q : {1.0, 2.0, 3.0, 3.5}) {
        auto base = lp_dual_density(u, p, q);
        ScalarField su(g, lambda * u.values);
        auto scaled = lp_dual_density(su, p, q);
        double factor = std::pow(lambda, q - p);
        double worst =
            (scaled.density.values - factor * base.density.values).cwiseAbs().maxCoeff();
        CAPTURE(lambda);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(worst <= 1e-10 * std::max(1.0, factor * base.density.values.cwiseAbs().maxCoeff()));
      }
}

TEST_CASE("density factorization through the p = 0, q = n case") {
  auto g = grid32();
  SupportBody sb = to_support_field(make_ellipsoid(axes3(1, 1.5, 2)), g);
  SphereJet jet = sphere_jet(sb.field.grid, sb.evaluator);
  for (double p : {-0.5, 0.7})
    for (double q : {2.0, 3.4}) {
      Eigen::VectorXd direct = lp_dual_density_values(jet, p, q);
      Eigen::VectorXd base = lp_dual_density_values(jet, 0.0, 3.0);
      Eigen::VectorXd grad2 = jet.grad.squared_norms();
      for (Eigen::Index i = 0; i < direct.size(); ++i) {
        double u = jet.u.values[i];
        double factored = base[i] * std::pow(u, -p) *
                          std::pow(grad2[i] + u * u, 0.5 * (q - 3.0));
        CHECK(std::abs(direct[i] - factored) <= 1e-12 * std::max(1.0, std::abs(direct[i])));
      }
    }
}

TEST_CASE("total dual curvature at q = n equals n times the volume") {
  auto g = grid32();
  Ellipsoid e = make_ellipsoid(axes3(1, 2, 3));
  SupportBody sb = to_support_field(e, g);
  double t = total(lp_dual_density(sb, 0.0, 3.0));
  CHECK(t == doctest::Approx(24.0 * kPi).epsilon(1e-5));
  CHECK(t == doctest::Approx(3.0 * total(cone_volume_density(sb))).epsilon(1e-10));
}

TEST_CASE("polytope cone volume atoms") {
  Polytope cube = make_box(vec3(1, 1, 1));
  AtomicMeasure m = polytope_cone_volume(cube);
  CHECK(m.masses.size() == 6);
  for (Eigen::Index i = 0; i < m.masses.size(); ++i) {
    CHECK(m.masses[i] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(m.directions.row(i).cwiseAbs().maxCoeff() - 1.0) <= 1e-14);
  }
  CHECK(total(m) == doctest::Approx(8.0).epsilon(1e-14));

  // simplex masses against an independent triangulated volume
  Eigen::MatrixXd verts(4, 3);
  verts << 1.2, 0, 0, 0, 1, 0, 0, 0, 0.8, -0.5, -0.6, -0.7;
  Polytope simplex = make_polytope(verts);
  AtomicMeasure ms = polytope_cone_volume(simplex);
  Eigen::Vector3d a = verts.row(1) - verts.row(0);
  Eigen::Vector3d b = verts.row(2) - verts.row(0);
  Eigen::Vector3d c = verts.row(3) - verts.row(0);
  double vol = std::abs(a.cross(b).dot(c)) / 6.0;
  CHECK(total(ms) == doctest::Approx(vol).epsilon(1e-13));
}

TEST_CASE("polytope cone volume is equivariant under linear maps") {
  Eigen::MatrixXd phi(3, 3);
  phi << 1.3, 0.2, 0.0, -0.1, 0.9, 0.3, 0.2, 0.0, 1.1;
  Polytope cube = make_box(vec3(1, 1, 1));
  Eigen::MatrixXd mapped_verts = cube.vertices * phi.transpose();
  Polytope mapped = make_polytope(mapped_verts);
  double expect = std::abs(phi.determinant()) * total(polytope_cone_volume(cube));
  CHECK(total(polytope_cone_volume(mapped)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("monte carlo radial totals against closed forms") {
  McEstimate ball = radial_total_mc(make_ball(3, 1.5), 0.0, 2.2, 200000, 42);
  double expect = std::pow(1.5, 2.2) * 4.0 * kPi;
  CHECK(std::abs(ball.estimate - expect) <= 3.0 * ball.std_error);

  McEstimate ell = radial_total_mc(make_ellipsoid(axes3(1, 2, 3)), 0.0, 3.0, 400000, 7);
  CHECK(std::abs(ell.estimate - 24.0 * kPi) <= 3.0 * ell.std_error);
  CHECK(ell.std_error <= 0.2);

  McEstimate cube = radial_total_mc(make_box(vec3(1, 1, 1)), 0.0, 3.0, 400000, 7);
  CHECK(std::abs(cube.estimate - 24.0) <= 3.0 * cube.std_error);

  // deterministic for a fixed seed
  McEstimate again = radial_total_mc(make_box(vec3(1, 1, 1)), 0.0, 3.0, 400000, 7);
  CHECK(again.estimate == cube.estimate);
  CHECK(again.std_error == cube.std_error);

  auto g = build_grid(3, 16);
  SupportBody sb = to_support_field(make_ball(3, 1.0), g);
  CHECK_THROWS_AS(radial_total_mc(sb, 0.0, 3.0, 100, 1), InvalidInput);
}

TEST_CASE("p = 0 total matches the radial integral of rho^q for ellipsoids") {
  auto g = grid32();
  Ellipsoid e = make_ellipsoid(axes3(1, 1.4, 2));
  SupportBody sb = to_support_field(e, g);
  for (double q : {2.0, 3.0}) {
    double density_total = total(lp_dual_density(sb, 0.0, q));
    Eigen::VectorXd rho_q(g->node_count());
    for (Eigen::Index i = 0; i < g->node_count(); ++i)
      rho_q[i] = std::pow(radial(e, g->node(i)), q);
    CHECK(density_total == doctest::Approx(integrate(g, rho_q)).epsilon(1e-7));
  }
}

TEST_CASE("density gap scales linearly as q approaches n") {
  auto g = grid32();
  SupportBody sb = to_support_field(make_ellipsoid(axes3(1, 2, 3)), g);
  SphereJet jet = sphere_jet(sb.field.grid, sb.evaluator);
  const double p = 0.5;
  Eigen::VectorXd at_n = lp_dual_density_values(jet, p, 3.0);
  double gap_fine = 0.0, gap_mid = 0.0;
  for (double d : {0.001, -0.001})
    gap_fine = std::max(gap_fine, (lp_dual_density_values(jet, p, 3.0 + d) - at_n).cwiseAbs().maxCoeff());
  for (double d : {0.01, -0.01})
    gap_mid = std::max(gap_mid, (lp_dual_density_values(jet, p, 3.0 + d) - at_n).cwiseAbs().maxCoeff());
  double slope = gap_fine / 0.001;  // estimated Lipschitz constant in q
  for (double d : {0.1, -0.1, 0.01, -0.01, 0.001, -0.001}) {
    double gap = (lp_dual_density_values(jet, p, 3.0 + d) - at_n).cwiseAbs().maxCoeff();
    CHECK(gap <= 1.3 * slope * std::abs(d));
    CHECK(gap >= 0.7 * slope * std::abs(d));
  }
  CHECK(gap_mid / gap_fine == doctest::Approx(10.0).epsilon(0.2));
}
