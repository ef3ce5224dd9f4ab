#include "dualmink/measures.hpp"

#include <cmath>

#include "dualmink/parallel.hpp"
#include "dualmink/rng.hpp"

namespace dualmink {

namespace {

Eigen::VectorXd clamped_determinant(const SphereJet& jet) {
  Eigen::VectorXd det = jet.hess.determinant();
  for (Eigen::Index i = 0; i < det.size(); ++i) {
    if (det[i] < 0.0) {
      if (det[i] < -1e-8)
        throw InvariantViolation("surface area density is negative at node " + std::to_string(i) +
                                 " (det " + std::to_string(det[i]) + "): field is not convex");
      det[i] = 0.0;
    }
  }
  return det;
}

void require_positive(const ScalarField& u, const char* where) {
  if (u.min() <= 0.0) throw InvariantViolation(std::string(where) + ": u must be positive");
}

DensityMeasure sk_density_from_jet(const SphereJet& jet) {
  return DensityMeasure{ScalarField(jet.u.grid, clamped_determinant(jet))};
}

DensityMeasure cone_volume_from_jet(const SphereJet& jet) {
  int n = jet.u.grid->dim;
  Eigen::VectorXd vals = jet.u.values.cwiseProduct(clamped_determinant(jet)) / n;
  return DensityMeasure{ScalarField(jet.u.grid, std::move(vals))};
}

}  // namespace

double total(const DensityMeasure& m) { return integrate(m.density); }
double total(const AtomicMeasure& m) { return m.masses.sum(); }

DensityMeasure sk_density(const ScalarField& u, double fd_step) {
  return sk_density_from_jet(sphere_jet(u, fd_step));
}

DensityMeasure sk_density(const SupportBody& body, double fd_step) {
  return sk_density_from_jet(sphere_jet(body.field.grid, body.evaluator, fd_step));
}

DensityMeasure cone_volume_density(const ScalarField& u, double fd_step) {
  return cone_volume_from_jet(sphere_jet(u, fd_step));
}

DensityMeasure cone_volume_density(const SupportBody& body, double fd_step) {
  return cone_volume_from_jet(sphere_jet(body.field.grid, body.evaluator, fd_step));
}

Eigen::VectorXd lp_dual_density_values(const SphereJet& jet, double p, double q) {
  require_positive(jet.u, "lp_dual_density");
  const int n = jet.u.grid->dim;
  Eigen::VectorXd det = clamped_determinant(jet);
  Eigen::VectorXd grad2 = jet.grad.squared_norms();
  Eigen::VectorXd out(det.size());
  const double radial_exp = 0.5 * (q - n);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    double u = jet.u.values[i];
    double r2 = grad2[i] + u * u;
    out[i] = std::pow(r2, radial_exp) * std::pow(u, 1.0 - p) * det[i];
  }
  return out;
}

DensityMeasure lp_dual_density(const ScalarField& u, double p, double q, double fd_step) {
  if (q <= 0.0) throw InvalidInput("lp_dual_density: q must be positive");
  SphereJet jet = sphere_jet(u, fd_step);
  return DensityMeasure{ScalarField(u.grid, lp_dual_density_values(jet, p, q))};
}

DensityMeasure lp_dual_density(const SupportBody& body, double p, double q, double fd_step) {
  if (q <= 0.0) throw InvalidInput("lp_dual_density: q must be positive");
  SphereJet jet = sphere_jet(body.field.grid, body.evaluator, fd_step);
  return DensityMeasure{ScalarField(body.field.grid, lp_dual_density_values(jet, p, q))};
}

AtomicMeasure polytope_cone_volume(const Polytope& p) {
  const int n = p.dim();
  AtomicMeasure m;
  m.directions.resize(static_cast<Eigen::Index>(p.facets.size()), n);
  m.masses.resize(static_cast<Eigen::Index>(p.facets.size()));
  for (size_t f = 0; f < p.facets.size(); ++f) {
    if (p.facets[f].area <= 0.0) throw InvariantViolation("polytope_cone_volume: degenerate facet");
    m.directions.row(static_cast<Eigen::Index>(f)) = p.facets[f].normal.transpose();
    m.masses[static_cast<Eigen::Index>(f)] = p.facets[f].offset * p.facets[f].area / n;
  }
  return m;
}

McEstimate radial_total_mc(const ConvexBody& body, double p, double q, std::int64_t samples,
                           std::uint64_t seed) {
  if (samples <= 1) throw InvalidInput("radial_total_mc: need at least 2 samples");
  if (std::holds_alternative<SupportBody>(body))
    throw InvalidInput("radial_total_mc: support-field bodies use the density path");
  const int n = body_dim(body);

  // h(nu(x)) and rho(v) at the radial boundary point x = rho(v) v
  std::function<double(const Vec&)> sample_value;
  if (const auto* e = std::get_if<Ellipsoid>(&body)) {
    Ellipsoid el = *e;
    sample_value = [el, p, q](const Vec& v) {
      Vec w = el.rotation.transpose() * v;
      double rho = 1.0 / (w.array() / el.axes.array()).matrix().norm();
      Vec nu = el.rotation * (rho * w.array() / el.axes.array().square()).matrix();
      nu /= nu.norm();
      Vec aw = el.rotation.transpose() * nu;
      double h = (el.axes.array() * aw.array()).matrix().norm();
      return std::pow(h, -p) * std::pow(rho, q);
    };
  } else {
    Polytope poly = std::get<Polytope>(body);
    sample_value = [poly, p, q](const Vec& v) {
      double rho = std::numeric_limits<double>::infinity();
      double h = 0.0;
      for (const auto& f : poly.facets) {
        double d = f.normal.dot(v);
        if (d > 1e-14 && f.offset / d < rho) {
          rho = f.offset / d;
          h = f.offset;
        }
      }
      return std::pow(h, -p) * std::pow(rho, q);
    };
  }

  // fixed-size blocks merged in order: the estimate is independent of the
  // worker count
  const std::int64_t block = 4096;
  const std::int64_t nblocks = (samples + block - 1) / block;
  Eigen::VectorXd sums(nblocks), squares(nblocks);
  parallel_for(nblocks, [&](std::ptrdiff_t b) {
    double s = 0.0, s2 = 0.0;
    std::int64_t lo = b * block, hi = std::min(samples, lo + block);
    for (std::int64_t i = lo; i < hi; ++i) {
      Vec v = uniform_direction(n, seed, static_cast<std::uint64_t>(i));
      double val = sample_value(v);
      s += val;
      s2 += val * val;
    }
    sums[b] = s;
    squares[b] = s2;
  });
  double sum = 0.0, sum2 = 0.0;
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    sum += sums[b];
    sum2 += squares[b];
  }
  double mean = sum / static_cast<double>(samples);
  double var = std::max(0.0, sum2 / static_cast<double>(samples) - mean * mean);
  double area = sphere_area(n);
  McEstimate est;
  est.estimate = area * mean;
  est.std_error = area * std::sqrt(var / static_cast<double>(samples));
  est.samples = samples;
  return est;
}

}  // namespace dualmink
