#include "dualmink/sphere_grid.hpp"

#include <cmath>
#include <vector>

#include "dualmink/parallel.hpp"

namespace dualmink {

namespace {

// Kahan-compensated accumulator; keeps quadrature and synthesis sums at a
// couple of ulps so that finite differences of the interpolant stay quiet.
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    // root of P_n near the Chebyshev angle, polished by Newton
    double t = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[n - 1 - i] = t;  // store ascending
    w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

thread_local Eigen::VectorXd tl_harmonic_buffer;

}  // namespace

double SphericalGrid::area() const { return sphere_area(dim); }

GridPtr build_grid(int dim, int L) {
  if (dim != 2 && dim != 3) throw InvalidInput("build_grid: dimension must be 2 or 3");
  if (L < 4) throw InvalidInput("build_grid: resolution L must be at least 4");
  auto g = std::make_shared<SphericalGrid>();
  g->dim = dim;
  g->resolution = L;
  if (dim == 2) {
    g->nodes.resize(L, 2);
    g->weights.setConstant(L, 2.0 * kPi / L);
    g->tangent1.resize(L, 2);
    for (int j = 0; j < L; ++j) {
      double th = 2.0 * kPi * j / L;
      double c = std::cos(th), s = std::sin(th);
      g->nodes.row(j) << c, s;
      g->tangent1.row(j) << -s, c;
    }
  } else {
    Eigen::VectorXd t, glw;
    gauss_legendre(L, t, glw);
    int M = 2 * L;
    g->nodes.resize(L * M, 3);
    g->weights.resize(L * M);
    g->tangent1.resize(L * M, 3);
    g->tangent2.resize(L * M, 3);
    for (int i = 0; i < L; ++i) {
      double ti = t[i];
      double si = std::sqrt(std::max(0.0, 1.0 - ti * ti));
      double wi = glw[i] * kPi / L;
      for (int j = 0; j < M; ++j) {
        double ph = kPi * j / L;
        double c = std::cos(ph), s = std::sin(ph);
        Eigen::Index r = static_cast<Eigen::Index>(i) * M + j;
        g->nodes.row(r) << si * c, si * s, ti;
        g->weights[r] = wi;
        g->tangent1.row(r) << -s, c, 0.0;               // longitude direction
        g->tangent2.row(r) << -ti * c, -ti * s, si;     // latitude direction
      }
    }
  }
  return g;
}

ScalarField::ScalarField(GridPtr g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw InvalidInput("ScalarField: null grid");
  if (values.size() != grid->node_count()) throw InvalidInput("ScalarField: value count does not match grid");
  if (!values.allFinite()) throw InvariantViolation("ScalarField: non-finite values");
}

ScalarField constant_field(const GridPtr& grid, double c) {
  return ScalarField(grid, Eigen::VectorXd::Constant(grid->node_count(), c));
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where) {
  if (!a || !b) throw InvalidInput(std::string(where) + ": missing grid");
  if (a == b) return;
  if (a->dim != b->dim || a->resolution != b->resolution)
    throw InvalidInput(std::string(where) + ": grid mismatch");
}

double integrate(const GridPtr& grid, const Eigen::VectorXd& values) {
  if (!grid || values.size() != grid->node_count())
    throw InvalidInput("integrate: field does not belong to grid");
  Kahan acc;
  for (Eigen::Index i = 0; i < values.size(); ++i) acc.add(grid->weights[i] * values[i]);
  return acc.sum;
}

double integrate(const ScalarField& field) { return integrate(field.grid, field.values); }

// --------------------------------------------------------------------------
// Harmonics
// --------------------------------------------------------------------------

int harmonic_count(int dim, int degree) {
  if (degree < 0) return 0;
  return dim == 2 ? 2 * degree + 1 : (degree + 1) * (degree + 1);
}

int harmonic_index(int dim, int k, int m) {
  if (dim == 2) {
    if (k < 0 || (k == 0 && m != 0) || (k > 0 && m != 0 && m != 1))
      throw InvalidInput("harmonic_index: invalid (k, m) for n = 2");
    return k == 0 ? 0 : 2 * k - 1 + m;
  }
  if (k < 0 || std::abs(m) > k) throw InvalidInput("harmonic_index: invalid (k, m) for n = 3");
  return k * k + (m + k);
}

int harmonic_degree_of(int dim, int index) {
  if (index < 0) throw InvalidInput("harmonic_degree_of: negative index");
  if (dim == 2) return (index + 1) / 2;
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(index) + 0.5)));
}

double laplace_eigenvalue(int dim, int k) {
  return static_cast<double>(k) * k + (dim - 2.0) * k;
}

namespace {

// cached recurrence coefficients for the orthonormalized associated
// Legendre functions, shared by every evaluation up to kAlpTableDegree
constexpr int kAlpTableDegree = 80;

struct AlpTable {
  // flattened over m <= k <= deg
  std::vector<double> a, b, diag, next;
  static int idx(int k, int m) { return k * (k + 1) / 2 + m; }
};

const AlpTable& alp_table() {
  static const AlpTable table = [] {
    AlpTable t;
    int size = AlpTable::idx(kAlpTableDegree, kAlpTableDegree) + 1;
    t.a.assign(static_cast<size_t>(size), 0.0);
    t.b.assign(static_cast<size_t>(size), 0.0);
    t.diag.assign(static_cast<size_t>(kAlpTableDegree) + 1, 0.0);
    t.next.assign(static_cast<size_t>(kAlpTableDegree) + 1, 0.0);
    for (int m = 0; m <= kAlpTableDegree; ++m) {
      t.diag[static_cast<size_t>(m)] = m == 0 ? 0.0 : std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      t.next[static_cast<size_t>(m)] = std::sqrt(2.0 * m + 3.0);
      for (int k = m + 2; k <= kAlpTableDegree; ++k) {
        double kk = k, mm = m;
        t.a[static_cast<size_t>(AlpTable::idx(k, m))] =
            std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - mm * mm));
        t.b[static_cast<size_t>(AlpTable::idx(k, m))] =
            std::sqrt(((kk - 1.0) * (kk - 1.0) - mm * mm) / (4.0 * (kk - 1.0) * (kk - 1.0) - 1.0));
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

void evaluate_harmonics(int dim, int degree, const Vec& x, Eigen::VectorXd& out) {
  out.resize(harmonic_count(dim, degree));
  if (degree < 0) return;
  if (dim == 2) {
    out[0] = 1.0 / std::sqrt(2.0 * kPi);
    double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    double c1 = x[0], s1 = x[1];
    double ck = 1.0, sk = 0.0;
    for (int k = 1; k <= degree; ++k) {
      double cn = ck * c1 - sk * s1;
      double sn = sk * c1 + ck * s1;
      ck = cn;
      sk = sn;
      out[2 * k - 1] = ck * inv_sqrt_pi;
      out[2 * k] = sk * inv_sqrt_pi;
    }
    return;
  }
  // n = 3: orthonormalized associated Legendre recurrence in (t, phi).
  if (degree > kAlpTableDegree)
    throw InvalidInput("evaluate_harmonics: degree exceeds the coefficient table");
  const AlpTable& tab = alp_table();
  double t = std::clamp(x[2], -1.0, 1.0);
  double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  double phi = std::atan2(x[1], x[0]);
  double cphi = std::cos(phi), sphi = std::sin(phi);

  const double sqrt2 = std::sqrt(2.0);
  double smm = std::sqrt(1.0 / (4.0 * kPi));  // S_m^m, starting at m = 0
  double cm = 1.0, sm = 0.0;                  // cos(m phi), sin(m phi)
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) {
      smm *= tab.diag[static_cast<size_t>(m)] * s;
      double cn = cm * cphi - sm * sphi;
      double sn = sm * cphi + cm * sphi;
      cm = cn;
      sm = sn;
    }
    double skm2 = 0.0;
    double skm1 = smm;
    for (int k = m; k <= degree; ++k) {
      double skm;
      if (k == m) {
        skm = smm;
      } else if (k == m + 1) {
        skm = tab.next[static_cast<size_t>(m)] * t * smm;
      } else {
        size_t at = static_cast<size_t>(AlpTable::idx(k, m));
        skm = tab.a[at] * (t * skm1 - tab.b[at] * skm2);
      }
      if (m == 0) {
        out[k * k + k] = skm;
      } else {
        out[k * k + k + m] = sqrt2 * skm * cm;
        out[k * k + k - m] = sqrt2 * skm * sm;
      }
      skm2 = skm1;
      skm1 = skm;
    }
  }
}

ScalarField spherical_harmonic_field(const GridPtr& grid, int k, int m) {
  if (!grid) throw InvalidInput("spherical_harmonic_field: null grid");
  int idx = harmonic_index(grid->dim, k, m);  // validates (k, m)
  Eigen::VectorXd vals(grid->node_count());
  Eigen::VectorXd buf;
  for (Eigen::Index i = 0; i < grid->node_count(); ++i) {
    evaluate_harmonics(grid->dim, k, grid->node(i), buf);
    vals[i] = buf[idx];
  }
  return ScalarField(grid, std::move(vals));
}

int interpolation_degree(const SphericalGrid& grid) {
  return grid.dim == 2 ? grid.resolution / 2 - 1 : grid.resolution - 2;
}

Eigen::VectorXd analyze(const ScalarField& field, int degree) {
  const SphericalGrid& g = *field.grid;
  if (degree < 0) degree = interpolation_degree(g);
  const int M = harmonic_count(g.dim, degree);
  const Eigen::Index N = g.node_count();

  // Fixed 256-node blocks with an ordered merge: identical output for any
  // worker count.
  const Eigen::Index block = 256;
  const Eigen::Index nblocks = (N + block - 1) / block;
  Eigen::MatrixXd partial = Eigen::MatrixXd::Zero(M, nblocks);
  parallel_for(nblocks, [&](std::ptrdiff_t b) {
    Eigen::VectorXd buf;
    std::vector<Kahan> acc(static_cast<size_t>(M));
    Eigen::Index lo = b * block, hi = std::min(N, lo + block);
    for (Eigen::Index i = lo; i < hi; ++i) {
      evaluate_harmonics(g.dim, degree, g.node(i), buf);
      double wu = g.weights[i] * field.values[i];
      for (int j = 0; j < M; ++j) acc[static_cast<size_t>(j)].add(wu * buf[j]);
    }
    for (int j = 0; j < M; ++j) partial(j, b) = acc[static_cast<size_t>(j)].sum;
  });

  Eigen::VectorXd coeffs(M);
  for (int j = 0; j < M; ++j) {
    Kahan acc;
    for (Eigen::Index b = 0; b < nblocks; ++b) acc.add(partial(j, b));
    coeffs[j] = acc.sum;
  }

  // Drop coefficients at the round-off floor, so differentiating the
  // interpolant of a constant returns an exact constant.
  double floor = 1e-14 * coeffs.cwiseAbs().maxCoeff();
  for (int j = 0; j < M; ++j)
    if (std::abs(coeffs[j]) < floor) coeffs[j] = 0.0;
  return coeffs;
}

SphereInterpolant::SphereInterpolant(const ScalarField& field, int degree)
    : grid_(field.grid), dim_(field.grid->dim) {
  degree_ = degree < 0 ? interpolation_degree(*grid_) : degree;
  coeffs_ = analyze(field, degree_);
  // trim trailing all-zero degrees; spectrally sparse fields evaluate faster
  int effective = 0;
  for (Eigen::Index j = 0; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0.0) effective = harmonic_degree_of(dim_, static_cast<int>(j));
  if (effective < degree_) {
    coeffs_.conservativeResize(harmonic_count(dim_, effective));
    degree_ = effective;
  }
}

SphereInterpolant::SphereInterpolant(GridPtr grid, Eigen::VectorXd coefficients)
    : grid_(std::move(grid)), coeffs_(std::move(coefficients)) {
  if (!grid_) throw InvalidInput("SphereInterpolant: null grid");
  dim_ = grid_->dim;
  degree_ = coeffs_.size() == 0 ? -1 : harmonic_degree_of(dim_, static_cast<int>(coeffs_.size()) - 1);
  if (harmonic_count(dim_, degree_) != coeffs_.size())
    throw InvalidInput("SphereInterpolant: coefficient count is not a full basis");
}

double SphereInterpolant::operator()(const Vec& x) const {
  evaluate_harmonics(dim_, degree_, x, tl_harmonic_buffer);
  Kahan acc;
  for (Eigen::Index j = 0; j < coeffs_.size(); ++j) {
    double cj = coeffs_[j];
    if (cj != 0.0) acc.add(cj * tl_harmonic_buffer[j]);
  }
  return acc.sum;
}

ScalarField SphereInterpolant::to_field(const GridPtr& grid) const {
  Eigen::VectorXd vals(grid->node_count());
  parallel_for(grid->node_count(), [&](std::ptrdiff_t i) { vals[i] = (*this)(grid->node(i)); });
  return ScalarField(grid, std::move(vals));
}

SphereFunction SphereInterpolant::as_function() const {
  SphereInterpolant copy = *this;
  return [copy](const Vec& x) { return copy(x); };
}

// --------------------------------------------------------------------------
// Differentiation
// --------------------------------------------------------------------------

Eigen::VectorXd FrameHessianField::determinant() const {
  if (grid->dim == 2) return entries.col(0);
  return (entries.col(0).array() * entries.col(2).array() - entries.col(1).array().square()).matrix();
}

Eigen::VectorXd FrameHessianField::trace() const {
  if (grid->dim == 2) return entries.col(0);
  return entries.col(0) + entries.col(2);
}

Eigen::VectorXd FrameHessianField::min_eigenvalue() const {
  if (grid->dim == 2) return entries.col(0);
  Eigen::VectorXd out(entries.rows());
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    double a = entries(i, 0), c = entries(i, 1), b = entries(i, 2);
    double mid = 0.5 * (a + b);
    double rad = std::hypot(0.5 * (a - b), c);
    out[i] = mid - rad;
  }
  return out;
}

namespace {

// Second derivative along a great circle equals the covariant Hessian in the
// circle's direction; the formula below is the 5-point 4th-order stencil in
// increment form so that constant inputs give exactly zero.
struct CircleSamples {
  double d1;  // first derivative at s = 0
  double d2;  // second derivative at s = 0
};

CircleSamples circle_derivatives(const SphereFunction& f, const Vec& v, const Vec& d,
                                 double f0, double h) {
  auto at = [&](double s) {
    Vec x = std::cos(s) * v + std::sin(s) * d;
    return f(x);
  };
  double fp1 = at(h), fm1 = at(-h), fp2 = at(2.0 * h), fm2 = at(-2.0 * h);
  CircleSamples out;
  out.d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  out.d2 = (16.0 * ((fp1 - f0) + (fm1 - f0)) - ((fp2 - f0) + (fm2 - f0))) / (12.0 * h * h);
  return out;
}

}  // namespace

PointDerivatives sphere_derivatives_at(const SphereFunction& f, const Vec& v, const Mat& frame,
                                       double fd_step) {
  const int n = static_cast<int>(v.size());
  PointDerivatives out;
  out.value = f(v);
  out.gradient = Vec::Zero(n);
  out.frame_hessian = Mat::Zero(n - 1, n - 1);
  if (n == 2) {
    Vec e1 = frame.col(0);
    CircleSamples c = circle_derivatives(f, v, e1, out.value, fd_step);
    out.gradient = c.d1 * e1;
    out.frame_hessian(0, 0) = c.d2 + out.value;
    return out;
  }
  Vec e1 = frame.col(0), e2 = frame.col(1);
  CircleSamples c1 = circle_derivatives(f, v, e1, out.value, fd_step);
  CircleSamples c2 = circle_derivatives(f, v, e2, out.value, fd_step);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vec wp = (e1 + e2) * inv_sqrt2;
  Vec wm = (e1 - e2) * inv_sqrt2;
  CircleSamples cp = circle_derivatives(f, v, wp, out.value, fd_step);
  CircleSamples cm = circle_derivatives(f, v, wm, out.value, fd_step);
  out.gradient = c1.d1 * e1 + c2.d1 * e2;
  out.frame_hessian(0, 0) = c1.d2 + out.value;
  out.frame_hessian(1, 1) = c2.d2 + out.value;
  out.frame_hessian(0, 1) = out.frame_hessian(1, 0) = 0.5 * (cp.d2 - cm.d2);
  return out;
}

SphereJet sphere_jet(const GridPtr& grid, const SphereFunction& f, double fd_step) {
  if (!grid) throw InvalidInput("sphere_jet: null grid");
  const int n = grid->dim;
  const Eigen::Index N = grid->node_count();
  SphereJet jet;
  Eigen::VectorXd u(N);
  Eigen::MatrixXd gradients(N, n);
  Eigen::MatrixXd entries(N, n == 2 ? 1 : 3);
  parallel_for(N, [&](std::ptrdiff_t i) {
    Mat frame(n, n - 1);
    frame.col(0) = grid->tangent1.row(i).transpose();
    if (n == 3) frame.col(1) = grid->tangent2.row(i).transpose();
    PointDerivatives d = sphere_derivatives_at(f, grid->node(i), frame, fd_step);
    u[i] = d.value;
    gradients.row(i) = d.gradient.transpose();
    if (n == 2) {
      entries(i, 0) = d.frame_hessian(0, 0);
    } else {
      entries(i, 0) = d.frame_hessian(0, 0);
      entries(i, 1) = d.frame_hessian(0, 1);
      entries(i, 2) = d.frame_hessian(1, 1);
    }
  });
  jet.u = ScalarField(grid, std::move(u));
  jet.grad = TangentField{grid, std::move(gradients)};
  jet.hess = FrameHessianField{grid, std::move(entries)};
  return jet;
}

SphereJet sphere_jet(const ScalarField& u, double fd_step) {
  SphereInterpolant interp(u);
  return sphere_jet(u.grid, interp.as_function(), fd_step);
}

TangentField gradient(const ScalarField& u, double fd_step) { return sphere_jet(u, fd_step).grad; }

FrameHessianField sphere_hessian(const ScalarField& u, double fd_step) {
  return sphere_jet(u, fd_step).hess;
}

ScalarField laplacian(const ScalarField& u, double fd_step) {
  SphereJet jet = sphere_jet(u, fd_step);
  Eigen::VectorXd lap = jet.hess.trace() - (u.grid->dim - 1.0) * jet.u.values;
  return ScalarField(u.grid, std::move(lap));
}

}  // namespace dualmink
