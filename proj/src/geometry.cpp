#include "nctlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nctlab/errors.hpp"

namespace nct {

namespace {

void require_grid(GridSize g) {
  if (g.nx < 8 || g.ny < 8) throw std::invalid_argument("grid must be at least 8 x 8");
}

double max_entry(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

// Frame Psi and its analytic partial derivatives at (x, y).
struct Frame {
  Eigen::Vector2cd psi, dx, dy;
};

Frame frame_at(double x, double y, int p) {
  const auto [s, c] = partition_chi(y);
  const cplx g = transition_g(x, y, p);
  const bool upper = y > 0.5;
  const cplx dgdx = upper ? cplx(0.0, 2.0 * kPi * p) * g : cplx(0.0);
  Frame f;
  f.psi << s, g * c;
  f.dx << 0.0, dgdx * c;
  f.dy << kPi * c, -kPi * g * s;
  return f;
}

// Trapezoid over [0,1]^2 of (i / 2 pi) Omega_xy using every stride-th node; x keeps full resolution
// when nx is not divisible by the stride.
double trapezoid(const GridField& field, int stride) {
  const int sx = field.size.nx % stride == 0 ? stride : 1;
  const int nx = field.size.nx / sx, ny = field.size.ny / stride;
  double sum = 0.0;
  for (int j = 0; j <= ny; ++j) {
    const double wy = (j == 0 || j == ny) ? 0.5 : 1.0;
    for (int i = 0; i <= nx; ++i) {
      const double wx = (i == 0 || i == nx) ? 0.5 : 1.0;
      sum += wx * wy * (kI / (2.0 * kPi) * field.at(i * sx, j * stride)).real();
    }
  }
  return sum / (double(nx) * ny);
}

}  // namespace

double chern_homogeneous(int p, cplx tau) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("Im(tau) must be positive");
  const cplx omega_xy = cplx(0.0, -2.0 * kPi * p / tau.imag());
  const double area = tau.imag();
  return (kI / (2.0 * kPi) * omega_xy * area).real();
}

PartitionPair partition_chi(double y) { return {std::sin(kPi * y), std::cos(kPi * y)}; }

cplx transition_g(double x, double y, int p) {
  return y > 0.5 ? unit_phase(2.0 * kPi * p * x) : cplx(1.0);
}

ProjectionField::ProjectionField(GridSize size, std::vector<Eigen::Matrix2cd> nodes)
    : size_(size), nodes_(std::move(nodes)) {
  if (nodes_.size() != static_cast<std::size_t>(size.nx + 1) * (size.ny + 1))
    throw std::invalid_argument("projection field node count does not match grid");
}

double ProjectionField::idempotency_defect() const {
  double d = 0.0;
  for (const auto& P : nodes_) d = std::max(d, max_entry(P * P - P));
  return d;
}

double ProjectionField::hermiticity_defect() const {
  double d = 0.0;
  for (const auto& P : nodes_) d = std::max(d, max_entry(P.adjoint() - P));
  return d;
}

double ProjectionField::trace_defect() const {
  double d = 0.0;
  for (const auto& P : nodes_) d = std::max(d, std::abs(P.trace() - 1.0));
  return d;
}

double ProjectionField::periodicity_defect() const {
  double d = 0.0;
  for (int i = 0; i <= size_.nx; ++i) d = std::max(d, max_entry(at(i, 0) - at(i, size_.ny)));
  for (int j = 0; j <= size_.ny; ++j) d = std::max(d, max_entry(at(0, j) - at(size_.nx, j)));
  return d;
}

double ProjectionField::max_defect() const {
  return std::max({idempotency_defect(), hermiticity_defect(), trace_defect(), periodicity_defect()});
}

ProjectionField projection_P(GridSize grid, int p) {
  require_grid(grid);
  std::vector<Eigen::Matrix2cd> nodes;
  nodes.reserve(static_cast<std::size_t>(grid.nx + 1) * (grid.ny + 1));
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) {
      const Eigen::Vector2cd psi = frame_at(double(i) / grid.nx, double(j) / grid.ny, p).psi;
      nodes.push_back(psi * psi.adjoint());
    }
  }
  ProjectionField field(grid, std::move(nodes));
  const double d = field.idempotency_defect();
  if (d > 1e-10) throw ConstructionError("projection fails P^2 = P by " + std::to_string(d));
  return field;
}

GridField curvature_field(int p, GridSize grid) {
  require_grid(grid);
  GridField out{grid, {}};
  out.values.reserve(static_cast<std::size_t>(grid.nx + 1) * (grid.ny + 1));
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) {
      const Frame f = frame_at(double(i) / grid.nx, double(j) / grid.ny, p);
      const cplx omega = f.dx.dot(f.dy) - f.dy.dot(f.dx);  // dot conjugates the left factor
      out.values.push_back(omega);
    }
  }
  return out;
}

ChernEstimate chern_grassmann(int p, GridSize grid) {
  require_grid(grid);
  if (grid.ny % 4 != 0) throw std::invalid_argument("ny must be divisible by 4");
  const GridField field = curvature_field(p, grid);
  ChernEstimate out;
  const double t1 = trapezoid(field, 1);
  const double t2 = trapezoid(field, 2);
  out.trapezoid = t1;
  out.value = t1 + (t1 - t2) / 3.0;
  if (grid.ny % 8 == 0) {
    const double t4 = trapezoid(field, 4);
    const double r2 = t2 + (t2 - t4) / 3.0;
    out.est_error = std::abs(out.value - r2);
  } else {
    out.est_error = std::abs(t1 - t2) / 3.0;
  }
  return out;
}

double chern_boundary_identity(int p) {
  const double a = partition_chi(1.0).psi2;
  const double b = partition_chi(0.5).psi2;
  return p * (a * a - b * b);
}

}  // namespace nct
