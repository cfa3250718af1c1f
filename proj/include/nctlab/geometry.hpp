#pragma once

// Chern numbers of the degree-p line bundle over E_tau.
//
// Homogeneous route: connection 1-form (2 pi i p / omega_y) y dx with constant
// curvature. Grassmannian route (tau = i): two charts U_1 = {0 < y < 1},
// U_2 = {y != 1/2}, partition of unity (sin pi y)^2 + (cos pi y)^2 = 1,
// frame Psi = (psi_1, g psi_2) and projection P = Psi Psi^dagger.

#include <vector>

#include <Eigen/Dense>

#include "nctlab/weyl.hpp"

namespace nct {

/// (i / 2 pi) integral of the constant curvature -(2 pi i p / omega_y) dx ^ dy
/// over the fundamental parallelogram (area omega_y).
double chern_homogeneous(int p, cplx tau);

struct PartitionPair {
  double psi1 = 0.0;  // sin(pi y)
  double psi2 = 0.0;  // cos(pi y)
};

PartitionPair partition_chi(double y);

/// 1 for y <= 1/2, e^{2 pi i p x} for y > 1/2. At y = 1/2 both partition
/// weights see psi_2 = 0, so the lower value is returned.
cplx transition_g(double x, double y, int p);

struct GridSize {
  int nx = 0;
  int ny = 0;
};

/// Node samples over [0,1]^2, endpoints included: (nx+1) x (ny+1) values,
/// node (i,j) at (i/nx, j/ny).
struct GridField {
  GridSize size;
  std::vector<cplx> values;

  cplx at(int i, int j) const { return values[static_cast<std::size_t>(j) * (size.nx + 1) + i]; }
};

class ProjectionField {
 public:
  ProjectionField(GridSize size, std::vector<Eigen::Matrix2cd> nodes);

  GridSize size() const { return size_; }
  const Eigen::Matrix2cd& at(int i, int j) const {
    return nodes_[static_cast<std::size_t>(j) * (size_.nx + 1) + i];
  }

  /// Maxima over nodes of max-entry norms.
  double idempotency_defect() const;  // |P^2 - P|
  double hermiticity_defect() const;  // |P^dagger - P|
  double trace_defect() const;        // |tr P - 1|
  double periodicity_defect() const;  // |P(x,0) - P(x,1)|, |P(0,y) - P(1,y)|
  double max_defect() const;

 private:
  GridSize size_;
  std::vector<Eigen::Matrix2cd> nodes_;
};

/// Throws ConstructionError when P^2 = P fails beyond 1e-10 at some node.
ProjectionField projection_P(GridSize grid, int p);

/// Omega_xy of Omega = dPsi^dagger ^ dPsi, from analytic node derivatives of
/// the frame. Purely imaginary.
GridField curvature_field(int p, GridSize grid);

struct ChernEstimate {
  double value = 0.0;      // Richardson-extrapolated from grids ny and ny/2
  double est_error = 0.0;  // |R(h) - R(2h)| when ny % 8 == 0, else |T(h) - T(2h)| / 3
  double trapezoid = 0.0;  // raw composite trapezoid on the full grid
};

/// Requires nx, ny >= 8 and ny % 4 == 0, so that y = 1/2, where psi_2
/// vanishes and g jumps, is a node of both the fine and the halved grid.
ChernEstimate chern_grassmann(int p, GridSize grid);

/// p (|psi_2(1)|^2 - |psi_2(1/2)|^2), the closed-form value of the Grassmannian integral.
double chern_boundary_identity(int p);

}  // namespace nct
