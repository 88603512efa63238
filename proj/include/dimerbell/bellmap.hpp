#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dimerbell {

// Measurement directions in the XZ plane, shared by both parties: input x
// measures A_x = cos(theta_x) * sigma_x + sin(theta_x) * sigma_z. Only the
// correlator component of each input is free (the remaining index of the
// general construction is a trivial marginal for two outcomes), so one angle
// per input suffices.
struct MeasurementAngles {
  int m = 2;
  std::vector<double> theta;  // size m, radians

  // Canonical CHSH pair {0, pi/2}: A_0 = sigma_x, A_1 = sigma_z.
  static MeasurementAngles chsh();
  // Equally spaced angles x * pi / (2m), the chained-inequality default.
  static MeasurementAngles equally_spaced(int m);
};

// The coefficient-recovery system T * alpha = b. Column (x1, x2) of T (x1
// major) holds the expansion of A_{x1} (x) A_{x2} over the correlator basis
// {XX, XZ, ZX, ZZ}: (cos t1 cos t2, cos t1 sin t2, sin t1 cos t2,
// sin t1 sin t2). b is the chained-Bell target 2m * (2cos^2(pi/2m),
// sin(pi/m), sin(pi/m), -2cos^2(pi/2m)).
struct LinearSystem {
  int m = 2;
  Eigen::MatrixXd T;  // 4 x m^2
  Eigen::Vector4d b;
};

LinearSystem build_system(const MeasurementAngles& angles);

struct AlphaSolution {
  Eigen::VectorXd alpha;  // size m^2, indexed (x1, x2) with x1 major
  int rank = 0;           // numerical rank of T (singular values > 1e-10 * max)
  bool unique = false;    // square full-rank system; otherwise minimum-norm member
  double residual = 0.0;  // ||T * alpha - b||
};

// Solves the system by SVD. A unique solution exists iff T is 4x4 and
// full-rank; rank-deficient or wide systems return the minimum-norm member of
// the solution family. Throws std::runtime_error when b is outside the column
// space (no exact solution).
AlphaSolution solve_alpha(const LinearSystem& sys);

// Two-qubit operator sum_{x1,x2} alpha_{x1,x2} A_{x1} (x) A_{x2}.
Eigen::Matrix4d bell_operator_matrix(const MeasurementAngles& angles,
                                     const Eigen::VectorXd& alpha);

// Minimum of sum alpha_{x1,x2} a_{x1} b_{x2} over deterministic outcome
// assignments a, b in {-1,+1}^m: the classical bound of the recovered
// two-site inequality.
double classical_min_deterministic(const MeasurementAngles& angles,
                                   const Eigen::VectorXd& alpha);

}  // namespace dimerbell
