#include "dimerbell/bellmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dimerbell {

namespace {

void validate(const MeasurementAngles& angles) {
  if (angles.m < 2) throw std::invalid_argument("bell map requires m >= 2 inputs");
  if (static_cast<int>(angles.theta.size()) != angles.m) {
    throw std::invalid_argument("expected one angle per input (" + std::to_string(angles.m) +
                                "), got " + std::to_string(angles.theta.size()));
  }
}

Eigen::Matrix2d observable(double theta) {
  Eigen::Matrix2d sx, sz;
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  return std::cos(theta) * sx + std::sin(theta) * sz;
}

}  // namespace

MeasurementAngles MeasurementAngles::chsh() {
  return {2, {0.0, std::numbers::pi / 2}};
}

MeasurementAngles MeasurementAngles::equally_spaced(int m) {
  if (m < 2) throw std::invalid_argument("bell map requires m >= 2 inputs");
  MeasurementAngles a{m, {}};
  a.theta.resize(m);
  for (int x = 0; x < m; ++x) a.theta[x] = x * std::numbers::pi / (2 * m);
  return a;
}

LinearSystem build_system(const MeasurementAngles& angles) {
  validate(angles);
  const int m = angles.m;
  LinearSystem sys;
  sys.m = m;
  sys.T.resize(4, m * m);
  for (int x1 = 0; x1 < m; ++x1) {
    const double c1 = std::cos(angles.theta[x1]);
    const double s1 = std::sin(angles.theta[x1]);
    for (int x2 = 0; x2 < m; ++x2) {
      const double c2 = std::cos(angles.theta[x2]);
      const double s2 = std::sin(angles.theta[x2]);
      sys.T.col(x1 * m + x2) << c1 * c2, c1 * s2, s1 * c2, s1 * s2;
    }
  }
  const double half = std::numbers::pi / (2 * m);
  const double c2h = 2.0 * std::cos(half) * std::cos(half);
  const double s = std::sin(std::numbers::pi / m);
  sys.b << 2.0 * m * c2h, 2.0 * m * s, 2.0 * m * s, -2.0 * m * c2h;
  return sys;
}

AlphaSolution solve_alpha(const LinearSystem& sys) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.T, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-10 * (sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  svd.setThreshold(1e-10);
  AlphaSolution out;
  out.alpha = svd.solve(sys.b);  // minimum-norm least-squares member
  out.rank = rank;
  out.unique = sys.T.cols() == 4 && rank == 4;
  out.residual = (sys.T * out.alpha - sys.b).norm();
  const double scale = std::max(1.0, sys.b.norm());
  if (out.residual > 1e-10 * scale) {
    throw std::runtime_error(
        "coefficient system is inconsistent: the target vector lies outside the span of the "
        "measurement products (residual " +
        std::to_string(out.residual) + ")");
  }
  return out;
}

Eigen::Matrix4d bell_operator_matrix(const MeasurementAngles& angles,
                                     const Eigen::VectorXd& alpha) {
  validate(angles);
  const int m = angles.m;
  if (alpha.size() != m * m) throw std::invalid_argument("alpha must have m^2 entries");
  Eigen::Matrix4d op = Eigen::Matrix4d::Zero();
  for (int x1 = 0; x1 < m; ++x1) {
    const Eigen::Matrix2d a = observable(angles.theta[x1]);
    for (int x2 = 0; x2 < m; ++x2) {
      const Eigen::Matrix2d b = observable(angles.theta[x2]);
      Eigen::Matrix4d kron;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) kron.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
      op += alpha(x1 * m + x2) * kron;
    }
  }
  return op;
}

double classical_min_deterministic(const MeasurementAngles& angles,
                                   const Eigen::VectorXd& alpha) {
  validate(angles);
  const int m = angles.m;
  if (alpha.size() != m * m) throw std::invalid_argument("alpha must have m^2 entries");
  if (m > 12) throw std::invalid_argument("deterministic enumeration capped at m = 12");
  double best = std::numeric_limits<double>::infinity();
  for (unsigned av = 0; av < (1u << m); ++av) {
    for (unsigned bv = 0; bv < (1u << m); ++bv) {
      double val = 0.0;
      for (int x1 = 0; x1 < m; ++x1) {
        const double a = (av >> x1) & 1 ? -1.0 : 1.0;
        for (int x2 = 0; x2 < m; ++x2) {
          const double b = (bv >> x2) & 1 ? -1.0 : 1.0;
          val += alpha(x1 * m + x2) * a * b;
        }
      }
      best = std::min(best, val);
    }
  }
  return best;
}

}  // namespace dimerbell
