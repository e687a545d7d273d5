#include "kbeam/hull.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kbeam {

namespace {

void validate_input(const std::vector<Vector>& vectors, const char* what) {
  if (vectors.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty input");
  }
  const auto dim = vectors.front().size();
  for (const auto& z : vectors) {
    if (z.size() != dim) {
      throw std::invalid_argument(std::string(what) + ": mixed dimensions");
    }
  }
}

// Barycentric coordinates of the min-norm point of the affine hull of the
// active set: minimize ||s_0 + D b|| with D = [s_j - s_0], taking the
// minimum-norm least-squares b so rank-deficient sets (duplicates, collinear
// points) stay well defined.
Eigen::VectorXd affine_minimizer(const std::vector<Vector>& zs, const std::vector<int>& active) {
  const int m = static_cast<int>(active.size());
  Eigen::VectorXd bary(m);
  if (m == 1) {
    bary[0] = 1.0;
    return bary;
  }
  const Vector& s0 = zs[active[0]];
  Eigen::MatrixXd diffs(s0.size(), m - 1);
  for (int j = 1; j < m; ++j) {
    diffs.col(j - 1) = zs[active[j]] - s0;
  }
  const Eigen::VectorXd b = diffs.completeOrthogonalDecomposition().solve(-s0);
  bary[0] = 1.0 - b.sum();
  bary.tail(m - 1) = b;
  return bary;
}

Vector combine(const std::vector<Vector>& zs, const std::vector<int>& active,
               const Eigen::VectorXd& bary) {
  Vector x = Vector::Zero(zs.front().size());
  for (int j = 0; j < static_cast<int>(active.size()); ++j) {
    x += bary[j] * zs[active[j]];
  }
  return x;
}

}  // namespace

HullPoint min_norm_point(const std::vector<Vector>& zs, double tol) {
  validate_input(zs, "min_norm_point");
  if (!(tol > 0.0)) throw std::invalid_argument("min_norm_point: tol must be positive");

  const int n = static_cast<int>(zs.size());

  // Terminate well inside the requested certificate so downstream checks
  // that recompute the inner products with different rounding still pass.
  const double stop_tol = std::min(tol, 1e-13);
  const double drop_tol = 1e-14;

  int start = 0;
  for (int j = 1; j < n; ++j) {
    if (zs[j].squaredNorm() < zs[start].squaredNorm()) start = j;
  }

  std::vector<int> active{start};
  Eigen::VectorXd coeff = Eigen::VectorXd::Ones(1);
  Vector x = zs[start];

  const int max_major = 16 * (n + 2);
  for (int major = 0; major < max_major; ++major) {
    // Optimality: min_j <x, z_j> >= ||x||^2 - tol certifies x.
    const double xx = x.squaredNorm();
    int best = -1;
    double best_dot = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double d = x.dot(zs[j]);
      if (d < best_dot) {
        best_dot = d;
        best = j;
      }
    }
    if (best_dot >= xx - stop_tol) break;
    if (std::find(active.begin(), active.end(), best) != active.end()) break;

    active.push_back(best);
    coeff.conservativeResize(active.size());
    coeff[coeff.size() - 1] = 0.0;

    // Minor cycles: move to the affine minimizer, trimming the active set
    // whenever the minimizer leaves the simplex face.
    for (;;) {
      const Eigen::VectorXd bary = affine_minimizer(zs, active);
      if (bary.minCoeff() >= -drop_tol) {
        coeff = bary.cwiseMax(0.0);
        break;
      }
      double theta = 1.0;
      for (int j = 0; j < bary.size(); ++j) {
        if (bary[j] < drop_tol) {
          theta = std::min(theta, coeff[j] / (coeff[j] - bary[j]));
        }
      }
      coeff = (1.0 - theta) * coeff + theta * bary;
      std::vector<int> kept_idx;
      Eigen::VectorXd kept_coeff(coeff.size());
      int kept = 0;
      for (int j = 0; j < static_cast<int>(active.size()); ++j) {
        if (coeff[j] > drop_tol) {
          kept_idx.push_back(active[j]);
          kept_coeff[kept++] = coeff[j];
        }
      }
      if (kept == 0) {  // numerical corner: keep the largest coefficient
        int arg = 0;
        coeff.maxCoeff(&arg);
        kept_idx.push_back(active[arg]);
        kept_coeff[kept++] = 1.0;
      }
      active = std::move(kept_idx);
      coeff = kept_coeff.head(kept);
    }
    x = combine(zs, active, coeff);
  }

  HullPoint result;
  result.coefficients.assign(n, 0.0);
  const double total = coeff.sum();
  for (int j = 0; j < static_cast<int>(active.size()); ++j) {
    result.coefficients[active[j]] = coeff[j] / total;
  }
  Vector point = Vector::Zero(zs.front().size());
  for (int j = 0; j < n; ++j) {
    if (result.coefficients[j] != 0.0) point += result.coefficients[j] * zs[j];
  }
  result.point = std::move(point);
  return result;
}

bool contains_origin(const std::vector<Vector>& vectors, double tol) {
  return min_norm_point(vectors, tol).point.norm() <= tol;
}

std::vector<double> dirichlet_from_uniforms(std::span<const double> uniforms) {
  if (uniforms.empty()) {
    throw std::invalid_argument("dirichlet_from_uniforms: empty input");
  }
  std::vector<double> weights(uniforms.size());
  double total = 0.0;
  for (std::size_t j = 0; j < uniforms.size(); ++j) {
    weights[j] = -std::log1p(-uniforms[j]);  // Exp(1) from U in [0,1)
    total += weights[j];
  }
  if (total <= 0.0) {
    std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(weights.size()));
    return weights;
  }
  for (double& w : weights) w /= total;
  return weights;
}

Vector sample_convex_combination(const std::vector<Vector>& vectors, SplitMix64& rng) {
  validate_input(vectors, "sample_convex_combination");
  std::vector<double> uniforms(vectors.size());
  for (double& u : uniforms) u = rng.next_double();
  const std::vector<double> coeff = dirichlet_from_uniforms(uniforms);
  Vector x = Vector::Zero(vectors.front().size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    x += coeff[j] * vectors[j];
  }
  return x;
}

}  // namespace kbeam
