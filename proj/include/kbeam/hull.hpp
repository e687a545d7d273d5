#pragma once

#include <span>
#include <vector>

#include "kbeam/problem.hpp"
#include "kbeam/rng.hpp"

namespace kbeam {

/// A point of co{z_1, ..., z_n} together with its convex coefficients over
/// the input list: a_j >= 0, sum a_j = 1, point = sum a_j z_j.
struct HullPoint {
  Vector point;
  std::vector<double> coefficients;
};

/// Minimum-norm point of co{z_1, ..., z_n} via Wolfe's algorithm.
///
/// The result carries the Wolfe optimality certificate
///   <z*, z_j - z*> >= -tol   for every input z_j,
/// which certifies ||z*|| minimal over the hull up to tol. The solver
/// iterates to well below tol internally so the certificate holds with
/// margin. ||z*|| never exceeds min_j ||z_j||.
HullPoint min_norm_point(const std::vector<Vector>& vectors, double tol = 1e-9);

/// True iff ||min_norm_point(vectors)|| <= tol, i.e. 0 is in the hull up to tol.
bool contains_origin(const std::vector<Vector>& vectors, double tol = 1e-9);

/// Convex coefficients from n uniforms in [0,1): a_j = E_j / sum(E) with
/// E_j = -log(1 - U_j), i.e. a flat Dirichlet sample. U_j = 0 pins a_j to 0,
/// so a degenerate uniform source can force any simplex vertex.
std::vector<double> dirichlet_from_uniforms(std::span<const double> uniforms);

/// Random point of co{z_1, ..., z_n}, coefficients flat-Dirichlet.
/// Consumes exactly n draws from rng.
Vector sample_convex_combination(const std::vector<Vector>& vectors, SplitMix64& rng);

}  // namespace kbeam
