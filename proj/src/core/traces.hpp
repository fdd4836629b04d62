#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "core/filling.hpp"
#include "core/space.hpp"

namespace hypfill {

/// Function on interior samples of Z, aligned with space.interior_indices().
struct ZFunction {
  std::vector<double> values;
};

/// Function on boundary samples, aligned with space.boundary_indices().
struct BoundaryFunction {
  std::vector<double> values;
};

/// Function on the vertices of a filling graph.
struct GraphFunction {
  std::vector<double> values;
};

// Averaging extension: value at a vertex is the nu-weighted mean of u over
// its shadow; vertices with massless shadows inherit the nearest massy
// ancestor's value.
GraphFunction extend_EX(const ZFunction& u, const FillingGraph& g, const FiniteSpace& space);

// Discrete trace: mu_beta-weighted average over the star of the nearest
// level-N vertex, edge values taken as affine midpoints.
ZFunction trace_TX(const GraphFunction& w, const FillingGraph& g,
                   const std::vector<UniformizedEdge>& ues, const FiniteSpace& space);

struct BoundaryTrace {
  BoundaryFunction values;
  std::vector<double> oscillation;  // max jump between consecutive radii averages
};

// Ball-average boundary trace along a decreasing list of radii.
BoundaryTrace trace_TZ(const ZFunction& u, const FiniteSpace& space,
                       const std::vector<double>& radii);

// Per-boundary-sample zero-trace test: p-th power ball averages must fall
// below tol at the finest nonempty radius and decrease overall.
std::vector<char> zero_trace_test(const ZFunction& u, const FiniteSpace& space, double p,
                                  const std::vector<double>& radii, double tol);

// Whitney-type extension: pi-weighted average of f over boundary samples
// within twice the distance to the boundary (around the nearest one).
ZFunction extend_EZ(const BoundaryFunction& f, const FiniteSpace& space);

// Double sum |u(y)-u(x)|^p / (d^{theta p} nu(B(x,d))) nu_y nu_x over distinct
// interior pairs; the closed-ball convention keeps denominators positive.
double besov_energy(const ZFunction& u, const FiniteSpace& space, double theta, double p);
inline double besov_seminorm(const ZFunction& u, const FiniteSpace& space, double theta,
                             double p) {
  return std::pow(besov_energy(u, space, theta, p), 1.0 / p);
}

// Besov norm of boundary data with respect to pi, smoothness theta - sigma/p;
// used by the gradient bound K(f,G).
double boundary_besov_norm(const BoundaryFunction& f, const FiniteSpace& space, double theta,
                           double p);

// Greedy fixed-scale cover estimate of the codimension-sigma Hausdorff
// measure of the boundary.
double codim_measure_estimate(const FiniteSpace& space, double sigma, double scale);

struct RatioInterval {
  double min = 0.0, max = 0.0;
  int skipped = 0;  // empty nu-balls
};

// pi(B) r^sigma / nu(B) over boundary samples and radii; a bounded interval
// certifies codimensional Ahlfors regularity at sample scale.
RatioInterval codim_regularity_check(const FiniteSpace& space, double sigma,
                                     const std::vector<double>& radii);

// CSV (id,value) serialization shared by the CLI.
std::string values_to_csv(const std::vector<double>& values);
std::vector<double> values_from_csv(const std::string& text);

}  // namespace hypfill
