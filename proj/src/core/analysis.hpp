#pragma once

#include <cstdint>
#include <vector>

#include "core/solver.hpp"

namespace hypfill {

struct CapacityQuery {
  std::vector<std::uint32_t> inner;  // E, pinned to 1
  std::vector<std::uint32_t> outer;  // Omega; vertices outside are pinned to 0
  double p = 2.0;
};

// min sum_e c_e |du|^p over u = 1 on E, u = 0 outside Omega.
double variational_capacity(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                            const CapacityQuery& query, const SolveOptions& opts = {});

// Graph norm capacity: min sum_v m_v |u|^p + sum_e c_e |du|^p, u = 1 on E,
// with m_v the mu_beta vertex masses.
double norm_capacity_graph(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                           const std::vector<std::uint32_t>& E, double p,
                           const SolveOptions& opts = {});

// Besov norm capacity on the interior samples of Z: min |u|_p^p + seminorm^p,
// u = 1 on E (positions into interior_indices()).
double norm_capacity_besov(const FiniteSpace& space, const std::vector<std::uint32_t>& E,
                           double p, double theta, const SolveOptions& opts = {});

// Sample-granularity metric ball around a point of Z in the uniformized
// geometry: vertex v is inside when max(d_Z(base(v), z0), alpha^{-level}/eps) < r.
std::vector<std::uint32_t> ball_vertices(const FillingGraph& g, const FiniteSpace& space,
                                         std::uint32_t z0, double r);
// Subset of the above whose base ball touches the boundary samples.
std::vector<std::uint32_t> boundary_ball_vertices(const FillingGraph& g,
                                                  const FiniteSpace& space, std::uint32_t z0,
                                                  double r);

struct ScalingReport {
  std::vector<double> radii;
  std::vector<double> cap_upper;  // cap(B(z0,r), B(z0,2r))
  std::vector<double> cap_lower;  // cap(B(z0,r) touching dZ, B(z0,2r))
  std::vector<double> predictor;  // nu(B(z0,r)) / r^{theta p}
  double slope_upper = 0.0;       // log cap vs log predictor
  double slope_lower = 0.0;
};

ScalingReport capacity_scaling_check(const FiniteSpace& space, const FillingGraph& g,
                                     const std::vector<UniformizedEdge>& ues, std::uint32_t z0,
                                     const std::vector<double>& radii, double p, double theta,
                                     const SolveOptions& opts = {});

// (cap_lower / cap_upper)^{1/(p-1)} / r per radius.
std::vector<double> wiener_integrand(const ScalingReport& report, double p);

struct KelloggReport {
  std::vector<int> depths;
  std::vector<double> sup_errors;
};

// Solve the homogeneous problem per depth and measure the worst boundary
// mismatch of the trace against f.
KelloggReport kellogg_check(const FiniteSpace& space, const BoundaryFunction& f, double alpha,
                            double tau, const std::vector<int>& depths, double p, double theta,
                            double band_width = 0.0, const SolveOptions& opts = {});

struct HolderReport {
  double exponent = 0.0;  // fitted upper-envelope slope, +inf for constants
  double floor = 0.0;     // 1 - gamma from the regularity exponent formula
  double gamma = 0.0;
  std::size_t pairs = 0;
};

// gamma = max(1 - alpha_reg, (p(1-theta)(q-1) + Q) / (p q))
double holder_gamma(double p, double theta, double q, double Q, double alpha_reg);

HolderReport holder_estimate(const FiniteSpace& space, const ZFunction& u,
                             std::uint32_t region_center, double region_radius, double p,
                             double theta, double q, double Q, double alpha_reg);

// Lower-mass-bound exponent of mu_beta: pooled log-log slope of ball masses
// in the uniformized ball geometry over several vertex centers.
double estimate_Q(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                  const FiniteSpace& space, std::uint64_t seed = 7);

// least squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hypfill
