#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/filling.hpp"
#include "core/traces.hpp"

namespace hypfill {

// Generic convex vertex-function minimizer on a weighted graph.
// Objective:  F(u) = sum_e c_e |u_a - u_b|^p + sum_v m_v |u_v|^p - p * sum_v load_v u_v
// with some vertices pinned to fixed values.
struct GraphProblem {
  std::uint32_t n = 0;
  std::vector<FillingEdge> edges;          // only a,b used
  std::vector<double> conductance;         // per edge, >= 0
  std::vector<double> vertex_mass;         // m_v >= 0, may be empty (all zero)
  std::vector<double> load;                // may be empty (all zero)
  std::vector<std::int32_t> pin;           // -1 free, else pinned; may be empty
  std::vector<double> pin_value;           // aligned with pin
  double p = 2.0;
};

struct SolveOptions {
  double tol = 1e-9;
  std::uint32_t max_iter = 20000;
  std::string method = "auto";  // auto | cg | irls | gd
  std::vector<double> init;     // optional warm start, size n
};

struct SolveResult {
  std::vector<double> values;
  double energy = 0.0;
  double grad_norm = 0.0;
  std::uint32_t iterations = 0;
  bool converged = false;
  std::string method_used;
};

double graph_energy(const GraphProblem& prob, const std::vector<double>& u);
// Gradient restricted to free vertices (pinned entries forced to zero).
std::vector<double> graph_gradient(const GraphProblem& prob, const std::vector<double>& u);
SolveResult minimize(const GraphProblem& prob, const SolveOptions& opts = {});

// Dirichlet problem for the nonlocal form: boundary data f on (dZ, pi),
// source density G on (Z, nu), discretized on the uniformized filling.
struct DirichletProblem {
  GraphProblem graph;
  double p = 2.0;
  double theta = 0.5;
  std::vector<std::uint32_t> pinned_vertices;  // finest-level vertices near dZ
};

DirichletProblem assemble_dirichlet(const FiniteSpace& space, const FillingGraph& g,
                                    const std::vector<UniformizedEdge>& ues,
                                    const BoundaryFunction& f, const ZFunction& G, double p,
                                    double theta, double band_width);

// sum_e c_e |du|^{p-2} du dv, edges oriented from lower to higher vertex id.
double ET_form(const FillingGraph& g, const std::vector<UniformizedEdge>& ues, double p,
               const std::vector<double>& u, const std::vector<double>& v);

// Max |dF/du_v| over free vertices at the candidate minimizer.
double euler_lagrange_residual(const GraphProblem& prob, const std::vector<double>& u);

// Solution with pins only (no loads, no vertex mass).
SolveResult p_harmonic_extension(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                                 double p, const std::vector<std::int32_t>& pin,
                                 const std::vector<double>& pin_value,
                                 const SolveOptions& opts = {});

// Energy bound K(f, G) = C (|f|_B^p + |G| |f|_B + (1 + |G|)^{1/(p-1)}).
double energy_bound_K(double f_besov_norm, double g_dual_norm, double p, double C = 1.0);

// L^{p'}(nu) norm of G, p' = p/(p-1).
double dual_norm(const ZFunction& G, const FiniteSpace& space, double p);

}  // namespace hypfill
