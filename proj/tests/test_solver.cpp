#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "core/solver.hpp"
#include "doctest.h"

using namespace hypfill;

namespace {

GraphProblem path_graph(std::uint32_t n, double p) {
  GraphProblem g;
  g.n = n;
  g.p = p;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    g.edges.push_back({i, i + 1, EdgeKind::horizontal, 0});
  g.conductance.assign(g.edges.size(), 1.0);
  return g;
}

// coordinate descent with bisection on the monotone partial derivative;
// deliberately shares no code with the minimizer under test
std::vector<double> oracle_minimize(const GraphProblem& g, int sweeps = 4000) {
  std::vector<double> u(g.n, 0.0);
  for (std::uint32_t v = 0; v < g.n; ++v)
    if (!g.pin.empty() && g.pin[v] >= 0) u[v] = g.pin_value[v];
  auto dF = [&](std::uint32_t v, double x) {
    double d = 0.0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      double c = g.conductance[e];
      double other = -1.0;
      if (g.edges[e].a == v)
        other = u[g.edges[e].b];
      else if (g.edges[e].b == v)
        other = u[g.edges[e].a];
      else
        continue;
      double t = x - other;
      d += g.p * c * std::pow(std::abs(t), g.p - 1.0) * (t >= 0 ? 1.0 : -1.0);
    }
    if (!g.vertex_mass.empty() && g.vertex_mass[v] > 0.0)
      d += g.p * g.vertex_mass[v] * std::pow(std::abs(x), g.p - 1.0) * (x >= 0 ? 1.0 : -1.0);
    if (!g.load.empty()) d -= g.p * g.load[v];
    return d;
  };
  for (int s = 0; s < sweeps; ++s) {
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (!g.pin.empty() && g.pin[v] >= 0) continue;
      double lo = -100.0, hi = 100.0;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (dF(v, mid) > 0.0 ? hi : lo) = mid;
      }
      u[v] = 0.5 * (lo + hi);
    }
  }
  return u;
}

}  // namespace

TEST_CASE("linear case on a path: exact interpolation") {
  auto g = path_graph(9, 2.0);
  g.pin.assign(g.n, -1);
  g.pin_value.assign(g.n, 0.0);
  g.pin[0] = 0;
  g.pin[8] = 0;
  g.pin_value[8] = 1.0;
  auto r = minimize(g);
  CHECK(r.converged);
  CHECK(r.method_used == "cg");
  for (std::uint32_t v = 0; v < g.n; ++v)
    CHECK(r.values[v] == doctest::Approx(v / 8.0).epsilon(1e-7));
  CHECK(r.energy == doctest::Approx(8.0 / 64.0));
  CHECK(euler_lagrange_residual(g, r.values) < 1e-6);
}

TEST_CASE("p-harmonic path with unequal conductances matches the series formula") {
  for (double p : {1.5, 2.0, 3.0}) {
    auto g = path_graph(4, p);
    g.conductance = {1.0, 4.0, 0.25};
    g.pin.assign(g.n, -1);
    g.pin_value.assign(g.n, 0.0);
    g.pin[0] = 0;
    g.pin[3] = 0;
    g.pin_value[3] = 1.0;
    // current conservation: c_i |du_i|^{p-1} constant; du_i ~ c_i^{-1/(p-1)}
    double q = 1.0 / (p - 1.0);
    double s0 = std::pow(1.0, -q), s1 = std::pow(4.0, -q), s2 = std::pow(0.25, -q);
    double tot = s0 + s1 + s2;
    // energy backtracking bottoms out near sqrt(machine eps) in the gradient
    SolveOptions o;
    o.tol = 1e-7;
    auto r = minimize(g, o);
    CHECK(r.converged);
    CHECK(r.values[1] == doctest::Approx(s0 / tot).epsilon(1e-6));
    CHECK(r.values[2] == doctest::Approx((s0 + s1) / tot).epsilon(1e-6));
  }
}

TEST_CASE("loads and masses: agreement with the coordinate-descent oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.2, 1.5);
  for (double p : {1.5, 2.0, 2.7}) {
    auto g = path_graph(7, p);
    for (auto& c : g.conductance) c = U(rng);
    g.vertex_mass.assign(g.n, 0.0);
    g.load.assign(g.n, 0.0);
    for (std::uint32_t v = 0; v < g.n; ++v) {
      g.vertex_mass[v] = U(rng);
      g.load[v] = U(rng) - 0.8;
    }
    auto r = minimize(g);
    auto ref = oracle_minimize(g);
    CHECK(r.converged);
    for (std::uint32_t v = 0; v < g.n; ++v)
      CHECK(r.values[v] == doctest::Approx(ref[v]).epsilon(5e-4));
    CHECK(graph_energy(g, r.values) <= graph_energy(g, ref) + 1e-8);
  }
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto g = path_graph(6, 2.6);
  g.vertex_mass.assign(g.n, 0.3);
  g.load.assign(g.n, 0.1);
  std::vector<double> u(g.n);
  for (auto& x : u) x = U(rng);
  auto grad = graph_gradient(g, u);
  const double h = 1e-6;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    auto up = u, um = u;
    up[v] += h;
    um[v] -= h;
    double fd = (graph_energy(g, up) - graph_energy(g, um)) / (2 * h);
    CHECK(grad[v] == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("unanchored loaded component is rejected, pure gauge is grounded") {
  auto g = path_graph(3, 2.0);
  g.load.assign(g.n, 1.0);
  CHECK_THROWS(minimize(g));
  g.load.clear();
  auto r = minimize(g);  // translation-invariant: grounded at zero
  CHECK(r.converged);
  for (double v : r.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("methods agree") {
  auto g = path_graph(5, 2.0);
  g.pin.assign(g.n, -1);
  g.pin_value.assign(g.n, 0.0);
  g.pin[0] = 0;
  g.pin[4] = 0;
  g.pin_value[4] = 2.0;
  g.vertex_mass.assign(g.n, 0.5);
  SolveOptions o;
  o.method = "cg";
  auto a = minimize(g, o);
  o.method = "irls";
  auto b = minimize(g, o);
  o.method = "gd";
  o.max_iter = 200000;
  auto c = minimize(g, o);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    CHECK(a.values[v] == doctest::Approx(b.values[v]).epsilon(1e-6));
    CHECK(a.values[v] == doctest::Approx(c.values[v]).epsilon(1e-3));
  }
}

TEST_CASE("dirichlet assembly pins the finest boundary band and routes sources") {
  auto s = rescale(generate_example("interval", 6));
  auto h = build_nets(s, 3.0, 4, 32);
  auto g = build_filling(s, h, 3.0);
  const double p = 2.0, theta = 0.5;
  auto ues = uniformize(g, s, g.epsilon * (1.0 - theta) * p);
  set_conductances(g, ues, p, g.epsilon * (1.0 - theta) * p);

  BoundaryFunction f;
  for (auto i : s.boundary_indices()) f.values.push_back(s.coords[i][0]);
  ZFunction G;
  G.values.assign(s.interior_indices().size(), 1.0);

  auto prob = assemble_dirichlet(s, g, ues, f, G, p, theta, 2.0 * std::pow(3.0, -4.0));
  CHECK(!prob.pinned_vertices.empty());
  double band = 2.0 * std::pow(3.0, -4.0);
  for (auto v : prob.pinned_vertices) {
    CHECK(g.vertices[v].level == g.depth);
    CHECK(s.dist_to_boundary(g.vertices[v].point) <= band + 1e-12);
    CHECK(prob.graph.pin[v] >= 0);
  }
  // loads carry the full source mass integral G dnu
  double total_load = 0.0, total_nu = 0.0;
  for (double l : prob.graph.load) total_load += l;
  for (auto i : s.interior_indices()) total_nu += s.nu[i];
  CHECK(total_load == doctest::Approx(total_nu));
  auto r = minimize(prob.graph);
  CHECK(r.converged);
  CHECK(euler_lagrange_residual(prob.graph, r.values) < 1e-5);
}

TEST_CASE("ET form is the energy derivative and the bound K is monotone") {
  auto s = rescale(generate_example("interval", 5));
  auto h = build_nets(s, 3.0, 3, 32);
  auto g = build_filling(s, h, 3.0);
  const double p = 2.5;
  double beta = g.epsilon * 0.5 * p;
  auto ues = uniformize(g, s, beta);
  set_conductances(g, ues, p, beta);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> u(g.vertices.size()), v(g.vertices.size());
  for (auto& x : u) x = U(rng);
  for (auto& x : v) x = U(rng);
  // p * ET(u; v) = d/dt sum c |d(u+tv)|^p at t=0
  auto energy = [&](const std::vector<double>& w) {
    double acc = 0.0;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      acc += ues[e].conductance * std::pow(std::abs(w[g.edges[e].a] - w[g.edges[e].b]), p);
    return acc;
  };
  const double t = 1e-6;
  std::vector<double> up(u), um(u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    up[i] += t * v[i];
    um[i] -= t * v[i];
  }
  double fd = (energy(up) - energy(um)) / (2 * t);
  CHECK(p * ET_form(g, ues, p, u, v) == doctest::Approx(fd).epsilon(1e-4));

  CHECK(energy_bound_K(1.0, 1.0, 2.0) <= energy_bound_K(2.0, 1.0, 2.0));
  CHECK(energy_bound_K(1.0, 1.0, 2.0) <= energy_bound_K(1.0, 3.0, 2.0));
  ZFunction one;
  one.values.assign(s.interior_indices().size(), 1.0);
  double expect = 0.0;
  for (auto i : s.interior_indices()) expect += s.nu[i];
  CHECK(dual_norm(one, s, 2.0) == doctest::Approx(std::sqrt(expect)));
}
