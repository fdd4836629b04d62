#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hypfill {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return sxy / sxx;
}

double variational_capacity(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                            const CapacityQuery& query, const SolveOptions& opts) {
  std::vector<char> in_omega(g.vertices.size(), 0);
  for (std::uint32_t v : query.outer) in_omega[v] = 1;
  for (std::uint32_t v : query.inner)
    if (!in_omega[v]) throw std::invalid_argument("variational_capacity: E not inside Omega");
  if (query.inner.empty()) return 0.0;

  GraphProblem prob;
  prob.n = std::uint32_t(g.vertices.size());
  prob.p = query.p;
  prob.edges = g.edges;
  prob.conductance.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) prob.conductance[e] = ues[e].conductance;
  prob.pin.assign(prob.n, -1);
  prob.pin_value.assign(prob.n, 0.0);
  for (std::uint32_t v = 0; v < prob.n; ++v)
    if (!in_omega[v]) prob.pin[v] = 1;
  bool have_exterior = false;
  for (std::uint32_t v = 0; v < prob.n; ++v)
    if (prob.pin[v] >= 0) have_exterior = true;
  for (std::uint32_t v : query.inner) {
    prob.pin[v] = 1;
    prob.pin_value[v] = 1.0;
  }
  if (!have_exterior) return 0.0;  // u = 1 everywhere is admissible
  return minimize(prob, opts).energy;
}

double norm_capacity_graph(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                           const std::vector<std::uint32_t>& E, double p,
                           const SolveOptions& opts) {
  if (E.empty()) throw std::invalid_argument("norm_capacity_graph: empty E");
  GraphProblem prob;
  prob.n = std::uint32_t(g.vertices.size());
  prob.p = p;
  prob.edges = g.edges;
  prob.conductance.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) prob.conductance[e] = ues[e].conductance;
  prob.vertex_mass = vertex_masses(g, ues);
  prob.pin.assign(prob.n, -1);
  prob.pin_value.assign(prob.n, 0.0);
  for (std::uint32_t v : E) {
    prob.pin[v] = 1;
    prob.pin_value[v] = 1.0;
  }
  return minimize(prob, opts).energy;
}

double norm_capacity_besov(const FiniteSpace& space, const std::vector<std::uint32_t>& E,
                           double p, double theta, const SolveOptions& opts) {
  if (E.empty()) throw std::invalid_argument("norm_capacity_besov: empty E");
  auto ids = space.interior_indices();
  const std::uint32_t n = std::uint32_t(ids.size());

  // Dense symmetric pair weights: the double-sum Besov kernel folded onto
  // unordered pairs.
  GraphProblem prob;
  prob.n = n;
  prob.p = p;
  prob.vertex_mass.resize(n);
  for (std::uint32_t k = 0; k < n; ++k) prob.vertex_mass[k] = space.nu[ids[k]];
  std::vector<std::vector<double>> mass_prefix(n);
  std::vector<std::vector<double>> dist_sorted(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<std::pair<double, double>> items(n);
    for (std::uint32_t b = 0; b < n; ++b)
      items[b] = {space.dist(ids[a], ids[b]), space.nu[ids[b]]};
    std::sort(items.begin(), items.end());
    dist_sorted[a].resize(n);
    mass_prefix[a].resize(n);
    double run = 0.0;
    for (std::uint32_t b = 0; b < n; ++b) {
      run += items[b].second;
      dist_sorted[a][b] = items[b].first;
      mass_prefix[a][b] = run;
    }
  }
  auto mass_at = [&](std::uint32_t a, double r) {
    auto it = std::upper_bound(dist_sorted[a].begin(), dist_sorted[a].end(), r);
    if (it == dist_sorted[a].begin()) return 0.0;
    return mass_prefix[a][std::size_t(it - dist_sorted[a].begin()) - 1];
  };
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      double d = space.dist(ids[a], ids[b]);
      double w = space.nu[ids[a]] * space.nu[ids[b]] / std::pow(d, theta * p) *
                 (1.0 / mass_at(a, d) + 1.0 / mass_at(b, d));
      if (w <= 0.0) continue;
      FillingEdge ed;
      ed.a = a;
      ed.b = b;
      ed.kind = EdgeKind::horizontal;
      ed.level = 0;
      prob.edges.push_back(ed);
      prob.conductance.push_back(w);
    }
  }
  prob.pin.assign(n, -1);
  prob.pin_value.assign(n, 0.0);
  for (std::uint32_t k : E) {
    prob.pin[k] = 1;
    prob.pin_value[k] = 1.0;
  }
  return minimize(prob, opts).energy;
}

std::vector<std::uint32_t> ball_vertices(const FillingGraph& g, const FiniteSpace& space,
                                         std::uint32_t z0, double r) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    double rho = std::max(space.dist(g.vertices[v].point, z0),
                          std::pow(g.alpha, -double(g.vertices[v].level)) / g.epsilon);
    if (rho < r) out.push_back(v);
  }
  return out;
}

std::vector<std::uint32_t> boundary_ball_vertices(const FillingGraph& g,
                                                  const FiniteSpace& space, std::uint32_t z0,
                                                  double r) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v : ball_vertices(g, space, z0, r)) {
    double reach = std::pow(g.alpha, -double(g.vertices[v].level));
    if (space.dist_to_boundary(g.vertices[v].point) <= reach) out.push_back(v);
  }
  return out;
}

ScalingReport capacity_scaling_check(const FiniteSpace& space, const FillingGraph& g,
                                     const std::vector<UniformizedEdge>& ues, std::uint32_t z0,
                                     const std::vector<double>& radii, double p, double theta,
                                     const SolveOptions& opts) {
  if (!space.boundary.empty() && !space.boundary[z0])
    throw std::invalid_argument("capacity_scaling_check: center must be a boundary sample");
  ScalingReport rep;
  for (double r : radii) {
    auto inner = ball_vertices(g, space, z0, r);
    auto inner_bd = boundary_ball_vertices(g, space, z0, r);
    auto outer = ball_vertices(g, space, z0, 2.0 * r);
    if (inner.empty() || inner_bd.empty() || outer.size() <= inner.size()) continue;
    CapacityQuery qu{inner, outer, p};
    CapacityQuery ql{inner_bd, outer, p};
    double cu = variational_capacity(g, ues, qu, opts);
    double cl = variational_capacity(g, ues, ql, opts);
    if (cu <= 0.0) continue;
    rep.radii.push_back(r);
    rep.cap_upper.push_back(cu);
    rep.cap_lower.push_back(cl);
    rep.predictor.push_back(ball_mass(space, z0, r) / std::pow(r, theta * p));
  }
  if (rep.radii.size() < 3)
    throw std::runtime_error("capacity_scaling_check: fewer than 3 usable radii");
  std::vector<double> lx(rep.radii.size()), lu(rep.radii.size()), ll(rep.radii.size());
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    lx[i] = std::log(rep.predictor[i]);
    lu[i] = std::log(rep.cap_upper[i]);
    ll[i] = std::log(std::max(rep.cap_lower[i], 1e-300));
  }
  rep.slope_upper = fit_slope(lx, lu);
  rep.slope_lower = fit_slope(lx, ll);
  return rep;
}

std::vector<double> wiener_integrand(const ScalingReport& report, double p) {
  std::vector<double> out(report.radii.size());
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    if (report.cap_upper[i] <= 0.0)
      throw std::runtime_error("wiener_integrand: zero denominator capacity");
    out[i] = std::pow(report.cap_lower[i] / report.cap_upper[i], 1.0 / (p - 1.0)) /
             report.radii[i];
  }
  return out;
}

KelloggReport kellogg_check(const FiniteSpace& space, const BoundaryFunction& f, double alpha,
                            double tau, const std::vector<int>& depths, double p, double theta,
                            double band_width, const SolveOptions& opts) {
  auto iids = space.interior_indices();
  auto bids = space.boundary_indices();
  KelloggReport rep;
  std::uint32_t z0 = iids.front();
  double deepest = -1.0;
  for (std::uint32_t i : iids) {
    double d = space.dist_to_boundary(i);
    if (d > deepest) {
      deepest = d;
      z0 = i;
    }
  }
  for (int depth : depths) {
    auto nets = build_nets(space, alpha, depth, z0);
    auto g = build_filling(space, nets, tau);
    const double beta = g.epsilon * (1.0 - theta) * p;
    auto ues = uniformize(g, space, beta);
    set_conductances(g, ues, p, beta);
    ZFunction zero;
    zero.values.assign(iids.size(), 0.0);
    auto dp = assemble_dirichlet(space, g, ues, f, zero, p, theta, band_width);
    auto sol = minimize(dp.graph, opts);
    GraphFunction w;
    w.values = sol.values;
    auto uZ = trace_TX(w, g, ues, space);

    const double reach = 2.0 * std::pow(alpha, -double(depth));
    double worst = 0.0;
    for (std::size_t k = 0; k < bids.size(); ++k) {
      double mass = 0.0, acc = 0.0;
      for (std::size_t j = 0; j < iids.size(); ++j) {
        if (space.dist(bids[k], iids[j]) < reach) {
          mass += space.nu[iids[j]];
          acc += space.nu[iids[j]] * uZ.values[j];
        }
      }
      if (mass <= 0.0) continue;
      worst = std::max(worst, std::abs(acc / mass - f.values[k]));
    }
    rep.depths.push_back(depth);
    rep.sup_errors.push_back(worst);
  }
  return rep;
}

double holder_gamma(double p, double theta, double q, double Q, double alpha_reg) {
  return std::max(1.0 - alpha_reg, (p * (1.0 - theta) * (q - 1.0) + Q) / (p * q));
}

HolderReport holder_estimate(const FiniteSpace& space, const ZFunction& u,
                             std::uint32_t region_center, double region_radius, double p,
                             double theta, double q, double Q, double alpha_reg) {
  if (space.dist_to_boundary(region_center) < 2.0 * region_radius)
    throw std::invalid_argument("holder_estimate: inflated region meets the boundary");
  auto ids = space.interior_indices();
  std::vector<std::uint32_t> in_region;
  for (std::size_t k = 0; k < ids.size(); ++k)
    if (space.dist(region_center, ids[k]) < region_radius) in_region.push_back(std::uint32_t(k));
  if (in_region.size() * (in_region.size() - 1) / 2 < 10)
    throw std::invalid_argument("holder_estimate: region too small (< 10 sample pairs)");

  HolderReport rep;
  rep.gamma = holder_gamma(p, theta, q, Q, alpha_reg);
  rep.floor = 1.0 - rep.gamma;

  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (std::size_t i = 0; i < in_region.size(); ++i) {
    for (std::size_t j = i + 1; j < in_region.size(); ++j) {
      double d = space.dist(ids[in_region[i]], ids[in_region[j]]);
      if (d <= 0.0) continue;
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
  }
  const int bins = 12;
  std::vector<double> env(bins, 0.0);
  double span = std::log(dmax / dmin);
  if (span <= 0.0) span = 1.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < in_region.size(); ++i) {
    for (std::size_t j = i + 1; j < in_region.size(); ++j) {
      double d = space.dist(ids[in_region[i]], ids[in_region[j]]);
      if (d <= 0.0) continue;
      ++pairs;
      int b = std::min(bins - 1, int(std::log(d / dmin) / span * bins));
      env[b] = std::max(env[b], std::abs(u.values[in_region[i]] - u.values[in_region[j]]));
    }
  }
  rep.pairs = pairs;
  std::vector<double> lx, ly;
  for (int b = 0; b < bins; ++b) {
    if (env[b] <= 0.0) continue;
    lx.push_back(std::log(dmin) + (b + 0.5) / double(bins) * span);
    ly.push_back(std::log(env[b]));
  }
  if (lx.size() < 2) {
    rep.exponent = std::numeric_limits<double>::infinity();  // constant solution
    return rep;
  }
  rep.exponent = fit_slope(lx, ly);
  return rep;
}

double estimate_Q(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                  const FiniteSpace& space, std::uint64_t seed) {
  auto vmass = vertex_masses(g, ues);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> centers;
  const auto& finest = g.level_vertices[g.depth];
  std::uniform_int_distribution<std::size_t> pick(0, finest.size() - 1);
  for (int k = 0; k < 6 && k < int(finest.size()); ++k) centers.push_back(finest[pick(rng)]);
  std::vector<double> lx, ly;
  for (std::uint32_t c : centers) {
    std::uint32_t z0 = g.vertices[c].point;
    for (int k = 1; k <= g.depth + 1; ++k) {
      double r = std::pow(2.0, -double(k)) * 2.0;
      double m = 0.0;
      for (std::uint32_t v : ball_vertices(g, space, z0, r)) m += vmass[v];
      if (m <= 0.0) continue;
      lx.push_back(std::log(r));
      ly.push_back(std::log(m));
    }
  }
  return fit_slope(lx, ly);
}

}  // namespace hypfill
