#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hypfill {

namespace {

double pow_p(double x, double p) { return std::pow(std::abs(x), p); }

// |x|^{p-2} x with a guard at zero for p < 2.
double phi_p(double x, double p) {
  if (x == 0.0) return 0.0;
  return std::pow(std::abs(x), p - 2.0) * x;
}

struct Flat {
  std::vector<std::int32_t> pin;  // resolved pins (gauge fixed)
  std::vector<double> pin_value;
  std::vector<std::uint32_t> free_ids;
  std::vector<std::int32_t> free_pos;  // vertex -> free index, -1 if pinned
};

Flat resolve_pins(const GraphProblem& prob) {
  Flat fl;
  fl.pin.assign(prob.n, -1);
  fl.pin_value.assign(prob.n, 0.0);
  for (std::uint32_t v = 0; v < prob.n && v < prob.pin.size(); ++v) {
    if (prob.pin[v] >= 0) {
      fl.pin[v] = 1;
      fl.pin_value[v] = prob.pin_value[v];
    }
  }
  // Union components over positive-conductance edges; a component with no pin
  // and no vertex mass only determines u up to a constant, so the load there
  // must vanish and we ground one vertex.
  std::vector<std::uint32_t> comp(prob.n);
  std::iota(comp.begin(), comp.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (std::size_t e = 0; e < prob.edges.size(); ++e) {
    if (prob.conductance[e] <= 0.0) continue;
    comp[find(prob.edges[e].a)] = find(prob.edges[e].b);
  }
  std::vector<char> anchored(prob.n, 0);
  std::vector<double> comp_load(prob.n, 0.0);
  std::vector<std::int32_t> first(prob.n, -1);
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    std::uint32_t r = find(v);
    if (fl.pin[v] >= 0) anchored[r] = 1;
    if (v < prob.vertex_mass.size() && prob.vertex_mass[v] > 0.0) anchored[r] = 1;
    if (v < prob.load.size()) comp_load[r] += prob.load[v];
    if (first[r] < 0) first[r] = std::int32_t(v);
  }
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    if (find(v) != v || anchored[v]) continue;
    if (std::abs(comp_load[v]) > 1e-12)
      throw std::runtime_error("minimize: unbounded below (free component carries net load)");
    fl.pin[first[v]] = 1;
    fl.pin_value[first[v]] = 0.0;
  }
  fl.free_pos.assign(prob.n, -1);
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    if (fl.pin[v] < 0) {
      fl.free_pos[v] = std::int32_t(fl.free_ids.size());
      fl.free_ids.push_back(v);
    }
  }
  return fl;
}

// Conjugate gradient on the free variables of the weighted quadratic
//   Q(u) = sum_e w_e (u_a - u_b)^2 + sum_v mw_v u_v^2 - 2 sum_v rhs_v u_v.
// Pinned values enter the right-hand side. Jacobi preconditioned.
std::vector<double> solve_quadratic(const GraphProblem& prob, const Flat& fl,
                                    const std::vector<double>& w, const std::vector<double>& mw,
                                    const std::vector<double>& rhs, const std::vector<double>& x0,
                                    double tol, std::uint32_t max_iter, std::uint32_t& iters) {
  const std::size_t nf = fl.free_ids.size();
  std::vector<double> b(nf, 0.0), diag(nf, 0.0);
  for (std::size_t k = 0; k < nf; ++k) {
    std::uint32_t v = fl.free_ids[k];
    b[k] = rhs[v];
    diag[k] = mw[v];
  }
  for (std::size_t e = 0; e < prob.edges.size(); ++e) {
    if (w[e] <= 0.0) continue;
    std::uint32_t a = prob.edges[e].a, c = prob.edges[e].b;
    std::int32_t ka = fl.free_pos[a], kc = fl.free_pos[c];
    if (ka >= 0) diag[ka] += w[e];
    if (kc >= 0) diag[kc] += w[e];
    if (ka >= 0 && kc < 0) b[ka] += w[e] * fl.pin_value[c];
    if (kc >= 0 && ka < 0) b[kc] += w[e] * fl.pin_value[a];
  }
  auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t k = 0; k < nf; ++k) y[k] = mw[fl.free_ids[k]] * x[k];
    for (std::size_t e = 0; e < prob.edges.size(); ++e) {
      if (w[e] <= 0.0) continue;
      std::int32_t ka = fl.free_pos[prob.edges[e].a], kc = fl.free_pos[prob.edges[e].b];
      if (ka >= 0 && kc >= 0) {
        double d = w[e] * (x[ka] - x[kc]);
        y[ka] += d;
        y[kc] -= d;
      } else if (ka >= 0) {
        y[ka] += w[e] * x[ka];
      } else if (kc >= 0) {
        y[kc] += w[e] * x[kc];
      }
    }
  };
  std::vector<double> x(nf), r(nf), z(nf), pdir(nf), ap(nf);
  for (std::size_t k = 0; k < nf; ++k) x[k] = x0[fl.free_ids[k]];
  matvec(x, r);
  double bnorm = 0.0;
  for (std::size_t k = 0; k < nf; ++k) {
    r[k] = b[k] - r[k];
    bnorm += b[k] * b[k];
  }
  bnorm = std::sqrt(bnorm);
  double target = tol * (1.0 + bnorm);
  for (std::size_t k = 0; k < nf; ++k) z[k] = diag[k] > 0.0 ? r[k] / diag[k] : r[k];
  pdir = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  std::uint32_t it = 0;
  for (; it < max_iter; ++it) {
    double rn = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    if (rn <= target) break;
    matvec(pdir, ap);
    double pap = std::inner_product(pdir.begin(), pdir.end(), ap.begin(), 0.0);
    if (pap <= 0.0) break;
    double alpha = rz / pap;
    for (std::size_t k = 0; k < nf; ++k) {
      x[k] += alpha * pdir[k];
      r[k] -= alpha * ap[k];
    }
    for (std::size_t k = 0; k < nf; ++k) z[k] = diag[k] > 0.0 ? r[k] / diag[k] : r[k];
    double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    double beta = rz > 0.0 ? rz_new / rz : 0.0;
    rz = rz_new;
    for (std::size_t k = 0; k < nf; ++k) pdir[k] = z[k] + beta * pdir[k];
  }
  iters += it;
  std::vector<double> full(prob.n);
  for (std::uint32_t v = 0; v < prob.n; ++v) full[v] = fl.pin[v] >= 0 ? fl.pin_value[v] : 0.0;
  for (std::size_t k = 0; k < nf; ++k) full[fl.free_ids[k]] = x[k];
  return full;
}

double free_grad_norm(const GraphProblem& prob, const Flat& fl, const std::vector<double>& u) {
  double worst = 0.0;
  std::vector<double> g(prob.n, 0.0);
  for (std::size_t e = 0; e < prob.edges.size(); ++e) {
    double d = u[prob.edges[e].a] - u[prob.edges[e].b];
    double t = prob.p * prob.conductance[e] * phi_p(d, prob.p);
    g[prob.edges[e].a] += t;
    g[prob.edges[e].b] -= t;
  }
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    if (v < prob.vertex_mass.size())
      g[v] += prob.p * prob.vertex_mass[v] * phi_p(u[v], prob.p);
    if (v < prob.load.size()) g[v] -= prob.p * prob.load[v];
    if (fl.pin[v] < 0) worst = std::max(worst, std::abs(g[v]));
  }
  return worst;
}

}  // namespace

double graph_energy(const GraphProblem& prob, const std::vector<double>& u) {
  double f = 0.0;
  for (std::size_t e = 0; e < prob.edges.size(); ++e)
    f += prob.conductance[e] * pow_p(u[prob.edges[e].a] - u[prob.edges[e].b], prob.p);
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    if (v < prob.vertex_mass.size()) f += prob.vertex_mass[v] * pow_p(u[v], prob.p);
    if (v < prob.load.size()) f -= prob.p * prob.load[v] * u[v];
  }
  return f;
}

std::vector<double> graph_gradient(const GraphProblem& prob, const std::vector<double>& u) {
  std::vector<double> g(prob.n, 0.0);
  for (std::size_t e = 0; e < prob.edges.size(); ++e) {
    double t = prob.p * prob.conductance[e] * phi_p(u[prob.edges[e].a] - u[prob.edges[e].b], prob.p);
    g[prob.edges[e].a] += t;
    g[prob.edges[e].b] -= t;
  }
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    if (v < prob.vertex_mass.size()) g[v] += prob.p * prob.vertex_mass[v] * phi_p(u[v], prob.p);
    if (v < prob.load.size()) g[v] -= prob.p * prob.load[v];
  }
  for (std::uint32_t v = 0; v < prob.n && v < prob.pin.size(); ++v)
    if (prob.pin[v] >= 0) g[v] = 0.0;
  return g;
}

SolveResult minimize(const GraphProblem& prob, const SolveOptions& opts) {
  if (prob.p <= 1.0) throw std::invalid_argument("minimize: p must exceed 1");
  if (prob.edges.size() != prob.conductance.size())
    throw std::invalid_argument("minimize: edge/conductance size mismatch");
  Flat fl = resolve_pins(prob);

  double load_scale = 0.0;
  for (double l : prob.load) load_scale += std::abs(l);
  const double gtol = opts.tol * (1.0 + prob.p * load_scale);

  // Warm start: pinned values, free vertices at the mean pin value.
  double pin_mean = 0.0;
  std::size_t npin = 0;
  for (std::uint32_t v = 0; v < prob.n; ++v)
    if (fl.pin[v] >= 0) {
      pin_mean += fl.pin_value[v];
      ++npin;
    }
  pin_mean = npin ? pin_mean / double(npin) : 0.0;
  std::vector<double> u = opts.init.size() == prob.n ? opts.init
                                                     : std::vector<double>(prob.n, pin_mean);
  for (std::uint32_t v = 0; v < prob.n; ++v)
    if (fl.pin[v] >= 0) u[v] = fl.pin_value[v];

  SolveResult res;
  std::uint32_t lin_iters = 0;

  if (prob.p == 2.0 && (opts.method == "auto" || opts.method == "cg")) {
    std::vector<double> mw(prob.n, 0.0), rhs(prob.n, 0.0);
    for (std::uint32_t v = 0; v < prob.n; ++v) {
      if (v < prob.vertex_mass.size()) mw[v] = prob.vertex_mass[v];
      if (v < prob.load.size()) rhs[v] = prob.load[v];
    }
    u = solve_quadratic(prob, fl, prob.conductance, mw, rhs, u, opts.tol, opts.max_iter,
                        lin_iters);
    res.method_used = "cg";
  } else if (opts.method == "gd") {
    res.method_used = "gd";
    double f = graph_energy(prob, u);
    std::uint32_t it = 0;
    for (; it < opts.max_iter; ++it) {
      auto g = graph_gradient(prob, u);
      double gn = 0.0;
      for (double x : g) gn = std::max(gn, std::abs(x));
      if (gn <= gtol) break;
      double step = 1.0 / (1.0 + gn);
      std::vector<double> trial(prob.n);
      while (step > 1e-16) {
        for (std::uint32_t v = 0; v < prob.n; ++v) trial[v] = u[v] - step * g[v];
        double ft = graph_energy(prob, trial);
        if (ft < f) {
          u.swap(trial);
          f = ft;
          break;
        }
        step *= 0.5;
      }
      if (step <= 1e-16) break;
    }
    lin_iters = it;
  } else {
    // IRLS with smoothing delta halved per outer step, backtracking on the
    // true energy, damped gradient descent if a reweighted step stalls.
    res.method_used = "irls";
    double f = graph_energy(prob, u);
    double delta = 0.0;
    for (std::size_t e = 0; e < prob.edges.size(); ++e)
      delta = std::max(delta, std::abs(u[prob.edges[e].a] - u[prob.edges[e].b]));
    for (double l : prob.load) delta = std::max(delta, std::abs(l));
    if (delta <= 0.0) delta = 1.0;
    std::vector<double> w(prob.edges.size()), mw(prob.n, 0.0), rhs(prob.n, 0.0);
    for (std::uint32_t v = 0; v < prob.n && v < prob.load.size(); ++v)
      rhs[v] = 0.5 * prob.p * prob.load[v];
    std::uint32_t outer = 0;
    const std::uint32_t max_outer = std::max<std::uint32_t>(60, opts.max_iter / 200);
    for (; outer < max_outer; ++outer) {
      double gn = free_grad_norm(prob, fl, u);
      if (gn <= gtol && delta <= 1e-8) break;
      for (std::size_t e = 0; e < prob.edges.size(); ++e) {
        double d2 = u[prob.edges[e].a] - u[prob.edges[e].b];
        d2 = d2 * d2 + delta * delta;
        w[e] = 0.5 * prob.p * prob.conductance[e] * std::pow(d2, 0.5 * prob.p - 1.0);
      }
      for (std::uint32_t v = 0; v < prob.n; ++v) {
        double m = v < prob.vertex_mass.size() ? prob.vertex_mass[v] : 0.0;
        mw[v] = m > 0.0
                    ? 0.5 * prob.p * m * std::pow(u[v] * u[v] + delta * delta, 0.5 * prob.p - 1.0)
                    : 0.0;
      }
      auto x = solve_quadratic(prob, fl, w, mw, rhs, u, std::min(0.01 * opts.tol, 1e-10), 4000,
                               lin_iters);
      double step = 1.0;
      bool improved = false;
      std::vector<double> trial(prob.n);
      while (step > 1e-14) {
        for (std::uint32_t v = 0; v < prob.n; ++v) trial[v] = u[v] + step * (x[v] - u[v]);
        double ft = graph_energy(prob, trial);
        if (ft <= f + 1e-15 * (1.0 + std::abs(f))) {
          double drop = f - ft;
          u.swap(trial);
          f = ft;
          improved = drop > opts.tol * (1.0 + std::abs(f)) || step == 1.0;
          break;
        }
        step *= 0.5;
      }
      if (step <= 1e-14) {
        // reweighted direction failed, fall back to one damped gradient step
        auto g = graph_gradient(prob, u);
        double s = 1.0;
        bool ok = false;
        while (s > 1e-16) {
          for (std::uint32_t v = 0; v < prob.n; ++v) trial[v] = u[v] - s * g[v];
          double ft = graph_energy(prob, trial);
          if (ft < f) {
            u.swap(trial);
            f = ft;
            ok = true;
            break;
          }
          s *= 0.5;
        }
        if (!ok && delta <= 1e-10) break;
      }
      (void)improved;
      delta = std::max(0.5 * delta, 1e-10);
    }
  }

  res.values = std::move(u);
  res.energy = graph_energy(prob, res.values);
  res.grad_norm = free_grad_norm(prob, fl, res.values);
  res.iterations = lin_iters;
  res.converged = res.grad_norm <= std::max(gtol, opts.tol * (1.0 + std::abs(res.energy)));
  return res;
}

DirichletProblem assemble_dirichlet(const FiniteSpace& space, const FillingGraph& g,
                                    const std::vector<UniformizedEdge>& ues,
                                    const BoundaryFunction& f, const ZFunction& G, double p,
                                    double theta, double band_width) {
  if (g.depth < 1) throw std::invalid_argument("assemble_dirichlet: filling depth must be >= 1");
  auto bids = space.boundary_indices();
  if (bids.empty()) throw std::runtime_error("assemble_dirichlet: empty boundary");
  const double beta = g.epsilon * (1.0 - theta) * p;

  DirichletProblem dp;
  dp.p = p;
  dp.theta = theta;
  dp.graph.n = std::uint32_t(g.vertices.size());
  dp.graph.p = p;
  dp.graph.edges = g.edges;
  dp.graph.conductance.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    dp.graph.conductance[e] = edge_conductance(g, ues[e], p, beta);
  dp.graph.pin.assign(g.vertices.size(), -1);
  dp.graph.pin_value.assign(g.vertices.size(), 0.0);
  dp.graph.load.assign(g.vertices.size(), 0.0);

  const double fine = std::pow(g.alpha, -double(g.depth));
  if (band_width <= 0.0) band_width = 2.0 * fine;

  // Pins: finest-level vertices whose base point lies in the boundary band.
  // Pin value is the pi-average of f over boundary samples near its foot.
  for (std::uint32_t v : g.level_vertices[g.depth]) {
    std::uint32_t base = g.vertices[v].point;
    std::uint32_t zeta = space.nearest_boundary_sample(base);
    double dz = space.dist(base, zeta);
    if (dz > band_width) continue;
    double radius = std::max(2.0 * fine, 2.0 * dz);
    double mass = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < bids.size(); ++k) {
      if (space.dist(zeta, bids[k]) <= radius) {
        mass += space.pi[bids[k]];
        acc += space.pi[bids[k]] * f.values[k];
      }
    }
    dp.graph.pin[v] = 1;
    dp.graph.pin_value[v] = acc / mass;
    dp.pinned_vertices.push_back(v);
  }
  if (dp.pinned_vertices.empty())
    throw std::runtime_error("assemble_dirichlet: band too narrow, no vertex pinned");

  // Loads: route G * nu of each interior sample to its nearest finest vertex.
  auto iids = space.interior_indices();
  const auto& finest = g.level_vertices[g.depth];
  for (std::size_t k = 0; k < iids.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t vbest = finest.front();
    for (std::uint32_t v : finest) {
      double d = space.dist(iids[k], g.vertices[v].point);
      if (d < best) {
        best = d;
        vbest = v;
      }
    }
    dp.graph.load[vbest] += G.values[k] * space.nu[iids[k]];
  }
  return dp;
}

double ET_form(const FillingGraph& g, const std::vector<UniformizedEdge>& ues, double p,
               const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    double du = u[g.edges[e].b] - u[g.edges[e].a];
    double dv = v[g.edges[e].b] - v[g.edges[e].a];
    s += ues[e].conductance * phi_p(du, p) * dv;
  }
  return s;
}

double euler_lagrange_residual(const GraphProblem& prob, const std::vector<double>& u) {
  auto g = graph_gradient(prob, u);
  double worst = 0.0;
  for (std::uint32_t v = 0; v < prob.n; ++v) {
    bool pinned = v < prob.pin.size() && prob.pin[v] >= 0;
    if (!pinned) worst = std::max(worst, std::abs(g[v]));
  }
  return worst;
}

SolveResult p_harmonic_extension(const FillingGraph& g, const std::vector<UniformizedEdge>& ues,
                                 double p, const std::vector<std::int32_t>& pin,
                                 const std::vector<double>& pin_value, const SolveOptions& opts) {
  GraphProblem prob;
  prob.n = std::uint32_t(g.vertices.size());
  prob.p = p;
  prob.edges = g.edges;
  prob.conductance.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) prob.conductance[e] = ues[e].conductance;
  prob.pin = pin;
  prob.pin_value = pin_value;
  return minimize(prob, opts);
}

double energy_bound_K(double f_besov_norm, double g_dual_norm, double p, double C) {
  return C * (std::pow(f_besov_norm, p) + g_dual_norm * f_besov_norm +
              std::pow(1.0 + g_dual_norm, 1.0 / (p - 1.0)));
}

double dual_norm(const ZFunction& G, const FiniteSpace& space, double p) {
  const double q = p / (p - 1.0);
  auto ids = space.interior_indices();
  double s = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k)
    s += std::pow(std::abs(G.values[k]), q) * space.nu[ids[k]];
  return std::pow(s, 1.0 / q);
}

}  // namespace hypfill
