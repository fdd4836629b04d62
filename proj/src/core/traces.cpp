#include "core/traces.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hypfill {

namespace {

std::vector<std::int32_t> interior_positions(const FiniteSpace& space) {
  std::vector<std::int32_t> pos(space.size(), -1);
  auto ids = space.interior_indices();
  for (std::size_t k = 0; k < ids.size(); ++k) pos[ids[k]] = std::int32_t(k);
  return pos;
}

std::vector<std::int32_t> boundary_positions(const FiniteSpace& space) {
  std::vector<std::int32_t> pos(space.size(), -1);
  auto ids = space.boundary_indices();
  for (std::size_t k = 0; k < ids.size(); ++k) pos[ids[k]] = std::int32_t(k);
  return pos;
}

}  // namespace

GraphFunction extend_EX(const ZFunction& u, const FillingGraph& g, const FiniteSpace& space) {
  auto pos = interior_positions(space);
  GraphFunction out;
  out.values.assign(g.vertices.size(), 0.0);
  std::vector<char> massy(g.vertices.size(), 0);
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    double mass = 0.0, acc = 0.0;
    for (std::uint32_t i : shadow(g, space, v)) {
      if (pos[i] < 0 || space.nu[i] <= 0.0) continue;
      mass += space.nu[i];
      acc += space.nu[i] * u.values[pos[i]];
    }
    if (mass > 0.0) {
      out.values[v] = acc / mass;
      massy[v] = 1;
    }
  }
  if (!massy[g.root]) throw std::runtime_error("extend_EX: root shadow is massless");
  // Massless vertices inherit the nearest massy ancestor, walking up levels.
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    if (massy[v]) continue;
    std::uint32_t cur = v;
    while (!massy[cur]) {
      std::uint32_t up = cur;
      for (std::uint32_t e : g.incident[cur]) {
        std::uint32_t w = g.other_end(e, cur);
        if (g.vertices[w].level == g.vertices[cur].level - 1) {
          up = w;
          if (massy[w]) break;
        }
      }
      if (up == cur) throw std::runtime_error("extend_EX: no massy ancestor");
      cur = up;
    }
    out.values[v] = out.values[cur];
  }
  return out;
}

ZFunction trace_TX(const GraphFunction& w, const FillingGraph& g,
                   const std::vector<UniformizedEdge>& ues, const FiniteSpace& space) {
  if (g.depth < 1) throw std::invalid_argument("trace_TX: filling depth must be >= 1");
  const auto& finest = g.level_vertices[g.depth];
  const double reach = std::pow(g.alpha, -double(g.depth - 1));
  auto ids = space.interior_indices();
  ZFunction out;
  out.values.resize(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    std::uint32_t xi = ids[k];
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t vbest = 0;
    for (std::uint32_t v : finest) {
      double d = space.dist(xi, g.vertices[v].point);
      if (d < best) {
        best = d;
        vbest = v;
      }
    }
    if (!(best < reach))
      throw std::runtime_error("trace_TX: no level-N vertex near sample (maximality broken)");
    double mass = 0.0, acc = 0.0;
    for (std::uint32_t e : g.incident[vbest]) {
      const auto& ue = ues[e];
      if (ue.mu_beta_mass <= 0.0) continue;
      double mid = 0.5 * (w.values[g.edges[e].a] + w.values[g.edges[e].b]);
      mass += ue.mu_beta_mass;
      acc += ue.mu_beta_mass * mid;
    }
    out.values[k] = mass > 0.0 ? acc / mass : w.values[vbest];
  }
  return out;
}

BoundaryTrace trace_TZ(const ZFunction& u, const FiniteSpace& space,
                       const std::vector<double>& radii) {
  auto ipos = interior_positions(space);
  auto bids = space.boundary_indices();
  BoundaryTrace out;
  out.values.values.resize(bids.size());
  out.oscillation.resize(bids.size(), 0.0);
  for (std::size_t k = 0; k < bids.size(); ++k) {
    std::uint32_t zeta = bids[k];
    bool have = false;
    double prev = 0.0, value = 0.0, osc = 0.0;
    for (double r : radii) {
      double mass = 0.0, acc = 0.0;
      for (std::uint32_t i = 0; i < space.size(); ++i) {
        if (ipos[i] < 0 || space.nu[i] <= 0.0) continue;
        if (space.dist(zeta, i) < r) {
          mass += space.nu[i];
          acc += space.nu[i] * u.values[ipos[i]];
        }
      }
      if (mass <= 0.0) continue;
      double avg = acc / mass;
      if (have) osc = std::max(osc, std::abs(avg - prev));
      prev = avg;
      value = avg;  // smallest nonempty radius wins (radii are decreasing)
      have = true;
    }
    if (!have) throw std::runtime_error("trace_TZ: all balls empty at a boundary sample");
    out.values.values[k] = value;
    out.oscillation[k] = osc;
  }
  return out;
}

std::vector<char> zero_trace_test(const ZFunction& u, const FiniteSpace& space, double p,
                                  const std::vector<double>& radii, double tol) {
  auto ipos = interior_positions(space);
  auto bids = space.boundary_indices();
  std::vector<char> out(bids.size(), 0);
  for (std::size_t k = 0; k < bids.size(); ++k) {
    std::uint32_t zeta = bids[k];
    bool have = false;
    double first = 0.0, last = 0.0;
    for (double r : radii) {
      double mass = 0.0, acc = 0.0;
      for (std::uint32_t i = 0; i < space.size(); ++i) {
        if (ipos[i] < 0 || space.nu[i] <= 0.0) continue;
        if (space.dist(zeta, i) < r) {
          mass += space.nu[i];
          acc += space.nu[i] * std::pow(std::abs(u.values[ipos[i]]), p);
        }
      }
      if (mass <= 0.0) continue;
      double avg = acc / mass;
      if (!have) first = avg;
      last = avg;
      have = true;
    }
    if (!have) throw std::runtime_error("zero_trace_test: all balls empty");
    out[k] = (last <= tol && last <= first + 1e-15) ? 1 : 0;
  }
  return out;
}

ZFunction extend_EZ(const BoundaryFunction& f, const FiniteSpace& space) {
  auto bids = space.boundary_indices();
  if (bids.empty()) throw std::runtime_error("extend_EZ: empty boundary");
  auto bpos = boundary_positions(space);
  auto ids = space.interior_indices();
  ZFunction out;
  out.values.resize(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    std::uint32_t x = ids[k];
    std::uint32_t zeta = space.nearest_boundary_sample(x);
    double radius = 2.0 * space.dist(x, zeta);
    double mass = 0.0, acc = 0.0;
    for (std::uint32_t b : bids) {
      if (space.dist(zeta, b) <= radius) {
        mass += space.pi[b];
        acc += space.pi[b] * f.values[bpos[b]];
      }
    }
    out.values[k] = acc / mass;
  }
  return out;
}

double besov_energy(const ZFunction& u, const FiniteSpace& space, double theta, double p) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("besov: theta out of range");
  if (p <= 1.0) throw std::invalid_argument("besov: p must exceed 1");
  auto ids = space.interior_indices();
  const std::size_t n = ids.size();

  // Per-center sorted distances with nu prefix sums; closed-ball mass by
  // binary search keeps the double sum at O(n^2 log n).
  std::vector<std::vector<double>> dists(n), prefix(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::pair<double, double>> items(n);
    for (std::size_t b = 0; b < n; ++b)
      items[b] = {space.dist(ids[a], ids[b]), space.nu[ids[b]]};
    std::sort(items.begin(), items.end());
    dists[a].resize(n);
    prefix[a].resize(n);
    double run = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      run += items[b].second;
      dists[a][b] = items[b].first;
      prefix[a][b] = run;
    }
  }
  auto mass_at = [&](std::size_t a, double r) {
    auto it = std::upper_bound(dists[a].begin(), dists[a].end(), r);
    if (it == dists[a].begin()) return 0.0;
    return prefix[a][std::size_t(it - dists[a].begin()) - 1];
  };

  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      double d = space.dist(ids[a], ids[b]);
      double diff = std::abs(u.values[b] - u.values[a]);
      if (diff == 0.0) continue;
      double denom = std::pow(d, theta * p) * mass_at(a, d);
      total += std::pow(diff, p) / denom * space.nu[ids[b]] * space.nu[ids[a]];
    }
  }
  return total;
}

double boundary_besov_norm(const BoundaryFunction& f, const FiniteSpace& space, double theta,
                           double p) {
  auto bids = space.boundary_indices();
  const double smoothness = theta - space.sigma / p;
  double lp = 0.0;
  for (std::size_t k = 0; k < bids.size(); ++k)
    lp += std::pow(std::abs(f.values[k]), p) * space.pi[bids[k]];
  double semi = 0.0;
  for (std::size_t a = 0; a < bids.size(); ++a) {
    for (std::size_t b = 0; b < bids.size(); ++b) {
      if (a == b) continue;
      double d = space.dist(bids[a], bids[b]);
      double diff = std::abs(f.values[b] - f.values[a]);
      if (diff == 0.0) continue;
      double mass = 0.0;
      for (std::size_t c = 0; c < bids.size(); ++c)
        if (space.dist(bids[a], bids[c]) <= d) mass += space.pi[bids[c]];
      semi += std::pow(diff, p) / (std::pow(d, smoothness * p) * mass) * space.pi[bids[b]] *
              space.pi[bids[a]];
    }
  }
  return std::pow(lp, 1.0 / p) + std::pow(semi, 1.0 / p);
}

double codim_measure_estimate(const FiniteSpace& space, double sigma, double scale) {
  auto bids = space.boundary_indices();
  std::vector<char> covered(bids.size(), 0);
  double total = 0.0;
  for (std::size_t k = 0; k < bids.size(); ++k) {
    if (covered[k]) continue;
    std::uint32_t center = bids[k];
    for (std::size_t m = 0; m < bids.size(); ++m)
      if (!covered[m] && space.dist(center, bids[m]) < scale) covered[m] = 1;
    total += ball_mass(space, center, scale) / std::pow(scale, sigma);
  }
  return total;
}

RatioInterval codim_regularity_check(const FiniteSpace& space, double sigma,
                                     const std::vector<double>& radii) {
  RatioInterval out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = 0.0;
  for (std::uint32_t zeta : space.boundary_indices()) {
    for (double r : radii) {
      double nb = ball_mass(space, zeta, r);
      if (nb <= 0.0) {
        ++out.skipped;
        continue;
      }
      double ratio = pi_ball_mass(space, zeta, r) * std::pow(r, sigma) / nb;
      out.min = std::min(out.min, ratio);
      out.max = std::max(out.max, ratio);
    }
  }
  return out;
}

std::string values_to_csv(const std::vector<double>& values) {
  std::ostringstream out;
  out.precision(17);
  out << "id,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << i << "," << values[i] << "\n";
  return out.str();
}

std::vector<double> values_from_csv(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      std::size_t id = std::stoul(line.substr(0, comma));
      double value = std::stod(line.substr(comma + 1));
      if (out.size() <= id) out.resize(id + 1, 0.0);
      out[id] = value;
    } catch (const std::exception&) {
      continue;  // header line
    }
  }
  return out;
}

}  // namespace hypfill
