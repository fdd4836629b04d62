#include "core/filling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hypfill {

FillingGraph build_filling(const FiniteSpace& space, const NetHierarchy& nets, double tau) {
  if (tau <= 2.0) throw std::invalid_argument("build_filling: tau must exceed 2");
  FillingGraph g;
  g.alpha = nets.alpha;
  g.tau = tau;
  g.epsilon = std::log(nets.alpha);
  g.depth = nets.max_level();
  g.level_vertices.resize(std::size_t(g.depth) + 1);

  for (int n = 0; n <= g.depth; ++n) {
    for (std::uint32_t pt : nets.levels[n]) {
      g.level_vertices[n].push_back(std::uint32_t(g.vertices.size()));
      g.vertices.push_back({pt, n});
    }
  }
  g.root = g.level_vertices[0][0];

  auto add_edge = [&](std::uint32_t a, std::uint32_t b, EdgeKind kind) {
    if (a > b) std::swap(a, b);
    g.edges.push_back({a, b, kind, std::min(g.vertices[a].level, g.vertices[b].level)});
  };

  for (int n = 0; n <= g.depth; ++n) {
    const double rn = std::pow(g.alpha, -double(n));
    const auto& lvl = g.level_vertices[n];
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      for (std::size_t j = i + 1; j < lvl.size(); ++j) {
        if (space.dist(g.vertices[lvl[i]].point, g.vertices[lvl[j]].point) < 2.0 * rn)
          add_edge(lvl[i], lvl[j], EdgeKind::horizontal);
      }
    }
    if (n < g.depth) {
      const double rm = std::pow(g.alpha, -double(n + 1));
      const double reach = tau * rn + tau * rm;
      for (std::uint32_t v : lvl) {
        for (std::uint32_t w : g.level_vertices[n + 1]) {
          if (space.dist(g.vertices[v].point, g.vertices[w].point) < reach)
            add_edge(v, w, EdgeKind::vertical);
        }
      }
    }
  }

  g.incident.resize(g.vertices.size());
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    g.incident[g.edges[e].a].push_back(e);
    g.incident[g.edges[e].b].push_back(e);
  }

  // Ancestor existence and connectivity.
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].level == 0) continue;
    bool has_ancestor = false;
    for (std::uint32_t e : g.incident[v]) {
      std::uint32_t w = g.other_end(e, v);
      if (g.vertices[w].level == g.vertices[v].level - 1) {
        has_ancestor = true;
        break;
      }
    }
    if (!has_ancestor)
      throw std::runtime_error("build_filling: vertex " + std::to_string(v) +
                               " has no ancestor (broken maximality)");
  }
  return g;
}

double root_profile(const FillingGraph& g, std::uint32_t edge, double t) {
  const auto& e = g.edges[edge];
  const double n = double(e.level);
  if (e.kind == EdgeKind::vertical) return n + t;
  return n + std::min(t, 1.0 - t);
}

std::vector<std::uint32_t> shadow(const FillingGraph& g, const FiniteSpace& space,
                                  std::uint32_t vertex) {
  const auto& v = g.vertices[vertex];
  const double r = std::pow(g.alpha, -double(v.level));
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < space.size(); ++i)
    if (space.dist(v.point, i) < r) out.push_back(i);
  return out;
}

double shadow_mass(const FillingGraph& g, const FiniteSpace& space, std::uint32_t vertex) {
  const auto& v = g.vertices[vertex];
  return ball_mass(space, v.point, std::pow(g.alpha, -double(v.level)));
}

namespace {

// integral over [0,1] of e^{-k l(t)} dt for the edge's root profile
double profile_integral(const FillingEdge& e, double k) {
  const double n = double(e.level);
  if (k == 0.0) return 1.0;
  if (e.kind == EdgeKind::vertical) return std::exp(-k * n) * (1.0 - std::exp(-k)) / k;
  return 2.0 * std::exp(-k * n) * (1.0 - std::exp(-k / 2.0)) / k;
}

}  // namespace

std::vector<UniformizedEdge> uniformize(const FillingGraph& g, const FiniteSpace& space,
                                        double beta) {
  if (beta <= 0.0) throw std::invalid_argument("uniformize: beta must be positive");
  std::vector<double> smass(g.vertices.size());
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v)
    smass[v] = shadow_mass(g, space, v);

  std::vector<UniformizedEdge> out(g.edges.size());
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    UniformizedEdge ue;
    ue.edge = e;
    ue.a_vw = 0.5 * (smass[edge.a] + smass[edge.b]);
    ue.d_eps_length = profile_integral(edge, g.epsilon);
    ue.mu_beta_mass = ue.a_vw * profile_integral(edge, beta);
    ue.degenerate = (ue.a_vw <= 0.0);
    out[e] = ue;
  }
  return out;
}

double edge_conductance(const FillingGraph& g, const UniformizedEdge& ue, double p,
                        double beta) {
  if (p <= 1.0) throw std::invalid_argument("edge_conductance: p must exceed 1");
  if (ue.degenerate) return 0.0;
  // kappa = (eps p - beta)/(p-1) > 0 since eps p - beta = eps p theta
  const double kappa = (g.epsilon * p - beta) / (p - 1.0);
  const double J = profile_integral(g.edges[ue.edge], kappa);
  return ue.a_vw * std::pow(J, -(p - 1.0));
}

void set_conductances(const FillingGraph& g, std::vector<UniformizedEdge>& ues, double p,
                      double beta) {
  for (auto& ue : ues) ue.conductance = edge_conductance(g, ue, p, beta);
}

std::vector<double> vertex_masses(const FillingGraph& g,
                                  const std::vector<UniformizedEdge>& ues) {
  std::vector<double> m(g.vertices.size(), 0.0);
  for (const auto& ue : ues) {
    m[g.edges[ue.edge].a] += 0.5 * ue.mu_beta_mass;
    m[g.edges[ue.edge].b] += 0.5 * ue.mu_beta_mass;
  }
  return m;
}

std::string filling_to_jsonl(const FillingGraph& g, const std::vector<UniformizedEdge>& ues) {
  std::ostringstream out;
  {
    nlohmann::json j;
    j["type"] = "header";
    j["alpha"] = g.alpha;
    j["tau"] = g.tau;
    j["depth"] = g.depth;
    out << j.dump() << "\n";
  }
  for (const auto& v : g.vertices) {
    nlohmann::json j;
    j["type"] = "vertex";
    j["point"] = v.point;
    j["level"] = v.level;
    out << j.dump() << "\n";
  }
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    nlohmann::json j;
    j["type"] = "edge";
    j["a"] = g.edges[e].a;
    j["b"] = g.edges[e].b;
    j["kind"] = g.edges[e].kind == EdgeKind::horizontal ? "horizontal" : "vertical";
    if (e < ues.size()) {
      j["d_eps_length"] = ues[e].d_eps_length;
      j["mu_beta_mass"] = ues[e].mu_beta_mass;
      j["a_vw"] = ues[e].a_vw;
      j["c_e"] = ues[e].conductance;
    }
    out << j.dump() << "\n";
  }
  return out.str();
}

void filling_from_jsonl(const std::string& text, FillingGraph& g,
                        std::vector<UniformizedEdge>& ues) {
  g = FillingGraph{};
  ues.clear();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    const std::string type = j.at("type");
    if (type == "header") {
      g.alpha = j.at("alpha").get<double>();
      g.tau = j.at("tau").get<double>();
      g.depth = j.at("depth").get<int>();
      g.epsilon = std::log(g.alpha);
      g.level_vertices.assign(std::size_t(g.depth) + 1, {});
    } else if (type == "vertex") {
      FillingVertex v{j.at("point").get<std::uint32_t>(), j.at("level").get<int>()};
      g.level_vertices[v.level].push_back(std::uint32_t(g.vertices.size()));
      g.vertices.push_back(v);
    } else if (type == "edge") {
      FillingEdge e;
      e.a = j.at("a").get<std::uint32_t>();
      e.b = j.at("b").get<std::uint32_t>();
      e.kind = j.at("kind") == "horizontal" ? EdgeKind::horizontal : EdgeKind::vertical;
      e.level = std::min(g.vertices[e.a].level, g.vertices[e.b].level);
      UniformizedEdge ue;
      ue.edge = std::uint32_t(g.edges.size());
      if (j.contains("d_eps_length")) {
        ue.d_eps_length = j["d_eps_length"].get<double>();
        ue.mu_beta_mass = j["mu_beta_mass"].get<double>();
        ue.a_vw = j["a_vw"].get<double>();
        ue.conductance = j["c_e"].get<double>();
        ue.degenerate = (ue.a_vw <= 0.0);
      }
      g.edges.push_back(e);
      ues.push_back(ue);
    }
  }
  g.root = g.level_vertices.empty() ? 0 : g.level_vertices[0][0];
  g.incident.assign(g.vertices.size(), {});
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    g.incident[g.edges[e].a].push_back(e);
    g.incident[g.edges[e].b].push_back(e);
  }
}

}  // namespace hypfill
