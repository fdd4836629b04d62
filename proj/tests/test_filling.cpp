#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <deque>

#include "core/filling.hpp"
#include "doctest.h"

using namespace hypfill;

namespace {

struct Setup {
  FiniteSpace s;
  FillingGraph g;
  Setup() : s(rescale(generate_example("interval", 6))) {
    auto h = build_nets(s, 3.0, 4, 32);
    g = build_filling(s, h, 3.0);
  }
};

double quad(double level_a, bool horizontal, double k, int n = 20000) {
  // trapezoid quadrature of exp(-k l(t)) over the edge profile
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double t = double(i) / n;
    double l = horizontal ? level_a + std::min(t, 1.0 - t) : level_a + t;
    double v = std::exp(-k * l);
    acc += (i == 0 || i == n) ? 0.5 * v : v;
  }
  return acc / n;
}

}  // namespace

TEST_CASE("edge rules match brute force") {
  Setup x;
  auto& g = x.g;
  // recompute edges directly from the definition
  std::size_t horizontal = 0, vertical = 0;
  for (const auto& e : g.edges) {
    const auto& a = g.vertices[e.a];
    const auto& b = g.vertices[e.b];
    double d = x.s.dist(a.point, b.point);
    if (e.kind == EdgeKind::horizontal) {
      CHECK(a.level == b.level);
      CHECK(d < 2.0 * std::pow(3.0, -double(a.level)));
      ++horizontal;
    } else {
      CHECK(std::abs(a.level - b.level) == 1);
      int n = std::min(a.level, b.level);
      CHECK(d < 3.0 * std::pow(3.0, -double(n)) + 3.0 * std::pow(3.0, -double(n + 1)));
      CHECK(e.level == n);
      ++vertical;
    }
  }
  CHECK(horizontal > 0);
  CHECK(vertical > 0);
  // no admissible pair is missing
  std::size_t expected = 0;
  for (std::uint32_t a = 0; a < g.vertices.size(); ++a) {
    for (std::uint32_t b = a + 1; b < g.vertices.size(); ++b) {
      const auto& va = g.vertices[a];
      const auto& vb = g.vertices[b];
      double d = x.s.dist(va.point, vb.point);
      if (va.level == vb.level && d < 2.0 * std::pow(3.0, -double(va.level))) ++expected;
      if (std::abs(va.level - vb.level) == 1) {
        int n = std::min(va.level, vb.level);
        if (d < 3.0 * std::pow(3.0, -double(n)) + 3.0 * std::pow(3.0, -double(n + 1)))
          ++expected;
      }
    }
  }
  CHECK(expected == g.edges.size());
}

TEST_CASE("root distance equals level") {
  Setup x;
  auto& g = x.g;
  std::vector<int> dist(g.vertices.size(), -1);
  std::deque<std::uint32_t> q{g.root};
  dist[g.root] = 0;
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    for (auto e : g.incident[v]) {
      auto w = g.other_end(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) CHECK(dist[v] == g.vertices[v].level);
}

TEST_CASE("uniformized lengths match quadrature") {
  Setup x;
  const double eps = x.g.epsilon;
  const double beta = eps * 1.0;  // theta = 1/2, p = 2
  auto ues = uniformize(x.g, x.s, beta);
  for (std::size_t e = 0; e < x.g.edges.size(); e += 7) {
    const auto& ed = x.g.edges[e];
    bool hor = ed.kind == EdgeKind::horizontal;
    double lvl = std::min(x.g.vertices[ed.a].level, x.g.vertices[ed.b].level);
    CHECK(ues[e].d_eps_length == doctest::Approx(quad(lvl, hor, eps)).epsilon(1e-6));
    if (ues[e].a_vw > 0.0)
      CHECK(ues[e].mu_beta_mass ==
            doctest::Approx(ues[e].a_vw * quad(lvl, hor, beta)).epsilon(1e-6));
  }
}

TEST_CASE("conductance matches the 1-d series oracle") {
  Setup x;
  const double eps = x.g.epsilon;
  for (double p : {1.5, 2.0, 3.0}) {
    const double theta = 0.5;
    const double beta = eps * (1.0 - theta) * p;
    const double kappa = (eps * p - beta) / (p - 1.0);
    auto ues = uniformize(x.g, x.s, beta);
    set_conductances(x.g, ues, p, beta);
    for (std::size_t e = 0; e < x.g.edges.size(); e += 11) {
      if (ues[e].a_vw <= 0.0) continue;
      const auto& ed = x.g.edges[e];
      bool hor = ed.kind == EdgeKind::horizontal;
      double lvl = std::min(x.g.vertices[ed.a].level, x.g.vertices[ed.b].level);
      // series composition of many short segments of the weighted line
      const int n = 4000;
      double series = 0.0;
      for (int i = 0; i < n; ++i) {
        double t = (i + 0.5) / n;
        double l = hor ? lvl + std::min(t, 1.0 - t) : lvl + t;
        series += std::exp(-kappa * l) / n;
      }
      double oracle = ues[e].a_vw * std::pow(series, 1.0 - p);
      CHECK(ues[e].conductance == doctest::Approx(oracle).epsilon(1e-5));
    }
  }
}

TEST_CASE("shadows and vertex masses") {
  Setup x;
  auto sh = shadow(x.g, x.s, x.g.root);
  CHECK(sh.size() == x.s.size());  // root ball covers everything after rescale
  CHECK(shadow_mass(x.g, x.s, x.g.root) == doctest::Approx(x.s.total_nu()));
  auto ues = uniformize(x.g, x.s, x.g.epsilon);
  auto vm = vertex_masses(x.g, ues);
  double total_edges = 0.0, total_vertices = 0.0;
  for (const auto& ue : ues) total_edges += ue.mu_beta_mass;
  for (double m : vm) total_vertices += m;
  CHECK(total_vertices == doctest::Approx(total_edges));
}

TEST_CASE("tau must exceed 2") {
  auto s = rescale(generate_example("interval", 4));
  auto h = build_nets(s, 3.0, 2, 8);
  CHECK_THROWS(build_filling(s, h, 2.0));
}

TEST_CASE("jsonl round trip") {
  Setup x;
  auto ues = uniformize(x.g, x.s, x.g.epsilon);
  set_conductances(x.g, ues, 2.0, x.g.epsilon);
  FillingGraph g2;
  std::vector<UniformizedEdge> u2;
  filling_from_jsonl(filling_to_jsonl(x.g, ues), g2, u2);
  REQUIRE(g2.vertices.size() == x.g.vertices.size());
  REQUIRE(g2.edges.size() == x.g.edges.size());
  CHECK(g2.alpha == doctest::Approx(x.g.alpha));
  CHECK(g2.depth == x.g.depth);
  for (std::size_t e = 0; e < u2.size(); e += 13) {
    CHECK(u2[e].d_eps_length == doctest::Approx(ues[e].d_eps_length));
    CHECK(u2[e].conductance == doctest::Approx(ues[e].conductance));
  }
  CHECK(g2.incident[g2.root].size() == x.g.incident[x.g.root].size());
}
