#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/traces.hpp"
#include "doctest.h"

using namespace hypfill;

namespace {

struct Setup {
  FiniteSpace s;
  FillingGraph g;
  std::vector<UniformizedEdge> ues;
  Setup(const std::string& name = "interval", int depth = 6, int levels = 4)
      : s(rescale(generate_example(name, depth))) {
    auto h = build_nets(s, 3.0, levels, std::uint32_t(s.size() / 2));
    g = build_filling(s, h, 3.0);
    ues = uniformize(g, s, g.epsilon);  // theta = 1/2, p = 2
  }
  ZFunction lift(double (*f)(const std::vector<double>&)) const {
    ZFunction u;
    for (auto i : s.interior_indices()) u.values.push_back(f(s.coords[i]));
    return u;
  }
};

double first_coord(const std::vector<double>& x) { return x[0]; }
double one(const std::vector<double>&) { return 1.0; }

}  // namespace

TEST_CASE("extension of a constant is constant and traces back") {
  Setup x;
  auto u = x.lift(one);
  auto w = extend_EX(u, x.g, x.s);
  REQUIRE(w.values.size() == x.g.vertices.size());
  for (double v : w.values) CHECK(v == doctest::Approx(1.0));
  auto back = trace_TX(w, x.g, x.ues, x.s);
  REQUIRE(back.values.size() == u.values.size());
  for (double v : back.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("extension values are shadow averages") {
  Setup x;
  auto u = x.lift(first_coord);
  auto w = extend_EX(u, x.g, x.s);
  const auto& ii = x.s.interior_indices();
  std::vector<double> uz(x.s.size(), 0.0);
  std::vector<char> is_interior(x.s.size(), 0);
  for (std::size_t k = 0; k < ii.size(); ++k) {
    uz[ii[k]] = u.values[k];
    is_interior[ii[k]] = 1;
  }
  for (std::uint32_t v = 0; v < x.g.vertices.size(); ++v) {
    auto sh = shadow(x.g, x.s, v);
    double num = 0.0, den = 0.0;
    for (auto pid : sh) {
      if (!is_interior[pid]) continue;
      num += x.s.nu[pid] * uz[pid];
      den += x.s.nu[pid];
    }
    if (den > 0.0) CHECK(w.values[v] == doctest::Approx(num / den));
  }
}

TEST_CASE("trace of a near-affine extension stays close") {
  Setup x;
  auto u = x.lift(first_coord);
  auto w = extend_EX(u, x.g, x.s);
  auto back = trace_TX(w, x.g, x.ues, x.s);
  double worst = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k)
    worst = std::max(worst, std::abs(back.values[k] - u.values[k]));
  // the star average smooths at scale alpha^-N
  CHECK(worst < 4.0 * std::pow(3.0, -double(x.g.depth)));
}

TEST_CASE("boundary trace recovers boundary values of the identity") {
  Setup x;
  auto u = x.lift(first_coord);
  std::vector<double> radii{0.25, 0.125, 0.0625, 0.03125};
  auto tr = trace_TZ(u, x.s, radii);
  const auto& bi = x.s.boundary_indices();
  REQUIRE(tr.values.values.size() == bi.size());
  for (std::size_t k = 0; k < bi.size(); ++k) {
    double target = x.s.coords[bi[k]][0];
    CHECK(std::abs(tr.values.values[k] - target) < 0.04);
    CHECK(tr.oscillation[k] < 0.2);
  }
}

TEST_CASE("zero trace test separates vanishing from nonvanishing data") {
  Setup x;
  std::vector<double> radii{0.25, 0.125, 0.0625, 0.03125};
  ZFunction dz;  // distance to the boundary: vanishes at the boundary
  ZFunction c;   // constant 1: does not
  for (auto i : x.s.interior_indices()) {
    dz.values.push_back(x.s.dist_to_boundary(i));
    c.values.push_back(1.0);
  }
  auto ok = zero_trace_test(dz, x.s, 2.0, radii, 0.05);
  auto bad = zero_trace_test(c, x.s, 2.0, radii, 0.05);
  for (char b : ok) CHECK(b);
  bool any_fail = false;
  for (char b : bad) any_fail |= !b;
  CHECK(any_fail);
}

TEST_CASE("whitney extension reproduces smooth boundary data near the boundary") {
  Setup x;
  BoundaryFunction f;
  for (auto i : x.s.boundary_indices()) f.values.push_back(x.s.coords[i][0]);
  auto u = extend_EZ(f, x.s);
  const auto& ii = x.s.interior_indices();
  for (std::size_t k = 0; k < ii.size(); ++k) {
    double dz = x.s.dist_to_boundary(ii[k]);
    double target = x.s.coords[ii[k]][0];
    // averages over B(zeta, 2 dz) deviate by at most the ball radius
    CHECK(std::abs(u.values[k] - target) <= 4.0 * dz + 1e-12);
  }
}

TEST_CASE("besov energy: constants are null, homogeneity holds") {
  Setup x("interval", 5, 3);
  auto c = x.lift(one);
  CHECK(besov_energy(c, x.s, 0.5, 2.0) == 0.0);
  auto u = x.lift(first_coord);
  double e1 = besov_energy(u, x.s, 0.5, 2.0);
  CHECK(e1 > 0.0);
  ZFunction u2;
  for (double v : u.values) u2.values.push_back(3.0 * v + 7.0);
  CHECK(besov_energy(u2, x.s, 0.5, 2.0) == doctest::Approx(9.0 * e1));
  CHECK(besov_seminorm(u2, x.s, 0.5, 2.0) == doctest::Approx(3.0 * std::sqrt(e1)));
}

TEST_CASE("besov energy matches a direct double sum") {
  Setup x("interval", 4, 3);
  auto u = x.lift(first_coord);
  const auto& ii = x.s.interior_indices();
  double direct = 0.0;
  const double theta = 0.4, p = 2.5;
  for (std::size_t a = 0; a < ii.size(); ++a) {
    for (std::size_t b = 0; b < ii.size(); ++b) {
      if (a == b) continue;
      double d = x.s.dist(ii[a], ii[b]);
      double mass = 0.0;
      for (std::uint32_t q = 0; q < x.s.size(); ++q)
        if (x.s.dist(ii[a], q) <= d) mass += x.s.nu[q];
      direct += std::pow(std::abs(u.values[b] - u.values[a]), p) /
                (std::pow(d, theta * p) * mass) * x.s.nu[ii[b]] * x.s.nu[ii[a]];
    }
  }
  CHECK(besov_energy(u, x.s, theta, p) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("codim regularity check is bounded on the interval") {
  auto s = rescale(generate_example("interval", 6));
  std::vector<double> radii{0.25, 0.125, 0.0625};
  auto r = codim_regularity_check(s, 0.5, radii);
  CHECK(r.min > 0.0);
  CHECK(r.max / r.min < 50.0);
  CHECK(codim_measure_estimate(s, 0.5, 0.0625) > 0.0);
}

TEST_CASE("csv round trip") {
  std::vector<double> v{1.0, -2.5, 3.14159265358979, 0.0};
  auto back = values_from_csv(values_to_csv(v));
  REQUIRE(back.size() == v.size());
  for (std::size_t k = 0; k < v.size(); ++k) CHECK(back[k] == v[k]);
}
