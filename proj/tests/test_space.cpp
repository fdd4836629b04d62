#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/space.hpp"
#include "doctest.h"

using namespace hypfill;

TEST_CASE("interval generator") {
  auto s = generate_example("interval", 4);
  CHECK(s.size() == 17);
  CHECK(s.boundary_indices().size() == 2);
  CHECK(s.interior_indices().size() == 15);
  CHECK(s.sigma == doctest::Approx(0.5));
  CHECK(s.total_nu() == doctest::Approx(15.0 / 16.0));
  CHECK(s.total_pi() == doctest::Approx(2.0));
  s.validate();
}

TEST_CASE("square generator") {
  auto s = generate_example("square", 3);
  CHECK(s.size() == 81);
  CHECK(s.sigma == doctest::Approx(1.0));
  // boundary is the bottom edge only
  CHECK(s.boundary_indices().size() == 9);
  s.validate();
}

TEST_CASE("carpet generator counts and sigma") {
  auto s = generate_example("carpet_minus_edge", 2);
  CHECK(s.interior_indices().size() == 64);
  CHECK(s.sigma == doctest::Approx(std::log(8.0 / 3.0) / std::log(3.0)));
  CHECK(s.total_nu() == doctest::Approx(1.0));
  s.validate();
}

TEST_CASE("koch rug generator") {
  auto s = generate_example("koch_rug", 2);
  CHECK(s.interior_indices().size() == 17 * 4);  // polyline verts x heights
  CHECK(s.sigma == doctest::Approx(1.0));
  s.validate();
}

TEST_CASE("pentagasket generator") {
  auto s = generate_example("pentagasket_minus_arc", 2);
  CHECK(s.interior_indices().size() == 25);
  CHECK(s.sigma ==
        doctest::Approx(std::log(5.0 / 4.0) / std::log((3.0 + std::sqrt(5.0)) / 2.0)));
  s.validate();
}

TEST_CASE("unknown example rejected") {
  CHECK_THROWS(generate_example("moebius", 2));
  CHECK_THROWS(generate_example("interval", 0));
}

TEST_CASE("point guard") { CHECK_THROWS(generate_example("carpet_minus_edge", 5)); }

TEST_CASE("rescale halves diameter and is idempotent") {
  auto s = generate_example("interval", 3);
  auto r = rescale(s);
  CHECK(r.diameter() == doctest::Approx(0.5));
  auto r2 = rescale(r);
  CHECK(r2.diameter() == doctest::Approx(0.5));
  CHECK(r2.rescaled);
}

TEST_CASE("ball masses") {
  auto s = generate_example("interval", 3);  // 9 points at k/8
  // open ball of radius 0.3 around midpoint covers 1/4..3/4 interior samples
  double m = ball_mass(s, 4, 0.3);
  CHECK(m == doctest::Approx(5.0 / 8.0));
  CHECK(closed_ball_mass(s, 4, 0.25) == doctest::Approx(5.0 / 8.0));
  CHECK(ball_mass(s, 4, 0.25) == doctest::Approx(3.0 / 8.0));
  CHECK(pi_ball_mass(s, 0, 0.1) == doctest::Approx(1.0));
}

TEST_CASE("doubling and perfectness") {
  auto s = generate_example("interval", 5);
  CHECK(doubling_estimate(s, {0.1, 0.2}) >= 1.0);
  auto rep = uniform_perfectness_check(s, s.interior_indices(), 2.0);
  CHECK(rep.ok);
}

TEST_CASE("json round trip") {
  auto s = rescale(generate_example("carpet_minus_edge", 1));
  auto t = space_from_json(space_to_json(s));
  REQUIRE(t.size() == s.size());
  CHECK(t.sigma == doctest::Approx(s.sigma));
  CHECK(t.rescaled == s.rescaled);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(t.nu[i] == doctest::Approx(s.nu[i]));
    CHECK(t.boundary[i] == s.boundary[i]);
    CHECK(t.dist(i, 0) == doctest::Approx(s.dist(i, 0)));
  }
}

TEST_CASE("distance matrix spaces work") {
  FiniteSpace s;
  s.dist_matrix = {0, 1, 2, 1, 0, 1, 2, 1, 0};
  s.nu = {0.5, 0.5, 0.0};
  s.pi = {0.0, 0.0, 1.0};
  s.boundary = {0, 0, 1};
  s.validate();
  CHECK(s.dist(0, 2) == doctest::Approx(2.0));
  CHECK(s.dist_to_boundary(0) == doctest::Approx(2.0));
  CHECK(s.nearest_boundary_sample(1) == 2);
}

TEST_CASE("validate rejects broken inputs") {
  FiniteSpace s;
  s.dist_matrix = {0, 5, 1, 5, 0, 1, 1, 1, 0};  // triangle inequality fails
  s.nu = {0.5, 0.5, 0.0};
  s.pi = {0.0, 0.0, 1.0};
  s.boundary = {0, 0, 1};
  CHECK_THROWS(s.validate());
}
