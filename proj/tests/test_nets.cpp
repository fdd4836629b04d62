#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "core/nets.hpp"
#include "doctest.h"

using namespace hypfill;

namespace {
FiniteSpace make_space() { return rescale(generate_example("interval", 6)); }
}  // namespace

TEST_CASE("net hierarchy basics") {
  auto s = make_space();
  auto h = build_nets(s, 3.0, 4, 32);
  CHECK(h.levels.size() == 5);
  CHECK(h.levels[0].size() == 1);
  CHECK(h.levels[0][0] == 32);
  auto rep = verify_nets(h, s);
  CHECK(rep.nesting);
  CHECK(rep.separation);
  CHECK(rep.maximality);
  CHECK(rep.ok());
}

TEST_CASE("separation holds by brute force") {
  auto s = make_space();
  auto h = build_nets(s, 3.0, 3, 32);
  for (std::size_t n = 0; n < h.levels.size(); ++n) {
    double sep = std::pow(3.0, -double(n));
    for (std::size_t i = 0; i < h.levels[n].size(); ++i)
      for (std::size_t j = i + 1; j < h.levels[n].size(); ++j)
        CHECK(s.dist(h.levels[n][i], h.levels[n][j]) >= sep - 1e-12);
  }
}

TEST_CASE("maximality holds by brute force") {
  auto s = make_space();
  auto h = build_nets(s, 3.0, 3, 32);
  for (std::size_t n = 0; n < h.levels.size(); ++n) {
    double sep = std::pow(3.0, -double(n));
    for (std::uint32_t x = 0; x < s.size(); ++x) {
      double nearest = 1e300;
      for (std::uint32_t y : h.levels[n]) nearest = std::min(nearest, s.dist(x, y));
      CHECK(nearest < sep);
    }
  }
}

TEST_CASE("nesting holds") {
  auto s = make_space();
  auto h = build_nets(s, 3.0, 4, 32);
  for (std::size_t n = 0; n + 1 < h.levels.size(); ++n)
    for (std::uint32_t y : h.levels[n])
      CHECK(std::find(h.levels[n + 1].begin(), h.levels[n + 1].end(), y) !=
            h.levels[n + 1].end());
}

TEST_CASE("alpha must exceed 2") {
  auto s = make_space();
  CHECK_THROWS(build_nets(s, 2.0, 3, 32));
}

TEST_CASE("default depth matches resolution") {
  auto s = make_space();
  int N = default_depth(s, 3.0);
  double res = s.resolution();
  CHECK(std::pow(3.0, -double(N)) >= res - 1e-15);
  CHECK(N >= 1);
}

TEST_CASE("json round trip") {
  auto s = make_space();
  auto h = build_nets(s, 3.0, 3, 32);
  auto h2 = nets_from_json(nets_to_json(h));
  CHECK(h2.alpha == doctest::Approx(h.alpha));
  REQUIRE(h2.levels.size() == h.levels.size());
  for (std::size_t n = 0; n < h.levels.size(); ++n) CHECK(h2.levels[n] == h.levels[n]);
}
