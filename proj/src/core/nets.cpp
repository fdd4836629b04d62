#include "core/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace hypfill {

NetHierarchy build_nets(const FiniteSpace& space, double alpha, int N, std::uint32_t z0) {
  if (alpha <= 2.0) throw std::invalid_argument("build_nets: alpha must exceed 2");
  if (N < 1) throw std::invalid_argument("build_nets: N must be >= 1");
  if (z0 >= space.size()) throw std::invalid_argument("build_nets: invalid base point");
  if (space.diameter() >= 1.0) throw std::invalid_argument("build_nets: space not rescaled");

  NetHierarchy h;
  h.alpha = alpha;
  h.base_point = z0;
  h.levels.resize(std::size_t(N) + 1);
  h.levels[0] = {z0};

  std::vector<char> in_net(space.size(), 0);
  in_net[z0] = 1;
  std::vector<std::uint32_t> current = {z0};
  for (int n = 1; n <= N; ++n) {
    const double sep = std::pow(alpha, -double(n));
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      if (in_net[i]) continue;
      bool far = true;
      for (std::uint32_t m : current) {
        if (space.dist(i, m) < sep) {
          far = false;
          break;
        }
      }
      if (far) {
        in_net[i] = 1;
        current.push_back(i);
      }
    }
    std::sort(current.begin(), current.end());
    h.levels[n] = current;
  }
  return h;
}

int default_depth(const FiniteSpace& space, double alpha) {
  double res = space.resolution();
  int N = int(std::floor(std::log(res) / std::log(1.0 / alpha)));
  return std::max(1, N);
}

NetReport verify_nets(const NetHierarchy& h, const FiniteSpace& space) {
  NetReport rep;
  if (h.levels.empty() || h.levels[0] != std::vector<std::uint32_t>{h.base_point}) {
    rep.nesting = false;
    rep.witness_level = 0;
    return rep;
  }
  for (int n = 1; n <= h.max_level(); ++n) {
    const auto& prev = h.levels[n - 1];
    const auto& cur = h.levels[n];
    for (std::uint32_t p : prev) {
      if (!std::binary_search(cur.begin(), cur.end(), p)) {
        rep.nesting = false;
        rep.witness_a = p;
        rep.witness_level = n;
      }
    }
    const double sep = std::pow(h.alpha, -double(n));
    double worst = sep;
    for (std::size_t a = 0; a < cur.size(); ++a) {
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        double d = space.dist(cur[a], cur[b]);
        if (d < sep - 1e-12 && d < worst) {
          worst = d;
          rep.separation = false;
          rep.witness_a = cur[a];
          rep.witness_b = cur[b];
          rep.witness_level = n;
        }
      }
    }
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::uint32_t m : cur) best = std::min(best, space.dist(i, m));
      if (!(best < sep) && best > 0.0) {
        rep.maximality = false;
        rep.witness_a = i;
        rep.witness_level = n;
      }
    }
  }
  return rep;
}

std::string nets_to_json(const NetHierarchy& h) {
  nlohmann::json j;
  j["alpha"] = h.alpha;
  j["base_point"] = h.base_point;
  j["levels"] = h.levels;
  return j.dump();
}

NetHierarchy nets_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NetHierarchy h;
  h.alpha = j.at("alpha").get<double>();
  h.base_point = j.at("base_point").get<std::uint32_t>();
  h.levels = j.at("levels").get<std::vector<std::vector<std::uint32_t>>>();
  return h;
}

}  // namespace hypfill
