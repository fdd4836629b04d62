#include "core/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hypfill {

namespace {
constexpr std::size_t kPointGuard = 20000;

double sq(double x) { return x * x; }
}  // namespace

double FiniteSpace::dist(std::size_t i, std::size_t j) const {
  if (!coords.empty()) {
    const auto& a = coords[i];
    const auto& b = coords[j];
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += sq(a[k] - b[k]);
    return std::sqrt(s);
  }
  return dist_matrix[i * size() + j];
}

double FiniteSpace::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, dist(i, j));
  return d;
}

double FiniteSpace::resolution() const {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) r = std::min(r, dist(i, j));
  return r;
}

double FiniteSpace::total_nu() const {
  double t = 0.0;
  for (double m : nu) t += m;
  return t;
}

double FiniteSpace::total_pi() const {
  double t = 0.0;
  for (double m : pi) t += m;
  return t;
}

std::vector<std::uint32_t> FiniteSpace::interior_indices() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < size(); ++i)
    if (!boundary[i]) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> FiniteSpace::boundary_indices() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < size(); ++i)
    if (boundary[i]) out.push_back(i);
  return out;
}

double FiniteSpace::dist_to_boundary(std::size_t i) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < size(); ++j)
    if (boundary[j]) d = std::min(d, dist(i, j));
  return d;
}

std::uint32_t FiniteSpace::nearest_boundary_sample(std::size_t i) const {
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t arg = 0;
  bool found = false;
  for (std::uint32_t j = 0; j < size(); ++j) {
    if (!boundary[j]) continue;
    double d = dist(i, j);
    if (d < best) {
      best = d;
      arg = j;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("space has no boundary samples");
  return arg;
}

void FiniteSpace::validate(unsigned triangle_samples) const {
  const std::size_t n = size();
  if (n == 0) throw std::invalid_argument("empty space");
  if (boundary.size() != n || pi.size() != n)
    throw std::invalid_argument("field size mismatch");
  if (coords.empty() && dist_matrix.size() != n * n)
    throw std::invalid_argument("missing metric");
  for (std::size_t i = 0; i < n; ++i) {
    if (boundary[i]) {
      if (nu[i] != 0.0) throw std::invalid_argument("nu must vanish on boundary samples");
      if (pi[i] <= 0.0) throw std::invalid_argument("pi must be positive on boundary samples");
    } else {
      if (nu[i] <= 0.0) throw std::invalid_argument("nu must be positive on interior samples");
      if (pi[i] != 0.0) throw std::invalid_argument("pi must vanish on interior samples");
    }
  }
  // Metric axioms, exhaustively on small spaces and sampled beyond.
  auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    double dij = dist(i, j), djk = dist(j, k), dik = dist(i, k);
    if (dik > dij + djk + 1e-12) throw std::invalid_argument("triangle inequality violated");
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) throw std::invalid_argument("nonzero diagonal distance");
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = dist(i, j);
      if (!(d > 0.0)) throw std::invalid_argument("zero distance between distinct samples");
      if (std::abs(d - dist(j, i)) > 1e-12) throw std::invalid_argument("asymmetric metric");
    }
  }
  if (n <= 500) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (unsigned t = 0; t < triangle_samples; ++t)
      check_triple(pick(rng), pick(rng), pick(rng));
  }
}

FiniteSpace rescale(const FiniteSpace& s) {
  if (s.size() < 2) throw std::invalid_argument("rescale: need at least two points");
  if (s.rescaled) return s;
  double diam = s.diameter();
  if (diam <= 0.0) throw std::invalid_argument("rescale: zero diameter");
  double factor = 1.0 / (2.0 * diam);
  FiniteSpace out = s;
  if (!out.coords.empty()) {
    for (auto& pt : out.coords)
      for (auto& c : pt) c *= factor;
  } else {
    for (auto& d : out.dist_matrix) d *= factor;
  }
  out.rescaled = true;
  return out;
}

double ball_mass(const FiniteSpace& s, std::size_t center, double r) {
  if (r < 0.0) throw std::invalid_argument("ball_mass: negative radius");
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.dist(center, i) < r) m += s.nu[i];
  return m;
}

double closed_ball_mass(const FiniteSpace& s, std::size_t center, double r) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.dist(center, i) <= r) m += s.nu[i];
  return m;
}

double pi_ball_mass(const FiniteSpace& s, std::size_t center, double r) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.dist(center, i) < r) m += s.pi[i];
  return m;
}

double doubling_estimate(const FiniteSpace& s, const std::vector<double>& radii) {
  double worst = 0.0;
  bool any = false;
  for (std::size_t c = 0; c < s.size(); ++c) {
    for (double r : radii) {
      double small = ball_mass(s, c, r);
      if (small <= 0.0) continue;
      any = true;
      worst = std::max(worst, ball_mass(s, c, 2.0 * r) / small);
    }
  }
  if (!any) throw std::runtime_error("doubling_estimate: all balls empty");
  return worst;
}

PerfectnessReport uniform_perfectness_check(const FiniteSpace& s,
                                            const std::vector<std::uint32_t>& subset,
                                            double K) {
  if (K < 2.0) throw std::invalid_argument("uniform_perfectness_check: K < 2");
  PerfectnessReport rep;
  if (subset.size() <= 1) {
    rep.degenerate = true;
    return rep;
  }
  double sub_diam = 0.0, sub_res = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      double d = s.dist(subset[a], subset[b]);
      sub_diam = std::max(sub_diam, d);
      sub_res = std::min(sub_res, d);
    }
  double r_min = 3.0 * sub_res;  // below resolution the discrete set cannot witness annuli
  rep.ok = true;
  for (std::uint32_t w : subset) {
    for (double r = sub_diam * 0.999; r > r_min; r /= 1.5) {
      bool hit = false;
      for (std::uint32_t z : subset) {
        double d = s.dist(w, z);
        if (d >= r / K && d < r) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        rep.ok = false;
        rep.witness_point = w;
        rep.witness_radius = r;
        return rep;
      }
    }
  }
  return rep;
}

namespace {

FiniteSpace make_interval(int depth, double sigma) {
  const std::size_t m = std::size_t(1) << depth;
  FiniteSpace s;
  s.sigma = sigma;
  for (std::size_t i = 0; i <= m; ++i) {
    s.coords.push_back({double(i) / double(m)});
    bool bd = (i == 0 || i == m);
    s.boundary.push_back(bd);
    s.nu.push_back(bd ? 0.0 : 1.0 / double(m));
    s.pi.push_back(bd ? 1.0 : 0.0);  // counting measure on the two endpoints
  }
  return s;
}

FiniteSpace make_square(int depth) {
  const std::size_t m = std::size_t(1) << depth;
  FiniteSpace s;
  s.sigma = 1.0;
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      double x = double(i) / double(m), y = double(j) / double(m);
      bool bd = (j == 0);
      s.coords.push_back({x, y});
      s.boundary.push_back(bd);
      s.nu.push_back(bd ? 0.0 : 1.0 / double(m * m));
      s.pi.push_back(bd ? 1.0 / double(m) : 0.0);
    }
  }
  return s;
}

void carpet_cells(int depth, double x, double y, double size,
                  std::vector<std::pair<double, double>>& out) {
  if (depth == 0) {
    out.emplace_back(x + size / 2.0, y + size / 2.0);
    return;
  }
  double t = size / 3.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == 1 && j == 1) continue;
      carpet_cells(depth - 1, x + i * t, y + j * t, t, out);
    }
}

FiniteSpace make_carpet(int depth) {
  std::vector<std::pair<double, double>> cells;
  carpet_cells(depth, 0.0, 0.0, 1.0, cells);
  const double cell_mass = 1.0 / double(cells.size());
  const std::size_t bcount = 1;  // boundary grid resolution: 3^depth cells
  std::size_t bm = 1;
  for (int k = 0; k < depth; ++k) bm *= 3;
  (void)bcount;
  FiniteSpace s;
  s.sigma = std::log(8.0 / 3.0) / std::log(3.0);
  for (auto& [cx, cy] : cells) {
    s.coords.push_back({cx, cy});
    s.boundary.push_back(false);
    s.nu.push_back(cell_mass);
    s.pi.push_back(0.0);
  }
  // Bottom edge [0,1]x{0} sampled at the carpet scale, carrying length measure.
  for (std::size_t j = 0; j < bm; ++j) {
    s.coords.push_back({(double(j) + 0.5) / double(bm), 0.0});
    s.boundary.push_back(true);
    s.nu.push_back(0.0);
    s.pi.push_back(1.0 / double(bm));
  }
  return s;
}

std::vector<std::pair<double, double>> koch_polyline(int depth) {
  std::vector<std::pair<double, double>> pts = {{0.0, 0.0}, {1.0, 0.0}};
  for (int k = 0; k < depth; ++k) {
    std::vector<std::pair<double, double>> next;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto [ax, ay] = pts[i];
      auto [bx, by] = pts[i + 1];
      double dx = (bx - ax) / 3.0, dy = (by - ay) / 3.0;
      double px = ax + dx, py = ay + dy;
      double qx = ax + 2 * dx, qy = ay + 2 * dy;
      // apex of the equilateral bump
      double mx = (px + qx) / 2.0 - (qy - py) * std::sqrt(3.0) / 2.0;
      double my = (py + qy) / 2.0 + (qx - px) * std::sqrt(3.0) / 2.0;
      next.push_back(pts[i]);
      next.emplace_back(px, py);
      next.emplace_back(mx, my);
      next.emplace_back(qx, qy);
    }
    next.push_back(pts.back());
    pts = next;
  }
  return pts;
}

FiniteSpace make_koch_rug(int depth) {
  auto curve = koch_polyline(depth);
  const std::size_t nc = curve.size();
  const std::size_t segs = nc - 1;
  // Hausdorff mass of the curve assigned per polyline vertex (half of each
  // adjacent segment's share of the normalized measure).
  std::vector<double> w(nc, 0.0);
  for (std::size_t i = 0; i < segs; ++i) {
    w[i] += 0.5 / double(segs);
    w[i + 1] += 0.5 / double(segs);
  }
  const std::size_t m = std::size_t(1) << depth;
  FiniteSpace s;
  s.sigma = 1.0;
  for (std::size_t i = 0; i < nc; ++i) {
    auto [x, y] = curve[i];
    for (std::size_t j = 0; j < m; ++j) {
      double h = (double(j) + 0.5) / double(m);
      s.coords.push_back({x, y, h});
      s.boundary.push_back(false);
      s.nu.push_back(w[i] / double(m));
      s.pi.push_back(0.0);
    }
    for (double h : {0.0, 1.0}) {
      s.coords.push_back({x, y, h});
      s.boundary.push_back(true);
      s.nu.push_back(0.0);
      s.pi.push_back(w[i]);
    }
  }
  return s;
}

FiniteSpace make_pentagasket(int depth) {
  const double pi_ = 3.14159265358979323846;
  const double lam = (3.0 - std::sqrt(5.0)) / 2.0;  // contraction ratio 1/alpha
  std::vector<std::pair<double, double>> v(5);
  for (int k = 0; k < 5; ++k) {
    double a = -pi_ / 2.0 + 2.0 * pi_ * k / 5.0;
    v[k] = {std::cos(a), std::sin(a)};
  }
  auto apply = [&](int k, std::pair<double, double> x) {
    return std::pair<double, double>{v[k].first + lam * (x.first - v[k].first),
                                     v[k].second + lam * (x.second - v[k].second)};
  };
  FiniteSpace s;
  s.sigma = std::log(5.0 / 4.0) / std::log((3.0 + std::sqrt(5.0)) / 2.0);
  // Interior: images of the centroid under all depth-length words over the 5 maps.
  std::size_t nw = 1;
  for (int k = 0; k < depth; ++k) nw *= 5;
  double mass = 1.0 / double(nw);
  for (std::size_t word = 0; word < nw; ++word) {
    std::pair<double, double> x{0.0, 0.0};
    std::size_t rem = word;
    for (int k = 0; k < depth; ++k) {
      x = apply(int(rem % 5), x);
      rem /= 5;
    }
    s.coords.push_back({x.first, x.second});
    s.boundary.push_back(false);
    s.nu.push_back(mass);
    s.pi.push_back(0.0);
  }
  // Boundary arc: attractor of the four maps omitting the top vertex (index 2),
  // a Koch-type curve of dimension log 4 / log alpha. Sampled via words over
  // those maps applied to the bottom fixed point; duplicates merged.
  const int arc_maps[4] = {0, 1, 3, 4};
  std::size_t nb = 1;
  for (int k = 0; k < depth; ++k) nb *= 4;
  double bmass = 1.0 / double(nb);
  std::vector<std::pair<double, double>> bpts;
  std::vector<double> bmasses;
  for (std::size_t word = 0; word < nb; ++word) {
    std::pair<double, double> x = v[0];
    std::size_t rem = word;
    for (int k = 0; k < depth; ++k) {
      x = apply(arc_maps[rem % 4], x);
      rem /= 4;
    }
    bool merged = false;
    for (std::size_t i = 0; i < bpts.size(); ++i) {
      if (sq(bpts[i].first - x.first) + sq(bpts[i].second - x.second) < 1e-24) {
        bmasses[i] += bmass;
        merged = true;
        break;
      }
    }
    if (!merged) {
      bpts.push_back(x);
      bmasses.push_back(bmass);
    }
  }
  for (std::size_t i = 0; i < bpts.size(); ++i) {
    s.coords.push_back({bpts[i].first, bpts[i].second});
    s.boundary.push_back(true);
    s.nu.push_back(0.0);
    s.pi.push_back(bmasses[i]);
  }
  return s;
}

}  // namespace

FiniteSpace generate_example(const std::string& name, int depth, double interval_sigma) {
  if (depth < 1) throw std::invalid_argument("generate_example: depth must be >= 1");
  auto guard = [](std::size_t count) {
    if (count > kPointGuard)
      throw std::invalid_argument("generate_example: depth exceeds the point-count guard");
  };
  FiniteSpace s;
  if (name == "interval") {
    guard((std::size_t(1) << depth) + 1);
    s = make_interval(depth, interval_sigma);
  } else if (name == "square") {
    guard(((std::size_t(1) << depth) + 1) * ((std::size_t(1) << depth) + 1));
    s = make_square(depth);
  } else if (name == "carpet_minus_edge") {
    std::size_t cells = 1, bm = 1;
    for (int k = 0; k < depth; ++k) cells *= 8, bm *= 3;
    guard(cells + bm);
    s = make_carpet(depth);
  } else if (name == "koch_rug") {
    std::size_t segs = 1;
    for (int k = 0; k < depth; ++k) segs *= 4;
    guard((segs + 1) * ((std::size_t(1) << depth) + 2));
    s = make_koch_rug(depth);
  } else if (name == "pentagasket_minus_arc") {
    std::size_t nw = 1;
    for (int k = 0; k < depth; ++k) nw *= 5;
    guard(nw * 2);
    s = make_pentagasket(depth);
  } else {
    throw std::invalid_argument("generate_example: unknown name '" + name + "'");
  }
  return s;
}

std::string space_to_json(const FiniteSpace& s) {
  nlohmann::json j;
  if (!s.coords.empty()) {
    j["points"] = s.coords;
    j["metric"] = "euclidean";
  } else {
    j["points"] = nullptr;
    std::size_t n = s.size();
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) rows[i][k] = s.dist_matrix[i * n + k];
    j["metric"] = {{"matrix", rows}};
  }
  j["nu"] = s.nu;
  std::vector<int> bd(s.boundary.begin(), s.boundary.end());
  j["boundary"] = bd;
  j["pi"] = s.pi;
  j["sigma"] = s.sigma;
  j["rescaled"] = s.rescaled;
  return j.dump();
}

FiniteSpace space_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteSpace s;
  s.nu = j.at("nu").get<std::vector<double>>();
  s.pi = j.at("pi").get<std::vector<double>>();
  auto bd = j.at("boundary").get<std::vector<int>>();
  s.boundary.assign(bd.begin(), bd.end());
  s.sigma = j.at("sigma").get<double>();
  s.rescaled = j.value("rescaled", false);
  if (j.at("metric").is_string()) {
    s.coords = j.at("points").get<std::vector<std::vector<double>>>();
  } else {
    auto rows = j.at("metric").at("matrix").get<std::vector<std::vector<double>>>();
    std::size_t n = rows.size();
    s.dist_matrix.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) s.dist_matrix[i * n + k] = rows[i][k];
  }
  return s;
}

void save_space(const FiniteSpace& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << space_to_json(s);
}

FiniteSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return space_from_json(ss.str());
}

}  // namespace hypfill
