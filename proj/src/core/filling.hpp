#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/nets.hpp"
#include "core/space.hpp"

namespace hypfill {

enum class EdgeKind : std::uint8_t { horizontal, vertical };

struct FillingVertex {
  std::uint32_t point;  // base point id in the space
  int level;
};

struct FillingEdge {
  std::uint32_t a, b;  // vertex ids, a < b (fixed orientation)
  EdgeKind kind;
  int level;  // min endpoint level
};

/// Truncated hyperbolic filling of the sampled space: vertices are net points
/// tagged with their level, horizontal edges join overlapping same-level
/// balls, vertical edges join tau-inflated balls on adjacent levels.
struct FillingGraph {
  double alpha = 3.0;
  double tau = 3.0;
  double epsilon = 0.0;  // log(alpha), the uniformization exponent
  int depth = 0;         // truncation level N

  std::vector<FillingVertex> vertices;
  std::vector<FillingEdge> edges;
  std::vector<std::vector<std::uint32_t>> incident;        // edge ids per vertex
  std::vector<std::vector<std::uint32_t>> level_vertices;  // vertex ids per level
  std::uint32_t root = 0;

  std::uint32_t other_end(std::uint32_t edge, std::uint32_t v) const {
    return edges[edge].a == v ? edges[edge].b : edges[edge].a;
  }
};

FillingGraph build_filling(const FiniteSpace& space, const NetHierarchy& nets, double tau);

// Graph distance to the root along unit-length edges, parameterized so that
// l(t) interpolates the two endpoint levels; interior points of horizontal
// edges are farther from the root than either endpoint (tent profile).
double root_profile(const FillingGraph& g, std::uint32_t edge, double t);

// Sample points of Z within alpha^-n of the vertex's base point.
std::vector<std::uint32_t> shadow(const FillingGraph& g, const FiniteSpace& space,
                                  std::uint32_t vertex);
double shadow_mass(const FillingGraph& g, const FiniteSpace& space, std::uint32_t vertex);

struct UniformizedEdge {
  std::uint32_t edge = 0;
  double d_eps_length = 0.0;  // integral of e^{-eps l(t)} dt
  double mu_beta_mass = 0.0;  // a_vw * integral of e^{-beta l(t)} dt
  double a_vw = 0.0;          // average shadow mass of the endpoints
  double conductance = 0.0;   // set by set_conductances for a given p
  bool degenerate = false;    // both endpoint shadows are massless
};

std::vector<UniformizedEdge> uniformize(const FillingGraph& g, const FiniteSpace& space,
                                        double beta);

// Closed-form conductance so that the minimal p-energy of an edge with given
// endpoint values u_v, u_w equals c_e |u_v - u_w|^p.
double edge_conductance(const FillingGraph& g, const UniformizedEdge& ue, double p,
                        double beta);
void set_conductances(const FillingGraph& g, std::vector<UniformizedEdge>& ues, double p,
                      double beta);

// mu_beta vertex masses: half of each incident edge's mass.
std::vector<double> vertex_masses(const FillingGraph& g,
                                  const std::vector<UniformizedEdge>& ues);

// One JSON record per vertex and per edge.
std::string filling_to_jsonl(const FillingGraph& g, const std::vector<UniformizedEdge>& ues);
void filling_from_jsonl(const std::string& text, FillingGraph& g,
                        std::vector<UniformizedEdge>& ues);

}  // namespace hypfill
