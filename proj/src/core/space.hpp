#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypfill {

/// Finite sample of a bounded metric measure space (Z, d, nu) together with
/// its boundary samples and the boundary measure pi. Immutable by convention
/// once constructed; all operations below are pure functions.
struct FiniteSpace {
  // Exactly one of coords / dist_matrix describes the metric. When coords is
  // nonempty the metric is Euclidean on the embedding; otherwise dist_matrix
  // is a row-major size()*size() symmetric matrix.
  std::vector<std::vector<double>> coords;
  std::vector<double> dist_matrix;

  std::vector<double> nu;       // per-point mass of nu (zero on boundary samples)
  std::vector<double> pi;       // per-point mass of pi (zero on interior samples)
  std::vector<char> boundary;   // boundary membership flags
  double sigma = 0.5;           // codimension of the boundary measure
  bool rescaled = false;

  std::size_t size() const { return nu.size(); }
  double dist(std::size_t i, std::size_t j) const;
  double diameter() const;
  double resolution() const;  // minimal pairwise distance
  double total_nu() const;
  double total_pi() const;

  std::vector<std::uint32_t> interior_indices() const;
  std::vector<std::uint32_t> boundary_indices() const;
  double dist_to_boundary(std::size_t i) const;
  std::uint32_t nearest_boundary_sample(std::size_t i) const;

  // Checks the type invariants (metric axioms are sampled for large spaces).
  void validate(unsigned triangle_samples = 100000) const;
};

// Multiplies all distances by 1/(2 diam) so the result has diameter 1/2.
// A space already flagged rescaled is returned unchanged.
FiniteSpace rescale(const FiniteSpace& s);

// nu-mass of the open ball B(center, r).
double ball_mass(const FiniteSpace& s, std::size_t center, double r);
// nu-mass of the closed ball, used by the Besov sum denominator.
double closed_ball_mass(const FiniteSpace& s, std::size_t center, double r);
// pi-mass of the open ball B(center, r).
double pi_ball_mass(const FiniteSpace& s, std::size_t center, double r);

// Empirical lower bound for the doubling constant: max of
// ball_mass(2r)/ball_mass(r) over all centers and the given radii.
double doubling_estimate(const FiniteSpace& s, const std::vector<double>& radii);

struct PerfectnessReport {
  bool ok = false;
  bool degenerate = false;  // subset too small to test
  std::uint32_t witness_point = 0;
  double witness_radius = 0.0;
};

// Tests K-uniform perfectness of the subset at radii above three times its
// sampling resolution.
PerfectnessReport uniform_perfectness_check(const FiniteSpace& s,
                                            const std::vector<std::uint32_t>& subset,
                                            double K);

// Example spaces: interval, square, carpet_minus_edge, koch_rug,
// pentagasket_minus_arc. Point order is deterministic (lexicographic on
// construction addresses). The returned space is not rescaled.
FiniteSpace generate_example(const std::string& name, int depth,
                             double interval_sigma = 0.5);

std::string space_to_json(const FiniteSpace& s);
FiniteSpace space_from_json(const std::string& text);
void save_space(const FiniteSpace& s, const std::string& path);
FiniteSpace load_space(const std::string& path);

}  // namespace hypfill
