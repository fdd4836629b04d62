#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/space.hpp"

namespace hypfill {

/// Nested maximal alpha^-n separated subsets A_0 subset ... subset A_N.
struct NetHierarchy {
  double alpha = 3.0;
  std::uint32_t base_point = 0;                       // z0, the sole member of A_0
  std::vector<std::vector<std::uint32_t>> levels;     // levels[n] = A_n, ascending ids
  int max_level() const { return int(levels.size()) - 1; }
};

// Greedy construction: A_n starts from A_{n-1}, then the remaining points are
// scanned in ascending id order and added when alpha^-n separated from all
// current members. Deterministic for a fixed space.
NetHierarchy build_nets(const FiniteSpace& space, double alpha, int N, std::uint32_t z0);

// Depth at which the net scale alpha^-N reaches the sampling resolution.
int default_depth(const FiniteSpace& space, double alpha);

struct NetReport {
  bool nesting = true;
  bool separation = true;
  bool maximality = true;
  // worst violating pair (point ids) and level, when any check fails
  std::uint32_t witness_a = 0, witness_b = 0;
  int witness_level = -1;
  bool ok() const { return nesting && separation && maximality; }
};

NetReport verify_nets(const NetHierarchy& h, const FiniteSpace& space);

std::string nets_to_json(const NetHierarchy& h);
NetHierarchy nets_from_json(const std::string& text);

}  // namespace hypfill
