#pragma once

#include <string>
#include <vector>

#include "realfunm/xscalar.hpp"

namespace realfunm {

// Spectral enclosure of one diagonal block: alpha <= every eigenvalue
// <= beta is guaranteed by directed rounding in the 16th significant
// decimal digit; gamma/delta are the midpoint and half-width carried at
// the extended precision. delta identically zero marks a degenerate
// (single-point-spectrum) block.
struct BlockInfo {
  XScalar alpha, beta, gamma, delta;
  bool degenerate = false;
};

// Contiguous partition 0 = k_0 < k_1 < ... < k_n = N of an ascending
// real diagonal into blocks of width at most `rho`, built by cutting the
// spectrum's range into intervals of length rho. Blocks two or more
// apart are then separated by at least rho, which is what bounds the
// recurrence denominators later.
struct BlockPartition {
  double origin = 0.0;  // left end of the first interval
  double rho = 0.0;
  std::vector<int> boundaries;  // n+1 entries, ascending
  std::vector<BlockInfo> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_begin(int k) const { return boundaries[k]; }
  int block_end(int k) const { return boundaries[k + 1]; }
  int block_size(int k) const { return boundaries[k + 1] - boundaries[k]; }
  int block_of(int index) const;  // block holding diagonal entry `index`
  std::string summary() const;    // one line per block, for reports
};

// Clusters `diag` (required nondecreasing) into intervals
// [origin + c*rho, origin + (c+1)*rho); the maximum entry, when it falls
// exactly on an interior boundary, is assigned to the interval below so
// that the last interval is effectively closed. Empty intervals are
// dropped and block numbering is compacted.
BlockPartition build_partition(const std::vector<double>& diag, double rho, int digits);

}  // namespace realfunm
