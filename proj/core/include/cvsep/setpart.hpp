#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cvsep/point.hpp"

namespace cvsep {

/// Partition of {0, ..., n-1} into k non-empty blocks.
///
/// Blocks are kept in canonical order: indices ascending within each block,
/// blocks ordered by their smallest element.
class SetPartition {
 public:
  using Block = std::vector<int>;

  /// Validates and canonicalizes; throws kInvalidArgument on overlap,
  /// gaps, empty blocks or out-of-range indices.
  SetPartition(int n, std::vector<Block> blocks);

  int n() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// "{0|12}" style label; indices above 9 are comma separated.
  std::string label() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  int n_;
  std::vector<Block> blocks_;
};

inline constexpr int kMaxPartitionSize = 12;

/// Every k-partition of n subsystems exactly once, in canonical
/// lexicographic order of restricted growth strings.
std::vector<SetPartition> enumerate_partitions(int n, int k);

/// Stirling number of the second kind S(n, k).
std::uint64_t partition_count(int n, int k);

/// Exchanges the coordinates listed in `block` between the two probe copies.
std::pair<Point, Point> block_swap(PointView phi1, PointView phi2,
                                   const std::vector<int>& block);

}  // namespace cvsep
