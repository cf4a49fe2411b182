#include "cvsep/setpart.hpp"

#include <algorithm>
#include <functional>

#include "cvsep/error.hpp"

namespace cvsep {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kSizeLimit: return "size-limit";
    case ErrorKind::kNonNormalizable: return "non-normalizable";
    case ErrorKind::kUnsupportedStructure: return "unsupported-structure";
    case ErrorKind::kInvalidProbe: return "invalid-probe";
    case ErrorKind::kNumericalFailure: return "numerical-failure";
    case ErrorKind::kBracketError: return "bracket-error";
    case ErrorKind::kNoValidProbe: return "no-valid-probe";
    case ErrorKind::kInconsistentTable: return "inconsistent-table";
    case ErrorKind::kParseError: return "parse-error";
  }
  return "unknown";
}

namespace {

void check_nk(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw Error(ErrorKind::kInvalidArgument,
                "partition sizes require 1 <= k <= n (n=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ")");
  }
  if (n > kMaxPartitionSize) {
    throw Error(ErrorKind::kSizeLimit, "n=" + std::to_string(n) + " exceeds " +
                                           std::to_string(kMaxPartitionSize));
  }
}

}  // namespace

SetPartition::SetPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n_ < 1) throw Error(ErrorKind::kInvalidArgument, "partition of an empty set");
  std::vector<int> seen(static_cast<std::size_t>(n_), 0);
  for (auto& block : blocks_) {
    if (block.empty()) throw Error(ErrorKind::kInvalidArgument, "empty block");
    std::sort(block.begin(), block.end());
    for (int i : block) {
      if (i < 0 || i >= n_) {
        throw Error(ErrorKind::kInvalidArgument, "block index " + std::to_string(i) + " out of range");
      }
      if (seen[static_cast<std::size_t>(i)]++ != 0) {
        throw Error(ErrorKind::kInvalidArgument, "index " + std::to_string(i) + " in two blocks");
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "blocks do not cover all subsystems");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

std::string SetPartition::label() const {
  const bool wide = n_ > 10;
  std::string out = "{";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b != 0) out += '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (wide && i != 0) out += ',';
      out += std::to_string(blocks_[b][i]);
    }
  }
  out += '}';
  return out;
}

std::vector<SetPartition> enumerate_partitions(int n, int k) {
  check_nk(n, k);
  std::vector<SetPartition> out;
  out.reserve(partition_count(n, k));
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);

  // Restricted growth strings: rgs[0] = 0, rgs[i] <= max(rgs[0..i-1]) + 1.
  std::function<void(int, int)> visit = [&](int pos, int used) {
    const int remaining = n - pos;
    if (used + remaining < k) return;
    if (pos == n) {
      if (used != k) return;
      std::vector<SetPartition::Block> blocks(static_cast<std::size_t>(k));
      for (int i = 0; i < n; ++i) blocks[static_cast<std::size_t>(rgs[i])].push_back(i);
      out.emplace_back(n, std::move(blocks));
      return;
    }
    for (int b = 0; b <= std::min(used, k - 1); ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      visit(pos + 1, b == used ? used + 1 : used);
    }
  };
  rgs[0] = 0;
  visit(1, 1);
  return out;
}

std::uint64_t partition_count(int n, int k) {
  check_nk(n, k);
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] =
          static_cast<std::uint64_t>(j) * row[static_cast<std::size_t>(j)] +
          row[static_cast<std::size_t>(j - 1)];
    }
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

std::pair<Point, Point> block_swap(PointView phi1, PointView phi2, const std::vector<int>& block) {
  if (phi1.size() != phi2.size()) {
    throw Error(ErrorKind::kInvalidArgument, "probe copies differ in dimension");
  }
  Point chi(phi1.begin(), phi1.end());
  Point chi_prime(phi2.begin(), phi2.end());
  for (int i : block) {
    if (i < 0 || static_cast<std::size_t>(i) >= phi1.size()) {
      throw Error(ErrorKind::kInvalidArgument, "block index " + std::to_string(i) + " out of range");
    }
    std::swap(chi[static_cast<std::size_t>(i)], chi_prime[static_cast<std::size_t>(i)]);
  }
  return {std::move(chi), std::move(chi_prime)};
}

}  // namespace cvsep
