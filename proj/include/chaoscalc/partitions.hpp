#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chaoscalc {

using BigInt = boost::multiprecision::cpp_int;

/// Enumeration limits. Bell and Catalan numbers grow fast enough that
/// anything past these is a deliberate choice by the caller.
struct EnumerationCaps {
  int set_partitions = 12;
  int noncrossing = 14;
};

/// A partition of {1..n}, stored as a restricted-growth string: label[i] is
/// the block of element i+1, and blocks are numbered in order of their
/// least element. That encoding is canonical, so equality is label equality.
class SetPartition {
 public:
  SetPartition() = default;
  /// Throws InvalidInput unless `labels` is a restricted-growth string.
  explicit SetPartition(std::vector<std::uint8_t> labels);
  /// Builds from explicit 1-based blocks. Throws InvalidInput if they do not
  /// partition {1..n} exactly.
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);

  int size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return block_count_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  /// Blocks as 1-based element lists, sorted by least element, ascending inside.
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;
  bool has_singleton() const;

  /// Literal four-index test: no p1 < q1 < p2 < q2 with p's and q's in two distinct blocks.
  bool is_noncrossing() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

 private:
  std::vector<std::uint8_t> labels_;
  int block_count_ = 0;
};

using PartitionVisitor = std::function<void(const std::vector<std::uint8_t>& labels, int block_count)>;

/// Streams every set partition of {1..n} in lexicographic restricted-growth order.
/// No cap check; callers decide how far they want to go.
void for_each_set_partition(int n, const PartitionVisitor& visit);
/// Streams every non-crossing partition of {1..n}.
void for_each_noncrossing_partition(int n, const PartitionVisitor& visit);

std::vector<SetPartition> enumerate_set_partitions(int n, const EnumerationCaps& caps = {});
std::vector<SetPartition> enumerate_noncrossing_partitions(int n, const EnumerationCaps& caps = {});

BigInt catalan_number(int n);
BigInt bell_number(int n);
BigInt binomial(int n, int k);
BigInt factorial(int n);
BigInt double_factorial(int n);

enum class PartitionFamily { all, noncrossing, noncrossing_no_singleton, all_no_singleton };

/// Throws InvalidInput on an unknown tag.
PartitionFamily parse_partition_family(std::string_view tag);
std::string_view to_string(PartitionFamily family);

/// Closed-recursion counts; no enumeration involved.
BigInt partition_counts(int n, PartitionFamily family);

}  // namespace chaoscalc
