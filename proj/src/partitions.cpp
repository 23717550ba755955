#include "chaoscalc/partitions.hpp"

#include <algorithm>
#include <string>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

namespace {

void check_size(int n, int cap, const char* what) {
  if (n < 1) {
    throw InvalidInput(std::string(what) + ": n must be at least 1, got " + std::to_string(n));
  }
  if (n > cap) {
    throw CapacityError(std::string(what) + ": n = " + std::to_string(n) + " exceeds the enumeration cap " +
                        std::to_string(cap));
  }
}

void set_partition_rec(std::vector<std::uint8_t>& labels, int pos, int used, const PartitionVisitor& visit) {
  const int n = static_cast<int>(labels.size());
  if (pos == n) {
    visit(labels, used);
    return;
  }
  for (int b = 0; b <= used; ++b) {
    labels[pos] = static_cast<std::uint8_t>(b);
    set_partition_rec(labels, pos + 1, b == used ? used + 1 : used, visit);
  }
}

// Open blocks are kept on a stack ordered by their current last element.
// Joining block b at position pos closes every block above b: any later
// element of those blocks would interleave with b.
void noncrossing_rec(std::vector<std::uint8_t>& labels, std::vector<std::uint8_t>& open, int pos, int used,
                     const PartitionVisitor& visit) {
  const int n = static_cast<int>(labels.size());
  if (pos == n) {
    visit(labels, used);
    return;
  }
  for (std::size_t depth = 0; depth < open.size(); ++depth) {
    const std::uint8_t b = open[depth];
    labels[pos] = b;
    std::vector<std::uint8_t> kept(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(depth) + 1);
    noncrossing_rec(labels, kept, pos + 1, used, visit);
  }
  labels[pos] = static_cast<std::uint8_t>(used);
  open.push_back(static_cast<std::uint8_t>(used));
  noncrossing_rec(labels, open, pos + 1, used + 1, visit);
  open.pop_back();
}

}  // namespace

SetPartition::SetPartition(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
  int next = 0;
  for (auto l : labels_) {
    if (l > next) throw InvalidInput("SetPartition: labels are not a restricted-growth string");
    if (l == next) ++next;
  }
  block_count_ = next;
}

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  if (n < 0 || n > 255) throw InvalidInput("SetPartition: ground set size out of range");
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InvalidInput("SetPartition: empty block");
    for (int e : blocks[b]) {
      if (e < 1 || e > n) throw InvalidInput("SetPartition: element outside {1..n}");
      if (owner[static_cast<std::size_t>(e - 1)] != -1) throw InvalidInput("SetPartition: blocks overlap");
      owner[static_cast<std::size_t>(e - 1)] = static_cast<int>(b);
    }
  }
  std::vector<int> relabel(blocks.size(), -1);
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(n));
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int b = owner[static_cast<std::size_t>(i)];
    if (b < 0) throw InvalidInput("SetPartition: blocks do not cover {1..n}");
    if (relabel[static_cast<std::size_t>(b)] < 0) relabel[static_cast<std::size_t>(b)] = next++;
    labels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(relabel[static_cast<std::size_t>(b)]);
  }
  return SetPartition(std::move(labels));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count_));
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(static_cast<int>(i) + 1);
  return out;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(block_count_), 0);
  for (auto l : labels_) ++sizes[l];
  return sizes;
}

bool SetPartition::has_singleton() const {
  const auto sizes = block_sizes();
  return std::find(sizes.begin(), sizes.end(), 1) != sizes.end();
}

bool SetPartition::is_noncrossing() const {
  const int n = size();
  for (int p1 = 0; p1 < n; ++p1)
    for (int q1 = p1 + 1; q1 < n; ++q1)
      for (int p2 = q1 + 1; p2 < n; ++p2)
        for (int q2 = p2 + 1; q2 < n; ++q2)
          if (labels_[p1] == labels_[p2] && labels_[q1] == labels_[q2] && labels_[p1] != labels_[q1]) return false;
  return true;
}

void for_each_set_partition(int n, const PartitionVisitor& visit) {
  if (n < 1) return;
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(n), 0);
  set_partition_rec(labels, 1, 1, visit);
}

void for_each_noncrossing_partition(int n, const PartitionVisitor& visit) {
  if (n < 1) return;
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> open{0};
  noncrossing_rec(labels, open, 1, 1, visit);
}

std::vector<SetPartition> enumerate_set_partitions(int n, const EnumerationCaps& caps) {
  check_size(n, caps.set_partitions, "enumerate_set_partitions");
  std::vector<SetPartition> out;
  out.reserve(static_cast<std::size_t>(bell_number(n)));
  for_each_set_partition(n, [&](const std::vector<std::uint8_t>& labels, int) { out.emplace_back(labels); });
  return out;
}

std::vector<SetPartition> enumerate_noncrossing_partitions(int n, const EnumerationCaps& caps) {
  check_size(n, caps.noncrossing, "enumerate_noncrossing_partitions");
  std::vector<SetPartition> out;
  out.reserve(static_cast<std::size_t>(catalan_number(n)));
  for_each_noncrossing_partition(n, [&](const std::vector<std::uint8_t>& labels, int) { out.emplace_back(labels); });
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(int n) {
  if (n < 0) throw InvalidInput("factorial: negative argument");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt double_factorial(int n) {
  if (n < -1) throw InvalidInput("double_factorial: argument below -1");
  BigInt r = 1;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

BigInt catalan_number(int n) {
  if (n < 0) throw InvalidInput("catalan_number: n must be non-negative");
  return binomial(2 * n, n) / (n + 1);
}

BigInt bell_number(int n) {
  if (n < 0) throw InvalidInput("bell_number: n must be non-negative");
  std::vector<BigInt> bell{1};
  for (int m = 0; m < n; ++m) {
    BigInt next = 0;
    for (int k = 0; k <= m; ++k) next += binomial(m, k) * bell[static_cast<std::size_t>(k)];
    bell.push_back(next);
  }
  return bell[static_cast<std::size_t>(n)];
}

PartitionFamily parse_partition_family(std::string_view tag) {
  if (tag == "all") return PartitionFamily::all;
  if (tag == "noncrossing") return PartitionFamily::noncrossing;
  if (tag == "noncrossing_no_singleton") return PartitionFamily::noncrossing_no_singleton;
  if (tag == "all_no_singleton") return PartitionFamily::all_no_singleton;
  throw InvalidInput("unknown partition family '" + std::string(tag) + "'");
}

std::string_view to_string(PartitionFamily family) {
  switch (family) {
    case PartitionFamily::all: return "all";
    case PartitionFamily::noncrossing: return "noncrossing";
    case PartitionFamily::noncrossing_no_singleton: return "noncrossing_no_singleton";
    case PartitionFamily::all_no_singleton: return "all_no_singleton";
  }
  return "?";
}

BigInt partition_counts(int n, PartitionFamily family) {
  if (n < 1) throw InvalidInput("partition_counts: n must be at least 1");
  switch (family) {
    case PartitionFamily::all:
      return bell_number(n);
    case PartitionFamily::noncrossing:
      return catalan_number(n);
    case PartitionFamily::noncrossing_no_singleton: {
      // Riordan numbers: (m+1) r_m = (m-1)(2 r_{m-1} + 3 r_{m-2}), r_0 = 1, r_1 = 0.
      std::vector<BigInt> r{1, 0};
      for (int m = 2; m <= n; ++m) {
        r.push_back((m - 1) * (2 * r[static_cast<std::size_t>(m - 1)] + 3 * r[static_cast<std::size_t>(m - 2)]) /
                    (m + 1));
      }
      return r[static_cast<std::size_t>(n)];
    }
    case PartitionFamily::all_no_singleton: {
      // Element m+1 sits in a block with j >= 1 of the first m elements.
      std::vector<BigInt> a{1, 0};
      for (int m = 1; m < n; ++m) {
        BigInt next = 0;
        for (int j = 1; j <= m; ++j) next += binomial(m, j) * a[static_cast<std::size_t>(m - j)];
        a.push_back(next);
      }
      return a[static_cast<std::size_t>(n)];
    }
  }
  throw InvalidInput("partition_counts: unknown family");
}

}  // namespace chaoscalc
