#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kron/bigint.hpp"
#include "kron/partition.hpp"

namespace kron {

// One polynomial piece of a SegmentedSequence. The entry at index start + k,
// 0 <= k < length, is c0 + c1*k + c2*k^2. Coefficients are rational; every
// entry must be an integer (checked on construction).
struct Segment {
  BigInt start;
  BigInt length;
  Rational c0, c1, c2;

  Rational at(const BigInt& k) const { return c0 + c1 * k + c2 * k * k; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// An integer sequence indexed 0..length-1 made of contiguous quadratic
// segments plus a sparse additive overlay. Used for partitions (usually
// column-height vectors) far too long to materialize; evaluation, sums,
// monotonicity and equality are computed in closed form.
class SegmentedSequence {
 public:
  SegmentedSequence() = default;
  explicit SegmentedSequence(std::vector<Segment> segments,
                             std::map<BigInt, BigInt> overlay = {});

  static SegmentedSequence constant(const BigInt& value, const BigInt& length);
  // Parts of p as constant segments, one per run.
  static SegmentedSequence from_partition(const Partition& p);
  static SegmentedSequence from_dense(std::span<const BigInt> values);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::map<BigInt, BigInt>& overlay() const noexcept { return overlay_; }

  BigInt length() const;
  BigInt eval(const BigInt& index) const;
  BigInt sum() const;
  // sum over i of i * entry(i).
  BigInt weighted_sum() const;
  // Non-negative and non-increasing over the whole domain.
  bool is_partition() const;
  // Number of positive entries; requires is_partition().
  BigInt positive_count() const;
  // Smallest positive entry; requires is_partition() and a positive entry.
  BigInt last_positive() const;

  std::vector<BigInt> materialize(std::size_t limit = 1u << 20) const;
  // Partition semantics (trailing zeros dropped). Empty when the number of
  // distinct runs would exceed max_runs. Throws if !is_partition().
  std::optional<Partition> to_partition(std::size_t max_runs = 1u << 16) const;

  SegmentedSequence concat(const SegmentedSequence& tail) const;
  SegmentedSequence plus_constant(const BigInt& c) const;
  SegmentedSequence add_at(const BigInt& index, const BigInt& delta) const;
  // Adds c to the entries at indices [0, len), extending the domain with
  // zeros first when len exceeds it.
  SegmentedSequence add_on_prefix(const BigInt& len, const BigInt& c) const;

  friend bool operator==(const SegmentedSequence& a, const SegmentedSequence& b);

 private:
  struct Piece {
    BigInt begin, end;          // [begin, end)
    const Segment* segment;     // polynomial piece when set
    BigInt point_value;         // value for a single overlaid index
  };
  std::vector<Piece> pieces() const;
  const Segment& segment_for(const BigInt& index) const;
  void validate() const;

  std::vector<Segment> segments_;
  std::map<BigInt, BigInt> overlay_;
};

// Column-height vectors (lambda^T, mu^T, pi^T) of a partition triple. This is
// the natural representation for triples built from point-set marginals, and
// the only one available when the triple is too large to materialize.
struct ColumnTriple {
  SegmentedSequence lambda_t, mu_t, pi_t;

  static ColumnTriple from_triple(const PartitionTriple& t);
  // Explicit rows, or empty when a partition has too many distinct parts.
  std::optional<PartitionTriple> to_triple(std::size_t max_runs = 1u << 16) const;

  friend bool operator==(const ColumnTriple&, const ColumnTriple&) = default;
};

}  // namespace kron
