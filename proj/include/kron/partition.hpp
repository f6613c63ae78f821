#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kron/bigint.hpp"

namespace kron {

// Integer partition stored in run-length form: runs of (part value,
// multiplicity) with strictly decreasing values and positive multiplicities.
// The canonical form is unique, so structural equality is partition equality.
// Values and multiplicities are arbitrary precision; a partition with 10^13
// equal rows costs one run.
class Partition {
 public:
  struct Run {
    BigInt value;
    BigInt multiplicity;
    friend bool operator==(const Run&, const Run&) = default;
  };

  Partition() = default;
  Partition(std::initializer_list<long> parts);

  // Parts must be non-increasing; zeros are dropped (trailing only).
  static Partition from_parts(std::span<const BigInt> parts);
  static Partition from_parts(std::span<const int> parts);
  // Runs may repeat a value in adjacent positions (they are merged); values
  // must be non-increasing, zero runs and zero multiplicities are dropped.
  static Partition from_runs(std::vector<Run> runs);
  // The partition whose column heights are `columns` (non-increasing), i.e.
  // the transpose of from_parts(columns).
  static Partition from_columns(std::span<const int> columns);
  static Partition from_columns(std::span<const BigInt> columns);

  const std::vector<Run>& runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }

  BigInt size() const;    // |lambda|
  BigInt height() const;  // number of non-zero parts
  BigInt width() const;   // largest part (0 for the empty partition)
  BigInt smallest_part() const;  // smallest non-zero part
  // i-th part, 0-based; 0 past the height.
  BigInt part(const BigInt& index) const;

  Partition transpose() const;

  // Dense parts; throws BudgetExceeded when the height exceeds `limit`.
  std::vector<BigInt> parts(std::size_t limit = 1u << 20) const;
  // Dense parts as machine ints, for the small-size combinatorial code.
  std::vector<int> small_parts(std::size_t limit = 1u << 20) const;
  // Column heights (the transpose) as machine ints.
  std::vector<int> small_columns(std::size_t limit = 1u << 20) const;

  std::string to_string() const;  // "(3,3,1)" or "(3^2,1)" when runs are long

  friend bool operator==(const Partition&, const Partition&) = default;
  // Total order on canonical forms (for use as a map key).
  friend bool operator<(const Partition& a, const Partition& b);

 private:
  explicit Partition(std::vector<Run> canonical) : runs_(std::move(canonical)) {}
  std::vector<Run> runs_;
};

// lambda = (a, 1^b), a >= 1, b >= 0. Throws on the empty partition.
bool is_hook(const Partition& p);

// (d^r) with d = size / r; throws when r does not divide size.
Partition delta_rect(const BigInt& size, const BigInt& r);

// Entrywise sum after zero-padding the shorter partition.
Partition add_vectors(const Partition& a, const Partition& b);

// Enumerates all partitions of n in reverse lexicographic order.
std::vector<std::vector<int>> partitions_of(int n);

// A triple (lambda, mu, pi) of partitions of a common size.
class PartitionTriple {
 public:
  PartitionTriple(Partition lambda, Partition mu, Partition pi);

  const Partition& lambda() const noexcept { return lambda_; }
  const Partition& mu() const noexcept { return mu_; }
  const Partition& pi() const noexcept { return pi_; }
  const BigInt& size() const noexcept { return size_; }
  BigInt max_height() const;

  std::string to_string() const;

  friend bool operator==(const PartitionTriple&, const PartitionTriple&) = default;

 private:
  Partition lambda_, mu_, pi_;
  BigInt size_;
};

}  // namespace kron
