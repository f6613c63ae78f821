#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "kron/bigint.hpp"
#include "kron/partition.hpp"

namespace kron {

struct ConjugacyClass {
  Partition cycle_type;
  BigInt class_size;  // n! / z(cycle_type)
};

// Conjugacy classes of S_n, one per partition of n.
std::vector<ConjugacyClass> sym_group_classes(int n);

struct OracleBudget {
  int max_n = 40;                  // largest |lambda| the character sum accepts
  std::size_t max_classes = 40000;  // p(40) = 37338
};

// Brute-force ground truth for Kronecker and Littlewood-Richardson
// coefficients. Characters come from the Murnaghan-Nakayama rule on beta-sets
// and are memoized per (shape, remaining cycle type); the memo is guarded by a
// mutex so one oracle may be shared between threads.
class KroneckerOracle {
 public:
  explicit KroneckerOracle(OracleBudget budget = {}) : budget_(budget) {}

  const OracleBudget& budget() const noexcept { return budget_; }

  BigInt character(const Partition& shape, const Partition& cls);
  // (1/n!) sum over classes of |C| chi_lambda chi_mu chi_pi.
  BigInt kronecker(const PartitionTriple& t);
  bool admits(const PartitionTriple& t) const;

 private:
  __int128 chi(const std::vector<int>& shape, const std::vector<int>& cycles,
               std::size_t from);

  OracleBudget budget_;
  std::mutex mutex_;
  std::unordered_map<std::string, __int128> memo_;
};

// Process-wide oracle with the default budget.
KroneckerOracle& default_oracle();

BigInt character(const Partition& shape, const Partition& cls);
BigInt kronecker(const PartitionTriple& t);

// c^lambda_{mu,pi} by counting Littlewood-Richardson tableaux of shape
// lambda/mu and content pi. Requires |lambda| = |mu| + |pi|.
BigInt lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& pi);

// Prepends a long first row to each partition so all three have size
// 3*iota, iota = |lambda| + lambda_1. For such triples the Kronecker
// coefficient equals c^lambda_{mu,pi}. mu and pi must be non-empty.
PartitionTriple murnaghan_embed(const Partition& lambda, const Partition& mu,
                                const Partition& pi);

}  // namespace kron
