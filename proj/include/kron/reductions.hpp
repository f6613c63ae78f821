#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kron/bigint.hpp"
#include "kron/oracle.hpp"
#include "kron/partition.hpp"
#include "kron/segmented.hpp"

namespace kron {

// 3-dimensional matching over W, X, Y = {1..q}. Triples are (w, x, y).
struct ThreeDMInstance {
  int q = 0;
  std::vector<std::array<int, 3>> triples;  // sorted, distinct

  friend bool operator==(const ThreeDMInstance&, const ThreeDMInstance&) = default;
};

struct SizedElement {
  std::string label;
  BigInt size;
  friend bool operator==(const SizedElement&, const SizedElement&) = default;
};

// 4-PARTITION (group_size 4) or 3-PARTITION (group_size 3): split the
// elements into m groups of group_size elements, each summing to B.
struct PartitionInstance {
  int group_size = 4;
  BigInt m, B;
  std::vector<SizedElement> elements;

  friend bool operator==(const PartitionInstance&, const PartitionInstance&) = default;
};

// A multiset of non-negative integers as (value, count) runs in a fixed order.
using RunList = std::vector<std::pair<BigInt, BigInt>>;

BigInt run_count(const RunList& runs);
BigInt run_sum(const RunList& runs);

// Two-machine flow shop with unit jobs: delays per job (in job order) and
// the completion threshold y.
struct MachineFlowInstance {
  RunList delays;
  BigInt y;

  BigInt job_count() const { return run_count(delays); }
  friend bool operator==(const MachineFlowInstance&, const MachineFlowInstance&) = default;
};

// Find permutations a, b of 1..n with j + a(j) + u_{b(j)} = e for all j.
struct Rn3dmInstance {
  RunList u;
  BigInt e;

  BigInt n() const { return run_count(u); }
  friend bool operator==(const Rn3dmInstance&, const Rn3dmInstance&) = default;
};

// Find permutations s, p of 1..n with s(k) + p(k) = y_k; y sorted ascending.
struct RnmtsInstance {
  RunList y;

  BigInt n() const { return run_count(y); }
  friend bool operator==(const RnmtsInstance&, const RnmtsInstance&) = default;
};

// Find an n x n permutation matrix whose anti-diagonal i + j = l (1-based)
// holds z_l ones. Absent entries of z are zero.
struct PermutationInstance {
  BigInt n;
  std::map<BigInt, BigInt> z;

  friend bool operator==(const PermutationInstance&, const PermutationInstance&) = default;
};

// Triple in lattice-permutation form for (r, d). Explicit rows are kept
// only when they are small.
struct ConsistencyInstance {
  BigInt r;
  std::map<BigInt, BigInt> d;
  ColumnTriple columns;
  std::optional<PartitionTriple> triple;

  friend bool operator==(const ConsistencyInstance& a, const ConsistencyInstance& b) {
    return a.r == b.r && a.d == b.d && a.columns == b.columns;
  }
};

struct RestrictedKroneckerInstance {
  ColumnTriple columns;
  std::optional<PartitionTriple> triple;
  BigInt m;
  Rational epsilon;
  // Box parameters when the instance came out of the chain (zero otherwise).
  BigInt r, c, s;

  friend bool operator==(const RestrictedKroneckerInstance& a,
                         const RestrictedKroneckerInstance& b) {
    return a.columns == b.columns && a.m == b.m && a.epsilon == b.epsilon;
  }
};

using ReductionInstance =
    std::variant<ThreeDMInstance, PartitionInstance, MachineFlowInstance, Rn3dmInstance,
                 RnmtsInstance, PermutationInstance, ConsistencyInstance,
                 RestrictedKroneckerInstance>;

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct StageRecord {
  std::string stage;
  ReductionInstance instance;
  std::vector<Check> checks;
};

struct ReductionTrace {
  std::vector<StageRecord> stages;
};

// Type invariants. Each returns the list of checks performed.
std::vector<Check> check_instance(const ThreeDMInstance& i);
std::vector<Check> check_instance(const PartitionInstance& i);
std::vector<Check> check_instance(const MachineFlowInstance& i);
std::vector<Check> check_instance(const Rn3dmInstance& i);
std::vector<Check> check_instance(const RnmtsInstance& i);
std::vector<Check> check_instance(const PermutationInstance& i);
std::vector<Check> check_instance(const ConsistencyInstance& i);
std::vector<Check> check_instance(const RestrictedKroneckerInstance& i);

// Each reduction validates its input and output and throws StageError with
// the stage name on the first failed check.
PartitionInstance reduce_3dm_to_4partition(const ThreeDMInstance& i);
PartitionInstance reduce_4partition_to_3partition(const PartitionInstance& i);
MachineFlowInstance reduce_3partition_to_machineflow(const PartitionInstance& i);
Rn3dmInstance reduce_machineflow_to_rn3dm(const MachineFlowInstance& i);
RnmtsInstance reduce_rn3dm_to_rnmts(const Rn3dmInstance& i);
PermutationInstance reduce_rnmts_to_permutation(const RnmtsInstance& i);
ConsistencyInstance reduce_permutation_to_consistency(const PermutationInstance& i);
RestrictedKroneckerInstance reduce_consistency_to_kronecker(const ConsistencyInstance& i,
                                                            const Rational& epsilon);

struct PipelineResult {
  RestrictedKroneckerInstance instance;
  ReductionTrace trace;
};
PipelineResult pipeline(const ThreeDMInstance& i, const Rational& epsilon);

// The fixed matching-free instance q = 2,
// M = {(1,1,1), (2,1,2), (1,2,2)}.
ThreeDMInstance base_no_instance();
// Base instance plus a disjoint, matchable block encoding the bitstring
// (characters '0'/'1'). The empty bitstring gives the base instance.
ThreeDMInstance padded_no_instance(const std::string& bits);
// The first `count` bitstrings in shortlex order: "", "0", "1", "00", ...
std::vector<std::string> shortlex_bitstrings(std::size_t count);
// Hex digits to a bitstring, four bits per digit, most significant first.
std::string bits_from_hex(const std::string& hex);
std::vector<ThreeDMInstance> generate_no_instances(const std::vector<std::string>& bitstrings);

struct SolverBudget {
  std::size_t max_nodes = 50'000'000;
  int max_n = 9;  // largest n for the permutation-based solvers
};

bool solve_3dm(const ThreeDMInstance& i, SolverBudget budget = {});
bool solve_partition(const PartitionInstance& i, SolverBudget budget = {});
bool solve_rn3dm(const Rn3dmInstance& i, SolverBudget budget = {});
bool solve_rnmts(const RnmtsInstance& i, SolverBudget budget = {});
bool solve_permutation(const PermutationInstance& i, SolverBudget budget = {});

// ht(lambda) <= h^2 with h the shortest column of mu. True certifies that
// (lambda, mu, mu) lies in the Kronecker cone; false certifies nothing.
bool kron_cone_sufficient(const Partition& lambda, const Partition& mu);
bool kron_cone_sufficient(const SegmentedSequence& lambda_t, const SegmentedSequence& mu_t);

// a^q <= b^p for epsilon = p/q, i.e. a <= b^epsilon. a, b >= 0.
bool power_at_most(const BigInt& a, const BigInt& b, const Rational& epsilon);

struct ConstraintReport {
  std::vector<Check> constraints;
  bool all_passed() const;
};

// Constraints (1)-(5) of the restricted problem, plus consistency of m.
ConstraintReport verify_restricted(const RestrictedKroneckerInstance& i);

struct CandidateVerdict {
  std::string constraint;
  std::string status;  // pass, fail, implied, not_evaluated, moot
  std::string detail;
};

// Structural checks for an exceptional triple (lambda, delta, delta) with
// delta = delta(lambda) of height r.
std::vector<CandidateVerdict> exceptional_candidate_check(const Partition& lambda, const BigInt& r,
                                                          const Rational& epsilon,
                                                          const Rational& b,
                                                          KroneckerOracle& oracle = default_oracle());

struct ChainStats {
  BigInt height_lambda, height_mu, size, r, c, s;
};
ChainStats chain_stats(const RestrictedKroneckerInstance& i);

}  // namespace kron
