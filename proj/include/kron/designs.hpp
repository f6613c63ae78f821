#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kron/bigint.hpp"
#include "kron/partition.hpp"
#include "kron/pointset.hpp"

namespace kron {

using Hyperedge = std::vector<int>;

// Three layers of hyperedges on vertices 0..vertex_count-1. Layer i belongs
// to the i-th partition of a triple: its hyperedge sizes are that
// partition's column lengths.
struct ObstructionDesign {
  int vertex_count = 0;
  std::array<std::vector<Hyperedge>, 3> layers;

  friend bool operator==(const ObstructionDesign&, const ObstructionDesign&) = default;
};

// Throws "invalid_design" unless every layer partitions the vertex set.
void check_predesign(const ObstructionDesign& d);
// No two vertices share all three hyperedges. Validates the layers first.
bool is_design(const ObstructionDesign& d);
// Sorted hyperedge sizes of layer i equal the column lengths of partition i.
bool has_type(const ObstructionDesign& d, const PartitionTriple& t);

// x-, y- and z-slices become the hyperedges of layers 1, 2, 3.
ObstructionDesign design_from_pointset(const PointSet& p);

// Exhaustive search for a design of the given type.
std::optional<ObstructionDesign> find_design_exhaustive(const PartitionTriple& t);

struct FlowEdge {
  int from, to;
  long capacity;
};

struct FlowNetwork {
  int node_count = 0;
  int source = 0, sink = 0;
  std::vector<FlowEdge> edges;

  int add_node() { return node_count++; }
  void add_edge(int from, int to, long capacity) { edges.push_back({from, to, capacity}); }
};

struct FlowResult {
  long value = 0;
  std::vector<long> edge_flow;  // parallel to FlowNetwork::edges
};

// Capacity-scaling augmenting paths. Throws "invalid_network" on negative
// capacities or out-of-range endpoints.
FlowResult max_flow(const FlowNetwork& n);

// Source -> one node per column of mu (capacity = column length) -> one node
// per column of pi (capacity 1 between every pair) -> sink (capacity =
// column length).
FlowNetwork hook_flow_network(const Partition& mu, const Partition& pi);

// t > 0 for a hook lambda, decided by max flow against ht(lambda).
bool hook_t_positive(const Partition& lambda, const Partition& mu, const Partition& pi);

// Positivity of t when all heights are at most c. Large sizes are positive
// outright; small ones are enumerated once and cached.
bool const_height_decide(const PartitionTriple& t, int c);

ObstructionDesign lr_embed_construction(const PartitionTriple& embedded);
ObstructionDesign const_height_construction(const PartitionTriple& t, int c);
// A design of type (lambda, delta, delta) with delta = (d^r).
ObstructionDesign rectangular_construction(const Partition& lambda, int d, int r);

enum class DecideMethod { Auto, Hook, ConstHeight, Rectangular, SimplexLike };

struct Decision {
  bool positive = false;
  std::string method;  // the route that produced the verdict
  std::optional<ObstructionDesign> design;
  std::optional<FlowResult> flow;
  std::optional<BigInt> count;
  std::optional<PointSet> witness;
};

// Decides t > 0. Auto tries the special-class deciders and falls back to a
// witness search, which may throw BudgetExceeded. A named method that does
// not apply to the triple throws "method_not_applicable".
Decision t_tilde_positive(const PartitionTriple& t, DecideMethod method = DecideMethod::Auto,
                          CountBudget budget = {});

}  // namespace kron
