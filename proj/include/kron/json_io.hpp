#pragma once

#include "json.hpp"

#include "kron/designs.hpp"
#include "kron/partition.hpp"
#include "kron/pointset.hpp"
#include "kron/reductions.hpp"
#include "kron/segmented.hpp"

namespace kron {

using Json = nlohmann::json;

// Numbers are written as decimal strings. Readers accept strings or JSON
// integers. Malformed input throws InvalidArgument("parse_error").

Json to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);
Json to_json(const Rational& v);
Rational rational_from_json(const Json& j);

// {"parts": [...]}, {"rle": [[value, multiplicity], ...]} or the segmented
// form {"segments": [...], "overlay": {...}} listing the parts. The writer
// picks whichever of the first two is shorter.
Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

// {"segments": [{"start", "length", "coeffs": [c0, c1, c2]}], "overlay": {index: delta}}
Json to_json(const SegmentedSequence& s);
SegmentedSequence segmented_from_json(const Json& j);

// {"lambda", "mu", "pi"} with any partition form.
Json to_json(const PartitionTriple& t);
PartitionTriple triple_from_json(const Json& j);

// {"lambda_t", "mu_t", "pi_t"}, each segmented.
Json to_json(const ColumnTriple& t);
ColumnTriple column_triple_from_json(const Json& j);
// Accepts either triple form.
ColumnTriple any_triple_from_json(const Json& j);

Json to_json(const PointSet& p);
PointSet pointset_from_json(const Json& j);
Json to_json(const Marginals& m);

Json to_json(const ObstructionDesign& d);
ObstructionDesign design_from_json(const Json& j);
Json to_json(const FlowResult& f);

// Instances carry a "type" field: 3dm, 4partition, 3partition,
// machine_flow, rn3dm, rnmts, permutation, special_consistency,
// restricted_kronecker.
Json to_json(const ReductionInstance& i);
ReductionInstance instance_from_json(const Json& j);
std::string instance_type(const ReductionInstance& i);

Json to_json(const Check& c);
Json to_json(const std::vector<Check>& checks);
Json to_json(const ReductionTrace& t);
ReductionTrace trace_from_json(const Json& j);

}  // namespace kron
