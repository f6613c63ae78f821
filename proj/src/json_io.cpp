#include "kron/json_io.hpp"

#include <algorithm>

#include "kron/errors.hpp"

namespace kron {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InvalidArgument("parse_error", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) fail(std::string("field \"") + key + "\" must be an array");
  return a;
}

int int_from_json(const Json& j) { return to_int(bigint_from_json(j)); }

Json runs_to_json(const RunList& runs) {
  Json a = Json::array();
  for (const auto& [v, c] : runs) a.push_back({to_json(v), to_json(c)});
  return a;
}

RunList runs_from_json(const Json& j) {
  if (!j.is_array()) fail("run list must be an array");
  RunList out;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != 2) fail("run must be [value, count]");
    out.emplace_back(bigint_from_json(r[0]), bigint_from_json(r[1]));
  }
  return out;
}

Json map_to_json(const std::map<BigInt, BigInt>& m) {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[to_string(k)] = to_json(v);
  return o;
}

std::map<BigInt, BigInt> map_from_json(const Json& j) {
  if (!j.is_object()) fail("expected an object keyed by index");
  std::map<BigInt, BigInt> out;
  for (const auto& [k, v] : j.items()) out[parse_bigint(k)] += bigint_from_json(v);
  return out;
}

Json partition_instance_json(const PartitionInstance& p) {
  Json elems = Json::array();
  for (const auto& e : p.elements) elems.push_back({{"label", e.label}, {"size", to_json(e.size)}});
  return {{"type", p.group_size == 4 ? "4partition" : "3partition"},
          {"m", to_json(p.m)},
          {"B", to_json(p.B)},
          {"elements", elems}};
}

PartitionInstance partition_instance_from_json(const Json& j, int group_size) {
  PartitionInstance p;
  p.group_size = group_size;
  p.m = bigint_from_json(field(j, "m"));
  p.B = bigint_from_json(field(j, "B"));
  int k = 0;
  for (const auto& e : array_field(j, "elements")) {
    ++k;
    if (e.is_object()) {
      std::string label = e.contains("label") ? e.at("label").get<std::string>() : "a" + std::to_string(k);
      p.elements.push_back({label, bigint_from_json(field(e, "size"))});
    } else {
      p.elements.push_back({"a" + std::to_string(k), bigint_from_json(e)});
    }
  }
  return p;
}

}  // namespace

Json to_json(const BigInt& v) { return to_string(v); }

BigInt bigint_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const Error&) {
      fail("not an integer: " + j.get<std::string>());
    }
  }
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  fail("expected an integer, got " + j.dump());
}

Json to_json(const Rational& v) { return to_string(v); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(bigint_from_json(j));
  if (j.is_number_float()) return parse_rational(j.dump());
  fail("expected a rational, got " + j.dump());
}

Json to_json(const Partition& p) {
  BigInt height = p.height();
  if (height <= 2 * BigInt(static_cast<unsigned long>(p.runs().size())) && height <= 4096) {
    Json parts = Json::array();
    for (const auto& v : p.parts()) parts.push_back(to_json(v));
    return {{"parts", parts}};
  }
  Json rle = Json::array();
  for (const auto& r : p.runs()) rle.push_back({to_json(r.value), to_json(r.multiplicity)});
  return {{"rle", rle}};
}

Partition partition_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<BigInt> parts;
    for (const auto& v : j) parts.push_back(bigint_from_json(v));
    return Partition::from_parts(parts);
  }
  if (!j.is_object()) fail("partition must be an object or an array of parts");
  if (j.contains("parts")) return partition_from_json(j.at("parts"));
  if (j.contains("rle")) {
    std::vector<Partition::Run> runs;
    for (const auto& [v, c] : runs_from_json(j.at("rle"))) runs.push_back({v, c});
    return Partition::from_runs(std::move(runs));
  }
  if (j.contains("segments")) {
    auto p = segmented_from_json(j).to_partition();
    if (!p) throw BudgetExceeded("segmented partition has too many distinct parts to list");
    return *p;
  }
  fail("partition needs \"parts\", \"rle\" or \"segments\"");
}

Json to_json(const SegmentedSequence& s) {
  Json segs = Json::array();
  for (const auto& g : s.segments())
    segs.push_back({{"start", to_json(g.start)},
                    {"length", to_json(g.length)},
                    {"coeffs", {to_json(g.c0), to_json(g.c1), to_json(g.c2)}}});
  return {{"segments", segs}, {"overlay", map_to_json(s.overlay())}};
}

SegmentedSequence segmented_from_json(const Json& j) {
  std::vector<Segment> segs;
  for (const auto& g : array_field(j, "segments")) {
    const Json& c = array_field(g, "coeffs");
    if (c.empty() || c.size() > 3) fail("a segment has one to three coefficients");
    Segment s{bigint_from_json(field(g, "start")), bigint_from_json(field(g, "length")), 0, 0, 0};
    s.c0 = rational_from_json(c[0]);
    if (c.size() > 1) s.c1 = rational_from_json(c[1]);
    if (c.size() > 2) s.c2 = rational_from_json(c[2]);
    segs.push_back(s);
  }
  std::map<BigInt, BigInt> overlay;
  if (j.contains("overlay")) overlay = map_from_json(j.at("overlay"));
  return SegmentedSequence(std::move(segs), std::move(overlay));
}

Json to_json(const PartitionTriple& t) {
  return {{"lambda", to_json(t.lambda())}, {"mu", to_json(t.mu())}, {"pi", to_json(t.pi())}};
}

PartitionTriple triple_from_json(const Json& j) {
  if (j.is_object() && j.contains("lambda_t")) {
    auto t = column_triple_from_json(j).to_triple();
    if (!t) throw BudgetExceeded("triple has too many distinct parts to list");
    return *t;
  }
  return PartitionTriple(partition_from_json(field(j, "lambda")), partition_from_json(field(j, "mu")),
                         partition_from_json(field(j, "pi")));
}

Json to_json(const ColumnTriple& t) {
  return {{"lambda_t", to_json(t.lambda_t)}, {"mu_t", to_json(t.mu_t)}, {"pi_t", to_json(t.pi_t)}};
}

ColumnTriple column_triple_from_json(const Json& j) {
  return ColumnTriple{segmented_from_json(field(j, "lambda_t")), segmented_from_json(field(j, "mu_t")),
                      segmented_from_json(field(j, "pi_t"))};
}

ColumnTriple any_triple_from_json(const Json& j) {
  if (j.is_object() && j.contains("lambda_t")) return column_triple_from_json(j);
  return ColumnTriple::from_triple(triple_from_json(j));
}

Json to_json(const PointSet& p) {
  Json a = Json::array();
  for (const auto& pt : p) a.push_back({std::to_string(pt[0]), std::to_string(pt[1]), std::to_string(pt[2])});
  return a;
}

PointSet pointset_from_json(const Json& j) {
  if (!j.is_array()) fail("point set must be an array of triples");
  std::vector<Point> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 3) fail("point must have three coordinates");
    pts.push_back({int_from_json(p[0]), int_from_json(p[1]), int_from_json(p[2])});
  }
  return PointSet(std::move(pts));
}

Json to_json(const Marginals& m) {
  auto vec = [](const std::vector<int>& v) {
    Json a = Json::array();
    for (int x : v) a.push_back(std::to_string(x));
    return a;
  };
  return {{"x", vec(m.x)}, {"y", vec(m.y)}, {"z", vec(m.z)}};
}

Json to_json(const ObstructionDesign& d) {
  Json layers = Json::array();
  for (const auto& layer : d.layers) {
    Json l = Json::array();
    for (const auto& e : layer) {
      Json h = Json::array();
      for (int v : e) h.push_back(std::to_string(v));
      l.push_back(h);
    }
    layers.push_back(l);
  }
  return {{"vertex_count", std::to_string(d.vertex_count)}, {"layers", layers}};
}

ObstructionDesign design_from_json(const Json& j) {
  ObstructionDesign d;
  d.vertex_count = int_from_json(field(j, "vertex_count"));
  const Json& layers = array_field(j, "layers");
  if (layers.size() != 3) fail("a design has three layers");
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& e : layers[i]) {
      Hyperedge h;
      for (const auto& v : e) h.push_back(int_from_json(v));
      d.layers[i].push_back(h);
    }
  return d;
}

Json to_json(const FlowResult& f) {
  Json flows = Json::array();
  for (long v : f.edge_flow) flows.push_back(std::to_string(v));
  return {{"value", std::to_string(f.value)}, {"edge_flow", flows}};
}

std::string instance_type(const ReductionInstance& i) {
  struct Visitor {
    std::string operator()(const ThreeDMInstance&) const { return "3dm"; }
    std::string operator()(const PartitionInstance& p) const {
      return p.group_size == 4 ? "4partition" : "3partition";
    }
    std::string operator()(const MachineFlowInstance&) const { return "machine_flow"; }
    std::string operator()(const Rn3dmInstance&) const { return "rn3dm"; }
    std::string operator()(const RnmtsInstance&) const { return "rnmts"; }
    std::string operator()(const PermutationInstance&) const { return "permutation"; }
    std::string operator()(const ConsistencyInstance&) const { return "special_consistency"; }
    std::string operator()(const RestrictedKroneckerInstance&) const { return "restricted_kronecker"; }
  };
  return std::visit(Visitor{}, i);
}

Json to_json(const ReductionInstance& inst) {
  struct Visitor {
    Json operator()(const ThreeDMInstance& i) const {
      Json triples = Json::array();
      for (const auto& t : i.triples)
        triples.push_back({std::to_string(t[0]), std::to_string(t[1]), std::to_string(t[2])});
      return {{"type", "3dm"}, {"q", std::to_string(i.q)}, {"triples", triples}};
    }
    Json operator()(const PartitionInstance& i) const { return partition_instance_json(i); }
    Json operator()(const MachineFlowInstance& i) const {
      return {{"type", "machine_flow"}, {"delays", runs_to_json(i.delays)}, {"y", to_json(i.y)},
              {"jobs", to_json(i.job_count())}};
    }
    Json operator()(const Rn3dmInstance& i) const {
      return {{"type", "rn3dm"}, {"u", runs_to_json(i.u)}, {"e", to_json(i.e)}, {"n", to_json(i.n())}};
    }
    Json operator()(const RnmtsInstance& i) const {
      return {{"type", "rnmts"}, {"y", runs_to_json(i.y)}, {"n", to_json(i.n())}};
    }
    Json operator()(const PermutationInstance& i) const {
      return {{"type", "permutation"}, {"n", to_json(i.n)}, {"z", map_to_json(i.z)}};
    }
    Json operator()(const ConsistencyInstance& i) const {
      Json j = {{"type", "special_consistency"},
                {"r", to_json(i.r)},
                {"d", map_to_json(i.d)},
                {"columns", to_json(i.columns)}};
      if (i.triple) j["triple"] = to_json(*i.triple);
      return j;
    }
    Json operator()(const RestrictedKroneckerInstance& i) const {
      Json j = {{"type", "restricted_kronecker"},
                {"columns", to_json(i.columns)},
                {"m", to_json(i.m)},
                {"epsilon", to_json(i.epsilon)},
                {"r", to_json(i.r)},
                {"c", to_json(i.c)},
                {"s", to_json(i.s)}};
      if (i.triple) j["triple"] = to_json(*i.triple);
      return j;
    }
  };
  return std::visit(Visitor{}, inst);
}

ReductionInstance instance_from_json(const Json& j) {
  std::string type = field(j, "type").get<std::string>();
  if (type == "3dm") {
    ThreeDMInstance i;
    i.q = int_from_json(field(j, "q"));
    for (const auto& t : array_field(j, "triples")) {
      if (!t.is_array() || t.size() != 3) fail("a 3dm triple has three entries");
      i.triples.push_back({int_from_json(t[0]), int_from_json(t[1]), int_from_json(t[2])});
    }
    std::sort(i.triples.begin(), i.triples.end());
    return i;
  }
  if (type == "4partition") return partition_instance_from_json(j, 4);
  if (type == "3partition") return partition_instance_from_json(j, 3);
  if (type == "machine_flow")
    return MachineFlowInstance{runs_from_json(field(j, "delays")), bigint_from_json(field(j, "y"))};
  if (type == "rn3dm") return Rn3dmInstance{runs_from_json(field(j, "u")), bigint_from_json(field(j, "e"))};
  if (type == "rnmts") return RnmtsInstance{runs_from_json(field(j, "y"))};
  if (type == "permutation") {
    PermutationInstance i;
    i.n = bigint_from_json(field(j, "n"));
    i.z = map_from_json(field(j, "z"));
    return i;
  }
  if (type == "special_consistency") {
    ConsistencyInstance i;
    i.r = bigint_from_json(field(j, "r"));
    i.d = map_from_json(field(j, "d"));
    if (j.contains("columns")) i.columns = column_triple_from_json(j.at("columns"));
    else i.columns = lattice_permutation_columns(i.r, i.d);
    i.triple = i.columns.to_triple(4096);
    return i;
  }
  if (type == "restricted_kronecker") {
    RestrictedKroneckerInstance i;
    if (j.contains("columns")) i.columns = column_triple_from_json(j.at("columns"));
    else i.columns = ColumnTriple::from_triple(triple_from_json(field(j, "triple")));
    i.triple = i.columns.to_triple(4096);
    i.epsilon = rational_from_json(field(j, "epsilon"));
    i.m = j.contains("m") ? bigint_from_json(j.at("m"))
                          : (i.columns.mu_t.length() > 0 ? i.columns.mu_t.eval(0) : BigInt(0));
    i.r = j.contains("r") ? bigint_from_json(j.at("r")) : BigInt(0);
    i.c = j.contains("c") ? bigint_from_json(j.at("c")) : BigInt(0);
    i.s = j.contains("s") ? bigint_from_json(j.at("s")) : BigInt(0);
    return i;
  }
  fail("unknown instance type \"" + type + "\"");
}

Json to_json(const Check& c) {
  Json j = {{"name", c.name}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(to_json(c));
  return a;
}

Json to_json(const ReductionTrace& t) {
  Json stages = Json::array();
  for (const auto& s : t.stages)
    stages.push_back({{"stage", s.stage}, {"instance", to_json(s.instance)}, {"checks", to_json(s.checks)}});
  return {{"stages", stages}};
}

ReductionTrace trace_from_json(const Json& j) {
  ReductionTrace t;
  for (const auto& s : array_field(j, "stages")) {
    StageRecord r{field(s, "stage").get<std::string>(), instance_from_json(field(s, "instance")), {}};
    for (const auto& c : array_field(s, "checks"))
      r.checks.push_back({field(c, "name").get<std::string>(), field(c, "passed").get<bool>(),
                          c.contains("detail") ? c.at("detail").get<std::string>() : std::string()});
    t.stages.push_back(std::move(r));
  }
  return t;
}

}  // namespace kron
