#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "kron/cli.hpp"
#include "kron/errors.hpp"
#include "kron/json_io.hpp"

using namespace kron;

namespace {

Partition P(const std::vector<int>& parts) { return Partition::from_parts(std::span<const int>(parts)); }

cli::CommandResult run(std::vector<std::string> args) { return cli::run(args); }

const char* kBase = R"({"type":"3dm","q":"2","triples":[["1","1","1"],["2","1","2"],["1","2","2"]]})";

}  // namespace

TEST_CASE("partition json forms") {
  Partition p = P({9, 9, 9, 3, 3});
  CHECK(partition_from_json(to_json(p)) == p);
  CHECK(partition_from_json(Json::parse(R"({"rle":[[9,3],[3,2]]})")) == p);
  CHECK(partition_from_json(Json::parse(R"({"parts":["9","9","9","3","3"]})")) == p);
  CHECK(partition_from_json(Json::parse("[9,9,9,3,3]")) == p);
  CHECK(partition_from_json(to_json(SegmentedSequence::from_partition(p))) == p);
  Partition huge = Partition::from_runs({{BigInt(7), pow(BigInt(10), 20)}});
  CHECK(to_json(huge).contains("rle"));
  CHECK(partition_from_json(to_json(huge)) == huge);
  CHECK_THROWS_AS(partition_from_json(Json::parse(R"({"rows":[1]})")), InvalidArgument);
  CHECK_THROWS_AS(partition_from_json(Json::parse(R"([1,"x"])")), InvalidArgument);
}

TEST_CASE("instance round trips") {
  auto res = pipeline(base_no_instance(), Rational(1));
  for (const auto& st : res.trace.stages) {
    Json j = to_json(st.instance);
    CHECK(j["type"] == st.stage);
    CHECK(instance_from_json(Json::parse(j.dump())) == st.instance);
  }
  Json t = to_json(res.trace);
  auto back = trace_from_json(Json::parse(t.dump()));
  REQUIRE(back.stages.size() == res.trace.stages.size());
  CHECK(to_json(back) == t);

  PointSet ps({{0, 0, 0}, {0, 1, 1}});
  CHECK(pointset_from_json(to_json(ps)) == ps);
  ObstructionDesign d{2, {{{{0}, {1}}, {{0, 1}}, {{0, 1}}}}};
  CHECK(design_from_json(to_json(d)) == d);
  PartitionTriple tr(P({2, 1}), P({3}), P({1, 1, 1}));
  CHECK(triple_from_json(to_json(tr)) == tr);
  CHECK(any_triple_from_json(to_json(ColumnTriple::from_triple(tr))) == ColumnTriple::from_triple(tr));
}

TEST_CASE("cli coefficient commands") {
  auto r = run({"coeff", R"({"lambda":[2,2,2],"mu":[2,2,1,1],"pi":[2,2,1,1]})"});
  CHECK(r.exit_code == 0);
  CHECK(r.payload["k"] == "1");
  auto b = run({"bounds", R"({"lambda":[1,1],"mu":[2],"pi":[2]})"});
  CHECK(b.payload["p"] == "0");
  CHECK(b.payload["k"] == "0");
  CHECK(b.payload["t"] == "2");
  auto c = run({"classify", R"({"lambda":[2,2,2],"mu":[2,2,1,1],"pi":[2,2,1,1]})"});
  CHECK(c.payload["simplex_like"] == true);
  CHECK(c.payload["lattice_permutation_form"]["r"] == "1");
  auto d = run({"decide", "--method", "hook", R"({"lambda":[1,1,1],"mu":[1,1,1],"pi":[1,1,1]})"});
  CHECK(d.exit_code == 0);
  CHECK(d.payload["t_positive"] == false);
  auto big = run({"coeff", R"({"lambda":{"rle":[[1,60]]},"mu":{"rle":[[1,60]]},"pi":[60]})"});
  CHECK(big.exit_code == 3);
  CHECK(big.payload["status"] == "error");
}

TEST_CASE("cli reduction commands") {
  auto r = run({"reduce", "--epsilon", "1", kBase});
  REQUIRE(r.exit_code == 0);
  CHECK(parse_bigint(r.payload["stats"]["height_mu"].get<std::string>()) > pow(BigInt(10), 16));
  CHECK(parse_bigint(r.payload["stats"]["size"].get<std::string>()) > pow(BigInt(10), 46));
  CHECK(r.payload["all_passed"] == true);

  std::string trace = "cli_trace_test.json";
  auto t = run({"reduce", "--epsilon", "1/2", "--trace", trace, kBase});
  CHECK(t.exit_code == 0);
  std::ifstream in(trace);
  CHECK(Json::parse(in)["stages"].size() == 9);
  std::remove(trace.c_str());

  auto v = run({"verify", "--epsilon", "1", r.payload["instance"].dump()});
  CHECK(v.payload["all_passed"] == true);
  auto g = run({"generate", "--count", "3", "--bits", "f"});
  CHECK(g.payload["instances"].size() == 4);
  CHECK(g.payload["instances"][3]["bits"] == "1111");
  auto s = run({"solve", "--problem", "3dm", kBase});
  CHECK(s.payload["yes"] == false);
  auto p = run({"solve", "--problem", "permutation", R"({"type":"permutation","n":"2","z":{"2":"1","4":"1"}})"});
  CHECK(p.payload["yes"] == true);
}

TEST_CASE("cli errors") {
  CHECK(run({}).exit_code == 2);
  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"reduce", "--epsilon", "0", kBase}).exit_code == 2);
  CHECK(run({"reduce", "--epsilon", "1", R"({"type":"3dm","q":"2","triples":[["1","1","1"]]})"})
            .payload["code"] == "3dm");
  CHECK(run({"coeff", "{not json"}).payload["code"] == "parse_error");
  CHECK(run({"solve", "--problem", "rn3dm", kBase}).exit_code == 2);
  auto h = run({"coeff", "--help"});
  CHECK(h.exit_code == 0);
  CHECK_FALSE(h.text.empty());
}
