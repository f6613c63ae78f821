#include "doctest.h"

#include <chrono>
#include <set>

#include "kron/errors.hpp"
#include "kron/oracle.hpp"
#include "kron/pointset.hpp"
#include "kron/reductions.hpp"

using namespace kron;

namespace {

Partition P(const std::vector<int>& parts) { return Partition::from_parts(std::span<const int>(parts)); }

ThreeDMInstance single_triple() { return ThreeDMInstance{1, {{1, 1, 1}}}; }

PermutationInstance perm(long n, std::map<long, long> z) {
  PermutationInstance p;
  p.n = n;
  for (auto [l, c] : z) p.z[l] = c;
  return p;
}

}  // namespace

TEST_CASE("3dm validation") {
  CHECK_NOTHROW(reduce_3dm_to_4partition(base_no_instance()));
  ThreeDMInstance uncovered{2, {{1, 1, 1}}};
  CHECK_THROWS_AS(reduce_3dm_to_4partition(uncovered), StageError);
  ThreeDMInstance out_of_range{1, {{1, 1, 2}}};
  CHECK_THROWS_AS(reduce_3dm_to_4partition(out_of_range), StageError);
}

TEST_CASE("3dm to 4-partition") {
  auto p = reduce_3dm_to_4partition(single_triple());
  CHECK(p.m == 1);
  CHECK(p.B == 41943055);
  std::multiset<BigInt> sizes;
  for (const auto& e : p.elements) sizes.insert(e.size);
  CHECK(sizes == std::multiset<BigInt>{10485793, 10486786, 10518532, 10451944});

  auto q = reduce_3dm_to_4partition(base_no_instance());
  CHECK(q.elements.size() == 12);
  BigInt total = 0;
  for (const auto& e : q.elements) {
    total += e.size;
    CHECK(5 * e.size > q.B);
    CHECK(3 * e.size < q.B);
  }
  CHECK(total == q.m * q.B);
}

TEST_CASE("4-partition to 3-partition") {
  auto p3 = reduce_4partition_to_3partition(reduce_3dm_to_4partition(single_triple()));
  BigInt B = 41943055;
  CHECK(p3.elements.size() == 21);
  CHECK(p3.m == 7);
  CHECK(p3.B == 64 * B + 4);
  int fillers = 0;
  for (const auto& e : p3.elements)
    if (e.label[0] == 'f') {
      ++fillers;
      CHECK(e.size == 20 * B);
    }
  CHECK(fillers == 5);
  for (const auto& c : check_instance(p3)) CHECK_MESSAGE(c.passed, c.name);
  CHECK_THROWS_AS(reduce_4partition_to_3partition(p3), StageError);
}

TEST_CASE("3-partition to machine flow") {
  PartitionInstance p{3, 1, 10, {{"a", 3}, {"b", 3}, {"c", 4}}};
  auto mf = reduce_3partition_to_machineflow(p);
  RunList expected{{12, 2}, {16, 1}, {0, 37}, {81, 40}};
  CHECK(mf.delays == expected);
  CHECK(mf.job_count() == 80);
  CHECK(mf.y == 122);

  auto rn = reduce_machineflow_to_rn3dm(mf);
  CHECK(rn.e == 122);
  CHECK(rn.u == mf.delays);
  CHECK(run_sum(rn.u) + rn.n() * (rn.n() + 1) == rn.n() * rn.e);

  MachineFlowInstance bad{{{5, 2}}, 9};
  CHECK_THROWS_AS(reduce_machineflow_to_rn3dm(bad), StageError);
}

TEST_CASE("rn3dm, rnmts and permutation") {
  Rn3dmInstance rn{{{0, 1}, {2, 1}}, 4};
  auto y = reduce_rn3dm_to_rnmts(rn);
  CHECK(y.y == RunList{{2, 1}, {4, 1}});
  auto z = reduce_rnmts_to_permutation(y);
  CHECK(z == perm(2, {{2, 1}, {4, 1}}));
  CHECK(reduce_rnmts_to_permutation(RnmtsInstance{{{3, 2}}}) == perm(2, {{3, 2}}));

  Rn3dmInstance invalid{{{4, 1}, {0, 1}}, 5};
  CHECK_THROWS_AS(reduce_rn3dm_to_rnmts(invalid), StageError);
}

TEST_CASE("permutation to consistency") {
  auto a = reduce_permutation_to_consistency(perm(2, {{3, 2}}));
  REQUIRE(a.triple);
  CHECK(*a.triple == PartitionTriple(P({2, 2, 2}), P({2, 2, 1, 1}), P({2, 2, 1, 1})));
  auto b = reduce_permutation_to_consistency(perm(2, {{2, 1}, {4, 1}}));
  REQUIRE(b.triple);
  CHECK(*b.triple == PartitionTriple(P({3, 1, 1, 1}), P({2, 2, 1, 1}), P({2, 2, 1, 1})));

  auto no = perm(4, {{2, 1}, {3, 1}, {7, 1}, {8, 1}});
  CHECK_FALSE(solve_permutation(no));
  auto c = reduce_permutation_to_consistency(no);
  REQUIRE(c.triple);
  CHECK(count_t(*c.triple) == 0);
}

TEST_CASE("consistency to restricted kronecker") {
  auto base = reduce_permutation_to_consistency(perm(2, {{3, 2}}));
  auto k = reduce_consistency_to_kronecker(base, Rational(1));
  CHECK(k.c == 3);
  CHECK(k.s == 3);
  CHECK(k.m == 13);
  REQUIRE(k.triple);
  CHECK(k.triple->lambda() == P({5, 5, 5, 3, 3, 3, 3, 3, 3}));
  CHECK(k.triple->mu() == P({3, 3, 3, 3, 3, 3, 3, 3, 3, 2, 2, 1, 1}));
  CHECK(k.triple->pi() == k.triple->mu());
  CHECK(verify_restricted(k).all_passed());
  CHECK(kronecker(*k.triple) == 1);
  CHECK(kronecker(*base.triple) == 1);
  CHECK_THROWS_AS(reduce_consistency_to_kronecker(base, Rational(0)), InvalidArgument);
  auto trivial = reduce_permutation_to_consistency(perm(1, {{2, 1}}));
  CHECK_THROWS_AS(reduce_consistency_to_kronecker(trivial, Rational(1)), StageError);
  CHECK_THROWS_AS(reduce_consistency_to_kronecker(base, Rational(3, 2)), InvalidArgument);
}

TEST_CASE("restricted constraints") {
  auto k = reduce_consistency_to_kronecker(reduce_permutation_to_consistency(perm(2, {{3, 2}})),
                                           Rational(1));
  RestrictedKroneckerInstance other = k;
  other.columns.pi_t = SegmentedSequence::from_partition(P({3, 3, 3, 3, 3, 3, 3, 3, 3, 2, 2, 2}).transpose());
  auto rep = verify_restricted(other);
  CHECK_FALSE(rep.all_passed());
  bool mu_pi_failed = false;
  for (const auto& c : rep.constraints)
    if (c.name == "mu_equals_pi") mu_pi_failed = !c.passed;
  CHECK(mu_pi_failed);

  RestrictedKroneckerInstance hook;
  hook.columns = ColumnTriple::from_triple(PartitionTriple(P({3, 1}), P({2, 2}), P({2, 2})));
  hook.m = 2;
  hook.epsilon = 1;
  for (const auto& c : verify_restricted(hook).constraints)
    if (c.name == "not_hook") CHECK_FALSE(c.passed);

  CHECK(kron_cone_sufficient(P({5, 5, 5, 3, 3, 3, 3, 3, 3}), P({3, 3, 3, 3, 3, 3, 3, 3, 3, 2, 2, 1, 1})));
  CHECK_FALSE(kron_cone_sufficient(P({1, 1, 1, 1, 1, 1, 1, 1, 1, 1}), P({10})));
  CHECK(kron_cone_sufficient(P({3, 3, 3}), P({3, 3, 3})));
  CHECK_THROWS_AS(kron_cone_sufficient(P({1}), Partition{}), InvalidArgument);

  CHECK(power_at_most(9, 13, Rational(1)));
  CHECK(power_at_most(3, 9, Rational(1, 2)));
  CHECK_FALSE(power_at_most(4, 9, Rational(1, 2)));
}

TEST_CASE("full pipeline on the matching-free instance") {
  auto start = std::chrono::steady_clock::now();
  auto res = pipeline(base_no_instance(), Rational(1));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 10.0);
  CHECK(res.trace.stages.size() == 9);
  auto stats = chain_stats(res.instance);
  CHECK(stats.height_mu > pow(BigInt(10), 16));
  CHECK(stats.size > pow(BigInt(10), 46));
  CHECK(verify_restricted(res.instance).all_passed());
  for (const auto& st : res.trace.stages)
    for (const auto& c : st.checks) CHECK_MESSAGE(c.passed, st.stage << ": " << c.name);
}

TEST_CASE("padding generator") {
  CHECK(padded_no_instance("") == base_no_instance());
  CHECK_FALSE(solve_3dm(base_no_instance()));
  auto a = padded_no_instance("0");
  auto b = padded_no_instance("1");
  CHECK(a != b);
  CHECK_FALSE(solve_3dm(a));
  CHECK_FALSE(solve_3dm(b));
  CHECK(shortlex_bitstrings(4) == std::vector<std::string>{"", "0", "1", "00"});
  CHECK(bits_from_hex("a1") == "10100001");
  CHECK_THROWS_AS(bits_from_hex("g"), InvalidArgument);
  auto many = generate_no_instances(shortlex_bitstrings(100));
  std::set<std::vector<std::array<int, 3>>> distinct;
  for (const auto& i : many) distinct.insert(i.triples);
  CHECK(distinct.size() == 100);
  CHECK_THROWS_AS(generate_no_instances({"0", "0"}), InvalidArgument);
}

TEST_CASE("solvers") {
  ThreeDMInstance full{2, {}};
  for (int w = 1; w <= 2; ++w)
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) full.triples.push_back({w, x, y});
  CHECK(solve_3dm(full));
  CHECK(solve_partition(reduce_3dm_to_4partition(single_triple())));
  CHECK(solve_permutation(perm(2, {{2, 1}, {4, 1}})));
  CHECK(solve_rn3dm(Rn3dmInstance{{{0, 1}, {2, 1}}, 4}));
  CHECK(solve_rnmts(RnmtsInstance{{{2, 1}, {4, 1}}}));
  CHECK_FALSE(solve_rnmts(RnmtsInstance{{{2, 1}, {3, 1}, {7, 1}, {8, 1}}}));
}

TEST_CASE("exceptional candidates") {
  auto v = exceptional_candidate_check(P({4, 2}), 2, Rational(1), Rational(3));
  std::map<std::string, std::string> status;
  for (const auto& c : v) status[c.constraint.substr(0, 3)] = c.status;
  CHECK(status["(1)"] == "pass");
  CHECK(status["(2)"] == "pass");
  CHECK(status["(4)"] == "pass");
  CHECK(status["(6)"] == "pass");
  CHECK(status["(0)"] == "fail");
  CHECK(status["(3)"] == "implied");
  CHECK(status["(5)"] == "not_evaluated");

  std::map<std::string, std::string> hook;
  for (const auto& c : exceptional_candidate_check(P({5, 1}), 2, Rational(1), Rational(3)))
    hook[c.constraint.substr(0, 3)] = c.status;
  CHECK(hook["(0)"] == "moot");
  CHECK(hook["(5)"] == "fail");

  std::map<std::string, std::string> tall;
  for (const auto& c : exceptional_candidate_check(P({1, 1, 1, 1}), 2, Rational(1), Rational(3)))
    tall[c.constraint.substr(0, 3)] = c.status;
  CHECK(tall["(2)"] == "fail");
  CHECK_THROWS_AS(exceptional_candidate_check(P({3, 2}), 2, Rational(1), Rational(3)), InvalidArgument);
}
