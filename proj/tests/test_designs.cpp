#include "doctest.h"

#include "kron/designs.hpp"
#include "kron/errors.hpp"
#include "kron/oracle.hpp"

using namespace kron;

namespace {

PartitionTriple T(Partition l, Partition m, Partition p) { return {l, m, p}; }

Partition P(const std::vector<int>& parts) { return Partition::from_parts(std::span<const int>(parts)); }

}  // namespace

TEST_CASE("designs from point sets") {
  auto d = design_from_pointset(PointSet({{0, 0, 0}, {1, 0, 0}}));
  CHECK(d.vertex_count == 2);
  CHECK(d.layers[0] == std::vector<Hyperedge>{{0}, {1}});
  CHECK(d.layers[1] == std::vector<Hyperedge>{{0, 1}});
  CHECK(d.layers[2] == std::vector<Hyperedge>{{0, 1}});
  CHECK(is_design(d));
  auto s = design_from_pointset(simplex(2));
  CHECK(s.vertex_count == 4);
  CHECK(is_design(s));
  CHECK(has_type(s, T({2, 1, 1}, {2, 1, 1}, {2, 1, 1})));
  CHECK(design_from_pointset(PointSet{}).vertex_count == 0);
}

TEST_CASE("design property") {
  ObstructionDesign twin{2, {{{{0, 1}}, {{0, 1}}, {{0, 1}}}}};
  CHECK_FALSE(is_design(twin));
  ObstructionDesign single{1, {{{{0}}, {{0}}, {{0}}}}};
  CHECK(is_design(single));
  ObstructionDesign broken{2, {{{{0}}, {{0, 1}}, {{0, 1}}}}};
  CHECK_THROWS_AS(is_design(broken), Error);
}

TEST_CASE("t-positivity") {
  CHECK(t_tilde_positive(T({1, 1}, {2}, {2})).positive);
  CHECK_FALSE(t_tilde_positive(T({1, 1}, {1, 1}, {1, 1})).positive);
  CHECK(t_tilde_positive(T({2, 2, 2}, {2, 2, 1, 1}, {2, 2, 1, 1})).positive);
  for (int n = 1; n <= 6; ++n)
    for (const auto& l : partitions_of(n))
      for (const auto& m : partitions_of(n))
        for (const auto& p : partitions_of(n)) {
          PartitionTriple t(P(l), P(m), P(p));
          auto dec = t_tilde_positive(t);
          CHECK(dec.positive == (count_t(t) > 0));
          if (dec.design) {
            CHECK(is_design(*dec.design));
            CHECK(has_type(*dec.design, t));
          }
        }
}

TEST_CASE("designs exist exactly when t is positive") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& l : partitions_of(n))
      for (const auto& m : partitions_of(n))
        for (const auto& p : partitions_of(n)) {
          PartitionTriple t(P(l), P(m), P(p));
          auto d = find_design_exhaustive(t);
          CHECK(d.has_value() == (count_t(t) > 0));
          if (d) {
            CHECK(is_design(*d));
            CHECK(has_type(*d, t));
          }
        }
}

TEST_CASE("max flow") {
  FlowNetwork two;
  two.source = two.add_node();
  two.sink = two.add_node();
  int a = two.add_node(), b = two.add_node();
  two.add_edge(two.source, a, 1);
  two.add_edge(a, two.sink, 1);
  two.add_edge(two.source, b, 1);
  two.add_edge(b, two.sink, 1);
  CHECK(max_flow(two).value == 2);
  FlowNetwork one;
  one.source = one.add_node();
  one.sink = one.add_node();
  one.add_edge(one.source, one.sink, 3);
  CHECK(max_flow(one).value == 3);
  CHECK(max_flow(hook_flow_network(Partition{1, 1, 1}, Partition{1, 1, 1})).value == 1);
  FlowNetwork bad;
  bad.source = bad.add_node();
  bad.sink = bad.add_node();
  bad.add_edge(0, 1, -1);
  CHECK_THROWS_AS(max_flow(bad), Error);
}

TEST_CASE("hook decider") {
  CHECK(hook_t_positive(Partition{1, 1}, Partition{2}, Partition{2}));
  CHECK_FALSE(hook_t_positive(Partition{1, 1, 1}, Partition{1, 1, 1}, Partition{1, 1, 1}));
  CHECK(hook_t_positive(Partition{2, 1}, Partition{3}, Partition{3}));
  CHECK_THROWS_AS(hook_t_positive(Partition{2, 2}, Partition{4}, Partition{4}), Error);
  CHECK_THROWS_AS(hook_t_positive(Partition{2, 1}, Partition{4}, Partition{4}), Error);
}

TEST_CASE("constant height") {
  CHECK(const_height_decide(T({4, 4}, {4, 4}, {4, 4}), 2));
  CHECK_FALSE(const_height_decide(T({1, 1}, {1, 1}, {1, 1}), 2));
  CHECK(const_height_decide(T({2}, {1, 1}, {1, 1}), 2));
  CHECK_THROWS_AS(const_height_decide(T({1, 1, 1}, {3}, {3}), 2), Error);
  for (auto [t, c] : {std::pair(T({4, 4}, {4, 4}, {4, 4}), 2), std::pair(T({5, 4}, {5, 4}, {5, 4}), 2),
                      std::pair(T({5, 5, 5}, {5, 5, 5}, {5, 5, 5}), 3)}) {
    auto d = const_height_construction(t, c);
    CHECK(is_design(d));
    CHECK(has_type(d, t));
  }
}

TEST_CASE("lr embedding construction") {
  auto e = murnaghan_embed(Partition{2, 1}, Partition{2}, Partition{1});
  auto d = lr_embed_construction(e);
  CHECK(d.vertex_count == 15);
  CHECK(is_design(d));
  CHECK(has_type(d, e));
  auto e2 = murnaghan_embed(Partition{2, 2}, Partition{2}, Partition{1, 1});
  auto d2 = lr_embed_construction(e2);
  CHECK(d2.vertex_count == 18);
  CHECK(is_design(d2));
  CHECK(has_type(d2, e2));
  CHECK_THROWS_AS(lr_embed_construction(T({2, 1}, {2, 1}, {2, 1})), Error);
}

TEST_CASE("rectangular construction") {
  for (auto [d, r] : {std::pair(3, 2), std::pair(2, 3), std::pair(4, 6), std::pair(2, 6)}) {
    for (const auto& parts : partitions_of(d * r)) {
      auto lambda = P(parts);
      int m = std::min(d, r);
      if (lambda.height() > m * m) {
        CHECK_THROWS_AS(rectangular_construction(lambda, d, r), Error);
        continue;
      }
      auto design = rectangular_construction(lambda, d, r);
      auto delta = delta_rect(d * r, r);
      CHECK(is_design(design));
      CHECK(has_type(design, PartitionTriple(lambda, delta, delta)));
    }
  }
  CHECK_THROWS_AS(rectangular_construction(Partition{1, 1, 1, 1, 1}, 2, 2), Error);
}
