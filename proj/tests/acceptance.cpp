// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "kron/cli.hpp"
#include "kron/designs.hpp"
#include "kron/errors.hpp"
#include "kron/json_io.hpp"
#include "kron/oracle.hpp"
#include "kron/pointset.hpp"
#include "kron/reductions.hpp"

using namespace kron;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (pass) note << "first failure: " << why << "; ";
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << " (" << out.note.str()
            << std::fixed;
  std::cout.precision(1);
  std::cout << secs << " s)" << std::endl;
}

Partition P(const std::vector<int>& parts) { return Partition::from_parts(std::span<const int>(parts)); }

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  for (const auto& p : partitions_of(n)) out.push_back(P(p));
  return out;
}

void for_all_triples(int n, const std::function<void(const PartitionTriple&)>& f) {
  auto ps = partitions(n);
  for (const auto& a : ps)
    for (const auto& b : ps)
      for (const auto& c : ps) f(PartitionTriple(a, b, c));
}

// Non-negative integer vectors of the given length with sum `total` and
// weighted sum sum_k (k + offset) v_k = `weighted`.
void weighted_vectors(int length, long total, long weighted, long offset,
                      const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> v(static_cast<std::size_t>(length), 0);
  std::function<void(int, long, long)> go = [&](int k, long left, long wleft) {
    if (k == length) {
      if (left == 0 && wleft == 0) f(v);
      return;
    }
    for (long c = 0; c <= left && c * (k + offset) <= wleft; ++c) {
      v[k] = c;
      go(k + 1, left - c, wleft - c * (k + offset));
    }
    v[k] = 0;
  };
  go(0, total, weighted);
}

std::vector<ThreeDMInstance> small_3dm_instances() {
  std::vector<ThreeDMInstance> out{ThreeDMInstance{1, {{1, 1, 1}}}};
  std::vector<std::array<int, 3>> all;
  for (int w = 1; w <= 2; ++w)
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) all.push_back({w, x, y});
  for (int mask = 1; mask < 256; ++mask) {
    ThreeDMInstance i{2, {}};
    for (int k = 0; k < 8; ++k)
      if (mask >> k & 1) i.triples.push_back(all[k]);
    bool covered = true;
    for (const auto& c : check_instance(i)) covered = covered && c.passed;
    if (covered) out.push_back(i);
  }
  return out;
}

std::vector<PointSet> pyramids_up_to(int max_points) {
  std::set<std::vector<Point>> layer{{}};
  std::vector<PointSet> out;
  for (int size = 0; size < max_points; ++size) {
    std::set<std::vector<Point>> next;
    for (const auto& pts : layer) {
      std::set<Point> have(pts.begin(), pts.end());
      std::set<Point> candidates{{0, 0, 0}};
      for (const auto& p : pts)
        for (int a = 0; a < 3; ++a) {
          Point q = p;
          ++q[a];
          candidates.insert(q);
        }
      for (const auto& q : candidates) {
        if (have.count(q)) continue;
        bool supported = true;
        for (int a = 0; a < 3; ++a)
          if (q[a] > 0) {
            Point below = q;
            --below[a];
            supported = supported && have.count(below);
          }
        if (!supported) continue;
        auto grown = pts;
        grown.push_back(q);
        std::sort(grown.begin(), grown.end());
        next.insert(grown);
      }
    }
    for (const auto& pts : next) out.push_back(PointSet(pts));
    layer = std::move(next);
  }
  return out;
}

std::string key(const ColumnTriple& c) { return to_json(c).dump(); }

}  // namespace

int main() {
  auto& oracle = default_oracle();

  criterion(1, "sandwich p <= k <= t over all triples with n <= 8", [&](Outcome& o) {
    long checked = 0;
    for (int n = 1; n <= 8; ++n)
      for_all_triples(n, [&](const PartitionTriple& t) {
        BigInt p = count_p(t), t_ = count_t(t), k = oracle.kronecker(t);
        ++checked;
        if (!(p <= k && k <= t_)) o.fail(t.to_string());
      });
    o.note << checked << " triples; ";
  });

  criterion(2, "p = k = t on simplex-like triples (n <= 8) and lattice forms (r <= 2)", [&](Outcome& o) {
    long simplex_like = 0, lattice = 0, skipped = 0;
    auto check = [&](const PartitionTriple& t) {
      BigInt p = count_p(t), t_ = count_t(t), k = oracle.kronecker(t);
      if (!(p == k && k == t_)) o.fail(t.to_string());
    };
    for (int n = 1; n <= 8; ++n)
      for_all_triples(n, [&](const PartitionTriple& t) {
        if (!is_simplex_like(t)) return;
        ++simplex_like;
        check(t);
      });
    for (int r = 0; r <= 2; ++r)
      weighted_vectors(2 * r + 1, r + 1, r * (r + 1), 0, [&](const std::vector<long>& d) {
        std::vector<BigInt> dd(d.begin(), d.end());
        try {
          auto t = lattice_permutation_triple(r, dd);
          ++lattice;
          check(t);
        } catch (const Error& e) {
          if (e.code() != "non_monotone") throw;
          ++skipped;
        }
      });
    o.note << simplex_like << " simplex-like, " << lattice << " lattice forms, " << skipped
           << " non-monotone skipped; ";
  });

  criterion(3, "pedestals keep t and k (bases n <= 6, a,b,c <= 3)", [&](Outcome& o) {
    long t_checks = 0, k_checks = 0;
    for (int n = 1; n <= 6; ++n) {
      int r = to_int(simplex_radius(n));
      for_all_triples(n, [&](const PartitionTriple& base) {
        if (!is_simplex_like(base)) return;
        BigInt t0 = count_t(base), k0 = oracle.kronecker(base);
        for (int a = 1; a <= 3; ++a)
          for (int b = r + 1; b <= 3; ++b)
            for (int c = r + 1; c <= 3; ++c) {
              auto ped = pedestal(base, a, b, c);
              ++t_checks;
              if (count_t(ped) != t0) o.fail("t of " + ped.to_string());
              if (oracle.admits(ped) && ped.size() <= 33) {
                ++k_checks;
                if (oracle.kronecker(ped) != k0) o.fail("k of " + ped.to_string());
              }
            }
      });
    }
    o.note << t_checks << " t comparisons, " << k_checks << " k comparisons; ";
  });

  criterion(4, "hook decider matches t > 0 (n <= 8)", [&](Outcome& o) {
    long checked = 0;
    for (int n = 1; n <= 8; ++n) {
      auto ps = partitions(n);
      for (const auto& l : ps) {
        if (!is_hook(l)) continue;
        for (const auto& m : ps)
          for (const auto& p : ps) {
            ++checked;
            if (hook_t_positive(l, m, p) != (count_t(PartitionTriple(l, m, p)) > 0))
              o.fail(PartitionTriple(l, m, p).to_string());
          }
      }
    }
    o.note << checked << " triples; ";
  });

  criterion(5, "constant-height decider matches t > 0 (c in {2,3}, n <= 10)", [&](Outcome& o) {
    long checked = 0;
    for (int c = 2; c <= 3; ++c)
      for (int n = 1; n <= 10; ++n) {
        std::vector<Partition> ps;
        for (const auto& p : partitions(n))
          if (p.height() <= c) ps.push_back(p);
        for (const auto& l : ps)
          for (const auto& m : ps)
            for (const auto& p : ps) {
              PartitionTriple t(l, m, p);
              ++checked;
              if (const_height_decide(t, c) != (count_t(t) > 0)) o.fail(t.to_string());
            }
      }
    o.note << checked << " triples; ";
  });

  criterion(6, "rectangular constructions (dr <= 12, ht <= min(d^2, r^2))", [&](Outcome& o) {
    long designs = 0, counted = 0;
    for (int d = 1; d <= 12; ++d)
      for (int r = 1; d * r <= 12; ++r)
        for (const auto& l : partitions(d * r)) {
          if (l.height() > std::min(d * d, r * r)) continue;
          Partition delta = delta_rect(d * r, r);
          PartitionTriple t(l, delta, delta);
          auto design = rectangular_construction(l, d, r);
          ++designs;
          if (!is_design(design) || !has_type(design, t)) o.fail("design for " + t.to_string());
          if (d * r <= 9) {
            ++counted;
            if (count_t(t) == 0) o.fail("t = 0 for " + t.to_string());
          }
        }
    o.note << designs << " designs, " << counted << " counts; ";
  });

  criterion(7, "LR embedding: designs and k(embed) = c (|lambda| <= 6)", [&](Outcome& o) {
    long checked = 0, positive = 0;
    for (int n = 2; n <= 6; ++n)
      for (int a = 1; a < n; ++a)
        for (const auto& l : partitions(n))
          for (const auto& m : partitions(a))
            for (const auto& p : partitions(n - a)) {
              BigInt c = lr_coefficient(l, m, p);
              auto embedded = murnaghan_embed(l, m, p);
              ++checked;
              if (oracle.kronecker(embedded) != c) o.fail("k != c for " + embedded.to_string());
              if (c > 0) {
                ++positive;
                auto d = lr_embed_construction(embedded);
                if (!is_design(d) || !has_type(d, embedded)) o.fail("design for " + embedded.to_string());
              }
            }
    o.note << checked << " triples, " << positive << " designs; ";
  });

  criterion(8, "chain answer preservation (stage I q <= 2, stages V-VII n <= 5, permutations n <= 4)",
            [&](Outcome& o) {
    long stage1 = 0, rn3dm = 0, counted = 0, non_monotone = 0, perms = 0, yes = 0;
    for (const auto& i : small_3dm_instances()) {
      ++stage1;
      if (solve_3dm(i) != solve_partition(reduce_3dm_to_4partition(i))) o.fail("stage I on q = 2 instance");
    }
    auto stage7_positive = [&](const PermutationInstance& pm) -> std::optional<bool> {
      try {
        auto sc = reduce_permutation_to_consistency(pm);
        if (!sc.triple) throw std::runtime_error("stage VII triple not explicit");
        return count_t(*sc.triple) > 0;
      } catch (const StageError&) {
        ++non_monotone;
        return std::nullopt;
      }
    };
    for (int n = 1; n <= 5; ++n)
      // y multisets in [2, 2n] as counts z_l, l = 2..2n.
      weighted_vectors(2 * n - 1, n, static_cast<long>(n) * (n + 1), 2, [&](const std::vector<long>& z) {
        long ymax = 0;
        RunList y;
        for (std::size_t k = 0; k < z.size(); ++k)
          if (z[k] > 0) ymax = static_cast<long>(k) + 2;
        for (long e = ymax; e <= ymax + 2; ++e) {
          Rn3dmInstance inst;
          inst.e = e;
          for (std::size_t k = z.size(); k-- > 0;)
            if (z[k] > 0) inst.u.emplace_back(e - static_cast<long>(k) - 2, z[k]);
          ++rn3dm;
          bool a = solve_rn3dm(inst);
          auto rm = reduce_rn3dm_to_rnmts(inst);
          auto pm = reduce_rnmts_to_permutation(rm);
          if (solve_rnmts(rm) != a || solve_permutation(pm) != a) o.fail("RN3DM n = " + std::to_string(n));
          if (e == ymax) {
            if (auto t = stage7_positive(pm)) {
              ++counted;
              if (*t != a) o.fail("count_t disagrees at n = " + std::to_string(n));
            }
          }
        }
      });
    for (int n = 1; n <= 4; ++n)
      weighted_vectors(2 * n - 1, n, static_cast<long>(n) * (n + 1), 2, [&](const std::vector<long>& z) {
        PermutationInstance pm;
        pm.n = n;
        for (std::size_t k = 0; k < z.size(); ++k)
          if (z[k] > 0) pm.z[static_cast<long>(k) + 2] = z[k];
        if (auto t = stage7_positive(pm)) {
          ++perms;
          bool s = solve_permutation(pm);
          yes += s;
          if (*t != s) o.fail("permutation n = " + std::to_string(n));
        }
      });
    PermutationInstance no;
    no.n = 4;
    no.z = {{2, 1}, {3, 1}, {7, 1}, {8, 1}};
    auto t = stage7_positive(no);
    if (!t || *t || solve_permutation(no)) o.fail("the no-instance {2,3,7,8}");
    o.note << stage1 << " 3dm, " << rn3dm << " rn3dm, " << counted << " stage-VII counts, " << perms
           << " permutations (" << yes << " yes), " << non_monotone << " non-monotone; ";
  });

  criterion(9, "reduce --epsilon 1 on the matching-free q = 2 instance", [&](Outcome& o) {
    auto start = Clock::now();
    auto r = cli::run({"reduce", "--epsilon", "1",
                       R"({"type":"3dm","q":"2","triples":[["1","1","1"],["2","1","2"],["1","2","2"]]})"});
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.exit_code != 0) {
      o.fail(r.payload.dump());
      return;
    }
    BigInt height = parse_bigint(r.payload["stats"]["height_mu"].get<std::string>());
    BigInt size = parse_bigint(r.payload["stats"]["size"].get<std::string>());
    if (!(height > pow(BigInt(10), 16))) o.fail("ht(mu) too small");
    if (!(size > pow(BigInt(10), 46))) o.fail("|lambda| too small");
    if (secs >= 10) o.fail("took " + std::to_string(secs) + " s");
    o.note << "ht(mu) = " << height << ", |lambda| = " << size << "; ";
  });

  criterion(10, "every chain output satisfies constraints (1)-(5)", [&](Outcome& o) {
    long symbolic = 0, explicit_ = 0;
    std::vector<Rational> eps{Rational(1), Rational(1, 2), Rational(2, 3), Rational(1, 3)};
    auto instances = small_3dm_instances();
    for (const auto& g : generate_no_instances(shortlex_bitstrings(20))) instances.push_back(g);
    for (const auto& i : instances)
      for (const auto& e : eps) {
        auto res = pipeline(i, e);
        ++symbolic;
        if (!verify_restricted(res.instance).all_passed()) o.fail("pipeline output");
      }
    // Stage VIII on small consistency instances, checked on explicit rows.
    for (int n = 2; n <= 4; ++n)
      weighted_vectors(2 * n - 1, n, static_cast<long>(n) * (n + 1), 2, [&](const std::vector<long>& z) {
        PermutationInstance pm;
        pm.n = n;
        for (std::size_t k = 0; k < z.size(); ++k)
          if (z[k] > 0) pm.z[static_cast<long>(k) + 2] = z[k];
        ConsistencyInstance sc;
        try {
          sc = reduce_permutation_to_consistency(pm);
        } catch (const StageError&) {
          return;
        }
        for (const auto& e : {Rational(1), Rational(1, 2)}) {
          auto k = reduce_consistency_to_kronecker(sc, e);
          if (!k.triple) continue;
          ++explicit_;
          RestrictedKroneckerInstance again;
          again.columns = ColumnTriple::from_triple(*k.triple);
          again.m = k.triple->mu().height();
          again.epsilon = e;
          if (!verify_restricted(again).all_passed()) o.fail("explicit output " + k.triple->to_string());
          if (!kron_cone_sufficient(k.triple->lambda(), k.triple->mu())) o.fail("cone certificate");
        }
      });
    o.note << symbolic << " symbolic, " << explicit_ << " explicit; ";
  });

  criterion(11, "injectivity of the chain and of the generator", [&](Outcome& o) {
    std::set<std::string> outputs;
    auto family = small_3dm_instances();
    for (const auto& i : family) outputs.insert(key(pipeline(i, Rational(1)).instance.columns));
    if (outputs.size() != family.size()) o.fail("collision among q <= 2 instances");
    auto bits = shortlex_bitstrings(100);
    auto gen = generate_no_instances(bits);
    std::set<std::vector<std::array<int, 3>>> distinct;
    std::set<std::string> finals;
    for (const auto& g : gen) {
      distinct.insert(g.triples);
      if (solve_3dm(g)) o.fail("generated instance has a matching");
      finals.insert(key(pipeline(g, Rational(1)).instance.columns));
    }
    if (distinct.size() != 100) o.fail("generated instances collide");
    if (finals.size() != 100) o.fail("generated outputs collide");
    o.note << family.size() << " enumerated, " << finals.size() << " generated outputs distinct; ";
  });

  criterion(12, "highest-weight check on pyramids (<= 12 points)", [&](Outcome& o) {
    auto pyramids = pyramids_up_to(12);
    for (const auto& p : pyramids)
      if (!is_pyramid(p) || !check_highest_weight(p)) o.fail("pyramid of size " + std::to_string(p.size()));
    if (check_highest_weight(PointSet({{0, 0, 0}, {0, 1, 1}}))) o.fail("{(0,0,0),(0,1,1)} passed");
    o.note << pyramids.size() << " pyramids; ";
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
