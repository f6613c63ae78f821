#include "kron/reductions.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "kron/errors.hpp"
#include "kron/pointset.hpp"

namespace kron {

namespace {

constexpr std::size_t kExplicitRuns = 4096;

Check make_check(std::string name, bool ok, std::string detail = {}) {
  return Check{std::move(name), ok, ok ? std::string() : std::move(detail)};
}

void require(const std::string& stage, const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) throw StageError(stage, c.name + (c.detail.empty() ? "" : ": " + c.detail));
}

std::string s(const BigInt& v) { return to_string(v); }

RunList merge_runs(const RunList& runs) {
  RunList out;
  for (const auto& [v, c] : runs) {
    if (c == 0) continue;
    if (!out.empty() && out.back().first == v) out.back().second += c;
    else out.emplace_back(v, c);
  }
  return out;
}

BigInt run_max(const RunList& runs) {
  BigInt best = 0;
  bool first = true;
  for (const auto& [v, c] : runs)
    if (c > 0 && (first || v > best)) {
      best = v;
      first = false;
    }
  return best;
}

BigInt run_min(const RunList& runs) {
  BigInt best = 0;
  bool first = true;
  for (const auto& [v, c] : runs)
    if (c > 0 && (first || v < best)) {
      best = v;
      first = false;
    }
  return best;
}

std::vector<long> expand_small(const RunList& runs, int max_n) {
  BigInt n = run_count(runs);
  if (n > max_n) throw BudgetExceeded("instance too large for brute force (n = " + s(n) + ")");
  std::vector<long> out;
  for (const auto& [v, c] : runs)
    for (BigInt k = 0; k < c; ++k) out.push_back(to_long(v));
  return out;
}

}  // namespace

BigInt run_count(const RunList& runs) {
  BigInt n = 0;
  for (const auto& [v, c] : runs) n += c;
  return n;
}

BigInt run_sum(const RunList& runs) {
  BigInt t = 0;
  for (const auto& [v, c] : runs) t += v * c;
  return t;
}

// ---------------------------------------------------------------------------
// Instance invariants

std::vector<Check> check_instance(const ThreeDMInstance& i) {
  std::vector<Check> out;
  out.push_back(make_check("q_positive", i.q >= 1, "q = " + std::to_string(i.q)));
  bool in_range = true;
  for (const auto& t : i.triples)
    for (int v : t) in_range = in_range && v >= 1 && v <= i.q;
  out.push_back(make_check("indices_in_range", in_range, "a triple index is outside 1..q"));
  bool sorted = std::is_sorted(i.triples.begin(), i.triples.end()) &&
                std::adjacent_find(i.triples.begin(), i.triples.end()) == i.triples.end();
  out.push_back(make_check("triples_distinct", sorted, "triples must be sorted and distinct"));
  bool covered = in_range;
  if (in_range)
    for (int a = 0; a < 3; ++a) {
      std::vector<bool> seen(static_cast<std::size_t>(i.q) + 1, false);
      for (const auto& t : i.triples) seen[t[a]] = true;
      for (int v = 1; v <= i.q; ++v) covered = covered && seen[v];
    }
  out.push_back(make_check("every_element_covered", covered,
                           "some element of W, X or Y appears in no triple"));
  return out;
}

std::vector<Check> check_instance(const PartitionInstance& i) {
  std::vector<Check> out;
  int g = i.group_size;
  out.push_back(make_check("group_size", g == 3 || g == 4, "group size must be 3 or 4"));
  BigInt count(static_cast<unsigned long>(i.elements.size()));
  out.push_back(make_check("element_count", count == g * i.m,
                           "|A| = " + s(count) + ", expected " + s(BigInt(g * i.m))));
  // 4-PARTITION: B/5 < s < B/3; 3-PARTITION: B/4 < s < B/2.
  int lo = g == 4 ? 5 : 4, hi = g == 4 ? 3 : 2;
  BigInt total = 0;
  bool bounded = true;
  std::string offender;
  for (const auto& e : i.elements) {
    total += e.size;
    if (!(lo * e.size > i.B && hi * e.size < i.B) && bounded) {
      bounded = false;
      offender = e.label + " = " + s(e.size);
    }
  }
  out.push_back(make_check("size_bounds", bounded, "element out of range: " + offender));
  out.push_back(make_check("sum_is_mB", total == i.m * i.B,
                           "sum " + s(total) + " != mB = " + s(BigInt(i.m * i.B))));
  return out;
}

std::vector<Check> check_instance(const MachineFlowInstance& i) {
  std::vector<Check> out;
  bool nonneg = true;
  for (const auto& [v, c] : i.delays) nonneg = nonneg && v >= 0 && c >= 0;
  out.push_back(make_check("delays_nonnegative", nonneg, "negative delay or count"));
  out.push_back(make_check("jobs_positive", i.job_count() >= 1, "no jobs"));
  out.push_back(make_check("threshold_positive", i.y >= 1, "y must be positive"));
  return out;
}

std::vector<Check> check_instance(const Rn3dmInstance& i) {
  std::vector<Check> out;
  BigInt n = i.n();
  bool nonneg = true;
  for (const auto& [v, c] : i.u) nonneg = nonneg && v >= 0 && c >= 0;
  out.push_back(make_check("n_positive", n >= 1, "empty instance"));
  out.push_back(make_check("u_nonnegative", nonneg, "negative u or count"));
  BigInt lhs = run_sum(i.u) + n * (n + 1);
  out.push_back(make_check("sum_identity", lhs == n * i.e,
                           "sum(u) + n(n+1) = " + s(lhs) + " but ne = " + s(BigInt(n * i.e))));
  out.push_back(make_check("u_below_e_minus_1", n == 0 || run_max(i.u) < i.e - 1,
                           "max u = " + s(run_max(i.u)) + " is not below e-1 = " + s(BigInt(i.e - 1))));
  return out;
}

std::vector<Check> check_instance(const RnmtsInstance& i) {
  std::vector<Check> out;
  BigInt n = i.n();
  out.push_back(make_check("n_positive", n >= 1, "empty instance"));
  bool sorted = true;
  for (std::size_t k = 1; k < i.y.size(); ++k) sorted = sorted && i.y[k - 1].first < i.y[k].first;
  out.push_back(make_check("sorted", sorted, "y must be strictly increasing runs"));
  out.push_back(make_check("range", n == 0 || (run_min(i.y) >= 2 && run_max(i.y) <= 2 * n),
                           "y outside [2, 2n]"));
  out.push_back(make_check("sum", run_sum(i.y) == n * (n + 1),
                           "sum(y) = " + s(run_sum(i.y)) + " != n(n+1)"));
  return out;
}

std::vector<Check> check_instance(const PermutationInstance& i) {
  std::vector<Check> out;
  const BigInt& n = i.n;
  out.push_back(make_check("n_positive", n >= 1, "n must be positive"));
  bool range = true;
  BigInt count = 0, weighted = 0;
  for (const auto& [l, z] : i.z) {
    range = range && l >= 2 && l <= 2 * n && z >= 0 && z <= n;
    count += z;
    weighted += l * z;
  }
  out.push_back(make_check("range", range, "z_l must satisfy 2 <= l <= 2n and 0 <= z_l <= n"));
  out.push_back(make_check("count", count == n, "sum z = " + s(count) + " != n"));
  out.push_back(make_check("weighted_sum", weighted == n * (n + 1),
                           "sum l z_l = " + s(weighted) + " != n(n+1)"));
  return out;
}

std::vector<Check> check_instance(const ConsistencyInstance& i) {
  std::vector<Check> out;
  BigInt count = 0, weighted = 0;
  for (const auto& [k, v] : i.d) {
    count += v;
    weighted += k * v;
  }
  out.push_back(make_check("d_sum", count == i.r + 1, "sum d = " + s(count)));
  out.push_back(make_check("d_weighted_sum", weighted == i.r * (i.r + 1),
                           "sum k d_k = " + s(weighted)));
  bool monotone = i.columns.lambda_t.is_partition();
  out.push_back(make_check("lambda_monotone", monotone, "lambda^T is not non-increasing"));
  bool form = false;
  try {
    form = lattice_permutation_columns(i.r, i.d) == i.columns;
  } catch (const Error&) {
  }
  out.push_back(make_check("lattice_form", form, "columns do not match (r, d)"));
  bool simplex_like = monotone && form && is_simplex_like(i.columns);
  out.push_back(make_check("simplex_like", simplex_like, "triple is not simplex-like"));
  return out;
}

std::vector<Check> check_instance(const RestrictedKroneckerInstance& i) {
  return verify_restricted(i).constraints;
}

// ---------------------------------------------------------------------------
// Reductions

PartitionInstance reduce_3dm_to_4partition(const ThreeDMInstance& in) {
  require("3dm", check_instance(in));
  int q = in.q;
  BigInt r = 32 * q;
  BigInt r2 = r * r, r3 = r2 * r, r4 = r3 * r;
  // Occurrence counts per element of W, X, Y.
  std::array<std::vector<int>, 3> N;
  for (auto& v : N) v.assign(static_cast<std::size_t>(q) + 1, 0);
  for (const auto& t : in.triples)
    for (int a = 0; a < 3; ++a) ++N[a][t[a]];

  PartitionInstance out;
  out.group_size = 4;
  out.m = BigInt(static_cast<unsigned long>(in.triples.size()));
  out.B = 40 * r4 + 15;
  const char* names[3] = {"w", "x", "y"};
  for (int a = 0; a < 3; ++a)
    for (int idx = 1; idx <= q; ++idx)
      for (int l = 1; l <= N[a][idx]; ++l) {
        BigInt size;
        if (a == 0) size = (l == 1 ? 10 : 11) * r4 + idx * r + 1;
        else if (a == 1) size = (l == 1 ? 10 : 11) * r4 + idx * r2 + 2;
        else size = (l == 1 ? 10 : 8) * r4 + idx * r3 + 4;
        out.elements.push_back({std::string(names[a]) + std::to_string(idx) + "[" +
                                    std::to_string(l) + "]",
                                size});
      }
  int l = 1;
  for (const auto& t : in.triples) {
    BigInt size = 10 * r4 - t[2] * r3 - t[1] * r2 - t[0] * r + 8;
    out.elements.push_back({"u" + std::to_string(l++), size});
  }
  require("4partition", check_instance(out));
  return out;
}

PartitionInstance reduce_4partition_to_3partition(const PartitionInstance& in) {
  if (in.group_size != 4) throw StageError("3partition", "input is not a 4-PARTITION instance");
  require("4partition", check_instance(in));
  std::vector<Check> strong;
  BigInt cap = BigInt(65536) * pow(BigInt(static_cast<unsigned long>(in.elements.size())), 4);
  bool ok = true;
  for (const auto& e : in.elements) ok = ok && e.size <= cap;
  strong.push_back(make_check("strong_bound", ok, "an element exceeds 2^16 |A|^4"));
  require("4partition", strong);

  const BigInt& B = in.B;
  PartitionInstance out;
  out.group_size = 3;
  out.m = 8 * in.m * in.m - in.m;
  out.B = 64 * B + 4;
  std::size_t n = in.elements.size();
  for (std::size_t i = 0; i < n; ++i)
    out.elements.push_back({"w" + std::to_string(i + 1), 4 * (5 * B + in.elements[i].size) + 1});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const BigInt& si = in.elements[i].size;
      const BigInt& sj = in.elements[j].size;
      std::string tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
      out.elements.push_back({"u" + tag, 4 * (6 * B - si - sj) + 2});
      out.elements.push_back({"ubar" + tag, 4 * (5 * B + si + sj) + 2});
    }
  BigInt fillers = 8 * in.m * in.m - 3 * in.m;
  if (fillers > 10'000'000) throw BudgetExceeded("too many filler elements to list");
  for (BigInt k = 1; k <= fillers; ++k) out.elements.push_back({"f" + s(k), 20 * B});
  require("3partition", check_instance(out));
  return out;
}

MachineFlowInstance reduce_3partition_to_machineflow(const PartitionInstance& in) {
  if (in.group_size != 3) throw StageError("machine_flow", "input is not a 3-PARTITION instance");
  require("3partition", check_instance(in));
  const BigInt& m = in.m;
  BigInt Bm = m * in.B;
  std::vector<Check> scaled;
  RunList delays;
  bool band = true, divisible = true;
  BigInt total = 0;
  for (const auto& e : in.elements) {
    BigInt a = 4 * m * e.size;
    band = band && Bm < a && a < 2 * Bm;
    divisible = divisible && a % m == 0;
    total += a;
    delays.emplace_back(a, 1);
  }
  scaled.push_back(make_check("scaled_range", band, "scaled element outside (B, 2B)"));
  scaled.push_back(make_check("scaled_sum", total == 4 * m * Bm, "scaled sum != 4mB"));
  scaled.push_back(make_check("scaled_divisible", divisible && (4 * Bm) % m == 0,
                              "scaled values not divisible by m"));
  require("machine_flow", scaled);
  BigInt u = 4 * (m + 1) * Bm;
  BigInt n = m * u;
  BigInt three_m = 3 * m;
  delays.emplace_back(0, 4 * m * Bm - three_m);
  delays.emplace_back(u + 1, n - 4 * m * Bm);
  MachineFlowInstance out{merge_runs(delays), n + 4 * m * Bm + 2};
  std::vector<Check> checks = check_instance(out);
  checks.push_back(make_check("job_count", out.job_count() == n, "job count != m u"));
  require("machine_flow", checks);
  return out;
}

Rn3dmInstance reduce_machineflow_to_rn3dm(const MachineFlowInstance& in) {
  require("machine_flow", check_instance(in));
  Rn3dmInstance out{in.delays, in.y};
  require("rn3dm", check_instance(out));
  return out;
}

RnmtsInstance reduce_rn3dm_to_rnmts(const Rn3dmInstance& in) {
  require("rn3dm", check_instance(in));
  RunList y;
  for (const auto& [v, c] : in.u) y.emplace_back(in.e - v, c);
  std::stable_sort(y.begin(), y.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  RnmtsInstance out{merge_runs(y)};
  require("rnmts", check_instance(out));
  return out;
}

PermutationInstance reduce_rnmts_to_permutation(const RnmtsInstance& in) {
  require("rnmts", check_instance(in));
  PermutationInstance out;
  out.n = in.n();
  for (const auto& [v, c] : in.y) out.z[v] += c;
  require("permutation", check_instance(out));
  return out;
}

ConsistencyInstance reduce_permutation_to_consistency(const PermutationInstance& in) {
  require("permutation", check_instance(in));
  ConsistencyInstance out;
  out.r = in.n - 1;
  for (const auto& [l, z] : in.z)
    if (z != 0) out.d[l - 2] = z;
  try {
    out.columns = lattice_permutation_columns(out.r, out.d);
  } catch (const Error& e) {
    throw StageError("special_consistency", e.what());
  }
  out.triple = out.columns.to_triple(kExplicitRuns);
  require("special_consistency", check_instance(out));
  return out;
}

RestrictedKroneckerInstance reduce_consistency_to_kronecker(const ConsistencyInstance& in,
                                                            const Rational& epsilon) {
  Rational eps = epsilon;
  eps.canonicalize();
  if (eps <= 0 || eps > 1)
    throw InvalidArgument("invalid_epsilon", "epsilon must satisfy 0 < epsilon <= 1");
  require("special_consistency", check_instance(in));
  if (in.r < 1)
    throw StageError("restricted_kronecker", "r = 0: the base is the full simplex P_1 and no box fits");
  unsigned long p = static_cast<unsigned long>(to_long(eps.get_num()));
  unsigned long q = static_cast<unsigned long>(to_long(eps.get_den()));
  RestrictedKroneckerInstance out;
  out.epsilon = eps;
  out.r = in.r;
  out.s = 2 * in.r + 1;
  // c = ceil(s^(2/eps - 1)) = smallest c with c^p >= s^(2q - p).
  out.c = ceil_root(pow(out.s, 2 * q - p), p);
  out.columns = pedestal(in.columns, out.c, out.s, out.s);
  out.m = out.columns.mu_t.eval(0);
  out.triple = out.columns.to_triple(kExplicitRuns);
  require("restricted_kronecker", check_instance(out));
  return out;
}

PipelineResult pipeline(const ThreeDMInstance& in, const Rational& epsilon) {
  PipelineResult res;
  auto& st = res.trace.stages;
  st.push_back({"3dm", in, check_instance(in)});
  require("3dm", st.back().checks);
  auto p4 = reduce_3dm_to_4partition(in);
  st.push_back({"4partition", p4, check_instance(p4)});
  auto p3 = reduce_4partition_to_3partition(p4);
  st.push_back({"3partition", p3, check_instance(p3)});
  auto mf = reduce_3partition_to_machineflow(p3);
  st.push_back({"machine_flow", mf, check_instance(mf)});
  auto rn = reduce_machineflow_to_rn3dm(mf);
  st.push_back({"rn3dm", rn, check_instance(rn)});
  auto rm = reduce_rn3dm_to_rnmts(rn);
  st.push_back({"rnmts", rm, check_instance(rm)});
  auto pm = reduce_rnmts_to_permutation(rm);
  st.push_back({"permutation", pm, check_instance(pm)});
  auto sc = reduce_permutation_to_consistency(pm);
  st.push_back({"special_consistency", sc, check_instance(sc)});
  res.instance = reduce_consistency_to_kronecker(sc, epsilon);
  st.push_back({"restricted_kronecker", res.instance, check_instance(res.instance)});
  return res;
}

// ---------------------------------------------------------------------------
// Padding generator

ThreeDMInstance base_no_instance() {
  ThreeDMInstance i;
  i.q = 2;
  i.triples = {{1, 1, 1}, {2, 1, 2}, {1, 2, 2}};
  std::sort(i.triples.begin(), i.triples.end());
  return i;
}

ThreeDMInstance padded_no_instance(const std::string& bits) {
  for (char ch : bits)
    if (ch != '0' && ch != '1') throw InvalidArgument("invalid_bits", "bitstring must be 0/1");
  ThreeDMInstance i = base_no_instance();
  if (bits.empty()) return i;
  int L = static_cast<int>(bits.size());
  int off = i.q;
  for (int k = 1; k <= L + 1; ++k) i.triples.push_back({off + k, off + k, off + k});
  for (int k = 1; k <= L; ++k)
    if (bits[k - 1] == '1') i.triples.push_back({off + k, off + k + 1, off + k + 1});
  i.q = off + L + 1;
  std::sort(i.triples.begin(), i.triples.end());
  return i;
}

std::vector<std::string> shortlex_bitstrings(std::size_t count) {
  std::vector<std::string> out;
  for (int len = 0; out.size() < count; ++len) {
    if (len > 62) throw InvalidArgument("invalid_argument", "count too large");
    unsigned long long total = 1ULL << len;
    for (unsigned long long v = 0; v < total && out.size() < count; ++v) {
      std::string b(static_cast<std::size_t>(len), '0');
      for (int k = 0; k < len; ++k)
        if (v >> (len - 1 - k) & 1ULL) b[k] = '1';
      out.push_back(b);
    }
  }
  return out;
}

std::string bits_from_hex(const std::string& hex) {
  std::string out;
  for (char ch : hex) {
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else throw InvalidArgument("invalid_bits", std::string("not a hex digit: ") + ch);
    for (int k = 3; k >= 0; --k) out.push_back((v >> k & 1) ? '1' : '0');
  }
  return out;
}

std::vector<ThreeDMInstance> generate_no_instances(const std::vector<std::string>& bitstrings) {
  std::vector<ThreeDMInstance> out;
  std::set<std::string> seen;
  for (const auto& b : bitstrings) {
    if (!seen.insert(b).second) throw InvalidArgument("duplicate_bits", "bitstring repeated: " + b);
    out.push_back(padded_no_instance(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force solvers

namespace {

struct NodeBudget {
  std::size_t left;
  void tick() {
    if (left-- == 0) throw BudgetExceeded("brute-force search exceeded its node budget");
  }
};

}  // namespace

bool solve_3dm(const ThreeDMInstance& in, SolverBudget budget) {
  require("3dm", check_instance(in));
  int q = in.q;
  std::vector<std::vector<std::array<int, 3>>> by_w(static_cast<std::size_t>(q) + 1);
  for (const auto& t : in.triples) by_w[t[0]].push_back(t);
  std::vector<bool> used_x(static_cast<std::size_t>(q) + 1), used_y(static_cast<std::size_t>(q) + 1);
  NodeBudget nb{budget.max_nodes};
  std::function<bool(int)> go = [&](int w) {
    nb.tick();
    if (w > q) return true;
    for (const auto& t : by_w[w]) {
      if (used_x[t[1]] || used_y[t[2]]) continue;
      used_x[t[1]] = used_y[t[2]] = true;
      if (go(w + 1)) return true;
      used_x[t[1]] = used_y[t[2]] = false;
    }
    return false;
  };
  return go(1);
}

bool solve_partition(const PartitionInstance& in, SolverBudget budget) {
  require(in.group_size == 4 ? "4partition" : "3partition", check_instance(in));
  std::vector<BigInt> sizes;
  for (const auto& e : in.elements) sizes.push_back(e.size);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::size_t n = sizes.size();
  std::vector<bool> used(n, false);
  NodeBudget nb{budget.max_nodes};
  int g = in.group_size;
  std::function<bool()> next_group;
  // Completes the current group: `need` more elements from index `from`
  // summing to `target`.
  std::function<bool(std::size_t, int, const BigInt&)> fill = [&](std::size_t from, int need,
                                                                   const BigInt& target) -> bool {
    nb.tick();
    if (need == 0) return target == 0 && next_group();
    for (std::size_t k = from; k < n; ++k) {
      if (used[k] || sizes[k] > target) continue;
      if (k > from && sizes[k] == sizes[k - 1] && !used[k - 1]) continue;
      used[k] = true;
      if (fill(k + 1, need - 1, target - sizes[k])) return true;
      used[k] = false;
    }
    return false;
  };
  next_group = [&]() -> bool {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) return true;
    used[first] = true;
    bool ok = fill(first + 1, g - 1, in.B - sizes[first]);
    used[first] = false;
    return ok;
  };
  return next_group();
}

bool solve_rn3dm(const Rn3dmInstance& in, SolverBudget budget) {
  require("rn3dm", check_instance(in));
  auto u = expand_small(in.u, budget.max_n);
  long e = to_long(in.e);
  int n = static_cast<int>(u.size());
  std::vector<bool> used_a(static_cast<std::size_t>(n) + 1), used_u(u.size());
  NodeBudget nb{budget.max_nodes};
  std::function<bool(int)> go = [&](int j) {
    nb.tick();
    if (j > n) return true;
    for (std::size_t b = 0; b < u.size(); ++b) {
      if (used_u[b]) continue;
      if (b > 0 && u[b] == u[b - 1] && !used_u[b - 1]) continue;
      long a = e - j - u[b];
      if (a < 1 || a > n || used_a[a]) continue;
      used_u[b] = used_a[a] = true;
      if (go(j + 1)) return true;
      used_u[b] = used_a[a] = false;
    }
    return false;
  };
  return go(1);
}

bool solve_rnmts(const RnmtsInstance& in, SolverBudget budget) {
  require("rnmts", check_instance(in));
  auto y = expand_small(in.y, budget.max_n);
  int n = static_cast<int>(y.size());
  std::vector<bool> used_s(static_cast<std::size_t>(n) + 1), used_p(static_cast<std::size_t>(n) + 1);
  NodeBudget nb{budget.max_nodes};
  std::function<bool(int)> go = [&](int k) {
    nb.tick();
    if (k == n) return true;
    for (int a = 1; a <= n; ++a) {
      long b = y[k] - a;
      if (used_s[a] || b < 1 || b > n || used_p[b]) continue;
      used_s[a] = used_p[b] = true;
      if (go(k + 1)) return true;
      used_s[a] = used_p[b] = false;
    }
    return false;
  };
  return go(0);
}

bool solve_permutation(const PermutationInstance& in, SolverBudget budget) {
  require("permutation", check_instance(in));
  if (in.n > budget.max_n) throw BudgetExceeded("instance too large for brute force");
  int n = to_int(in.n);
  std::vector<long> z(static_cast<std::size_t>(2 * n) + 1, 0);
  for (const auto& [l, c] : in.z) z[to_long(l)] = to_long(c);
  std::vector<bool> used(static_cast<std::size_t>(n) + 1);
  NodeBudget nb{budget.max_nodes};
  std::function<bool(int)> go = [&](int i) {
    nb.tick();
    if (i > n) return true;
    for (int j = 1; j <= n; ++j) {
      if (used[j] || z[i + j] == 0) continue;
      used[j] = true;
      --z[i + j];
      if (go(i + 1)) return true;
      ++z[i + j];
      used[j] = false;
    }
    return false;
  };
  return go(1);
}

// ---------------------------------------------------------------------------
// Constraint verifiers

bool kron_cone_sufficient(const Partition& lambda, const Partition& mu) {
  if (mu.empty()) throw InvalidArgument("empty_partition", "mu must be non-empty");
  const BigInt& h = mu.runs()[0].multiplicity;
  return lambda.height() <= h * h;
}

bool kron_cone_sufficient(const SegmentedSequence& lambda_t, const SegmentedSequence& mu_t) {
  if (mu_t.positive_count() == 0) throw InvalidArgument("empty_partition", "mu must be non-empty");
  BigInt h = mu_t.last_positive();
  BigInt height = lambda_t.length() > 0 ? lambda_t.eval(0) : BigInt(0);
  return height <= h * h;
}

bool power_at_most(const BigInt& a, const BigInt& b, const Rational& epsilon) {
  Rational e = epsilon;
  e.canonicalize();
  if (e < 0) throw InvalidArgument("invalid_epsilon", "exponent must be non-negative");
  unsigned long p = static_cast<unsigned long>(to_long(e.get_num()));
  unsigned long q = static_cast<unsigned long>(to_long(e.get_den()));
  return pow(a, q) <= pow(b, p);
}

bool ConstraintReport::all_passed() const {
  return std::all_of(constraints.begin(), constraints.end(), [](const Check& c) { return c.passed; });
}

ConstraintReport verify_restricted(const RestrictedKroneckerInstance& i) {
  ConstraintReport rep;
  auto& out = rep.constraints;
  const auto& c = i.columns;
  bool shapes = c.lambda_t.is_partition() && c.mu_t.is_partition() && c.pi_t.is_partition();
  BigInt n = shapes ? c.lambda_t.sum() : BigInt(0);
  shapes = shapes && c.mu_t.sum() == n && c.pi_t.sum() == n && n > 0;
  out.push_back(make_check("partitions", shapes, "columns are not partitions of a common positive size"));
  if (!shapes) return rep;
  BigInt height_mu = c.mu_t.eval(0);
  BigInt height_lambda = c.lambda_t.eval(0);
  out.push_back(make_check("m_is_height_of_mu", i.m == height_mu,
                           "m = " + s(i.m) + " but ht(mu) = " + s(height_mu)));
  out.push_back(make_check("mu_equals_pi", c.mu_t == c.pi_t, "mu != pi"));
  out.push_back(make_check("height_bound", power_at_most(height_lambda, height_mu, i.epsilon),
                           "ht(lambda) = " + s(height_lambda) + " exceeds m^epsilon"));
  out.push_back(make_check("kronecker_cone", kron_cone_sufficient(c.lambda_t, c.mu_t),
                           "ht(lambda) > h^2 for the shortest column h of mu; no certificate"));
  out.push_back(make_check("size_bound", n <= height_mu * height_mu * height_mu,
                           "|lambda| = " + s(n) + " exceeds m^3"));
  bool hook = c.lambda_t.length() < 2 || c.lambda_t.eval(1) <= 1;
  out.push_back(make_check("not_hook", !hook, "lambda is a hook"));
  return rep;
}

std::vector<CandidateVerdict> exceptional_candidate_check(const Partition& lambda, const BigInt& r,
                                                          const Rational& epsilon,
                                                          const Rational& b,
                                                          KroneckerOracle& oracle) {
  if (r <= 0) throw InvalidArgument("invalid_argument", "r must be positive");
  BigInt N = lambda.size();
  if (N == 0) throw InvalidArgument("empty_partition", "lambda must be non-empty");
  Partition delta = delta_rect(N, r);
  std::vector<CandidateVerdict> out;
  auto verdict = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail)});
  };
  verdict("(1) mu = pi = delta(lambda)", true, "delta = " + delta.to_string());
  verdict("(2) ht(lambda) <= r^epsilon", power_at_most(lambda.height(), r, epsilon),
          "ht(lambda) = " + s(lambda.height()));
  out.push_back({"(3) cone membership", "implied", "follows from (1) and (2)"});
  verdict("(4) |lambda| <= r^b", power_at_most(N, r, b), "|lambda| = " + s(N));
  // lambda_1 >= |lambda| (1 - r^(epsilon/2 - 1)) with epsilon = p/q, i.e.
  // (|lambda| - lambda_1)^(2q) r^(2q - p) <= |lambda|^(2q).
  Rational e = epsilon;
  e.canonicalize();
  unsigned long p = static_cast<unsigned long>(to_long(e.get_num()));
  unsigned long q = static_cast<unsigned long>(to_long(e.get_den()));
  if (2 * q < p) throw InvalidArgument("invalid_epsilon", "epsilon must be at most 2");
  BigInt gap = N - lambda.width();
  verdict("(6) lambda_1 >= |lambda|(1 - r^(epsilon/2 - 1))",
          pow(gap, 2 * q) * pow(r, 2 * q - p) <= pow(N, 2 * q), "lambda_1 = " + s(lambda.width()));
  if (is_hook(lambda)) {
    out.push_back({"(0) k = 0", "moot", "lambda is a hook"});
    out.push_back({"(5) p(lambda) > 0", "fail", "p(lambda) = 0 for hooks"});
    return out;
  }
  PartitionTriple t(lambda, delta, delta);
  if (oracle.admits(t)) {
    BigInt k = oracle.kronecker(t);
    verdict("(0) k = 0", k == 0, "k = " + s(k));
  } else {
    out.push_back({"(0) k = 0", "not_evaluated", "outside the oracle budget"});
  }
  out.push_back({"(5) p(lambda) > 0", "not_evaluated", "plethysm multiplicities are not computed"});
  return out;
}

ChainStats chain_stats(const RestrictedKroneckerInstance& i) {
  const auto& c = i.columns;
  return ChainStats{c.lambda_t.length() > 0 ? c.lambda_t.eval(0) : BigInt(0),
                    c.mu_t.length() > 0 ? c.mu_t.eval(0) : BigInt(0), c.lambda_t.sum(), i.r, i.c,
                    i.s};
}

}  // namespace kron
