#include "kron/pointset.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "kron/errors.hpp"

namespace kron {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  for (const auto& p : points_)
    if (p[0] < 0 || p[1] < 0 || p[2] < 0)
      throw InvalidArgument("invalid_pointset", "coordinates must be non-negative");
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw InvalidArgument("invalid_pointset", "repeated point");
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

namespace {

void trim(std::vector<int>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

long total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

void check_marginals(const Marginals& m) {
  for (const auto* v : {&m.x, &m.y, &m.z})
    for (int e : *v)
      if (e < 0) throw InvalidArgument("invalid_marginals", "negative marginal entry");
  if (total(m.x) != total(m.y) || total(m.x) != total(m.z))
    throw InvalidArgument("size_mismatch", "marginal sums differ");
}

void append_key(std::string& key, const std::vector<int>& v) {
  for (int e : v) {
    key.push_back(static_cast<char>(e & 0xff));
    key.push_back(static_cast<char>((e >> 8) & 0xff));
    key.push_back(static_cast<char>((e >> 16) & 0xff));
  }
  key.push_back('\xff');
}

// Exists a matrix with entries in [0, cap], row sums `rows` and column sums
// `cols`? Rows must be sorted non-increasingly.
bool capped_transport(const std::vector<int>& rows, const std::vector<int>& cols, long cap) {
  long prefix = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] == 0) break;
    prefix += rows[k];
    long bound = 0;
    long limit = cap * static_cast<long>(k + 1);
    for (int c : cols) bound += std::min<long>(c, limit);
    if (prefix > bound) return false;
  }
  return true;
}

// Depth-first construction of point sets one x-slice at a time. Each slice
// is a set of (y, z) cells; cells are visited by increasing level y + z so
// the total level sum, which the marginals fix, bounds the search.
class SliceCounter {
 public:
  SliceCounter(const Marginals& m, CountBudget budget, bool witness)
      : budget_(budget), witness_(witness) {
    check_marginals(m);
    ry_ = m.y;
    rz_ = m.z;
    trim(ry_);
    trim(rz_);
    for (std::size_t i = 0; i < m.x.size(); ++i)
      if (m.x[i] > 0) order_.push_back(static_cast<int>(i));
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return m.x[a] > m.x[b]; });
    for (int i : order_) xs_.push_back(m.x[i]);

    int Y = static_cast<int>(ry_.size()), Z = static_cast<int>(rz_.size());
    for (int y = 0; y < Y; ++y)
      for (int z = 0; z < Z; ++z) cells_.push_back({y, z});
    std::sort(cells_.begin(), cells_.end(), [](const auto& a, const auto& b) {
      return std::pair(a[0] + a[1], a[0]) < std::pair(b[0] + b[1], b[0]);
    });
    prefix_.assign(cells_.size() + 1, 0);
    for (std::size_t i = 0; i < cells_.size(); ++i)
      prefix_[i + 1] = prefix_[i] + cells_[i][0] + cells_[i][1];

    std::size_t S = xs_.size();
    future_min_.assign(S + 1, 0);
    future_max_.assign(S + 1, 0);
    for (std::size_t i = S; i-- > 0;) {
      std::size_t s = static_cast<std::size_t>(xs_[i]);
      if (s > cells_.size()) {
        impossible_ = true;
        break;
      }
      future_min_[i] = future_min_[i + 1] + prefix_[s];
      future_max_[i] = future_max_[i + 1] + prefix_[cells_.size()] - prefix_[cells_.size() - s];
    }
    for (int y = 0; y < Y; ++y) weight_ += static_cast<long>(y) * ry_[y];
    for (int z = 0; z < Z; ++z) weight_ += static_cast<long>(z) * rz_[z];
    chosen_.resize(S);
  }

  BigInt count() {
    if (impossible_) return 0;
    return slice(0);
  }

  std::optional<PointSet> find() {
    if (impossible_ || slice(0) == 0) return std::nullopt;
    return PointSet(found_);
  }

 private:
  bool boundary_feasible(std::size_t i) const {
    std::size_t left = xs_.size() - i;
    if (weight_ < future_min_[i] || weight_ > future_max_[i]) return false;
    std::vector<int> ys, zs;
    for (int v : ry_)
      if (v > 0) ys.push_back(v);
    for (int v : rz_)
      if (v > 0) zs.push_back(v);
    std::vector<int> xr(xs_.begin() + static_cast<long>(i), xs_.end());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    std::sort(zs.begin(), zs.end(), std::greater<>());
    long ny = static_cast<long>(ys.size()), nz = static_cast<long>(zs.size());
    return capped_transport(ys, zs, static_cast<long>(left)) &&
           capped_transport(xr, ys, nz) && capped_transport(xr, zs, ny);
  }

  std::string key(std::size_t i) const {
    std::vector<int> ys = ry_, zs = rz_;
    std::sort(ys.begin(), ys.end());
    std::sort(zs.begin(), zs.end());
    std::string k = std::to_string(i) + ":";
    append_key(k, ys);
    append_key(k, zs);
    return k;
  }

  BigInt slice(std::size_t i) {
    if (i == xs_.size()) {
      bool done = std::all_of(ry_.begin(), ry_.end(), [](int v) { return v == 0; }) &&
                  std::all_of(rz_.begin(), rz_.end(), [](int v) { return v == 0; });
      if (done && witness_) record();
      return done ? 1 : 0;
    }
    if (!boundary_feasible(i)) return 0;
    std::string k = key(i);
    if (auto it = memo_.find(k); it != memo_.end() && (!witness_ || it->second == 0))
      return it->second;
    long target = weight_;
    BigInt result = cells(i, 0, xs_[i], 0, target);
    memo_.emplace(std::move(k), result);
    return result;
  }

  BigInt cells(std::size_t i, std::size_t p, int need, long acc, long target) {
    if (++nodes_ > budget_.max_nodes)
      throw BudgetExceeded("point-set enumeration exceeded its node budget");
    if (need == 0) {
      long saved = weight_;
      weight_ = target - acc;
      BigInt r = slice(i + 1);
      weight_ = saved;
      return r;
    }
    std::size_t C = cells_.size();
    if (C - p < static_cast<std::size_t>(need)) return 0;
    long lo = acc + prefix_[p + need] - prefix_[p] + future_min_[i + 1];
    long hi = acc + prefix_[C] - prefix_[C - need] + future_max_[i + 1];
    if (lo > target || hi < target) return 0;

    BigInt result = 0;
    const auto& cell = cells_[p];
    int y = cell[0], z = cell[1];
    if (ry_[y] > 0 && rz_[z] > 0) {
      --ry_[y];
      --rz_[z];
      chosen_[i].push_back(cell);
      result += cells(i, p + 1, need - 1, acc + y + z, target);
      chosen_[i].pop_back();
      ++ry_[y];
      ++rz_[z];
      if (witness_ && result > 0) return result;
    }
    result += cells(i, p + 1, need, acc, target);
    return result;
  }

  void record() {
    if (!found_.empty()) return;
    for (std::size_t s = 0; s < chosen_.size(); ++s)
      for (const auto& c : chosen_[s]) found_.push_back({order_[s], c[0], c[1]});
  }

  CountBudget budget_;
  bool witness_;
  bool impossible_ = false;
  std::vector<int> ry_, rz_, xs_, order_;
  std::vector<std::array<int, 2>> cells_;
  std::vector<long> prefix_, future_min_, future_max_;
  long weight_ = 0;
  std::size_t nodes_ = 0;
  std::unordered_map<std::string, BigInt> memo_;
  std::vector<std::vector<std::array<int, 2>>> chosen_;
  std::vector<Point> found_;
};

// Pyramids have Young-diagram x-slices D_0 ⊇ D_1 ⊇ ...; enumerate the chain.
class PyramidCounter {
 public:
  PyramidCounter(const Marginals& m, CountBudget budget) : budget_(budget) {
    check_marginals(m);
    xs_ = m.x;
    ry_ = m.y;
    rz_ = m.z;
    trim(xs_);
    trim(ry_);
    trim(rz_);
  }

  BigInt count() {
    for (const auto* v : {&xs_, &ry_, &rz_})
      if (!std::is_sorted(v->begin(), v->end(), std::greater<>())) return 0;
    std::vector<int> box(ry_.size(), static_cast<int>(rz_.size()));
    return slice(0, box);
  }

 private:
  BigInt slice(std::size_t i, const std::vector<int>& outer) {
    if (i == xs_.size()) {
      bool done = std::all_of(ry_.begin(), ry_.end(), [](int v) { return v == 0; }) &&
                  std::all_of(rz_.begin(), rz_.end(), [](int v) { return v == 0; });
      return done ? 1 : 0;
    }
    std::string k = std::to_string(i) + ":";
    append_key(k, outer);
    append_key(k, ry_);
    append_key(k, rz_);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    std::vector<int> rows(outer.size(), 0);
    BigInt result = row(i, outer, rows, 0, xs_[i], outer.empty() ? 0 : outer[0]);
    memo_.emplace(std::move(k), result);
    return result;
  }

  BigInt row(std::size_t i, const std::vector<int>& outer, std::vector<int>& rows,
             std::size_t j, int remaining, int prev) {
    if (++nodes_ > budget_.max_nodes)
      throw BudgetExceeded("pyramid enumeration exceeded its node budget");
    if (remaining == 0) {
      std::vector<int> next(rows.begin(), rows.begin() + static_cast<long>(j));
      next.resize(outer.size(), 0);
      while (!next.empty() && next.back() == 0) next.pop_back();
      return slice(i + 1, next);
    }
    if (j >= outer.size()) return 0;
    int limit = std::min({prev, outer[j], ry_[j], remaining});
    int open = 0;
    while (open < limit && rz_[static_cast<std::size_t>(open)] > 0) ++open;
    limit = open;
    // Remaining rows can hold at most limit cells each.
    if (static_cast<long>(limit) * static_cast<long>(outer.size() - j) < remaining) return 0;
    BigInt result = 0;
    for (int len = limit; len >= 1; --len) {
      rows[j] = len;
      ry_[j] -= len;
      for (int k = 0; k < len; ++k) --rz_[static_cast<std::size_t>(k)];
      result += row(i, outer, rows, j + 1, remaining - len, len);
      for (int k = 0; k < len; ++k) ++rz_[static_cast<std::size_t>(k)];
      ry_[j] += len;
    }
    rows[j] = 0;
    return result;
  }

  CountBudget budget_;
  std::vector<int> xs_, ry_, rz_;
  std::size_t nodes_ = 0;
  std::unordered_map<std::string, BigInt> memo_;
};

}  // namespace

Marginals marginals_of(const PointSet& p) {
  Marginals m;
  for (const auto& pt : p) {
    for (int a = 0; a < 3; ++a) {
      auto& v = a == 0 ? m.x : a == 1 ? m.y : m.z;
      if (v.size() <= static_cast<std::size_t>(pt[a])) v.resize(pt[a] + 1, 0);
      ++v[pt[a]];
    }
  }
  trim(m.x);
  trim(m.y);
  trim(m.z);
  return m;
}

Marginals marginals_of(const PartitionTriple& t) {
  return Marginals{t.lambda().small_columns(), t.mu().small_columns(), t.pi().small_columns()};
}

BigInt count_t(const Marginals& m, CountBudget budget) {
  return SliceCounter(m, budget, false).count();
}

BigInt count_t(const PartitionTriple& t, CountBudget budget) {
  return count_t(marginals_of(t), budget);
}

std::optional<PointSet> find_pointset(const Marginals& m, CountBudget budget) {
  return SliceCounter(m, budget, true).find();
}

BigInt count_p(const Marginals& m, CountBudget budget) {
  return PyramidCounter(m, budget).count();
}

BigInt count_p(const PartitionTriple& t, CountBudget budget) {
  return count_p(marginals_of(t), budget);
}

bool is_pyramid(const PointSet& p) {
  for (const auto& pt : p)
    for (int a = 0; a < 3; ++a) {
      if (pt[a] == 0) continue;
      Point q = pt;
      --q[a];
      if (!p.contains(q)) return false;
    }
  return true;
}

PointSet simplex(int r) {
  if (r < 0) throw InvalidArgument("invalid_argument", "negative simplex side");
  std::vector<Point> pts;
  for (int x = 0; x < r; ++x)
    for (int y = 0; x + y < r; ++y)
      for (int z = 0; x + y + z < r; ++z) pts.push_back({x, y, z});
  return PointSet(std::move(pts));
}

BigInt simplex_size(const BigInt& r) { return r * (r + 1) * (r + 2) / 6; }

BigInt simplex_radius(const BigInt& n) {
  if (n < 0) throw InvalidArgument("invalid_argument", "negative size");
  BigInt r;
  BigInt six_n = 6 * n;
  mpz_root(r.get_mpz_t(), six_n.get_mpz_t(), 3);
  while (r > 0 && simplex_size(r) > n) --r;
  while (simplex_size(r + 1) <= n) ++r;
  return r;
}

BigInt barycenter_diag(const PointSet& p) {
  BigInt s = 0;
  for (const auto& pt : p) s += pt[0] + pt[1] + pt[2];
  return s;
}

BigInt p_of_n(const BigInt& n) {
  if (n < 1) throw InvalidArgument("invalid_argument", "p(n) needs n >= 1");
  BigInt r = simplex_radius(n);
  BigInt b = (r - 1) * r * (r + 1) * (r + 2) / 8;
  return b + r * (n - simplex_size(r));
}

bool is_simplex_like(const ColumnTriple& t) {
  BigInt n = t.lambda_t.sum();
  if (n == 0) throw InvalidArgument("empty_partition", "simplex-like needs a positive size");
  if (t.mu_t.sum() != n || t.pi_t.sum() != n)
    throw InvalidArgument("size_mismatch", "partition sizes differ");
  BigInt r = simplex_radius(n);
  for (const auto* s : {&t.lambda_t, &t.mu_t, &t.pi_t}) {
    if (!s->is_partition()) throw InvalidArgument("invalid_partition", "columns are not a partition");
    if (s->positive_count() > r + 1) return false;
  }
  BigInt w = t.lambda_t.weighted_sum() + t.mu_t.weighted_sum() + t.pi_t.weighted_sum();
  return w == p_of_n(n);
}

bool is_simplex_like(const PartitionTriple& t) {
  return is_simplex_like(ColumnTriple::from_triple(t));
}

namespace {

void check_pedestal_args(const BigInt& n, const BigInt& a, const BigInt& b, const BigInt& c) {
  BigInt r = simplex_radius(n);
  if (a < 0) throw InvalidArgument("invalid_pedestal", "a must be non-negative");
  if (b < r + 1 || c < r + 1)
    throw InvalidArgument("invalid_pedestal", "box too thin: b and c must be at least r+1 = " +
                                                  to_string(BigInt(r + 1)));
}

}  // namespace

PartitionTriple pedestal(const PartitionTriple& base, const BigInt& a, const BigInt& b,
                         const BigInt& c) {
  if (!is_simplex_like(base)) throw InvalidArgument("invalid_pedestal", "base is not simplex-like");
  check_pedestal_args(base.size(), a, b, c);
  Partition lambda = add_vectors(Partition::from_runs({{a, b * c}}), base.lambda());
  auto stack = [](const BigInt& value, const BigInt& mult, const Partition& p) {
    std::vector<Partition::Run> runs{{value, mult}};
    runs.insert(runs.end(), p.runs().begin(), p.runs().end());
    return Partition::from_runs(std::move(runs));
  };
  return PartitionTriple(lambda, stack(b, a * c, base.mu()), stack(c, a * b, base.pi()));
}

ColumnTriple pedestal(const ColumnTriple& base, const BigInt& a, const BigInt& b,
                      const BigInt& c) {
  if (!is_simplex_like(base)) throw InvalidArgument("invalid_pedestal", "base is not simplex-like");
  check_pedestal_args(base.lambda_t.sum(), a, b, c);
  return ColumnTriple{SegmentedSequence::constant(b * c, a).concat(base.lambda_t),
                      base.mu_t.add_on_prefix(b, a * c), base.pi_t.add_on_prefix(c, a * b)};
}

std::optional<PedestalWitness> recognize_pedestalled(const PartitionTriple& t) {
  if (t.size() == 0) return std::nullopt;
  const auto& L = t.lambda();
  const auto& M = t.mu();
  const auto& P = t.pi();
  BigInt b = M.width(), c = P.width();
  auto lt = L.transpose();
  if (!lt.empty() && lt.runs()[0].value == b * c) {
    BigInt a = lt.runs()[0].multiplicity;
    if (M.runs()[0].multiplicity >= a * c && P.runs()[0].multiplicity >= a * b) {
      auto shorten = [](const Partition& p, const BigInt& rows) {
        auto runs = p.runs();
        runs[0].multiplicity -= rows;
        return Partition::from_runs(std::move(runs));
      };
      auto lruns = L.runs();
      for (auto& run : lruns) run.value -= a;
      PartitionTriple base(Partition::from_runs(std::move(lruns)), shorten(M, a * c),
                           shorten(P, a * b));
      if (base.size() > 0 && is_simplex_like(base)) {
        BigInt r = simplex_radius(base.size());
        if (b >= r + 1 && c >= r + 1) return PedestalWitness{base, a, b, c};
      }
    }
  }
  if (is_simplex_like(t)) {
    BigInt r = simplex_radius(t.size());
    return PedestalWitness{t, 0, r + 1, r + 1};
  }
  return std::nullopt;
}

namespace {

// T(2r - i) for i in [0, len) as a quadratic in i.
Segment triangular_tail(const BigInt& start, const BigInt& top, const BigInt& len) {
  Rational N(top);
  return Segment{start, len, Rational(top * (top + 1)) / 2, -(2 * N + 1) / 2, Rational(1, 2)};
}

}  // namespace

ColumnTriple lattice_permutation_columns(const BigInt& r, const std::map<BigInt, BigInt>& d) {
  if (r < 0) throw InvalidArgument("invalid_lattice_form", "r must be non-negative");
  BigInt N = 2 * r;
  BigInt count = 0, weighted = 0;
  std::map<BigInt, BigInt> overlay;
  for (const auto& [k, v] : d) {
    if (k < 0 || k > N) throw InvalidArgument("invalid_lattice_form", "d index out of range");
    if (v < 0) throw InvalidArgument("invalid_lattice_form", "d entries must be non-negative");
    count += v;
    weighted += k * v;
    if (v != 0) overlay[N - k] += v;
  }
  if (count != r + 1)
    throw InvalidArgument("invalid_lattice_form", "sum of d is " + to_string(count) +
                                                      ", expected r+1 = " + to_string(BigInt(r + 1)));
  if (weighted != r * (r + 1))
    throw InvalidArgument("invalid_lattice_form",
                          "sum of k*d_k is " + to_string(weighted) +
                              ", expected r(r+1) = " + to_string(BigInt(r * (r + 1))));
  SegmentedSequence lambda_t({triangular_tail(0, N, N + 1)}, overlay);
  if (!lambda_t.is_partition())
    throw InvalidArgument("non_monotone", "lambda^T is not non-increasing for this d");
  Segment head = triangular_tail(0, N, r + 1);
  head.c0 += 1;
  std::vector<Segment> mu{head};
  if (r > 1) mu.push_back(triangular_tail(r + 1, r - 1, r - 1));
  SegmentedSequence mu_t(mu);
  return ColumnTriple{lambda_t, mu_t, mu_t};
}

PartitionTriple lattice_permutation_triple(int r, const std::vector<BigInt>& d) {
  if (r < 0 || d.size() != static_cast<std::size_t>(2 * r + 1))
    throw InvalidArgument("invalid_lattice_form", "d must have length 2r+1");
  std::map<BigInt, BigInt> sparse;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0) sparse[BigInt(static_cast<unsigned long>(k))] = d[k];
  auto cols = lattice_permutation_columns(r, sparse);
  return *cols.to_triple();
}

std::optional<LatticeForm> recognize_lattice_permutation_form(const PartitionTriple& t) {
  if (t.mu() != t.pi() || t.size() == 0) return std::nullopt;
  const BigInt& n = t.size();
  auto size_for = [](const BigInt& r) -> BigInt { return simplex_size(2 * r) + r + 1; };
  BigInt lo = 0, hi = 1;
  while (size_for(hi) < n) hi *= 2;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (size_for(mid) < n) lo = mid + 1;
    else hi = mid;
  }
  BigInt r = lo;
  if (size_for(r) != n || r > 1'000'000) return std::nullopt;
  SegmentedSequence lambda_t = SegmentedSequence::from_partition(t.lambda().transpose());
  if (lambda_t.length() > 2 * r + 1) return std::nullopt;
  LatticeForm form{r, {}};
  std::map<BigInt, BigInt> sparse;
  long N = to_long(2 * r);
  form.d.assign(static_cast<std::size_t>(N + 1), 0);
  for (long i = 0; i <= N; ++i) {
    BigInt have = i < lambda_t.length() ? lambda_t.eval(i) : BigInt(0);
    BigInt tri = BigInt(N - i) * (N - i + 1) / 2;
    BigInt dk = have - tri;
    if (dk < 0) return std::nullopt;
    form.d[static_cast<std::size_t>(N - i)] = dk;
    if (dk != 0) sparse[BigInt(N - i)] = dk;
  }
  try {
    auto cols = lattice_permutation_columns(r, sparse);
    if (!(cols.mu_t == SegmentedSequence::from_partition(t.mu().transpose()))) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return form;
}

bool check_highest_weight(const PointSet& p) {
  for (int axis = 0; axis < 3; ++axis)
    for (const auto& pt : p)
      for (int lower = 0; lower < pt[axis]; ++lower) {
        // The summand replacing pt by its image under E_{lower, pt[axis]}.
        Point image = pt;
        image[axis] = lower;
        if (!p.contains(image)) return false;
      }
  return true;
}

Bounds verify_bounds(const PartitionTriple& t, KroneckerOracle& oracle, CountBudget budget) {
  Bounds b{count_p(t, budget), count_t(t, budget), std::nullopt};
  if (oracle.admits(t)) b.k = oracle.kronecker(t);
  bool ok = b.p <= b.t && (!b.k || (b.p <= *b.k && *b.k <= b.t));
  if (!ok)
    throw Error("internal_error", "bounds p <= k <= t violated for " + t.to_string());
  return b;
}

}  // namespace kron
