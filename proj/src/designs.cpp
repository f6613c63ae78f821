#include "kron/designs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "kron/errors.hpp"

namespace kron {

namespace {

// Vertex -> index of its hyperedge within one layer.
std::vector<int> membership(const std::vector<Hyperedge>& layer, int n) {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t e = 0; e < layer.size(); ++e) {
    if (layer[e].empty()) throw InvalidArgument("invalid_design", "empty hyperedge");
    for (int v : layer[e]) {
      if (v < 0 || v >= n) throw InvalidArgument("invalid_design", "vertex out of range");
      if (owner[v] != -1)
        throw InvalidArgument("invalid_design", "vertex " + std::to_string(v) +
                                                    " lies in two hyperedges of one layer");
      owner[v] = static_cast<int>(e);
    }
  }
  for (int v = 0; v < n; ++v)
    if (owner[v] == -1)
      throw InvalidArgument("invalid_design",
                            "vertex " + std::to_string(v) + " is missing from a layer");
  return owner;
}

std::vector<Hyperedge> chunk(const std::vector<int>& order, const std::vector<int>& sizes) {
  std::vector<Hyperedge> out;
  std::size_t pos = 0;
  for (int s : sizes) {
    Hyperedge e(order.begin() + static_cast<long>(pos), order.begin() + static_cast<long>(pos + s));
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
    pos += static_cast<std::size_t>(s);
  }
  return out;
}

std::vector<int> iota_vector(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Triple reordered so that the partition at `first` comes first. t is
// symmetric in its three arguments.
PartitionTriple rotate_to(const PartitionTriple& t, int first) {
  if (first == 1) return PartitionTriple(t.mu(), t.lambda(), t.pi());
  if (first == 2) return PartitionTriple(t.pi(), t.mu(), t.lambda());
  return t;
}

}  // namespace

void check_predesign(const ObstructionDesign& d) {
  if (d.vertex_count < 0) throw InvalidArgument("invalid_design", "negative vertex count");
  for (const auto& layer : d.layers) membership(layer, d.vertex_count);
}

bool is_design(const ObstructionDesign& d) {
  std::array<std::vector<int>, 3> owner;
  for (int i = 0; i < 3; ++i) owner[i] = membership(d.layers[i], d.vertex_count);
  std::set<std::tuple<int, int, int>> seen;
  for (int v = 0; v < d.vertex_count; ++v)
    if (!seen.emplace(owner[0][v], owner[1][v], owner[2][v]).second) return false;
  return true;
}

bool has_type(const ObstructionDesign& d, const PartitionTriple& t) {
  if (BigInt(d.vertex_count) != t.size()) return false;
  const Partition* parts[3] = {&t.lambda(), &t.mu(), &t.pi()};
  for (int i = 0; i < 3; ++i) {
    std::vector<int> sizes;
    for (const auto& e : d.layers[i]) sizes.push_back(static_cast<int>(e.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    if (sizes != parts[i]->small_columns()) return false;
  }
  return true;
}

ObstructionDesign design_from_pointset(const PointSet& p) {
  ObstructionDesign d;
  d.vertex_count = static_cast<int>(p.size());
  for (int a = 0; a < 3; ++a) {
    std::map<int, Hyperedge> slices;
    int v = 0;
    for (const auto& pt : p) slices[pt[a]].push_back(v++);
    for (auto& [coord, edge] : slices) d.layers[a].push_back(std::move(edge));
  }
  return d;
}

namespace {

// Assigns vertices 0..n-1 to blocks of prescribed sizes. Among blocks of
// equal size only the first empty one may be opened, so each set partition
// is produced once.
class BlockAssigner {
 public:
  BlockAssigner(std::vector<int> sizes, int n) : sizes_(std::move(sizes)), n_(n) {
    fill_.assign(sizes_.size(), 0);
    block_.assign(static_cast<std::size_t>(n), -1);
  }

  // allowed(v, b) returns false to forbid placing v in block b; done() is
  // called on each complete assignment and stops the search by returning true.
  bool run(const std::function<bool(int, int)>& allowed, const std::function<bool()>& done) {
    return place(0, allowed, done);
  }

  const std::vector<int>& blocks() const { return block_; }

 private:
  bool place(int v, const std::function<bool(int, int)>& allowed,
             const std::function<bool()>& done) {
    if (v == n_) return done();
    for (std::size_t b = 0; b < sizes_.size(); ++b) {
      if (fill_[b] == sizes_[b]) continue;
      if (fill_[b] == 0 && b > 0 && sizes_[b - 1] == sizes_[b] && fill_[b - 1] == 0) continue;
      if (!allowed(v, static_cast<int>(b))) continue;
      ++fill_[b];
      block_[v] = static_cast<int>(b);
      if (place(v + 1, allowed, done)) return true;
      block_[v] = -1;
      --fill_[b];
    }
    return false;
  }

  std::vector<int> sizes_;
  int n_;
  std::vector<int> fill_, block_;
};

}  // namespace

std::optional<ObstructionDesign> find_design_exhaustive(const PartitionTriple& t) {
  int n = to_int(t.size());
  if (n > 12) throw BudgetExceeded("exhaustive design search is limited to 12 vertices");
  auto a = t.lambda().small_columns();
  auto b = t.mu().small_columns();
  auto c = t.pi().small_columns();
  std::vector<int> first(static_cast<std::size_t>(n));
  {
    int v = 0;
    for (std::size_t e = 0; e < a.size(); ++e)
      for (int k = 0; k < a[e]; ++k) first[v++] = static_cast<int>(e);
  }
  int third_blocks = static_cast<int>(c.size());
  BlockAssigner second(b, n);
  std::optional<ObstructionDesign> found;
  // A (first, second) class may not be larger than the number of
  // third-layer blocks.
  auto allowed2 = [&](int v, int blk) {
    int k = 0;
    for (int u = 0; u < v; ++u)
      if (first[u] == first[v] && second.blocks()[u] == blk) ++k;
    return k < third_blocks;
  };
  auto done2 = [&]() {
    std::vector<int> sec = second.blocks();
    BlockAssigner third(c, n);
    auto allowed3 = [&](int v, int blk) {
      for (int u = 0; u < v; ++u)
        if (third.blocks()[u] == blk && first[u] == first[v] && sec[u] == sec[v]) return false;
      return true;
    };
    auto done3 = [&]() {
      ObstructionDesign d;
      d.vertex_count = n;
      const std::vector<int>* owners[3] = {&first, &sec, &third.blocks()};
      const std::vector<int>* sizes[3] = {&a, &b, &c};
      for (int i = 0; i < 3; ++i) {
        d.layers[i].assign(sizes[i]->size(), {});
        for (int v = 0; v < n; ++v) d.layers[i][(*owners[i])[v]].push_back(v);
      }
      found = std::move(d);
      return true;
    };
    return third.run(allowed3, done3);
  };
  second.run(allowed2, done2);
  return found;
}

FlowResult max_flow(const FlowNetwork& net) {
  int n = net.node_count;
  if (net.source < 0 || net.source >= n || net.sink < 0 || net.sink >= n || net.source == net.sink)
    throw InvalidArgument("invalid_network", "bad source or sink");
  std::vector<int> to, next;
  std::vector<long> cap;
  std::vector<int> head(static_cast<std::size_t>(n), -1);
  long max_cap = 0;
  auto arc = [&](int u, int v, long c) {
    to.push_back(v);
    cap.push_back(c);
    next.push_back(head[u]);
    head[u] = static_cast<int>(to.size()) - 1;
  };
  for (const auto& e : net.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw InvalidArgument("invalid_network", "edge endpoint out of range");
    if (e.capacity < 0) throw InvalidArgument("invalid_network", "negative capacity");
    arc(e.from, e.to, e.capacity);
    arc(e.to, e.from, 0);
    max_cap = std::max(max_cap, e.capacity);
  }
  long delta = 1;
  while (delta * 2 <= max_cap) delta *= 2;
  FlowResult result;
  std::vector<int> via(static_cast<std::size_t>(n));
  for (; delta >= 1; delta /= 2) {
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> q;
      q.push(net.source);
      via[net.source] = -2;
      while (!q.empty() && via[net.sink] == -1) {
        int u = q.front();
        q.pop();
        for (int a = head[u]; a != -1; a = next[a])
          if (cap[a] >= delta && via[to[a]] == -1) {
            via[to[a]] = a;
            q.push(to[a]);
          }
      }
      if (via[net.sink] == -1) break;
      long push = cap[via[net.sink]];
      for (int v = net.sink; v != net.source; v = to[via[v] ^ 1]) push = std::min(push, cap[via[v]]);
      for (int v = net.sink; v != net.source; v = to[via[v] ^ 1]) {
        cap[via[v]] -= push;
        cap[via[v] ^ 1] += push;
      }
      result.value += push;
    }
  }
  for (std::size_t i = 0; i < net.edges.size(); ++i) result.edge_flow.push_back(cap[2 * i + 1]);
  return result;
}

FlowNetwork hook_flow_network(const Partition& mu, const Partition& pi) {
  auto mc = mu.small_columns();
  auto pc = pi.small_columns();
  FlowNetwork net;
  net.source = net.add_node();
  net.sink = net.add_node();
  std::vector<int> mn, pn;
  for (std::size_t i = 0; i < mc.size(); ++i) mn.push_back(net.add_node());
  for (std::size_t j = 0; j < pc.size(); ++j) pn.push_back(net.add_node());
  for (std::size_t i = 0; i < mc.size(); ++i) net.add_edge(net.source, mn[i], mc[i]);
  for (std::size_t i = 0; i < mc.size(); ++i)
    for (std::size_t j = 0; j < pc.size(); ++j) net.add_edge(mn[i], pn[j], 1);
  for (std::size_t j = 0; j < pc.size(); ++j) net.add_edge(pn[j], net.sink, pc[j]);
  return net;
}

bool hook_t_positive(const Partition& lambda, const Partition& mu, const Partition& pi) {
  if (lambda.empty() || !is_hook(lambda)) throw InvalidArgument("not_a_hook", "lambda is not a hook");
  PartitionTriple t(lambda, mu, pi);
  BigInt k = lambda.height();
  if (k == 1) return true;
  return max_flow(hook_flow_network(mu, pi)).value >= k;
}

namespace {

int checked_height_bound(const PartitionTriple& t, int c) {
  if (c < 1) throw InvalidArgument("invalid_argument", "c must be positive");
  if (t.max_height() > c)
    throw InvalidArgument("height_exceeded", "a partition has more than c rows");
  return c;
}

}  // namespace

bool const_height_decide(const PartitionTriple& t, int c) {
  checked_height_bound(t, c);
  if (t.size() >= BigInt(c + 2) * c) return true;
  static std::mutex mutex;
  static std::map<std::string, bool> table;
  std::string key = std::to_string(c) + t.to_string();
  {
    std::lock_guard lock(mutex);
    if (auto it = table.find(key); it != table.end()) return it->second;
  }
  bool positive = find_pointset(marginals_of(t)).has_value();
  std::lock_guard lock(mutex);
  table.emplace(std::move(key), positive);
  return positive;
}

ObstructionDesign lr_embed_construction(const PartitionTriple& e) {
  auto strip = [](const Partition& p) {
    auto runs = p.runs();
    if (runs.empty()) return std::pair(BigInt(0), Partition{});
    BigInt top = runs[0].value;
    runs[0].multiplicity -= 1;
    return std::pair(top, Partition::from_runs(std::move(runs)));
  };
  auto [l0, lambda] = strip(e.lambda());
  auto [m0, mu] = strip(e.mu());
  auto [p0, pi] = strip(e.pi());
  BigInt iota = lambda.size() + lambda.width();
  bool shaped = !mu.empty() && !pi.empty() && e.size() == 3 * iota &&
                lambda.size() == mu.size() + pi.size() && l0 >= lambda.width();
  if (!shaped)
    throw InvalidArgument("not_embedded", "triple is not a long-first-row embedding");
  int n = to_int(e.size());
  int third = to_int(iota);
  const Partition* parts[3] = {&e.lambda(), &e.mu(), &e.pi()};
  std::array<std::vector<int>, 3> big;
  std::array<int, 3> weight{}, share{};
  for (int i = 0; i < 3; ++i) {
    for (int col : parts[i]->small_columns())
      if (col > 1) {
        big[i].push_back(col);
        weight[i] += col;
      }
    share[i] = weight[i];
  }
  int slack = n - share[0] - share[1] - share[2];
  if (slack < 0) throw Error("internal_error", "embedded triple has too many long columns");
  for (int i = 0; i < 3 && slack > 0; ++i) {
    int add = std::min(slack, std::max(0, third - share[i]));
    share[i] += add;
    slack -= add;
  }
  share[2] += slack;

  ObstructionDesign d;
  d.vertex_count = n;
  int begin = 0;
  for (int i = 0; i < 3; ++i) {
    int v = begin;
    for (int col : big[i]) {
      Hyperedge h;
      for (int k = 0; k < col; ++k) h.push_back(v++);
      d.layers[i].push_back(std::move(h));
    }
    for (int u = 0; u < n; ++u)
      if (u < begin || u >= v) d.layers[i].push_back({u});
    begin += share[i];
  }
  return d;
}

ObstructionDesign const_height_construction(const PartitionTriple& t, int c) {
  checked_height_bound(t, c);
  if (t.size() < BigInt(c + 2) * c)
    throw InvalidArgument("too_small", "construction needs |lambda| >= (c+2)c");
  int n = to_int(t.size());
  // Vertex v sits at column v / c, row v % c; the last column may be short.
  std::vector<int> column_major = iota_vector(n);
  std::vector<int> row_major = column_major;
  std::stable_sort(row_major.begin(), row_major.end(), [c](int a, int b) {
    return std::pair(a % c, a / c) < std::pair(b % c, b / c);
  });
  ObstructionDesign d;
  d.vertex_count = n;
  d.layers[0] = chunk(column_major, t.lambda().small_columns());
  d.layers[1] = chunk(column_major, t.mu().small_columns());
  d.layers[2] = chunk(row_major, t.pi().small_columns());
  return d;
}

ObstructionDesign rectangular_construction(const Partition& lambda, int d, int r) {
  if (d < 1 || r < 1) throw InvalidArgument("invalid_argument", "d and r must be positive");
  if (lambda.size() != BigInt(d) * r)
    throw InvalidArgument("size_mismatch", "|lambda| must equal d*r");
  if (lambda.height() > BigInt(std::min(d, r)) * std::min(d, r))
    throw InvalidArgument("height_exceeded", "ht(lambda) exceeds min(d^2, r^2)");
  int q = r / d, s = r % d;
  // Vertices stacked at grid location (i, j): q, plus one when (i+j) rem d < s.
  std::vector<std::vector<std::vector<int>>> stack(
      static_cast<std::size_t>(d), std::vector<std::vector<int>>(static_cast<std::size_t>(d)));
  int n = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int count = q + ((i + j) % d < s ? 1 : 0);
      for (int k = 0; k < count; ++k) stack[i][j].push_back(n++);
    }
  ObstructionDesign out;
  out.vertex_count = n;
  for (int i = 0; i < d; ++i) {
    Hyperedge row, col;
    for (int j = 0; j < d; ++j) {
      row.insert(row.end(), stack[i][j].begin(), stack[i][j].end());
      col.insert(col.end(), stack[j][i].begin(), stack[j][i].end());
    }
    std::sort(row.begin(), row.end());
    std::sort(col.begin(), col.end());
    out.layers[1].push_back(std::move(row));
    out.layers[2].push_back(std::move(col));
  }
  for (int size : lambda.small_columns()) {
    std::vector<std::pair<int, int>> places;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!stack[i][j].empty()) places.push_back({i, j});
    std::stable_sort(places.begin(), places.end(), [&](const auto& a, const auto& b) {
      return stack[a.first][a.second].size() > stack[b.first][b.second].size();
    });
    if (static_cast<int>(places.size()) < size)
      throw Error("internal_error", "rectangular construction ran out of locations");
    Hyperedge h;
    for (int k = 0; k < size; ++k) {
      auto& st = stack[places[k].first][places[k].second];
      h.push_back(st.back());
      st.pop_back();
    }
    std::sort(h.begin(), h.end());
    out.layers[0].push_back(std::move(h));
  }
  return out;
}

namespace {

std::optional<Decision> try_hook(const PartitionTriple& t) {
  for (int i = 0; i < 3; ++i) {
    auto r = rotate_to(t, i);
    if (r.lambda().empty() || !is_hook(r.lambda())) continue;
    Decision dec;
    dec.method = "hook";
    if (r.lambda().height() == 1) {
      dec.positive = true;
      return dec;
    }
    FlowResult flow = max_flow(hook_flow_network(r.mu(), r.pi()));
    dec.positive = BigInt(flow.value) >= r.lambda().height();
    dec.flow = std::move(flow);
    return dec;
  }
  return std::nullopt;
}

std::optional<Decision> try_rectangular(const PartitionTriple& t) {
  for (int i = 0; i < 3; ++i) {
    auto r = rotate_to(t, i);
    if (!(r.mu() == r.pi()) || r.mu().runs().size() != 1) continue;
    int d = to_int(r.mu().runs()[0].value);
    int rows = to_int(r.mu().runs()[0].multiplicity);
    BigInt m = std::min(d, rows);
    if (r.lambda().height() > m * m) continue;
    Decision dec;
    dec.method = "rectangular";
    dec.positive = true;
    ObstructionDesign design = rectangular_construction(r.lambda(), d, rows);
    if (i != 0) std::swap(design.layers[0], design.layers[i]);
    dec.design = std::move(design);
    return dec;
  }
  return std::nullopt;
}

Decision by_const_height(const PartitionTriple& t) {
  int c = to_int(t.max_height());
  Decision dec;
  dec.method = "const-height";
  if (t.size() >= BigInt(c + 2) * c) {
    dec.positive = true;
    dec.design = const_height_construction(t, c);
  } else {
    dec.positive = const_height_decide(t, c);
  }
  return dec;
}

Decision by_search(const PartitionTriple& t, CountBudget budget) {
  Decision dec;
  dec.method = "search";
  auto w = find_pointset(marginals_of(t), budget);
  dec.positive = w.has_value();
  if (w) {
    dec.design = design_from_pointset(*w);
    dec.witness = std::move(w);
  }
  return dec;
}

}  // namespace

Decision t_tilde_positive(const PartitionTriple& t, DecideMethod method, CountBudget budget) {
  if (t.size() == 0) {
    Decision dec;
    dec.positive = true;
    dec.method = "empty";
    dec.design = ObstructionDesign{};
    return dec;
  }
  auto not_applicable = [](const std::string& what) {
    return InvalidArgument("method_not_applicable", what);
  };
  switch (method) {
    case DecideMethod::Hook:
      if (auto d = try_hook(t)) return *d;
      throw not_applicable("no partition of the triple is a hook");
    case DecideMethod::Rectangular:
      if (auto d = try_rectangular(t)) return *d;
      throw not_applicable("triple is not of the form (lambda, delta, delta) with ht(lambda) <= min(d^2, r^2)");
    case DecideMethod::ConstHeight:
      return by_const_height(t);
    case DecideMethod::SimplexLike: {
      if (!is_simplex_like(t)) throw not_applicable("triple is not simplex-like");
      Decision dec;
      dec.method = "simplex-like";
      dec.count = count_p(t, budget);
      dec.positive = *dec.count > 0;
      return dec;
    }
    case DecideMethod::Auto:
      break;
  }
  if (auto d = try_hook(t)) return *d;
  if (auto d = try_rectangular(t)) return *d;
  int c = to_int(t.max_height());
  if (t.size() >= BigInt(c + 2) * c) return by_const_height(t);
  if (is_simplex_like(t)) return t_tilde_positive(t, DecideMethod::SimplexLike, budget);
  return by_search(t, budget);
}

}  // namespace kron
