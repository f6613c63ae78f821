#include "kron/oracle.hpp"

#include <algorithm>
#include <map>

#include "kron/errors.hpp"

namespace kron {

namespace {

BigInt factorial(int n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

BigInt centralizer_order(const std::vector<int>& cycle_type) {
  std::map<int, int> mult;
  for (int c : cycle_type) ++mult[c];
  BigInt z = 1;
  for (auto [len, m] : mult) z *= pow(BigInt(len), m) * factorial(m);
  return z;
}

BigInt to_bigint(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(u >> 64));
  BigInt lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

std::string memo_key(const std::vector<int>& shape, const std::vector<int>& cycles,
                     std::size_t from) {
  std::string key;
  key.reserve(shape.size() + cycles.size() - from + 1);
  for (int p : shape) key.push_back(static_cast<char>(p));
  key.push_back('\xff');
  for (std::size_t i = from; i < cycles.size(); ++i) key.push_back(static_cast<char>(cycles[i]));
  return key;
}

}  // namespace

std::vector<ConjugacyClass> sym_group_classes(int n) {
  if (n < 1) throw InvalidArgument("invalid_argument", "sym_group_classes requires n >= 1");
  BigInt nf = factorial(n);
  std::vector<ConjugacyClass> out;
  for (const auto& p : partitions_of(n))
    out.push_back({Partition::from_parts(std::span<const int>(p)), nf / centralizer_order(p)});
  return out;
}

bool KroneckerOracle::admits(const PartitionTriple& t) const {
  return t.size() <= budget_.max_n;
}

// Murnaghan-Nakayama: remove a border strip of length cycles[from] in every
// possible way. On the beta-set {lambda_i + (l-1-i)} a border strip of length
// k is a bead moved from b to b-k onto an empty position; its height is the
// number of beads strictly between.
__int128 KroneckerOracle::chi(const std::vector<int>& shape, const std::vector<int>& cycles,
                              std::size_t from) {
  if (from == cycles.size()) return shape.empty() ? 1 : 0;
  std::string key = memo_key(shape, cycles, from);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const int k = cycles[from];
  const int len = static_cast<int>(shape.size());
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = shape[i] + (len - 1 - i);
  __int128 total = 0;
  std::vector<int> moved;
  for (int i = 0; i < len; ++i) {
    int target = beta[i] - k;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int b : beta)
      if (b > target && b < beta[i]) ++between;
    moved = beta;
    moved[i] = target;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> next;
    for (int j = 0; j < len; ++j) {
      int part = moved[j] - (len - 1 - j);
      if (part > 0) next.push_back(part);
    }
    __int128 sub = chi(next, cycles, from + 1);
    total += (between % 2 == 0) ? sub : -sub;
  }
  std::lock_guard lock(mutex_);
  memo_.emplace(std::move(key), total);
  return total;
}

BigInt KroneckerOracle::character(const Partition& shape, const Partition& cls) {
  if (shape.size() != cls.size())
    throw InvalidArgument("size_mismatch", "character: |shape| != |class|");
  if (shape.size() > budget_.max_n)
    throw BudgetExceeded("character: n = " + shape.size().get_str() + " over oracle budget");
  return to_bigint(chi(shape.small_parts(), cls.small_parts(), 0));
}

BigInt KroneckerOracle::kronecker(const PartitionTriple& t) {
  if (!admits(t))
    throw BudgetExceeded("kronecker: n = " + t.size().get_str() + " over oracle budget (max " +
                         std::to_string(budget_.max_n) + ")");
  int n = to_int(t.size());
  if (n == 0) return 1;
  auto parts = partitions_of(n);
  if (parts.size() > budget_.max_classes)
    throw BudgetExceeded("kronecker: class count over oracle budget");
  auto lambda = t.lambda().small_parts();
  auto mu = t.mu().small_parts();
  auto pi = t.pi().small_parts();
  BigInt nf = factorial(n);
  BigInt total = 0;
  for (const auto& cycles : parts) {
    __int128 a = chi(lambda, cycles, 0);
    if (a == 0) continue;
    __int128 b = chi(mu, cycles, 0);
    if (b == 0) continue;
    __int128 c = chi(pi, cycles, 0);
    if (c == 0) continue;
    total += (nf / centralizer_order(cycles)) * to_bigint(a) * to_bigint(b) * to_bigint(c);
  }
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), total.get_mpz_t(), nf.get_mpz_t());
  if (r != 0) {
    // The character inner product is always an integer; a remainder means
    // the character code is wrong. Never round.
    throw Error("internal_error", "kronecker: character sum not divisible by n!");
  }
  return q;
}

KroneckerOracle& default_oracle() {
  static KroneckerOracle oracle;
  return oracle;
}

BigInt character(const Partition& shape, const Partition& cls) {
  return default_oracle().character(shape, cls);
}

BigInt kronecker(const PartitionTriple& t) { return default_oracle().kronecker(t); }

namespace {

// Fills the skew shape lambda/mu in reverse reading order (rows top to
// bottom, each row right to left); the lattice condition is checked on the
// prefix read so far.
struct LrCounter {
  std::vector<int> lambda, mu, content;
  std::vector<std::vector<int>> grid;  // grid[row][col], 0 = unfilled / in mu
  std::vector<int> used;
  BigInt count = 0;

  void run(std::size_t row, int col) {
    if (row == lambda.size()) {
      if (used == content) ++count;
      return;
    }
    int row_start = row < mu.size() ? mu[row] : 0;
    if (col < row_start) {
      std::size_t next = row + 1;
      run(next, next < lambda.size() ? lambda[next] - 1 : 0);
      return;
    }
    int hi = static_cast<int>(content.size());
    if (col + 1 < lambda[row]) hi = std::min(hi, grid[row][col + 1]);
    int lo = 1;
    if (row > 0 && col < lambda[row - 1]) {
      int above_start = row - 1 < mu.size() ? mu[row - 1] : 0;
      if (col >= above_start) lo = grid[row - 1][col] + 1;
    }
    for (int v = lo; v <= hi; ++v) {
      if (used[v - 1] >= content[v - 1]) continue;
      if (v > 1 && used[v - 1] + 1 > used[v - 2]) continue;
      ++used[v - 1];
      grid[row][col] = v;
      run(row, col - 1);
      grid[row][col] = 0;
      --used[v - 1];
    }
  }
};

}  // namespace

BigInt lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& pi) {
  if (lambda.size() != mu.size() + pi.size())
    throw InvalidArgument("size_mismatch", "lr_coefficient requires |lambda| = |mu| + |pi|");
  LrCounter c;
  c.lambda = lambda.small_parts();
  c.mu = mu.small_parts();
  c.content = pi.small_parts();
  if (c.mu.size() > c.lambda.size()) return 0;
  for (std::size_t i = 0; i < c.mu.size(); ++i)
    if (c.mu[i] > c.lambda[i]) return 0;
  if (c.lambda.empty()) return 1;
  c.grid.assign(c.lambda.size(), std::vector<int>(c.lambda[0] + 1, 0));
  c.used.assign(c.content.size(), 0);
  c.run(0, c.lambda[0] - 1);
  return c.count;
}

PartitionTriple murnaghan_embed(const Partition& lambda, const Partition& mu,
                                const Partition& pi) {
  if (lambda.size() != mu.size() + pi.size())
    throw InvalidArgument("size_mismatch", "murnaghan_embed requires |lambda| = |mu| + |pi|");
  if (mu.empty() || pi.empty())
    throw InvalidArgument("empty_partition", "murnaghan_embed requires non-empty mu and pi");
  BigInt iota = lambda.size() + lambda.width();
  BigInt total = 3 * iota;
  auto prepend = [&](const Partition& p) {
    BigInt row = total - p.size();
    if (row < p.width())
      throw InvalidArgument("invalid_embedding", "prepended row shorter than first row");
    std::vector<Partition::Run> runs{{row, 1}};
    runs.insert(runs.end(), p.runs().begin(), p.runs().end());
    return Partition::from_runs(std::move(runs));
  };
  return PartitionTriple(prepend(lambda), prepend(mu), prepend(pi));
}

}  // namespace kron
