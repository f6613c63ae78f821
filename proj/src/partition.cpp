#include "kron/partition.hpp"

#include <algorithm>
#include <sstream>

#include "kron/errors.hpp"

namespace kron {

namespace {

template <typename T>
Partition dense_to_partition(std::span<const T> parts) {
  std::vector<Partition::Run> runs;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    BigInt v(parts[i]);
    if (v < 0) throw InvalidArgument("invalid_partition", "negative part");
    if (i > 0 && BigInt(parts[i - 1]) < v)
      throw InvalidArgument("invalid_partition", "parts must be non-increasing");
    runs.push_back({v, 1});
  }
  return Partition::from_runs(std::move(runs));
}

}  // namespace

Partition::Partition(std::initializer_list<long> parts) {
  std::vector<BigInt> v;
  for (long p : parts) v.emplace_back(p);
  *this = from_parts(std::span<const BigInt>(v));
}

Partition Partition::from_parts(std::span<const BigInt> parts) {
  return dense_to_partition(parts);
}

Partition Partition::from_parts(std::span<const int> parts) {
  return dense_to_partition(parts);
}

Partition Partition::from_runs(std::vector<Run> runs) {
  std::vector<Run> canonical;
  bool seen_zero = false;
  for (auto& run : runs) {
    if (run.value < 0 || run.multiplicity < 0)
      throw InvalidArgument("invalid_partition", "negative value or multiplicity");
    if (run.multiplicity == 0) continue;
    if (run.value == 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero)
      throw InvalidArgument("invalid_partition", "run values must be non-increasing");
    if (!canonical.empty()) {
      if (canonical.back().value < run.value)
        throw InvalidArgument("invalid_partition", "run values must be non-increasing");
      if (canonical.back().value == run.value) {
        canonical.back().multiplicity += run.multiplicity;
        continue;
      }
    }
    canonical.push_back(std::move(run));
  }
  return Partition(std::move(canonical));
}

Partition Partition::from_columns(std::span<const int> columns) {
  return from_parts(columns).transpose();
}

Partition Partition::from_columns(std::span<const BigInt> columns) {
  return from_parts(columns).transpose();
}

BigInt Partition::size() const {
  BigInt s = 0;
  for (const auto& r : runs_) s += r.value * r.multiplicity;
  return s;
}

BigInt Partition::height() const {
  BigInt h = 0;
  for (const auto& r : runs_) h += r.multiplicity;
  return h;
}

BigInt Partition::width() const { return runs_.empty() ? BigInt(0) : runs_.front().value; }

BigInt Partition::smallest_part() const {
  return runs_.empty() ? BigInt(0) : runs_.back().value;
}

BigInt Partition::part(const BigInt& index) const {
  BigInt offset = 0;
  for (const auto& r : runs_) {
    offset += r.multiplicity;
    if (index < offset) return r.value;
  }
  return 0;
}

// Runs (v_1, m_1), ..., (v_k, m_k) with v_1 > ... > v_k: the columns with
// index in [v_{i+1}, v_i) all have height m_1 + ... + m_i.
Partition Partition::transpose() const {
  std::vector<Run> out;
  BigInt cumulative = 0;
  std::vector<BigInt> heights;
  for (const auto& r : runs_) {
    cumulative += r.multiplicity;
    heights.push_back(cumulative);
  }
  for (std::size_t i = runs_.size(); i-- > 0;) {
    BigInt next = (i + 1 < runs_.size()) ? runs_[i + 1].value : BigInt(0);
    out.push_back({heights[i], runs_[i].value - next});
  }
  return Partition(std::move(out));
}

std::vector<BigInt> Partition::parts(std::size_t limit) const {
  BigInt h = height();
  if (h > BigInt(static_cast<unsigned long>(limit)))
    throw BudgetExceeded("partition height " + h.get_str() + " too large to materialize");
  std::vector<BigInt> out;
  for (const auto& r : runs_)
    for (long i = 0; i < r.multiplicity.get_si(); ++i) out.push_back(r.value);
  return out;
}

std::vector<int> Partition::small_parts(std::size_t limit) const {
  std::vector<int> out;
  for (const auto& v : parts(limit)) out.push_back(to_int(v));
  return out;
}

std::vector<int> Partition::small_columns(std::size_t limit) const {
  return transpose().small_parts(limit);
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (const auto& r : runs_) {
    if (r.multiplicity <= 3) {
      for (long i = 0; i < r.multiplicity.get_si(); ++i) {
        if (!first) os << ',';
        os << r.value.get_str();
        first = false;
      }
    } else {
      if (!first) os << ',';
      os << r.value.get_str() << '^' << r.multiplicity.get_str();
      first = false;
    }
  }
  os << ')';
  return os.str();
}

bool operator<(const Partition& a, const Partition& b) {
  return std::lexicographical_compare(
      a.runs_.begin(), a.runs_.end(), b.runs_.begin(), b.runs_.end(),
      [](const Partition::Run& x, const Partition::Run& y) {
        if (x.value != y.value) return x.value < y.value;
        return x.multiplicity < y.multiplicity;
      });
}

bool is_hook(const Partition& p) {
  if (p.empty()) throw InvalidArgument("empty_partition", "is_hook of the empty partition");
  const auto& runs = p.runs();
  if (runs.size() == 1) return runs[0].value == 1 || runs[0].multiplicity == 1;
  if (runs.size() == 2) return runs[0].multiplicity == 1 && runs[1].value == 1;
  return false;
}

Partition delta_rect(const BigInt& size, const BigInt& r) {
  if (r <= 0) throw InvalidArgument("invalid_argument", "rectangle height must be positive");
  if (size % r != 0)
    throw InvalidArgument("not_divisible",
                          "size " + size.get_str() + " not divisible by " + r.get_str());
  return Partition::from_runs({{size / r, r}});
}

Partition add_vectors(const Partition& a, const Partition& b) {
  std::vector<Partition::Run> out;
  const auto& ra = a.runs();
  const auto& rb = b.runs();
  std::size_t i = 0, j = 0;
  BigInt left_a = ra.empty() ? BigInt(0) : ra[0].multiplicity;
  BigInt left_b = rb.empty() ? BigInt(0) : rb[0].multiplicity;
  while (i < ra.size() || j < rb.size()) {
    BigInt va = i < ra.size() ? ra[i].value : BigInt(0);
    BigInt vb = j < rb.size() ? rb[j].value : BigInt(0);
    BigInt take;
    if (i >= ra.size()) take = left_b;
    else if (j >= rb.size()) take = left_a;
    else take = left_a < left_b ? left_a : left_b;
    out.push_back({va + vb, take});
    if (i < ra.size()) {
      left_a -= take;
      if (left_a == 0 && ++i < ra.size()) left_a = ra[i].multiplicity;
    }
    if (j < rb.size()) {
      left_b -= take;
      if (left_b == 0 && ++j < rb.size()) left_b = rb[j].multiplicity;
    }
  }
  return Partition::from_runs(std::move(out));
}

namespace {
void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

PartitionTriple::PartitionTriple(Partition lambda, Partition mu, Partition pi)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), pi_(std::move(pi)) {
  size_ = lambda_.size();
  if (mu_.size() != size_ || pi_.size() != size_)
    throw InvalidArgument("size_mismatch", "triple sizes differ: " + to_string());
}

BigInt PartitionTriple::max_height() const {
  BigInt h = lambda_.height();
  if (mu_.height() > h) h = mu_.height();
  if (pi_.height() > h) h = pi_.height();
  return h;
}

std::string PartitionTriple::to_string() const {
  return "(" + lambda_.to_string() + ", " + mu_.to_string() + ", " + pi_.to_string() + ")";
}

}  // namespace kron
