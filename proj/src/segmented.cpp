#include "kron/segmented.hpp"

#include <algorithm>
#include <set>

#include "kron/errors.hpp"

namespace kron {

namespace {

Rational sum_k(const BigInt& n) { return Rational(BigInt(n * (n - 1) / 2)); }
Rational sum_k2(const BigInt& n) { return Rational(BigInt((n - 1) * n * (2 * n - 1) / 6)); }

}  // namespace

SegmentedSequence::SegmentedSequence(std::vector<Segment> segments,
                                     std::map<BigInt, BigInt> overlay)
    : segments_(std::move(segments)) {
  for (auto& [idx, delta] : overlay)
    if (delta != 0) overlay_.emplace(idx, delta);
  for (auto& s : segments_) {
    s.c0.canonicalize();
    s.c1.canonicalize();
    s.c2.canonicalize();
  }
  segments_.erase(std::remove_if(segments_.begin(), segments_.end(),
                                 [](const Segment& s) { return s.length == 0; }),
                  segments_.end());
  validate();
}

void SegmentedSequence::validate() const {
  BigInt expected = 0;
  for (const auto& s : segments_) {
    if (s.length < 0) throw InvalidArgument("invalid_sequence", "negative segment length");
    if (s.start != expected)
      throw InvalidArgument("invalid_sequence", "segments must be contiguous from index 0");
    // An integer-valued quadratic on three consecutive integers is integer
    // valued everywhere.
    for (long k = 0; k < 3 && BigInt(k) < s.length; ++k)
      if (s.at(BigInt(k)).get_den() != 1)
        throw InvalidArgument("invalid_sequence", "segment takes non-integer values");
    expected += s.length;
  }
  for (const auto& [idx, delta] : overlay_)
    if (idx < 0 || idx >= expected)
      throw InvalidArgument("index_out_of_range", "overlay index " + idx.get_str() +
                                                      " outside the domain");
}

SegmentedSequence SegmentedSequence::constant(const BigInt& value, const BigInt& length) {
  return SegmentedSequence({Segment{0, length, Rational(value), 0, 0}});
}

SegmentedSequence SegmentedSequence::from_partition(const Partition& p) {
  std::vector<Segment> segs;
  BigInt start = 0;
  for (const auto& r : p.runs()) {
    segs.push_back(Segment{start, r.multiplicity, Rational(r.value), 0, 0});
    start += r.multiplicity;
  }
  return SegmentedSequence(std::move(segs));
}

SegmentedSequence SegmentedSequence::from_dense(std::span<const BigInt> values) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    segs.push_back(Segment{BigInt(static_cast<unsigned long>(i)),
                           BigInt(static_cast<unsigned long>(j - i)), Rational(values[i]), 0, 0});
    i = j;
  }
  return SegmentedSequence(std::move(segs));
}

BigInt SegmentedSequence::length() const {
  return segments_.empty() ? BigInt(0) : segments_.back().start + segments_.back().length;
}

const Segment& SegmentedSequence::segment_for(const BigInt& index) const {
  if (index < 0 || index >= length())
    throw InvalidArgument("index_out_of_range", "index " + index.get_str() + " out of range");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), index,
                             [](const BigInt& i, const Segment& s) { return i < s.start; });
  return *std::prev(it);
}

BigInt SegmentedSequence::eval(const BigInt& index) const {
  const Segment& s = segment_for(index);
  BigInt v = exact_integer(s.at(index - s.start));
  if (auto it = overlay_.find(index); it != overlay_.end()) v += it->second;
  return v;
}

BigInt SegmentedSequence::sum() const {
  Rational total = 0;
  for (const auto& s : segments_)
    total += s.c0 * s.length + s.c1 * sum_k(s.length) + s.c2 * sum_k2(s.length);
  for (const auto& [idx, delta] : overlay_) total += delta;
  return exact_integer(total);
}

BigInt SegmentedSequence::weighted_sum() const {
  Rational total = 0;
  for (const auto& s : segments_) {
    const BigInt& n = s.length;
    Rational s1 = sum_k(n), s2 = sum_k2(n);
    Rational s3 = s1 * s1;
    Rational plain = s.c0 * n + s.c1 * s1 + s.c2 * s2;
    Rational shifted = s.c0 * s1 + s.c1 * s2 + s.c2 * s3;
    total += Rational(s.start) * plain + shifted;
  }
  for (const auto& [idx, delta] : overlay_) total += Rational(idx * delta);
  return exact_integer(total);
}

std::vector<SegmentedSequence::Piece> SegmentedSequence::pieces() const {
  std::vector<Piece> out;
  auto ov = overlay_.begin();
  for (const auto& s : segments_) {
    BigInt pos = s.start;
    BigInt end = s.start + s.length;
    while (pos < end) {
      if (ov != overlay_.end() && ov->first == pos) {
        out.push_back(Piece{pos, pos + 1, nullptr,
                            exact_integer(s.at(pos - s.start)) + ov->second});
        ++ov;
        ++pos;
        continue;
      }
      BigInt stop = end;
      if (ov != overlay_.end() && ov->first < end) stop = ov->first;
      out.push_back(Piece{pos, stop, &s, 0});
      pos = stop;
    }
  }
  return out;
}

// Within a polynomial piece the forward difference f(k+1) - f(k) =
// c1 + c2*(2k+1) is linear in k, so it is <= 0 on a range iff it is <= 0 at
// both ends of that range.
bool SegmentedSequence::is_partition() const {
  std::optional<BigInt> previous;
  for (const auto& p : pieces()) {
    BigInt first, last;
    if (p.segment == nullptr) {
      first = last = p.point_value;
    } else {
      const Segment& s = *p.segment;
      BigInt k0 = p.begin - s.start;
      BigInt k1 = p.end - 1 - s.start;
      first = exact_integer(s.at(k0));
      last = exact_integer(s.at(k1));
      if (k1 > k0) {
        Rational d_lo = s.c1 + s.c2 * (2 * k0 + 1);
        Rational d_hi = s.c1 + s.c2 * (2 * (k1 - 1) + 1);
        if (d_lo > 0 || d_hi > 0) return false;
      }
    }
    if (previous && *previous < first) return false;
    previous = last;
  }
  return !previous || *previous >= 0;
}

BigInt SegmentedSequence::positive_count() const {
  BigInt lo = 0, hi = length();  // first index with a non-positive value
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (eval(mid) > 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

BigInt SegmentedSequence::last_positive() const {
  BigInt n = positive_count();
  if (n == 0) throw InvalidArgument("empty_partition", "sequence has no positive entry");
  return eval(n - 1);
}

std::vector<BigInt> SegmentedSequence::materialize(std::size_t limit) const {
  BigInt n = length();
  if (n > BigInt(static_cast<unsigned long>(limit)))
    throw BudgetExceeded("sequence of length " + n.get_str() + " too long to materialize");
  std::vector<BigInt> out;
  out.reserve(n.get_ui());
  for (const auto& s : segments_)
    for (BigInt k = 0; k < s.length; ++k) out.push_back(exact_integer(s.at(k)));
  for (const auto& [idx, delta] : overlay_) out[idx.get_ui()] += delta;
  return out;
}

std::optional<Partition> SegmentedSequence::to_partition(std::size_t max_runs) const {
  if (!is_partition())
    throw InvalidArgument("invalid_partition", "sequence is not a partition");
  std::vector<Partition::Run> runs;
  for (const auto& p : pieces()) {
    if (p.segment == nullptr) {
      runs.push_back({p.point_value, 1});
    } else {
      const Segment& s = *p.segment;
      if (s.c1 == 0 && s.c2 == 0) {
        runs.push_back({exact_integer(s.c0), p.end - p.begin});
      } else {
        if (BigInt(static_cast<unsigned long>(max_runs - std::min(max_runs, runs.size()))) <
            p.end - p.begin)
          return std::nullopt;
        for (BigInt i = p.begin; i < p.end; ++i)
          runs.push_back({exact_integer(s.at(i - s.start)), 1});
      }
    }
    if (runs.size() > max_runs) return std::nullopt;
  }
  return Partition::from_runs(std::move(runs));
}

SegmentedSequence SegmentedSequence::concat(const SegmentedSequence& tail) const {
  BigInt offset = length();
  std::vector<Segment> segs = segments_;
  for (auto s : tail.segments_) {
    s.start += offset;
    segs.push_back(std::move(s));
  }
  std::map<BigInt, BigInt> ov = overlay_;
  for (const auto& [idx, delta] : tail.overlay_) ov[idx + offset] += delta;
  return SegmentedSequence(std::move(segs), std::move(ov));
}

SegmentedSequence SegmentedSequence::plus_constant(const BigInt& c) const {
  std::vector<Segment> segs = segments_;
  for (auto& s : segs) s.c0 += c;
  return SegmentedSequence(std::move(segs), overlay_);
}

SegmentedSequence SegmentedSequence::add_at(const BigInt& index, const BigInt& delta) const {
  std::map<BigInt, BigInt> ov = overlay_;
  ov[index] += delta;
  return SegmentedSequence(segments_, std::move(ov));
}

// Sequences compare as if padded with zeros to a common length. Between
// consecutive breakpoints of either sequence both sides are single
// quadratics, which agree on the interval iff they agree at three points.
bool operator==(const SegmentedSequence& a, const SegmentedSequence& b) {
  BigInt la = a.length(), lb = b.length();
  BigInt n = la < lb ? lb : la;
  auto value = [](const SegmentedSequence& s, const BigInt& len, const BigInt& i) {
    return i < len ? s.eval(i) : BigInt(0);
  };
  std::set<BigInt> cuts{BigInt(0), n, la, lb};
  for (const auto* seq : {&a, &b}) {
    for (const auto& s : seq->segments_) cuts.insert(s.start);
    for (const auto& [idx, delta] : seq->overlay_) {
      cuts.insert(idx);
      cuts.insert(idx + 1);
    }
  }
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    const BigInt& lo = *it;
    const BigInt& hi = *std::next(it);
    BigInt probe_end = hi - lo > 3 ? lo + 3 : hi;
    for (BigInt i = lo; i < probe_end; ++i)
      if (value(a, la, i) != value(b, lb, i)) return false;
  }
  return true;
}

SegmentedSequence SegmentedSequence::add_on_prefix(const BigInt& len, const BigInt& c) const {
  std::vector<Segment> segs;
  BigInt total = length();
  for (const auto& s : segments_) {
    BigInt end = s.start + s.length;
    if (end <= len) {
      Segment t = s;
      t.c0 += c;
      segs.push_back(t);
    } else if (s.start >= len) {
      segs.push_back(s);
    } else {
      BigInt k0 = len - s.start;
      Segment head = s;
      head.length = k0;
      head.c0 += c;
      Segment tail{len, end - len, s.at(k0), s.c1 + 2 * s.c2 * k0, s.c2};
      segs.push_back(head);
      segs.push_back(tail);
    }
  }
  if (len > total) segs.push_back(Segment{total, len - total, Rational(c), 0, 0});
  return SegmentedSequence(std::move(segs), overlay_);
}

ColumnTriple ColumnTriple::from_triple(const PartitionTriple& t) {
  return ColumnTriple{SegmentedSequence::from_partition(t.lambda().transpose()),
                      SegmentedSequence::from_partition(t.mu().transpose()),
                      SegmentedSequence::from_partition(t.pi().transpose())};
}

std::optional<PartitionTriple> ColumnTriple::to_triple(std::size_t max_runs) const {
  auto l = lambda_t.to_partition(max_runs);
  auto m = mu_t.to_partition(max_runs);
  auto p = pi_t.to_partition(max_runs);
  if (!l || !m || !p) return std::nullopt;
  return PartitionTriple(l->transpose(), m->transpose(), p->transpose());
}

}  // namespace kron
