#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "kron/bigint.hpp"
#include "kron/oracle.hpp"
#include "kron/partition.hpp"
#include "kron/segmented.hpp"

namespace kron {

using Point = std::array<int, 3>;

// A finite set of distinct points with non-negative integer coordinates,
// kept sorted.
class PointSet {
 public:
  PointSet() = default;
  // Throws on negative coordinates or repeated points.
  explicit PointSet(std::vector<Point> points);

  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(const Point& p) const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> points_;
};

// Slice counts along the three axes. Entries are not required to be
// non-increasing.
struct Marginals {
  std::vector<int> x, y, z;
  friend bool operator==(const Marginals&, const Marginals&) = default;
};

// Trailing zeros trimmed.
Marginals marginals_of(const PointSet& p);
// (lambda^T, mu^T, pi^T).
Marginals marginals_of(const PartitionTriple& t);

struct CountBudget {
  std::size_t max_nodes = 200'000'000;
};

// Number of point sets with the given marginals.
BigInt count_t(const Marginals& m, CountBudget budget = {});
BigInt count_t(const PartitionTriple& t, CountBudget budget = {});
// Some point set with the given marginals, if one exists.
std::optional<PointSet> find_pointset(const Marginals& m, CountBudget budget = {});

// Number of pyramids with the given marginals.
BigInt count_p(const Marginals& m, CountBudget budget = {});
BigInt count_p(const PartitionTriple& t, CountBudget budget = {});

bool is_pyramid(const PointSet& p);

// Lattice points with x + y + z <= r - 1.
PointSet simplex(int r);
BigInt simplex_size(const BigInt& r);  // r(r+1)(r+2)/6
// Largest r with simplex_size(r) <= n.
BigInt simplex_radius(const BigInt& n);
// Sum of x + y + z over the points.
BigInt barycenter_diag(const PointSet& p);
// Smallest possible barycenter_diag of an n-point set.
BigInt p_of_n(const BigInt& n);

bool is_simplex_like(const PartitionTriple& t);
bool is_simplex_like(const ColumnTriple& t);

// Adjoins the box a x b x c below a simplex-like base.
PartitionTriple pedestal(const PartitionTriple& base, const BigInt& a, const BigInt& b,
                         const BigInt& c);
ColumnTriple pedestal(const ColumnTriple& base, const BigInt& a, const BigInt& b,
                      const BigInt& c);

struct PedestalWitness {
  PartitionTriple base;
  BigInt a, b, c;
};
std::optional<PedestalWitness> recognize_pedestalled(const PartitionTriple& t);

// d is indexed 0..2r; entries absent from the map are zero. Throws when the
// sum conditions fail or lambda^T is not non-increasing ("non_monotone").
ColumnTriple lattice_permutation_columns(const BigInt& r, const std::map<BigInt, BigInt>& d);
PartitionTriple lattice_permutation_triple(int r, const std::vector<BigInt>& d);

struct LatticeForm {
  BigInt r;
  std::vector<BigInt> d;
};
std::optional<LatticeForm> recognize_lattice_permutation_form(const PartitionTriple& t);

// Applies every raising operator E_{a',a} (a' < a, on each axis) to the wedge
// of the points and reports whether each summand vanishes because of a
// repeated factor.
bool check_highest_weight(const PointSet& p);

struct Bounds {
  BigInt p, t;
  std::optional<BigInt> k;  // absent when the oracle budget does not admit the triple
};
// Throws Error("internal_error") if p <= k <= t fails.
Bounds verify_bounds(const PartitionTriple& t, KroneckerOracle& oracle = default_oracle(),
                     CountBudget budget = {});

}  // namespace kron
