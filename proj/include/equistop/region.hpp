#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "equistop/grid.hpp"

namespace equistop {

/// Closed interval; lo = -inf or hi = +inf mark unbounded ends.
struct Interval {
    double lo = 0;
    double hi = 0;
    bool operator==(const Interval&) const = default;
};

/// Canonical finite union of disjoint closed intervals.
///
/// Invariants: intervals sorted by lo, pairwise disjoint, gaps of positive
/// length (touching or overlapping inputs are merged).  Theoretical half-open
/// sets like (0,a] on the state space (0,inf) are represented with the lower
/// marker 0; hitting logic never starts a path on the open boundary, so the
/// distinction is immaterial here.
class RegionSet {
public:
    RegionSet() = default;  // empty region

    static RegionSet empty() { return RegionSet(); }
    static RegionSet all();
    static RegionSet from_intervals(std::vector<Interval> intervals);
    static RegionSet interval(double lo, double hi);

    bool is_empty() const { return intervals_.empty(); }
    bool is_all() const;
    bool contains(double x) const;

    RegionSet intersect(const RegionSet& other) const;
    RegionSet unite(const RegionSet& other) const;

    /// Flanking region endpoints (ell_R(x), r_R(x)) for x outside the region;
    /// space_lo / space_hi substitute when no region point exists on a side.
    /// Throws std::invalid_argument when x is inside the region.
    std::pair<double, double> neighbors(double x, double space_lo,
                                        double space_hi) const;

    std::span<const Interval> intervals() const { return intervals_; }

    /// Merges runs of true cells into closed intervals; interior runs of
    /// false cells no longer than merge_gap are absorbed.
    static RegionSet from_mask(const Grid& grid, const std::vector<bool>& mask,
                               int merge_gap = 1);
    std::vector<bool> to_mask(const Grid& grid) const;

    /// Text form "[1,2]∪[4,inf)"; the empty set prints "empty" and the whole
    /// line "all".  parse accepts '(' '[' interchangeably, "u"/"U"/"∪" as the
    /// union separator, and arithmetic expressions over the supplied macros.
    std::string to_string() const;
    static RegionSet parse(const std::string& text,
                           const std::map<std::string, double>& macros = {});

    bool operator==(const RegionSet& other) const = default;

private:
    std::vector<Interval> intervals_;
};

}  // namespace equistop
