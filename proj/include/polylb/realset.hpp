#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace polylb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed interval [lo, hi]; lo == hi is a point.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double t) const { return lo <= t && t <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool is_point() const { return lo == hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals, sorted, with strictly positive
/// gaps between consecutive parts.
class RealSet {
public:
    RealSet() = default;

    /// Sorts and merges overlapping or touching intervals. Throws on
    /// non-finite endpoints or lo > hi.
    static RealSet normalize(std::span<const Interval> intervals);
    static RealSet normalize(std::initializer_list<Interval> intervals) {
        return normalize(std::span<const Interval>(intervals.begin(), intervals.size()));
    }
    static RealSet single(Interval i) { return normalize({i}); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    double measure() const;
    Interval hull() const;
    bool contains(double t) const;
    bool contains(const RealSet& other) const;

    /// Bounded open gaps between consecutive parts, as [hi_k, lo_{k+1}].
    std::vector<Interval> gaps() const;

    RealSet intersect(const Interval& i) const;
    RealSet intersect(const RealSet& other) const;
    RealSet unite(const RealSet& other) const;

    /// Image under t -> scale * t + shift (scale > 0).
    RealSet affine(double scale, double shift) const;

    friend bool operator==(const RealSet&, const RealSet&) = default;

private:
    std::vector<Interval> parts_;
};

inline double measure(const RealSet& s) { return s.measure(); }

/// K together with the gap end-segments K_L and K_R. Inside each bounded gap
/// (a, b) of K the added pieces are [a, (a + eps*b)/(1+eps)] and
/// [(b + eps*a)/(1+eps), b]. Requires 0 < eps < 1 and K inside hull.
RealSet k_epsilon(const RealSet& K, const Interval& hull, double eps);

/// Membership in K_eps read straight off the distance definition: t lies in
/// a bounded gap and its distance to K on one side is at most eps times the
/// distance on the other side.
bool in_k_epsilon_by_distance(const RealSet& K, double t, double eps);

}  // namespace polylb
