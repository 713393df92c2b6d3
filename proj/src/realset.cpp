#include "polylb/realset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace polylb {

RealSet RealSet::normalize(std::span<const Interval> intervals) {
    std::vector<Interval> v(intervals.begin(), intervals.end());
    for (const auto& i : v) {
        if (!std::isfinite(i.lo) || !std::isfinite(i.hi))
            throw Error("interval endpoints must be finite");
        if (i.lo > i.hi)
            throw Error("interval has lo > hi: [" + std::to_string(i.lo) + ", " +
                        std::to_string(i.hi) + "]");
    }
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    RealSet out;
    for (const auto& i : v) {
        if (!out.parts_.empty() && i.lo <= out.parts_.back().hi) {
            out.parts_.back().hi = std::max(out.parts_.back().hi, i.hi);
        } else {
            out.parts_.push_back(i);
        }
    }
    return out;
}

double RealSet::measure() const {
    double m = 0.0;
    for (const auto& p : parts_) m += p.length();
    return m;
}

Interval RealSet::hull() const {
    if (parts_.empty()) throw Error("hull of empty set");
    return {parts_.front().lo, parts_.back().hi};
}

bool RealSet::contains(double t) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), t,
                               [](double x, const Interval& i) { return x < i.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(t);
}

bool RealSet::contains(const RealSet& other) const {
    for (const auto& p : other.parts_) {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), p.lo,
                                   [](double x, const Interval& i) { return x < i.lo; });
        if (it == parts_.begin() || !std::prev(it)->contains(p)) return false;
    }
    return true;
}

std::vector<Interval> RealSet::gaps() const {
    std::vector<Interval> g;
    for (std::size_t k = 0; k + 1 < parts_.size(); ++k)
        g.push_back({parts_[k].hi, parts_[k + 1].lo});
    return g;
}

RealSet RealSet::intersect(const Interval& i) const {
    RealSet out;
    for (const auto& p : parts_) {
        const double lo = std::max(p.lo, i.lo);
        const double hi = std::min(p.hi, i.hi);
        if (lo <= hi) out.parts_.push_back({lo, hi});
    }
    return out;
}

RealSet RealSet::intersect(const RealSet& other) const {
    RealSet out;
    std::size_t a = 0, b = 0;
    while (a < parts_.size() && b < other.parts_.size()) {
        const auto& p = parts_[a];
        const auto& q = other.parts_[b];
        const double lo = std::max(p.lo, q.lo);
        const double hi = std::min(p.hi, q.hi);
        if (lo <= hi) out.parts_.push_back({lo, hi});
        if (p.hi < q.hi) ++a; else ++b;
    }
    return out;
}

RealSet RealSet::unite(const RealSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return normalize(all);
}

RealSet RealSet::affine(double scale, double shift) const {
    if (!(scale > 0.0)) throw Error("affine map needs a positive scale");
    RealSet out;
    out.parts_.reserve(parts_.size());
    for (const auto& p : parts_) out.parts_.push_back({scale * p.lo + shift, scale * p.hi + shift});
    return out;
}

RealSet k_epsilon(const RealSet& K, const Interval& hull, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error("k_epsilon requires 0 < eps < 1");
    if (!K.empty() && !hull.contains(K.hull())) throw Error("K is not contained in the hull");
    std::vector<Interval> pieces(K.parts().begin(), K.parts().end());
    for (const auto& g : K.gaps()) {
        const double a = g.lo, b = g.hi;
        pieces.push_back({a, (a + eps * b) / (1.0 + eps)});
        pieces.push_back({(b + eps * a) / (1.0 + eps), b});
    }
    return RealSet::normalize(pieces);
}

bool in_k_epsilon_by_distance(const RealSet& K, double t, double eps) {
    if (K.contains(t)) return true;
    // distance to K going right / left; infinite when K has no point there
    double right = std::numeric_limits<double>::infinity();
    double left = std::numeric_limits<double>::infinity();
    for (const auto& p : K.parts()) {
        if (p.lo >= t) right = std::min(right, p.lo - t);
        if (p.hi <= t) left = std::min(left, t - p.hi);
    }
    if (!std::isfinite(right) || !std::isfinite(left)) return false;
    return right <= eps * left || left <= eps * right;
}

}  // namespace polylb
