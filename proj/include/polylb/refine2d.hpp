#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "polylb/bounds.hpp"

namespace polylb {

/// One vertical strip [x0, x0 + dx] x fiber.
struct Column {
    double x0 = 0.0;
    double dx = 1.0;
    RealSet fiber;
};

/// Omega as a union of columns. The flow is vertical translation, so the
/// integral curves through a column are its vertical lines.
struct PlaneRegion {
    std::vector<Column> columns;

    double area() const;
    /// Total width of the columns with a nonempty fiber.
    double width() const;
};

struct ColumnRefinement {
    std::size_t column = 0;
    bool kept = false;
    /// Theorem-0 interval of the fiber (kept columns only).
    Interval interval;
    std::vector<double> constants;  // c_j, j = 0..n
};

struct RefinementResult {
    int n = 1;
    double eps = 0.25;
    PlaneRegion original;
    PlaneRegion refined;
    /// area(refined) >= c_mass * area(original).
    double c_mass = 0.0;
    /// Smallest certified c_j over all kept columns.
    double c_ineq = 0.0;
    /// Fibers shorter than keep_fraction * area / width are dropped.
    double keep_fraction = 0.5;
    std::vector<ColumnRefinement> per_column;
};

RefinementResult refine(const PlaneRegion& omega, int n, double eps, const OracleBudget& oracle = {},
                        const MCBudget& mc = {});

struct IntestReport {
    std::int64_t trials = 0;
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    double min_slack = 0.0;
    /// Same draws with s outside the refined fiber; violations are expected.
    std::int64_t negative_checked = 0;
    std::int64_t negative_violations = 0;
};

/// For random (column, s, f): int |f(t)| chi_K(t + s) dt >= max_j c_j |K|^{j+1} |f^{(j)}(0)|
/// with s in the refined fiber and f of degree <= n.
IntestReport validate_intest(const RefinementResult& result, std::int64_t trials, std::uint64_t seed);

/// One row per column: x0, dx, kept, fiber and refined measures, interval.
void write_refinement_csv(std::ostream& os, const RefinementResult& result);

}  // namespace polylb
