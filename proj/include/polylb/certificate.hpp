#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polylb/measure.hpp"
#include "polylb/polynomial.hpp"

namespace polylb {

enum class CertificateKind { theorem0, theorem1, theorem2, corollary };

std::string to_string(CertificateKind k);
CertificateKind certificate_kind_from_string(const std::string& s);

struct OracleMeta {
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    /// Worst polynomial found over all certified indices.
    Polynomial witness;
};

/// A region together with empirically certified constants. For kind
///   theorem0, corollary:  int |p| dmu >= c_j * scale^j * sup_region |p^{(j)}|
///   theorem2:             int |p| dmu >= c_0 * sup_region |p|
///   theorem1:             int |f| dmu >= c * length^n * inf_{keps} |f^{(n)}|
/// over polynomials p of degree <= n (theorem1: degree <= n + extra_degree
/// with f^{(n)} of one sign on the hull of K). For theorem0 with mu uniform
/// on K and scale = |K| the first line is int_K |p| >= c_j |K|^{j+1} sup.
struct Certificate {
    CertificateKind kind = CertificateKind::theorem0;
    int n = 1;
    double eps = 0.25;
    ProbMeasure mu = ProbMeasure::uniform(RealSet::single({0.0, 1.0}));
    RealSet K;
    RealSet region;
    std::vector<int> j_range;
    /// constants[i] certifies index j_range[i].
    std::vector<double> constants;
    /// Smallest of `constants`.
    double constant = 0.0;
    double scale = 1.0;
    /// |mu|_{n,eps} (theorem1, corollary).
    double length = 0.0;
    /// K_eps (theorem1).
    RealSet keps;
    int extra_degree = 0;
    OracleMeta oracle;

    double constant_for(int j) const;
};

}  // namespace polylb
