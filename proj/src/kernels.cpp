#include "polylb/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

#include "polylb/peano.hpp"
#include "polylb/rng.hpp"

namespace polylb::kernels {

namespace {

constexpr std::int64_t kChunk = 4096;

struct MomentSums {
    double n = 0, d = 0, nn = 0, dd = 0, nd = 0;
};

MomentSums moment_chunk(const ProbMeasure& mu, int n, std::int64_t begin, std::int64_t end,
                        std::uint64_t seed) {
    MomentSums s;
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = begin; i < end; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        for (auto& v : x) v = mu.quantile(rng.uniform());
        const double den = std::abs(vandermonde(std::span<const double>(x.data(), n)));
        double tail = 1.0;
        for (int k = 0; k < n; ++k) tail *= x[n] - x[k];
        const double num = den * std::abs(tail);
        s.n += num;
        s.d += den;
        s.nn += num * num;
        s.dd += den * den;
        s.nd += num * den;
    }
    return s;
}

VandermondeMoments finish(const std::vector<MomentSums>& chunks, std::int64_t samples) {
    MomentSums t;
    for (const auto& c : chunks) {
        t.n += c.n;
        t.d += c.d;
        t.nn += c.nn;
        t.dd += c.dd;
        t.nd += c.nd;
    }
    VandermondeMoments m;
    m.samples = samples;
    if (samples == 0) return m;
    const double S = static_cast<double>(samples);
    m.mean_num = t.n / S;
    m.mean_den = t.d / S;
    m.var_num = std::max(0.0, t.nn / S - m.mean_num * m.mean_num);
    m.var_den = std::max(0.0, t.dd / S - m.mean_den * m.mean_den);
    m.cov = t.nd / S - m.mean_num * m.mean_den;
    return m;
}

std::int64_t chunk_count(std::int64_t total) { return (total + kChunk - 1) / kChunk; }

bool hit_less(const ScanHit& a, const ScanHit& b) {
    return a.value < b.value || (a.value == b.value && a.index < b.index);
}

void keep_best(std::vector<ScanHit>& hits, int keep) {
    std::sort(hits.begin(), hits.end(), hit_less);
    if (static_cast<int>(hits.size()) > keep) hits.resize(keep);
}

void scan_range(int dim, std::int64_t begin, std::int64_t end, std::uint64_t seed,
                const ObjectiveFn& f, int keep, std::vector<ScanHit>& out) {
    for (std::int64_t i = begin; i < end; ++i) {
        auto p = sphere_point(dim, seed, i);
        const double v = f(p);
        if (!std::isfinite(v)) continue;
        if (static_cast<int>(out.size()) < keep || hit_less({v, i, {}}, out.back())) {
            out.push_back({v, i, std::move(p)});
            keep_best(out, keep);
        }
    }
}

struct SlackSums {
    std::int64_t checked = 0, violations = 0, argmin = -1;
    double min_slack = std::numeric_limits<double>::infinity();
};

void batch_range(std::int64_t begin, std::int64_t end, double tol,
                 const std::function<double(std::int64_t)>& slack_of, SlackSums& s) {
    for (std::int64_t i = begin; i < end; ++i) {
        const double v = slack_of(i);
        if (std::isnan(v)) continue;
        ++s.checked;
        if (v < -tol) ++s.violations;
        if (v < s.min_slack) {
            s.min_slack = v;
            s.argmin = i;
        }
    }
}

BatchStats merge(const std::vector<SlackSums>& parts, std::int64_t trials) {
    BatchStats b;
    b.trials = trials;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : parts) {
        b.checked += p.checked;
        b.violations += p.violations;
        if (p.min_slack < best) {
            best = p.min_slack;
            b.argmin = p.argmin;
        }
    }
    b.min_slack = b.checked > 0 ? best : 0.0;
    return b;
}

}  // namespace

VandermondeMoments mc_vandermonde_moments(const ProbMeasure& mu, int n, std::int64_t samples,
                                          std::uint64_t seed) {
    const std::int64_t chunks = chunk_count(samples);
    std::vector<MomentSums> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c)
        parts[c] = moment_chunk(mu, n, c * kChunk, std::min(samples, (c + 1) * kChunk), seed);
    return finish(parts, samples);
}

VandermondeMoments mc_vandermonde_moments_serial(const ProbMeasure& mu, int n,
                                                 std::int64_t samples, std::uint64_t seed) {
    const std::int64_t chunks = chunk_count(samples);
    std::vector<MomentSums> parts(static_cast<std::size_t>(chunks));
    for (std::int64_t c = 0; c < chunks; ++c)
        parts[c] = moment_chunk(mu, n, c * kChunk, std::min(samples, (c + 1) * kChunk), seed);
    return finish(parts, samples);
}

std::vector<double> sphere_point(int dim, std::uint64_t seed, std::int64_t index) {
    CounterRng rng(seed, static_cast<std::uint64_t>(index));
    std::vector<double> p(static_cast<std::size_t>(dim));
    double norm = 0.0;
    while (norm == 0.0) {
        norm = 0.0;
        for (auto& v : p) {
            v = rng.normal();
            norm += v * v;
        }
    }
    norm = std::sqrt(norm);
    for (auto& v : p) v /= norm;
    return p;
}

std::vector<ScanHit> sphere_scan(int dim, std::int64_t budget, std::uint64_t seed,
                                 const ObjectiveFn& f, int keep) {
    const std::int64_t chunks = chunk_count(budget);
    std::vector<std::vector<ScanHit>> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c)
        scan_range(dim, c * kChunk, std::min(budget, (c + 1) * kChunk), seed, f, keep, parts[c]);
    std::vector<ScanHit> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    keep_best(all, keep);
    return all;
}

std::vector<ScanHit> sphere_scan_serial(int dim, std::int64_t budget, std::uint64_t seed,
                                        const ObjectiveFn& f, int keep) {
    std::vector<ScanHit> all;
    scan_range(dim, 0, budget, seed, f, keep, all);
    return all;
}

BatchStats evaluate_batch(std::int64_t trials, double tolerance,
                          const std::function<double(std::int64_t)>& slack_of) {
    const std::int64_t chunks = chunk_count(trials);
    std::vector<SlackSums> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c)
        batch_range(c * kChunk, std::min(trials, (c + 1) * kChunk), tolerance, slack_of, parts[c]);
    return merge(parts, trials);
}

BatchStats evaluate_batch_serial(std::int64_t trials, double tolerance,
                                 const std::function<double(std::int64_t)>& slack_of) {
    SlackSums s;
    batch_range(0, trials, tolerance, slack_of, s);
    return merge({s}, trials);
}

}  // namespace polylb::kernels
