#include "polylb/json_io.hpp"

namespace polylb {

Json to_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

Json to_json(const RealSet& s) {
    Json a = Json::array();
    for (const auto& p : s.parts()) a.push_back(to_json(p));
    return Json{{"parts", a}};
}

Json to_json(const Polynomial& p) { return Json(p.coeffs()); }

Json to_json(const ProbMeasure& mu) {
    if (mu.is_uniform()) return Json{{"uniform", to_json(mu.support_set())}};
    Json a = Json::array();
    for (const auto& at : mu.atoms()) a.push_back(Json::array({at.point, at.weight}));
    return Json{{"atoms", a}};
}

Json to_json(const LengthResult& r) {
    Json w = Json::array();
    for (const auto& i : r.witness) w.push_back(to_json(i));
    return Json{{"value", r.value}, {"witness", w}};
}

Json to_json(const EllEstimate& e) {
    Json j{{"n", e.n},
           {"value", e.value},
           {"stderr", e.stderr_},
           {"method", e.method == EllEstimate::Method::exact ? "exact" : "montecarlo"},
           {"degenerate", e.degenerate}};
    if (e.method == EllEstimate::Method::montecarlo) {
        j["samples"] = e.samples;
        j["seed"] = e.seed;
    }
    return j;
}

Json to_json(const ChildrenDecomposition& d) {
    Json kids = Json::array();
    for (const auto& c : d.children) kids.push_back(Json{{"interval", to_json(c.interval)}, {"mass", c.mass}});
    return Json{{"n", d.n},
                {"eps", d.eps},
                {"ell", to_json(d.ell)},
                {"nodes", d.nodes},
                {"threshold", d.threshold},
                {"sublevel_mass", d.sublevel_mass},
                {"sublevel_components", d.sublevel_components},
                {"sublevel_length", d.sublevel_length},
                {"children", kids}};
}

Json to_json(const ChildrenTree& t) {
    Json subs = Json::array();
    for (const auto& s : t.subtrees) subs.push_back(to_json(s));
    return Json{{"interval", to_json(t.interval)},
                {"mass", t.mass},
                {"order", t.order},
                {"decomposition", to_json(t.decomposition)},
                {"subtrees", subs}};
}

Json to_json(const Certificate& c) {
    Json j{{"kind", to_string(c.kind)},
           {"n", c.n},
           {"eps", c.eps},
           {"measure", to_json(c.mu)},
           {"K", to_json(c.K)},
           {"region", to_json(c.region)},
           {"j", c.j_range},
           {"constants", c.constants},
           {"constant", c.constant},
           {"scale", c.scale},
           {"length", c.length}};
    if (c.kind == CertificateKind::theorem1) {
        j["keps"] = to_json(c.keps);
        j["extra_degree"] = c.extra_degree;
    }
    j["oracle"] = Json{{"samples", c.oracle.samples},
                       {"seed", c.oracle.seed},
                       {"witness_coeffs", to_json(c.oracle.witness)}};
    return j;
}

Json to_json(const ValidationReport& r) {
    return Json{{"trials", r.trials},
                {"checked", r.checked},
                {"violations", r.violations},
                {"min_slack", r.min_slack},
                {"worst", to_json(r.worst)}};
}

Json to_json(const CounterexampleReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"m", row.m},
                            {"K", to_json(row.K)},
                            {"eps0_constant", row.eps0_constant},
                            {"eps0_interval", to_json(row.eps0_interval)},
                            {"candidates", row.candidates},
                            {"pipeline_constant", row.pipeline_constant},
                            {"pipeline_interval", to_json(row.pipeline_interval)}});
    return Json{{"n", r.n},
                {"pipeline_eps", r.pipeline_eps},
                {"eps0_strictly_decreasing", r.eps0_strictly_decreasing},
                {"pipeline_min", r.pipeline_min},
                {"rows", rows}};
}

Json to_json(const PlaneRegion& r) {
    Json cells = Json::array();
    for (const auto& c : r.columns)
        cells.push_back(Json{{"x0", c.x0}, {"dx", c.dx}, {"fiber", to_json(c.fiber)}});
    return Json{{"x_cells", cells}};
}

Json to_json(const RefinementResult& r) {
    Json cols = Json::array();
    for (const auto& pc : r.per_column) {
        Json c{{"column", pc.column}, {"kept", pc.kept}};
        if (pc.kept) {
            c["interval"] = to_json(pc.interval);
            c["constants"] = pc.constants;
        }
        cols.push_back(c);
    }
    return Json{{"n", r.n},
                {"eps", r.eps},
                {"area", r.original.area()},
                {"refined_area", r.refined.area()},
                {"c_mass", r.c_mass},
                {"c_ineq", r.c_ineq},
                {"keep_fraction", r.keep_fraction},
                {"refined", to_json(r.refined)},
                {"per_column", cols}};
}

Json to_json(const IntestReport& r) {
    return Json{{"trials", r.trials},
                {"checked", r.checked},
                {"violations", r.violations},
                {"min_slack", r.min_slack},
                {"negative_checked", r.negative_checked},
                {"negative_violations", r.negative_violations}};
}

Interval interval_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("interval must be [lo, hi]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

RealSet realset_from_json(const Json& j) {
    const Json& a = j.is_object() ? j.at("parts") : j;
    if (!a.is_array()) throw Error("set must be a list of [lo, hi] pairs");
    std::vector<Interval> parts;
    for (const auto& p : a) parts.push_back(interval_from_json(p));
    return RealSet::normalize(parts);
}

Polynomial polynomial_from_json(const Json& j) {
    if (!j.is_array()) throw Error("polynomial must be a coefficient list");
    const auto c = j.get<std::vector<double>>();
    if (static_cast<int>(c.size()) > kMaxDegree + 1) throw Error("polynomial degree exceeds the maximum");
    return Polynomial(c);
}

ProbMeasure measure_from_json(const Json& j) {
    if (j.is_array()) return ProbMeasure::uniform(realset_from_json(j));
    if (!j.is_object()) throw Error("measure must be an object or a set");
    if (j.contains("measure")) return measure_from_json(j.at("measure"));
    if (j.contains("parts")) return ProbMeasure::uniform(realset_from_json(j));
    if (j.contains("uniform")) return ProbMeasure::uniform(realset_from_json(j.at("uniform")));
    if (j.contains("atoms")) {
        std::vector<Atom> atoms;
        for (const auto& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2) throw Error("atom must be [point, weight]");
            atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
        }
        return ProbMeasure::atomic(std::move(atoms));
    }
    throw Error("measure needs \"uniform\" or \"atoms\"");
}

Certificate certificate_from_json(const Json& j) {
    Certificate c;
    c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    c.n = j.at("n").get<int>();
    c.eps = j.value("eps", 0.25);
    c.K = realset_from_json(j.at("K"));
    c.mu = j.contains("measure") ? measure_from_json(j.at("measure")) : ProbMeasure::uniform(c.K);
    c.region = realset_from_json(j.at("region"));
    c.j_range = j.at("j").get<std::vector<int>>();
    c.constants = j.at("constants").get<std::vector<double>>();
    if (c.constants.size() != c.j_range.size()) throw Error("\"j\" and \"constants\" differ in length");
    c.constant = j.value("constant", 0.0);
    c.scale = j.value("scale", 1.0);
    c.length = j.value("length", 0.0);
    if (j.contains("keps")) c.keps = realset_from_json(j.at("keps"));
    c.extra_degree = j.value("extra_degree", 0);
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        c.oracle.samples = o.value("samples", std::int64_t{0});
        c.oracle.seed = o.value("seed", std::uint64_t{0});
        if (o.contains("witness_coeffs")) c.oracle.witness = polynomial_from_json(o.at("witness_coeffs"));
    }
    return c;
}

PlaneRegion plane_region_from_json(const Json& j) {
    PlaneRegion r;
    for (const auto& c : j.at("x_cells"))
        r.columns.push_back({c.at("x0").get<double>(), c.at("dx").get<double>(), realset_from_json(c.at("fiber"))});
    return r;
}

}  // namespace polylb
