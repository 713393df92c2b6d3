#include "polylb/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "polylb/json_io.hpp"
#include "polylb/rng.hpp"

namespace polylb {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t upto = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

std::optional<Json> load_input(const RunConfig& cfg) {
    if (!cfg.json_text.empty()) return parse_text(cfg.json_text);
    if (!cfg.input_path.empty()) return parse_text(read_file(cfg.input_path));
    return std::nullopt;
}

const ProbMeasure& unit_uniform() {
    static const ProbMeasure mu = ProbMeasure::uniform(RealSet::single({0.0, 1.0}));
    return mu;
}

RealSet set_of(const Json& j) {
    if (j.is_object() && j.contains("K")) return realset_from_json(j.at("K"));
    if (j.is_object() && (j.contains("uniform") || j.contains("measure"))) return measure_from_json(j).support();
    return realset_from_json(j);
}

// Constants for j = 0..n (or the listed j) on a caller-chosen region.
Certificate certify_region(const Json& in, int n, double eps, const OracleBudget& oracle) {
    Certificate c;
    c.kind = CertificateKind::theorem0;
    c.n = n;
    c.eps = eps;
    c.K = realset_from_json(in.at("K"));
    c.region = realset_from_json(in.at("region"));
    if (in.contains("measure")) {
        c.mu = measure_from_json(in.at("measure"));
        c.scale = in.value("scale", 1.0);
    } else {
        c.mu = ProbMeasure::uniform(c.K);
        c.scale = c.K.measure();
    }
    std::vector<int> js;
    if (in.contains("j")) {
        js = in.at("j").get<std::vector<int>>();
    } else {
        for (int j = 0; j <= n; ++j) js.push_back(j);
    }
    c.oracle.seed = oracle.seed;
    c.oracle.samples = oracle.samples;
    double worst = std::numeric_limits<double>::infinity();
    for (int j : js) {
        if (j < 0 || j > n) throw InputError("j out of range");
        RatioProblem prob{c.K, c.mu, c.region, n, j, c.scale};
        const auto r = certify_ratio(prob, oracle.samples, derive_seed(oracle.seed, static_cast<std::uint64_t>(j)));
        c.j_range.push_back(j);
        c.constants.push_back(r.min_ratio);
        if (r.min_ratio < worst) {
            worst = r.min_ratio;
            c.oracle.witness = r.witness;
        }
    }
    c.constant = worst;
    return c;
}

Json kernel_command(const RunConfig& cfg, const std::optional<Json>& in, std::string& csv) {
    std::vector<double> nodes = cfg.nodes;
    if (nodes.empty() && in) nodes = in->at("nodes").get<std::vector<double>>();
    if (nodes.size() < 2) throw InputError("kernel needs at least two nodes");
    if (static_cast<int>(nodes.size()) > kMaxDegree + 1) throw InputError("too many nodes");
    if (cfg.samples_per_piece < 1) throw InputError("samples-per-piece must be positive");
    const PeanoKernel psi = peano_kernel(NodeSet(nodes));
    const auto& t = psi.nodes().nodes();

    Json pieces = Json::array();
    for (const auto& p : psi.pieces()) pieces.push_back(to_json(p));
    Json samples = Json::array();
    std::ostringstream c;
    c.precision(17);
    c << "s,psi\n";
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        const int last = k + 2 == t.size() ? cfg.samples_per_piece : cfg.samples_per_piece - 1;
        for (int i = 0; i <= last; ++i) {
            const double s = i == cfg.samples_per_piece ? t[k + 1] : t[k] + (t[k + 1] - t[k]) * i / cfg.samples_per_piece;
            samples.push_back(Json::array({s, psi(s)}));
            c << s << ',' << psi(s) << '\n';
        }
    }
    csv = c.str();
    return Json{{"nodes", t}, {"order", psi.order()}, {"integral", psi.integral()}, {"pieces", pieces},
                {"samples", samples}};
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw InputError("--eps must lie in (0, 1)");
        if (cfg.n < 1 || cfg.n > kMaxDegree) throw InputError("--n must lie in [1, 12]");
        if (cfg.budget < 1000) throw InputError("--budget must be at least 1000");
        if (cfg.mc_samples < 1) throw InputError("--mc-samples must be positive");
        if (cfg.trials < 0) throw InputError("--trials must be nonnegative");

        const auto in = load_input(cfg);
        const OracleBudget oracle{cfg.budget, cfg.seed};
        const MCBudget mc{cfg.mc_samples, cfg.seed, MCBudget{}.exact_limit};
        auto measure = [&] { return in ? measure_from_json(*in) : unit_uniform(); };
        auto require = [&]() -> const Json& {
            if (!in) throw InputError(cfg.command + " needs --input or --json");
            return *in;
        };

        Json result;
        std::string csv;
        int code = kExitOk;
        const std::string& cmd = cfg.command;
        if (cmd == "kernel") {
            result = kernel_command(cfg, in, csv);
        } else if (cmd == "lnorm") {
            const auto r = length_n_eps(measure(), cfg.n, cfg.eps);
            result = Json{{"n", cfg.n}, {"eps", cfg.eps}};
            result.update(to_json(r));
        } else if (cmd == "ell") {
            result = to_json(ell_n(measure(), cfg.n, mc));
        } else if (cmd == "keps") {
            const RealSet K = in ? set_of(*in) : RealSet::single({0.0, 1.0});
            const Interval hull = in && in->is_object() && in->contains("hull") ? interval_from_json(in->at("hull"))
                                                                              : K.hull();
            result = Json{{"eps", cfg.eps},
                          {"K", to_json(K)},
                          {"hull", to_json(hull)},
                          {"keps", to_json(k_epsilon(K, hull, cfg.eps))}};
        } else if (cmd == "children") {
            const auto tree = children_tree(measure(), cfg.n, cfg.eps, mc);
            Json leaves = Json::array();
            for (const auto& l : tree.leaves())
                leaves.push_back(Json{{"interval", to_json(l.interval)}, {"mass", l.mass}});
            result = Json{{"n", cfg.n}, {"eps", cfg.eps}, {"leaves", leaves}, {"tree", to_json(tree)}};
        } else if (cmd == "interval") {
            const CertificateKind kind = certificate_kind_from_string(cfg.kind);
            if (kind == CertificateKind::theorem0) {
                result = to_json(theorem0_pipeline(in ? set_of(*in) : RealSet::single({0.0, 1.0}), cfg.n, cfg.eps,
                                                   oracle, mc));
            } else {
                const ProbMeasure mu = measure();
                const RealSet K = in && in->is_object() && in->contains("K") ? realset_from_json(in->at("K"))
                                                                            : mu.support();
                Certificate c;
                if (kind == CertificateKind::theorem2)
                    c = theorem2_set(mu, K, cfg.n, cfg.eps, oracle, mc);
                else if (kind == CertificateKind::corollary)
                    c = corollary_interval(mu, K, cfg.n, cfg.eps, oracle, mc);
                else
                    c = theorem1_certificate(mu, K, cfg.n, cfg.eps, oracle);
                result = to_json(c);
            }
        } else if (cmd == "certify") {
            result = to_json(certify_region(require(), cfg.n, cfg.eps, oracle));
        } else if (cmd == "validate") {
            const auto rep = validate_inequality(certificate_from_json(require()), cfg.trials, cfg.seed);
            result = to_json(rep);
            if (rep.violations > 0) code = kExitViolation;
        } else if (cmd == "search-counterexample") {
            const auto rep = search_counterexample(cfg.n, cfg.family_size, cfg.seed, cfg.budget, cfg.eps);
            result = to_json(rep);
            std::ostringstream c;
            c.precision(17);
            c << "m,eps0_constant,pipeline_constant\n";
            for (const auto& r : rep.rows) c << r.m << ',' << r.eps0_constant << ',' << r.pipeline_constant << '\n';
            csv = c.str();
        } else if (cmd == "refine2d") {
            const auto res = refine(plane_region_from_json(require()), cfg.n, cfg.eps, oracle, mc);
            const auto rep = validate_intest(res, cfg.trials, cfg.seed);
            result = Json{{"refinement", to_json(res)}, {"intest", to_json(rep)}};
            std::ostringstream c;
            c.precision(17);
            write_refinement_csv(c, res);
            csv = c.str();
            if (rep.violations > 0) code = kExitViolation;
        } else {
            throw InputError("unknown command: " + cmd);
        }

        const std::string text = result.dump(2) + "\n";
        if (cfg.output_path.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.output_path, std::ios::binary);
            if (!f) throw InputError("cannot write " + cfg.output_path);
            f << text;
        }
        if (!cfg.csv_path.empty()) {
            std::ofstream f(cfg.csv_path, std::ios::binary);
            if (!f) throw InputError("cannot write " + cfg.csv_path);
            f << csv;
        }
        return code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitInput;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lower bounds for polynomials on sets of positive measure"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string nodes_text;

    const std::pair<const char*, const char*> commands[] = {
        {"kernel", "Peano kernel of a node set"},
        {"lnorm", "|mu|_{n,eps}: shortest n intervals carrying mass 1 - eps"},
        {"ell", "l_n(mu) from Vandermonde moments"},
        {"keps", "K enlarged by the eps gap end-segments"},
        {"children", "iterated (n, eps)-children of a measure"},
        {"interval", "interval or set with certified constants"},
        {"certify", "certified constants for a given region"},
        {"validate", "re-check a certificate on random polynomials"},
        {"search-counterexample", "eps = 0 decay on a mass-imbalanced family"},
        {"refine2d", "fiberwise refinement of a planar region"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-i,--input", cfg.input_path, "JSON input file");
        sub->add_option("--json", cfg.json_text, "inline JSON input");
        sub->add_option("-o,--output", cfg.output_path, "write JSON here instead of stdout");
        sub->add_option("--emit-csv", cfg.csv_path, "also write plot-ready CSV");
        sub->add_option("-n,--n", cfg.n, "degree / order");
        sub->add_option("--eps", cfg.eps, "mass fraction allowed to be lost");
        sub->add_option("--seed", cfg.seed, "64-bit seed");
        sub->add_option("--budget", cfg.budget, "sphere samples per certified constant");
        sub->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples for l_n");
        sub->add_option("--trials", cfg.trials, "validation trials");
        sub->add_option("--family-size", cfg.family_size, "members of the counterexample family");
        sub->add_option("--kind", cfg.kind, "theorem0 | theorem1 | theorem2 | corollary");
        sub->add_option("--nodes", nodes_text, "comma-separated kernel nodes");
        sub->add_option("--samples-per-piece", cfg.samples_per_piece, "kernel samples per node interval");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    std::stringstream ss(nodes_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            cfg.nodes.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            err << "input error: bad node value '" << item << "'\n";
            return kExitInput;
        }
    }
    return run(cfg, out, err);
}

}  // namespace polylb
