#include "opframe/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "opframe/instance_io.hpp"

namespace opframe {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Instance load(const std::string& path) {
    try {
        return parse_instance(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + std::string(e.what()).substr(to_string(e.kind()).size() + 2));
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        if (!cur.empty()) parts.push_back(cur);
    }
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::BadParameter, "bad number '" + s + "' in " + what);
    return v;
}

FrameBounds parse_bounds(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw Error(ErrorKind::BadParameter, "--bounds expects A,B");
    return {parse_double(parts[0], "--bounds"), parse_double(parts[1], "--bounds")};
}

Complex parse_complex(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return {parse_double(s, "--alphas"), 0.0};
    return {parse_double(s.substr(0, colon), "--alphas"), parse_double(s.substr(colon + 1), "--alphas")};
}

std::vector<double> parse_weights(const std::string& text, std::size_t count, const std::string& what) {
    std::vector<double> w;
    for (const auto& part : split(text, ',')) w.push_back(parse_double(part, what));
    if (w.size() == 1) w.assign(count, w.front());
    if (w.size() != count) {
        throw Error(ErrorKind::BadParameter,
                    what + " needs 1 or " + std::to_string(count) + " values, got " + std::to_string(w.size()));
    }
    return w;
}

Dims parse_dims(const std::string& text) {
    const auto parts = split(text, 'x');
    if (parts.size() != 3) throw Error(ErrorKind::BadParameter, "dimension triple '" + text + "' is not dxnxm");
    Dims d;
    std::size_t* fields[] = {&d.d, &d.n, &d.m};
    for (std::size_t i = 0; i < 3; ++i) {
        const double v = parse_double(parts[i], "--dims");
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw Error(ErrorKind::BadParameter, "dimension triple '" + text + "' needs positive integers");
        }
        *fields[i] = static_cast<std::size_t>(v);
    }
    return d;
}

const OperatorFrame& family(const Instance& inst, const std::string& name) {
    const auto it = inst.families.find(name);
    if (it == inst.families.end()) {
        throw Error(ErrorKind::BadParameter, "instance has no family named '" + name + "'");
    }
    return it->second;
}

KOperator k_or_identity(const Instance& inst) {
    return inst.k ? *inst.k : KOperator{ModuleOperator::identity(inst.frame.shape())};
}

struct CertifyArgs {
    std::string theorem;
    std::string file;
    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 0.5;
    double mu = 0.5;
    std::size_t p = 1;
    int sign = 1;
    std::string bounds;
    std::string alphas;
    std::string alpha_w = "1";
    std::string beta_w = "1";
    std::size_t samples = 256;
};

Certificate certify(const CertifyArgs& a, const Instance& inst, std::uint64_t seed, const Tolerance& t) {
    const TheoremId id = theorem_from_string(a.theorem);
    std::optional<FrameBounds> bounds;
    if (!a.bounds.empty()) bounds = parse_bounds(a.bounds);
    const SamplingOptions sampling{a.samples, seed};
    const bool k_variant = id == TheoremId::MinConditionK || id == TheoremId::CombinationK ||
                           id == TheoremId::ExtensionK;
    if (k_variant && !inst.k) throw Error(ErrorKind::BadParameter, a.theorem + " needs a k_operator in the instance");
    const std::optional<KOperator> k = k_variant ? inst.k : std::nullopt;
    if (a.p < 1) throw Error(ErrorKind::BadParameter, "--p is 1-based");

    switch (id) {
    case TheoremId::BesselSumPlus:
    case TheoremId::BesselSumMinus: {
        int sign = id == TheoremId::BesselSumPlus ? 1 : -1;
        if (a.sign != 1 && a.sign != -1) throw Error(ErrorKind::BadParameter, "--sign must be 1 or -1");
        sign *= a.sign;
        return certify_bessel_sum(inst.frame, family(inst, "R"), sign, t, bounds);
    }
    case TheoremId::MinCondition:
    case TheoremId::MinConditionK: return certify_min_condition(inst.frame, family(inst, "R"), k, t, bounds);
    case TheoremId::Combination:
    case TheoremId::CombinationK: {
        std::vector<OperatorFrame> fams{inst.frame};
        for (const auto& [name, f] : inst.families) fams.push_back(f);
        std::vector<Complex> alphas;
        if (a.alphas.empty()) {
            alphas.assign(fams.size(), Complex(1.0, 0.0));
        } else {
            for (const auto& part : split(a.alphas, ',')) alphas.push_back(parse_complex(part));
        }
        if (alphas.size() != fams.size()) {
            throw Error(ErrorKind::CountMismatch, std::to_string(alphas.size()) + " coefficients for " +
                                                      std::to_string(fams.size()) + " families");
        }
        return certify_combination(fams, alphas, a.p - 1, k, t, CombinationOptions{1000, seed});
    }
    case TheoremId::Extension:
    case TheoremId::ExtensionK: {
        std::vector<OperatorFrame> ts{inst.frame};
        std::vector<OperatorFrame> rs{family(inst, "R1")};
        for (std::size_t i = 2; inst.families.count("T" + std::to_string(i)); ++i) {
            ts.push_back(family(inst, "T" + std::to_string(i)));
            rs.push_back(family(inst, "R" + std::to_string(i)));
        }
        return certify_extension(ts, rs, a.p - 1, a.lambda, k, t);
    }
    case TheoremId::Weighted: {
        const auto aw = parse_weights(a.alpha_w, inst.frame.point_count(), "--alpha-w");
        const auto bw = parse_weights(a.beta_w, inst.frame.point_count(), "--beta-w");
        return certify_weighted(inst.frame, family(inst, "R"), aw, bw, a.lambda, a.mu, k_or_identity(inst), sampling,
                                t, bounds);
    }
    case TheoremId::KPerturbation:
        return certify_k_perturbation(inst.frame, family(inst, "R"), k_or_identity(inst), a.alpha, a.beta, t, bounds,
                                      sampling);
    case TheoremId::KPerturbationCorollary:
        return certify_k_perturbation_corollary(inst.frame, family(inst, "R"), k_or_identity(inst), a.alpha, t,
                                                bounds, sampling);
    }
    throw Error(ErrorKind::BadParameter, "unhandled theorem");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continuous (K-)operator frames in Hilbert C*-modules: analysis and theorem certification",
                 "opframe"};
    app.require_subcommand(1);
    app.fallthrough();

    double tol_rel = Tolerance{}.rel;
    double tol_abs = Tolerance{}.abs_floor;
    std::string format = "text";
    std::uint64_t seed = 0;
    app.add_option("--tol-rel", tol_rel, "Relative tolerance")->capture_default_str();
    app.add_option("--tol-abs", tol_abs, "Absolute floor")->capture_default_str();
    app.add_option("--format", format, "Output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "Seed for sampling and campaigns")->capture_default_str();

    std::string analyze_file;
    auto* analyze = app.add_subcommand("analyze", "Frame bounds, classification and K-bounds");
    analyze->add_option("file", analyze_file, "Instance file")->required();

    CertifyArgs ca;
    auto* cert = app.add_subcommand("certify", "Certify one theorem on an instance");
    cert->add_option("theorem", ca.theorem, "Theorem id")->required();
    cert->add_option("file", ca.file, "Instance file")->required();
    cert->add_option("--alpha", ca.alpha, "alpha (k_perturbation)");
    cert->add_option("--beta", ca.beta, "beta (k_perturbation)");
    cert->add_option("--lambda", ca.lambda, "lambda (weighted, extension)");
    cert->add_option("--mu", ca.mu, "mu (weighted)");
    cert->add_option("--p", ca.p, "Reference family, 1-based (combination, extension)");
    cert->add_option("--sign", ca.sign, "Flip the sign of bessel_sum_* (1 or -1)");
    cert->add_option("--bounds", ca.bounds, "Override frame bounds A,B");
    cert->add_option("--alphas", ca.alphas, "Combination coefficients, comma separated, re or re:im");
    cert->add_option("--alpha-w", ca.alpha_w, "Weighted: alpha per point (one value or one per point)");
    cert->add_option("--beta-w", ca.beta_w, "Weighted: beta per point (one value or one per point)");
    cert->add_option("--samples", ca.samples, "Sampling budget for sampled hypotheses");

    std::size_t trials = 200;
    std::string dims_text;
    std::string theorems_text;
    std::size_t threads = 1;
    auto* camp = app.add_subcommand("campaign", "Seeded enclosure campaign over all certifiers");
    camp->add_option("--trials", trials, "Trials per theorem")->capture_default_str();
    camp->add_option("--dims", dims_text, "Dimension triples dxnxm, comma separated");
    camp->add_option("--theorems", theorems_text, "Theorem ids, comma separated (default all)");
    camp->add_option("--threads", threads, "Worker threads")->capture_default_str();

    std::string oracle_file;
    std::size_t oracle_samples = 2000;
    auto* orc = app.add_subcommand("oracle", "Cross-check pencil extrema against sampling");
    orc->add_option("file", oracle_file, "Instance file")->required();
    orc->add_option("--samples", oracle_samples, "Sample count")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Tolerance t{tol_rel, tol_abs};
        t.validate();
        const ReportFormat fmt = report_format_from_string(format);

        if (*analyze) {
            out << emit_analysis(analyze_instance(load(analyze_file), t), fmt);
            return kExitOk;
        }
        if (*cert) {
            const Certificate c = certify(ca, load(ca.file), seed, t);
            out << emit_certificate(c, fmt);
            if (!c.hypothesis_ok) return kExitHypothesis;
            return c.encloses() ? kExitOk : kExitEnclosure;
        }
        if (*camp) {
            CampaignConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.tolerance = t;
            cfg.threads = threads;
            if (!dims_text.empty()) {
                cfg.dims.clear();
                for (const auto& part : split(dims_text, ',')) cfg.dims.push_back(parse_dims(part));
            }
            if (!theorems_text.empty()) {
                cfg.theorems.clear();
                for (const auto& part : split(theorems_text, ',')) cfg.theorems.push_back(theorem_from_string(part));
            }
            const CampaignReport report = run_campaign(cfg);
            out << emit_report(report, fmt);
            if (report.enclosure_failures() > 0) {
                err << report.enclosure_failures() << " enclosure failure(s)\n";
                return kExitEnclosure;
            }
            if (report.unsatisfied_hypotheses() > 0 || report.errors() > 0) return kExitHypothesis;
            return kExitOk;
        }
        if (*orc) {
            const auto rows = oracle_instance(load(oracle_file), oracle_samples, seed, t);
            out << emit_oracle(rows, fmt);
            const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.agree; });
            return all ? kExitOk : kExitEnclosure;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace opframe
