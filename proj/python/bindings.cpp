#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>

#include "opframe/cli.hpp"
#include "opframe/instance_io.hpp"

namespace py = pybind11;
using namespace opframe;

namespace {

OperatorFrame frame_from(const std::vector<double>& weights, const std::vector<CMatrix>& ops, std::size_t d,
                         std::size_t n) {
    std::vector<ModuleOperator> mods;
    for (const auto& m : ops) mods.emplace_back(ModuleShape{d, n}, m);
    return OperatorFrame(MeasureSpace(weights), std::move(mods));
}

py::tuple pencil_tuple(const PencilResult& r) { return py::make_tuple(r.value, r.unbounded, r.extremal); }

}  // namespace

PYBIND11_MODULE(_opframe, m) {
    m.doc() = "Continuous (K-)operator frames in Hilbert C*-modules";

    py::register_exception<Error>(m, "Error");

    m.def(
        "pencil_sup",
        [](const CMatrix& P, const CMatrix& Q, double rel, double abs_floor) {
            return pencil_tuple(pencil_sup(AlgebraElement(P), AlgebraElement(Q), Tolerance{rel, abs_floor}));
        },
        py::arg("P"), py::arg("Q"), py::arg("rel") = Tolerance{}.rel, py::arg("abs_floor") = Tolerance{}.abs_floor,
        "sup v*Pv / v*Qv as (value, unbounded, extremal vector).");
    m.def(
        "pencil_inf",
        [](const CMatrix& P, const CMatrix& Q, double rel, double abs_floor) {
            return pencil_tuple(pencil_inf(AlgebraElement(P), AlgebraElement(Q), Tolerance{rel, abs_floor}));
        },
        py::arg("P"), py::arg("Q"), py::arg("rel") = Tolerance{}.rel, py::arg("abs_floor") = Tolerance{}.abs_floor,
        "inf v*Pv / v*Qv as (value, unbounded, extremal vector).");

    m.def(
        "frame_gram",
        [](const std::vector<double>& w, const std::vector<CMatrix>& ops, std::size_t d, std::size_t n) {
            return frame_gram(frame_from(w, ops, d, n)).entries();
        },
        py::arg("weights"), py::arg("operators"), py::arg("algebra_dim"), py::arg("module_rank"));
    m.def(
        "frame_bounds",
        [](const std::vector<double>& w, const std::vector<CMatrix>& ops, std::size_t d, std::size_t n) {
            const FrameBounds b = optimal_bounds(frame_from(w, ops, d, n));
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("weights"), py::arg("operators"), py::arg("algebra_dim"), py::arg("module_rank"),
        "Optimal frame bounds (lambda_min, lambda_max) of the Gram matrix.");
    m.def(
        "k_frame_bounds",
        [](const std::vector<double>& w, const std::vector<CMatrix>& ops, const CMatrix& k, std::size_t d,
           std::size_t n) {
            const KFrameBounds b = k_frame_bounds(frame_from(w, ops, d, n), KOperator{ModuleOperator({d, n}, k)});
            return py::make_tuple(b.bounds.lower, b.bounds.upper, b.is_k_frame);
        },
        py::arg("weights"), py::arg("operators"), py::arg("k"), py::arg("algebra_dim"), py::arg("module_rank"));

    m.def(
        "normalize_instance", [](const std::string& text) { return emit_instance(parse_instance(text)); },
        py::arg("text"), "Parse and re-emit an instance file in canonical form.");
    m.def(
        "analyze_instance",
        [](const std::string& text) { return emit_analysis(analyze_instance(parse_instance(text)), ReportFormat::Json); },
        py::arg("text"), "Analysis of an instance as canonical JSON text.");
    m.def(
        "run_campaign",
        [](std::uint64_t seed, std::size_t trials, const std::vector<std::string>& theorems, std::size_t threads) {
            CampaignConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.threads = threads;
            if (!theorems.empty()) {
                cfg.theorems.clear();
                for (const auto& t : theorems) cfg.theorems.push_back(theorem_from_string(t));
            }
            CampaignReport report;
            {
                py::gil_scoped_release release;
                report = run_campaign(cfg);
            }
            return emit_report(report, ReportFormat::Json);
        },
        py::arg("seed") = 0, py::arg("trials") = 200, py::arg("theorems") = std::vector<std::string>{},
        py::arg("threads") = 1, "Run a campaign and return the canonical JSON report.");
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end in process; returns (exit_code, stdout, stderr).");
    m.attr("theorems") = [] {
        std::vector<std::string> names;
        for (TheoremId id : kAllTheorems) names.emplace_back(to_string(id));
        return names;
    }();
}
