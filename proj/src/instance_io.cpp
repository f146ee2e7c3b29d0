#include "opframe/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "opframe/random.hpp"

namespace opframe {

namespace {

using nlohmann::json;

struct TextPos {
    std::size_t line = 1;
    std::size_t column = 1;
};

TextPos position_at(std::string_view text, std::size_t offset) {
    TextPos p;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

std::string escape_pointer_token(const std::string& token) {
    std::string out;
    for (char ch : token) {
        if (ch == '~') out += "~0";
        else if (ch == '/') out += "~1";
        else out += ch;
    }
    return out;
}

// Records where every value of an (already validated) JSON document starts,
// keyed by JSON pointer, so schema errors can point at a line.
class PositionIndex {
public:
    explicit PositionIndex(std::string_view text) : text_(text) {
        skip_ws();
        value("");
    }

    TextPos lookup(std::string pointer) const {
        for (;;) {
            if (auto it = at_.find(pointer); it != at_.end()) return it->second;
            if (pointer.empty()) return {};
            pointer.erase(pointer.rfind('/'));
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++cur_.line;
            cur_.column = 1;
        } else {
            ++cur_.column;
        }
        ++pos_;
    }

    std::string string_literal() {
        const std::size_t start = pos_;
        advance();
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') advance();
            advance();
        }
        advance();
        return json::parse(text_.substr(start, pos_ - start)).get<std::string>();
    }

    void value(const std::string& pointer) {
        at_[pointer] = cur_;
        if (pos_ >= text_.size()) return;
        const char ch = text_[pos_];
        if (ch == '{') {
            advance();
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] != '}') {
                const std::string key = string_literal();
                skip_ws();
                advance();  // ':'
                skip_ws();
                value(pointer + "/" + escape_pointer_token(key));
                skip_ws();
                if (text_[pos_] == ',') {
                    advance();
                    skip_ws();
                }
            }
            advance();
        } else if (ch == '[') {
            advance();
            skip_ws();
            std::size_t index = 0;
            while (pos_ < text_.size() && text_[pos_] != ']') {
                value(pointer + "/" + std::to_string(index++));
                skip_ws();
                if (text_[pos_] == ',') {
                    advance();
                    skip_ws();
                }
            }
            advance();
        } else if (ch == '"') {
            string_literal();
        } else {
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                   text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']') {
                advance();
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    TextPos cur_;
    std::map<std::string, TextPos> at_;
};

class Validator {
public:
    explicit Validator(std::string_view text) : index_(text) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        const TextPos p = index_.lookup(pointer);
        throw Error(ErrorKind::ValidationError, "line " + std::to_string(p.line) + ", column " +
                                                    std::to_string(p.column) + " (" +
                                                    (pointer.empty() ? "/" : pointer) + "): " + message);
    }

    std::size_t positive_int(const json& doc, const std::string& key) const {
        const std::string ptr = "/" + key;
        if (!doc.contains(key)) fail("", "missing required field '" + key + "'");
        const json& v = doc.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 1) fail(ptr, "'" + key + "' must be a positive integer");
        return v.get<std::size_t>();
    }

    CMatrix matrix(const json& v, const std::string& ptr, std::size_t width) const {
        const auto w = static_cast<Eigen::Index>(width);
        if (!v.is_array()) fail(ptr, "operator must be an array of rows");
        if (v.size() != width) {
            fail(ptr, "operator must be " + std::to_string(width) + "x" + std::to_string(width) + ", got " +
                          std::to_string(v.size()) + " rows");
        }
        CMatrix m(w, w);
        for (std::size_t i = 0; i < width; ++i) {
            const std::string rp = ptr + "/" + std::to_string(i);
            const json& row = v[i];
            if (!row.is_array()) fail(rp, "row must be an array");
            if (row.size() != width) {
                fail(rp, "operator must be " + std::to_string(width) + "x" + std::to_string(width) + ", row " +
                             std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
            }
            for (std::size_t j = 0; j < width; ++j) {
                const std::string ep = rp + "/" + std::to_string(j);
                const json& z = row[j];
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                    fail(ep, "complex entry must be a two-element array [re, im]");
                }
                const double re = z[0].get<double>();
                const double im = z[1].get<double>();
                if (!std::isfinite(re) || !std::isfinite(im)) fail(ep, "complex entry must be finite");
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(re, im);
            }
        }
        return m;
    }

private:
    PositionIndex index_;
};

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_canonical(std::ostringstream& out, const json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
    case json::value_t::object: {
        if (v.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out << ",\n";
            first = false;
            out << inner << json(it.key()).dump() << ": ";
            write_canonical(out, it.value(), indent + 1);
        }
        out << "\n" << pad << "}";
        return;
    }
    case json::value_t::array: {
        if (v.empty()) {
            out << "[]";
            return;
        }
        const bool scalar_row = std::all_of(v.begin(), v.end(), [](const json& e) {
            return e.is_primitive() ||
                   (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_primitive(); }));
        });
        if (scalar_row) {
            out << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ", ";
                write_canonical(out, v[i], indent + 1);
            }
            out << "]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ",\n";
            out << inner;
            write_canonical(out, v[i], indent + 1);
        }
        out << "\n" << pad << "]";
        return;
    }
    case json::value_t::number_float: {
        const double x = v.get<double>();
        out << (std::isfinite(x) ? format_number(x) : "null");
        return;
    }
    default: out << v.dump(); return;
    }
}

std::string canonical(const json& v) {
    std::ostringstream out;
    write_canonical(out, v, 0);
    out << "\n";
    return out.str();
}

json bounds_json(const FrameBounds& b) { return {{"lower", b.lower}, {"upper", b.upper}}; }

json certificate_json(const Certificate& c) {
    json values = json::object();
    for (const auto& [k, v] : c.values) values[k] = v;
    return {{"theorem", std::string(to_string(c.theorem))},
            {"hypothesis_ok", c.hypothesis_ok},
            {"hypothesis_margin", c.hypothesis_margin},
            {"verified_by", std::string(to_string(c.verified_by))},
            {"certified", bounds_json(c.certified)},
            {"observed", bounds_json(c.observed)},
            {"lower_slack", c.lower_slack},
            {"upper_slack", c.upper_slack},
            {"encloses", c.encloses()},
            {"values", values},
            {"notes", c.notes}};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const TextPos p = position_at(text, e.byte > 0 ? e.byte - 1 : 0);
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": " + e.what());
    }
    const Validator check(text);
    if (!doc.is_object()) check.fail("", "instance must be a JSON object");

    static const char* const kKnown[] = {"format_version", "algebra_dim", "module_rank",
                                         "measure",        "k_operator",  "families"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(std::begin(kKnown), std::end(kKnown), it.key()) == std::end(kKnown)) {
            check.fail("/" + escape_pointer_token(it.key()), "unknown field '" + it.key() + "'");
        }
    }
    if (!doc.contains("format_version")) check.fail("", "missing required field 'format_version'");
    if (!doc["format_version"].is_number_integer() || doc["format_version"].get<long long>() != kFormatVersion) {
        check.fail("/format_version", "unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
    }
    const ModuleShape shape{check.positive_int(doc, "algebra_dim"), check.positive_int(doc, "module_rank")};

    if (!doc.contains("measure")) check.fail("", "missing required field 'measure'");
    const json& measure = doc["measure"];
    if (!measure.is_array() || measure.empty()) check.fail("/measure", "'measure' must be a non-empty array");
    std::vector<double> weights;
    std::vector<ModuleOperator> ops;
    for (std::size_t j = 0; j < measure.size(); ++j) {
        const std::string ptr = "/measure/" + std::to_string(j);
        const json& point = measure[j];
        if (!point.is_object()) check.fail(ptr, "measure point must be an object");
        for (auto it = point.begin(); it != point.end(); ++it) {
            if (it.key() != "weight" && it.key() != "operator") {
                check.fail(ptr + "/" + escape_pointer_token(it.key()), "unknown field '" + it.key() + "'");
            }
        }
        if (!point.contains("weight")) check.fail(ptr, "missing 'weight'");
        if (!point.contains("operator")) check.fail(ptr, "missing 'operator'");
        const json& w = point["weight"];
        if (!w.is_number() || !(w.get<double>() > 0.0) || !std::isfinite(w.get<double>())) {
            check.fail(ptr + "/weight", "weight must be a positive finite number");
        }
        weights.push_back(w.get<double>());
        ops.emplace_back(shape, check.matrix(point["operator"], ptr + "/operator", shape.width()));
    }
    const MeasureSpace space(weights);

    Instance out;
    out.frame = OperatorFrame(space, std::move(ops));
    if (doc.contains("k_operator")) {
        out.k = KOperator{ModuleOperator(shape, check.matrix(doc["k_operator"], "/k_operator", shape.width()))};
    }
    if (doc.contains("families")) {
        const json& fams = doc["families"];
        if (!fams.is_object()) check.fail("/families", "'families' must be an object");
        for (auto it = fams.begin(); it != fams.end(); ++it) {
            const std::string ptr = "/families/" + escape_pointer_token(it.key());
            const json& list = it.value();
            if (!list.is_array() || list.size() != space.point_count()) {
                check.fail(ptr, "family must list one operator per measure point (" +
                                    std::to_string(space.point_count()) + ")");
            }
            std::vector<ModuleOperator> fops;
            for (std::size_t j = 0; j < list.size(); ++j) {
                fops.emplace_back(shape, check.matrix(list[j], ptr + "/" + std::to_string(j), shape.width()));
            }
            out.families.emplace(it.key(), OperatorFrame(space, std::move(fops)));
        }
    }
    return out;
}

std::string emit_instance(const Instance& instance) {
    const OperatorFrame& F = instance.frame;
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["algebra_dim"] = F.shape().algebra_dim;
    doc["module_rank"] = F.shape().module_rank;
    json measure = json::array();
    for (std::size_t j = 0; j < F.point_count(); ++j) {
        measure.push_back({{"weight", F.measure().weight(j)}, {"operator", matrix_json(F.op(j).matrix())}});
    }
    doc["measure"] = std::move(measure);
    if (instance.k) doc["k_operator"] = matrix_json(instance.k->op.matrix());
    if (!instance.families.empty()) {
        json fams = json::object();
        for (const auto& [name, fam] : instance.families) {
            json list = json::array();
            for (const auto& op : fam.operators()) list.push_back(matrix_json(op.matrix()));
            fams[name] = std::move(list);
        }
        doc["families"] = std::move(fams);
    }
    return canonical(doc);
}

ReportFormat report_format_from_string(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw Error(ErrorKind::BadParameter, "unknown format '" + std::string(name) + "' (json|csv|text)");
}

Analysis analyze_instance(const Instance& instance, const Tolerance& t) {
    Analysis a;
    a.classification = classify(instance.frame, t);
    if (instance.k) {
        a.k_bounds = k_frame_bounds(instance.frame, *instance.k, t);
        if (a.classification.is_frame && operator_norm(instance.k->op) > t.abs_floor) {
            a.remark_bound = remark_bound(instance.frame, *instance.k, t);
        }
    }
    for (const auto& [name, fam] : instance.families) a.family_bounds[name] = optimal_bounds(fam);
    return a;
}

std::vector<OracleComparison> oracle_instance(const Instance& instance, std::size_t samples, std::uint64_t seed,
                                              const Tolerance& t) {
    std::vector<OracleComparison> rows;
    const AlgebraElement g = frame_gram(instance.frame);
    const AlgebraElement id = AlgebraElement::identity(g.dim());
    std::uint64_t salt = 0;

    auto compare = [&](std::string label, const AlgebraElement& p, const AlgebraElement& q, Extremum mode) {
        OracleComparison row;
        row.label = std::move(label);
        const PencilResult r = mode == Extremum::Max ? pencil_sup(p, q, t) : pencil_inf(p, q, t);
        row.pencil = r.unbounded ? std::numeric_limits<double>::infinity() : r.value;
        row.oracle = sampling_oracle(p, q, samples, derive_seed(seed, {salt++}), mode);
        row.agree = r.unbounded || std::abs(row.pencil - row.oracle) <= 1e-6 * std::max(1.0, std::abs(row.pencil));
        rows.push_back(std::move(row));
    };

    compare("inf G / I (lower frame bound)", g, id, Extremum::Min);
    compare("sup G / I (upper frame bound)", g, id, Extremum::Max);
    if (instance.k) compare("inf G / K^H K (lower K-frame bound)", g, k_gram(*instance.k), Extremum::Min);
    for (const auto& [name, fam] : instance.families) {
        const AlgebraElement gf = frame_gram(fam);
        compare("sup G_" + name + " / G", gf, g, Extremum::Max);
        compare("sup G_(T-" + name + ") / G", frame_gram(instance.frame.plus(fam, -1.0)), g, Extremum::Max);
    }
    return rows;
}

std::string emit_report(const CampaignReport& report, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "trial,theorem,d,n,m,hypothesis_ok,verified_by,certified_lower,certified_upper,"
               "observed_lower,observed_upper,lower_slack,upper_slack,enclosed,error\n";
        for (const auto& r : report.records) {
            out << r.trial << ',' << to_string(r.theorem) << ',' << r.dims.d << ',' << r.dims.n << ',' << r.dims.m
                << ',' << (r.hypothesis_ok ? 1 : 0) << ',' << to_string(r.verified_by) << ','
                << format_number(r.certified.lower) << ',' << format_number(r.certified.upper) << ','
                << format_number(r.observed.lower) << ',' << format_number(r.observed.upper) << ','
                << format_number(r.lower_slack) << ',' << format_number(r.upper_slack) << ','
                << (r.enclosed ? 1 : 0) << ',' << csv_escape(r.error) << '\n';
        }
        return out.str();
    }
    if (format == ReportFormat::Text) {
        std::ostringstream out;
        out << "campaign seed " << report.seed << ", " << report.trials << " trials\n";
        if (report.per_theorem.empty()) out << "(no theorems)\n";
        char line[256];
        for (const auto& s : report.per_theorem) {
            std::snprintf(line, sizeof line,
                          "%-26s trials %5zu  satisfied %5zu  enclosure failures %3zu  errors %3zu  "
                          "min slack lower %.3e upper %.3e\n",
                          std::string(to_string(s.theorem)).c_str(), s.trials, s.hypotheses_satisfied,
                          s.enclosure_failures, s.errors, s.min_lower_slack, s.min_upper_slack);
            out << line;
        }
        out << "total enclosure failures: " << report.enclosure_failures() << "\n";
        std::snprintf(line, sizeof line, "wall time: %.3f s\n", report.wall_seconds);
        out << line;
        return out.str();
    }
    json theorems = json::array();
    for (const auto& s : report.per_theorem) {
        theorems.push_back({{"theorem", std::string(to_string(s.theorem))},
                            {"trials", s.trials},
                            {"hypotheses_satisfied", s.hypotheses_satisfied},
                            {"enclosure_failures", s.enclosure_failures},
                            {"errors", s.errors},
                            {"min_lower_slack", s.min_lower_slack},
                            {"min_upper_slack", s.min_upper_slack},
                            {"lower_tightness", s.lower_tightness},
                            {"upper_tightness", s.upper_tightness}});
    }
    json records = json::array();
    for (const auto& r : report.records) {
        records.push_back({{"trial", r.trial},
                           {"theorem", std::string(to_string(r.theorem))},
                           {"dims", {r.dims.d, r.dims.n, r.dims.m}},
                           {"hypothesis_ok", r.hypothesis_ok},
                           {"verified_by", std::string(to_string(r.verified_by))},
                           {"certified", bounds_json(r.certified)},
                           {"observed", bounds_json(r.observed)},
                           {"lower_slack", r.lower_slack},
                           {"upper_slack", r.upper_slack},
                           {"enclosed", r.enclosed},
                           {"error", r.error}});
    }
    json doc = {{"seed", report.seed},
                {"trials", report.trials},
                {"theorems", std::move(theorems)},
                {"records", std::move(records)},
                {"summary",
                 {{"enclosure_failures", report.enclosure_failures()},
                  {"unsatisfied_hypotheses", report.unsatisfied_hypotheses()},
                  {"errors", report.errors()}}}};
    return canonical(doc);
}

std::string emit_certificate(const Certificate& c, ReportFormat format) {
    if (format == ReportFormat::Json) return canonical(certificate_json(c));
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "theorem,hypothesis_ok,hypothesis_margin,verified_by,certified_lower,certified_upper,"
               "observed_lower,observed_upper,lower_slack,upper_slack,encloses,values\n";
        std::string values;
        for (const auto& [k, v] : c.values) values += (values.empty() ? "" : ";") + k + "=" + format_number(v);
        out << to_string(c.theorem) << ',' << (c.hypothesis_ok ? 1 : 0) << ',' << format_number(c.hypothesis_margin)
            << ',' << to_string(c.verified_by) << ',' << format_number(c.certified.lower) << ','
            << format_number(c.certified.upper) << ',' << format_number(c.observed.lower) << ','
            << format_number(c.observed.upper) << ',' << format_number(c.lower_slack) << ','
            << format_number(c.upper_slack) << ',' << (c.encloses() ? 1 : 0) << ',' << csv_escape(values) << '\n';
        return out.str();
    }
    std::ostringstream out;
    out << "theorem:     " << to_string(c.theorem) << "\n"
        << "hypothesis:  " << (c.hypothesis_ok ? "satisfied" : "NOT satisfied") << " (" << to_string(c.verified_by)
        << ", margin " << format_number(c.hypothesis_margin) << ")\n"
        << "certified:   [" << format_number(c.certified.lower) << ", " << format_number(c.certified.upper) << "]\n"
        << "observed:    [" << format_number(c.observed.lower) << ", " << format_number(c.observed.upper) << "]\n"
        << "slack:       lower " << format_number(c.lower_slack) << ", upper " << format_number(c.upper_slack)
        << "\n"
        << "encloses:    " << yes_no(c.encloses()) << "\n";
    for (const auto& [k, v] : c.values) out << "  " << k << " = " << format_number(v) << "\n";
    for (const auto& n : c.notes) out << "note: " << n << "\n";
    return out.str();
}

std::string emit_analysis(const Analysis& a, ReportFormat format) {
    const FrameClassification& c = a.classification;
    if (format == ReportFormat::Json) {
        json doc = {{"bounds", bounds_json(c.bounds)},
                    {"is_bessel", c.is_bessel},
                    {"is_frame", c.is_frame},
                    {"is_tight", c.is_tight},
                    {"is_parseval", c.is_parseval}};
        if (a.k_bounds) {
            doc["k_bounds"] = bounds_json(a.k_bounds->bounds);
            doc["is_k_frame"] = a.k_bounds->is_k_frame;
        }
        if (a.remark_bound) doc["remark_bound"] = *a.remark_bound;
        json fams = json::object();
        for (const auto& [name, b] : a.family_bounds) fams[name] = bounds_json(b);
        doc["families"] = std::move(fams);
        return canonical(doc);
    }
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "quantity,lower,upper\n";
        out << "frame," << format_number(c.bounds.lower) << ',' << format_number(c.bounds.upper) << '\n';
        if (a.k_bounds) {
            out << "k_frame," << format_number(a.k_bounds->bounds.lower) << ','
                << format_number(a.k_bounds->bounds.upper) << '\n';
        }
        for (const auto& [name, b] : a.family_bounds) {
            out << csv_escape("family:" + name) << ',' << format_number(b.lower) << ',' << format_number(b.upper)
                << '\n';
        }
        return out.str();
    }
    out << "frame bounds: [" << format_number(c.bounds.lower) << ", " << format_number(c.bounds.upper) << "]\n"
        << "bessel " << yes_no(c.is_bessel) << ", frame " << yes_no(c.is_frame) << ", tight " << yes_no(c.is_tight)
        << ", parseval " << yes_no(c.is_parseval) << "\n";
    if (a.k_bounds) {
        out << "K-frame bounds: [" << format_number(a.k_bounds->bounds.lower) << ", "
            << format_number(a.k_bounds->bounds.upper) << "], K-frame " << yes_no(a.k_bounds->is_k_frame) << "\n";
    }
    if (a.remark_bound) out << "A/||K||^2 bound: " << format_number(*a.remark_bound) << "\n";
    for (const auto& [name, b] : a.family_bounds) {
        out << "family " << name << ": [" << format_number(b.lower) << ", " << format_number(b.upper) << "]\n";
    }
    return out.str();
}

std::string emit_oracle(const std::vector<OracleComparison>& rows, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json list = json::array();
        for (const auto& r : rows) {
            list.push_back({{"label", r.label}, {"pencil", r.pencil}, {"oracle", r.oracle}, {"agree", r.agree}});
        }
        return canonical(json{{"comparisons", std::move(list)}});
    }
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "label,pencil,oracle,agree\n";
        for (const auto& r : rows) {
            out << csv_escape(r.label) << ',' << format_number(r.pencil) << ',' << format_number(r.oracle) << ','
                << (r.agree ? 1 : 0) << '\n';
        }
        return out.str();
    }
    for (const auto& r : rows) {
        out << r.label << ": pencil " << format_number(r.pencil) << ", oracle " << format_number(r.oracle) << " -> "
            << (r.agree ? "agree" : "DISAGREE") << "\n";
    }
    return out.str();
}

}  // namespace opframe
