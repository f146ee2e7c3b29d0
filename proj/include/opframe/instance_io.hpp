#pragma once

// Instance files (JSON) and report emission.
//
// Instance schema, format_version 1:
//
//   {
//     "format_version": 1,
//     "algebra_dim": d,
//     "module_rank": n,
//     "measure": [ {"weight": w, "operator": M}, ... ],
//     "k_operator": M,                        (optional)
//     "families": { "name": [M, ...], ... }   (optional, one M per point)
//   }
//
// M is an (n·d)×(n·d) matrix written as rows of [re, im] pairs.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "opframe/harness.hpp"

namespace opframe {

inline constexpr int kFormatVersion = 1;

struct Instance {
    OperatorFrame frame;
    std::optional<KOperator> k;
    std::map<std::string, OperatorFrame> families;
};

/// Throws Error{ParseError} for malformed JSON and Error{ValidationError}
/// for schema violations; both messages start with "line L, column C".
Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& instance);

enum class ReportFormat { Json, Csv, Text };

/// Throws BadParameter for names other than json, csv, text.
ReportFormat report_format_from_string(std::string_view name);

struct Analysis {
    FrameClassification classification;
    std::optional<KFrameBounds> k_bounds;
    std::optional<double> remark_bound;
    std::map<std::string, FrameBounds> family_bounds;
};

Analysis analyze_instance(const Instance& instance, const Tolerance& t = {});

struct OracleComparison {
    std::string label;
    double pencil = 0.0;  // +inf when UNBOUNDED
    double oracle = 0.0;
    bool agree = false;
};

/// Pencil extrema of the instance's Gram matrices against the sampling
/// oracle. Agreement means relative difference <= 1e-6 (or both unbounded
/// directions excluded).
std::vector<OracleComparison> oracle_instance(const Instance& instance, std::size_t samples, std::uint64_t seed,
                                              const Tolerance& t = {});

/// JSON output is canonical: sorted keys, %.17g numbers, non-finite values
/// as null. CSV columns are fixed (see README).
std::string emit_report(const CampaignReport& report, ReportFormat format);
std::string emit_certificate(const Certificate& certificate, ReportFormat format);
std::string emit_analysis(const Analysis& analysis, ReportFormat format);
std::string emit_oracle(const std::vector<OracleComparison>& rows, ReportFormat format);

/// %.17g, with "inf"/"-inf"/"nan" spelled out.
std::string format_number(double x);

}  // namespace opframe
