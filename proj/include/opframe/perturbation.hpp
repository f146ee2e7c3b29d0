#pragma once

// Certifiers for the perturbation and stability theorems of continuous
// (K-)operator frames. Each certifier checks the theorem's hypothesis,
// evaluates the closed-form bounds the theorem promises, and compares them
// with the optimal spectral bounds of the perturbed family.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opframe/frames.hpp"

namespace opframe {

enum class TheoremId {
    BesselSumPlus,
    BesselSumMinus,
    MinCondition,
    MinConditionK,
    Combination,
    CombinationK,
    Extension,
    ExtensionK,
    Weighted,
    KPerturbation,
    KPerturbationCorollary,
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::BesselSumPlus, TheoremId::BesselSumMinus, TheoremId::MinCondition,  TheoremId::MinConditionK,
    TheoremId::Combination,   TheoremId::CombinationK,   TheoremId::Extension,     TheoremId::ExtensionK,
    TheoremId::Weighted,      TheoremId::KPerturbation,  TheoremId::KPerturbationCorollary,
};

std::string_view to_string(TheoremId id);
/// Throws BadParameter for unknown names.
TheoremId theorem_from_string(std::string_view name);

/// How the hypothesis was established.
enum class Verification {
    Exact,     // reduced to PSD pencils; decided exactly
    Loewner,   // exact sufficient Loewner inequality held
    Sampling,  // seeded sampling only
    Failed,    // hypothesis not satisfied
};

std::string_view to_string(Verification v);

/// Slacks below -kEnclosureTolerance·max(1, observed.upper) are enclosure
/// violations.
inline constexpr double kEnclosureTolerance = 1e-9;

struct Certificate {
    TheoremId theorem = TheoremId::BesselSumPlus;
    bool hypothesis_ok = false;
    /// Signed slack of the hypothesis (>= 0 when satisfied); NaN when the
    /// hypothesis is a pure existence statement.
    double hypothesis_margin = 0.0;
    Verification verified_by = Verification::Failed;
    FrameBounds certified;
    FrameBounds observed;
    double lower_slack = 0.0;  // observed.lower - certified.lower
    double upper_slack = 0.0;  // certified.upper - observed.upper
    std::map<std::string, double> values;
    std::vector<std::string> notes;

    double scale() const;
    /// True when the hypothesis failed or both slacks clear the tolerance.
    bool encloses() const;
};

/// Frames T ± R; hypothesis: R Bessel with bound M < A.
Certificate certify_bessel_sum(const OperatorFrame& T, const OperatorFrame& R, int sign, const Tolerance& t = {},
                               std::optional<FrameBounds> bounds = std::nullopt);

/// Least M with ‖(T−R)x‖² ≤ M·min(‖Tx‖², ‖Rx‖²) for every x.
PencilResult optimal_min_constant(const OperatorFrame& T, const OperatorFrame& R, const Tolerance& t = {});

Certificate certify_min_condition(const OperatorFrame& T, const OperatorFrame& R, const std::optional<KOperator>& K,
                                  const Tolerance& t = {}, std::optional<FrameBounds> bounds = std::nullopt);

struct CombinationOptions {
    std::size_t converse_samples = 1000;
    std::uint64_t seed = 0;
};

/// Combined family Σ_k α_k T_k; `p` is a zero-based family index.
Certificate certify_combination(std::span<const OperatorFrame> families, std::span<const Complex> alphas,
                                std::size_t p, const std::optional<KOperator>& K, const Tolerance& t = {},
                                CombinationOptions options = {});

/// Least ‖L‖ with L({source_w x}) = {target_w x}; the value is UNBOUNDED when
/// no bounded L exists.
PencilResult minimal_extension_norm(const OperatorFrame& target, const OperatorFrame& source,
                                    const Tolerance& t = {});

/// `p` is a zero-based family index.
Certificate certify_extension(std::span<const OperatorFrame> t_families, std::span<const OperatorFrame> r_families,
                              std::size_t p, double lambda_cond, const std::optional<KOperator>& K,
                              const Tolerance& t = {});

struct SamplingOptions {
    std::size_t samples = 256;
    std::uint64_t seed = 0;
};

Certificate certify_weighted(const OperatorFrame& T, const OperatorFrame& R, std::span<const double> alpha_w,
                             std::span<const double> beta_w, double lam, double mu, const KOperator& K,
                             SamplingOptions sampling = {}, const Tolerance& t = {},
                             std::optional<FrameBounds> bounds = std::nullopt);

Certificate certify_k_perturbation(const OperatorFrame& T, const OperatorFrame& R, const KOperator& K, double alpha,
                                   double beta, const Tolerance& t = {}, std::optional<FrameBounds> bounds = std::nullopt,
                                   SamplingOptions sampling = {});

/// The corollary: hypothesis ‖(T−R)x‖² ≤ α‖K*x‖² with 0 ≤ α < A.
Certificate certify_k_perturbation_corollary(const OperatorFrame& T, const OperatorFrame& R, const KOperator& K,
                                             double alpha, const Tolerance& t = {},
                                             std::optional<FrameBounds> bounds = std::nullopt,
                                             SamplingOptions sampling = {});

}  // namespace opframe
