#pragma once

// Seeded instance generation and verification campaigns.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "opframe/perturbation.hpp"

namespace opframe {

struct Dims {
    std::size_t d = 1;  // algebra dimension
    std::size_t n = 1;  // module rank
    std::size_t m = 1;  // measure points

    friend bool operator==(const Dims&, const Dims&) = default;
};

/// d ∈ {1,2,3}, n ∈ {1..4}, m ∈ {1..16}.
std::vector<Dims> default_dims();

struct CampaignConfig {
    std::uint64_t seed = 0;
    std::size_t trials = 200;
    std::vector<Dims> dims = default_dims();
    std::vector<TheoremId> theorems{std::begin(kAllTheorems), std::end(kAllTheorems)};
    Tolerance tolerance;
    std::size_t threads = 1;

    /// Throws BadParameter on empty/zero entries.
    void validate() const;
};

inline constexpr std::size_t kHistogramBins = 10;

struct TrialRecord {
    std::size_t trial = 0;
    TheoremId theorem = TheoremId::BesselSumPlus;
    Dims dims;
    bool hypothesis_ok = false;
    bool enclosed = true;
    Verification verified_by = Verification::Failed;
    FrameBounds certified;
    FrameBounds observed;
    double lower_slack = 0.0;
    double upper_slack = 0.0;
    std::string error;  // non-empty when generation or certification threw
};

struct TheoremStats {
    TheoremId theorem = TheoremId::BesselSumPlus;
    std::size_t trials = 0;
    std::size_t hypotheses_satisfied = 0;
    std::size_t enclosure_failures = 0;
    std::size_t errors = 0;
    double min_lower_slack = 0.0;  // over hypothesis-satisfying trials
    double min_upper_slack = 0.0;
    /// Bins of certified.lower / observed.lower and observed.upper /
    /// certified.upper over [0, 1]; a value of 1 means the bound is attained.
    std::array<std::size_t, kHistogramBins> lower_tightness{};
    std::array<std::size_t, kHistogramBins> upper_tightness{};

    void add(const TrialRecord& r);
    void merge(const TheoremStats& other);
};

struct CampaignReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<TheoremStats> per_theorem;
    std::vector<TrialRecord> records;  // ordered by (trial, theorem)
    double wall_seconds = 0.0;

    std::size_t enclosure_failures() const;
    std::size_t unsatisfied_hypotheses() const;
    std::size_t errors() const;
};

/// m operators on unit-mean weights whose Gram matrix has condition number
/// exactly `condition_target` (up to round-off). Deterministic in `seed`.
OperatorFrame random_frame(std::uint64_t seed, std::size_t d, std::size_t n, std::size_t m,
                           double condition_target);

/// A family R on T's measure with λ_max(G_R) = ratio·λ_min(G_T).
OperatorFrame random_bessel_below(std::uint64_t seed, const OperatorFrame& T, double ratio,
                                  const Tolerance& t = {});

/// Gaussian family on the given measure, unscaled.
OperatorFrame random_family(std::uint64_t seed, const MeasureSpace& measure, ModuleShape shape);

enum class Extremum { Max, Min };

/// Independent estimate of the pencil extremum: seeded unit samples plus the
/// eigenvectors of Q (and P) as candidates, refined by Rayleigh–Ritz ascent
/// on small subspaces. For Max it never exceeds pencil_sup.
double sampling_oracle(const AlgebraElement& P, const AlgebraElement& Q, std::size_t n_samples,
                       std::uint64_t seed, Extremum mode = Extremum::Max);

CampaignReport run_campaign(const CampaignConfig& cfg);

/// One hypothesis-satisfying instance for `theorem`, certified. Exposed so
/// tests can replay a single campaign cell.
Certificate run_trial(std::uint64_t seed, std::size_t trial, TheoremId theorem, const Dims& dims,
                      const Tolerance& t);

}  // namespace opframe
