#pragma once

// Continuous operator frames over a finitely discretised measure space.
// Integrals over Ω become weighted sums, so a frame is a list of
// (weight, operator) pairs and its frame operator is right multiplication
// by G = Σ_j μ_j M_j M_j^H.

#include <cstddef>
#include <span>
#include <vector>

#include "opframe/cstar_core.hpp"
#include "opframe/hilbert_module.hpp"

namespace opframe {

class MeasureSpace {
public:
    MeasureSpace() = default;
    /// Throws BadParameter on an empty list or a non-positive weight.
    explicit MeasureSpace(std::vector<double> weights);

    static MeasureSpace uniform(std::size_t points, double weight = 1.0);

    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t point_count() const noexcept { return weights_.size(); }
    double weight(std::size_t j) const { return weights_.at(j); }

    friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

private:
    std::vector<double> weights_;
};

class OperatorFrame {
public:
    OperatorFrame() = default;
    OperatorFrame(MeasureSpace measure, std::vector<ModuleOperator> operators);

    const MeasureSpace& measure() const noexcept { return measure_; }
    const std::vector<ModuleOperator>& operators() const noexcept { return operators_; }
    const ModuleOperator& op(std::size_t j) const { return operators_.at(j); }
    ModuleShape shape() const noexcept { return shape_; }
    std::size_t point_count() const noexcept { return operators_.size(); }

    /// Pointwise combinations over the same measure.
    OperatorFrame plus(const OperatorFrame& other, Complex scale = 1.0) const;
    OperatorFrame scaled(Complex s) const;

private:
    MeasureSpace measure_;
    std::vector<ModuleOperator> operators_;
    ModuleShape shape_;
};

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct FrameClassification {
    bool is_bessel = true;
    bool is_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    FrameBounds bounds;
};

struct KOperator {
    ModuleOperator op;
};

struct KFrameBounds {
    FrameBounds bounds;
    bool is_k_frame = false;
};

/// Throws MeasureMismatch / DimensionMismatch unless both frames live on the
/// same measure and module shape.
void require_compatible(const OperatorFrame& a, const OperatorFrame& b);

AlgebraElement frame_gram(const OperatorFrame& F);
FrameBounds optimal_bounds(const OperatorFrame& F);
FrameClassification classify(const OperatorFrame& F, const Tolerance& t = {});
ModuleOperator frame_operator(const OperatorFrame& F);

L2Family analysis(const OperatorFrame& F, const ModuleVector& x);
ModuleVector synthesis(const OperatorFrame& F, const L2Family& f);
ModuleOperator s_k(const OperatorFrame& F);

/// ‖∫ <Λ_w x, Λ_w x> dμ‖^{1/2}, the l² norm of the analysed vector.
double analysis_norm(const OperatorFrame& F, const ModuleVector& x);

/// K^H K, the matrix realising <K*x, K*x> = X (K^H K) X^H.
AlgebraElement k_gram(const KOperator& K);

/// Upper bound λ_max(G) and the optimal lower constant A with A·K^H K ⪯ G.
/// Throws DegenerateDenominator when K = 0.
KFrameBounds k_frame_bounds(const OperatorFrame& F, const KOperator& K, const Tolerance& t = {});

/// λ_min(G)·‖K‖^{-2}. Throws NotAFrame or ZeroK.
double remark_bound(const OperatorFrame& F, const KOperator& K, const Tolerance& t = {});

}  // namespace opframe
