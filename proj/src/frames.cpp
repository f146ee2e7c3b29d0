#include "opframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opframe {

MeasureSpace::MeasureSpace(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(ErrorKind::BadParameter, "measure space needs at least one point");
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
            throw Error(ErrorKind::BadParameter,
                        "weight " + std::to_string(j) + " must be positive and finite");
        }
    }
}

MeasureSpace MeasureSpace::uniform(std::size_t points, double weight) {
    return MeasureSpace(std::vector<double>(points, weight));
}

OperatorFrame::OperatorFrame(MeasureSpace measure, std::vector<ModuleOperator> operators)
    : measure_(std::move(measure)), operators_(std::move(operators)) {
    if (operators_.size() != measure_.point_count()) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(operators_.size()) + " operators for " +
                                                      std::to_string(measure_.point_count()) + " measure points");
    }
    if (operators_.empty()) throw Error(ErrorKind::BadParameter, "frame needs at least one operator");
    shape_ = operators_.front().shape();
    for (const auto& op : operators_) {
        if (!(op.shape() == shape_)) throw Error(ErrorKind::DimensionMismatch, "operators differ in shape");
    }
}

OperatorFrame OperatorFrame::plus(const OperatorFrame& other, Complex scale) const {
    require_compatible(*this, other);
    std::vector<ModuleOperator> ops;
    ops.reserve(operators_.size());
    for (std::size_t j = 0; j < operators_.size(); ++j) {
        ops.push_back(operators_[j] + scale * other.operators_[j]);
    }
    return {measure_, std::move(ops)};
}

OperatorFrame OperatorFrame::scaled(Complex s) const {
    std::vector<ModuleOperator> ops;
    ops.reserve(operators_.size());
    for (const auto& op : operators_) ops.push_back(s * op);
    return {measure_, std::move(ops)};
}

void require_compatible(const OperatorFrame& a, const OperatorFrame& b) {
    if (!(a.shape() == b.shape())) throw Error(ErrorKind::DimensionMismatch, "frames differ in module shape");
    if (!(a.measure() == b.measure())) throw Error(ErrorKind::MeasureMismatch, "frames use different measures");
}

AlgebraElement frame_gram(const OperatorFrame& F) {
    const auto w = static_cast<Eigen::Index>(F.shape().width());
    CMatrix g = CMatrix::Zero(w, w);
    for (std::size_t j = 0; j < F.point_count(); ++j) {
        const CMatrix& m = F.op(j).matrix();
        g.noalias() += F.measure().weight(j) * (m * m.adjoint());
    }
    return AlgebraElement((g + g.adjoint()) * 0.5);
}

FrameBounds optimal_bounds(const OperatorFrame& F) {
    const auto lam = hermitian_eigenvalues(frame_gram(F));
    return {std::max(0.0, lam.front()), std::max(0.0, lam.back())};
}

FrameClassification classify(const OperatorFrame& F, const Tolerance& t) {
    FrameClassification c;
    c.bounds = optimal_bounds(F);
    const double a = c.bounds.lower;
    const double b = c.bounds.upper;
    c.is_bessel = true;
    c.is_frame = a > t.rel * std::max(1.0, b);
    c.is_tight = c.is_frame && (b - a) <= t.rel * b;
    c.is_parseval = c.is_tight && std::abs(b - 1.0) <= t.rel;
    return c;
}

ModuleOperator frame_operator(const OperatorFrame& F) { return {F.shape(), frame_gram(F).entries()}; }

L2Family analysis(const OperatorFrame& F, const ModuleVector& x) {
    L2Family out;
    out.members.reserve(F.point_count());
    for (const auto& op : F.operators()) out.members.push_back(apply(op, x));
    return out;
}

ModuleVector synthesis(const OperatorFrame& F, const L2Family& f) {
    if (f.point_count() != F.point_count()) {
        throw Error(ErrorKind::DimensionMismatch, "family has " + std::to_string(f.point_count()) +
                                                      " points, frame has " + std::to_string(F.point_count()));
    }
    ModuleVector acc = ModuleVector::zero(F.shape());
    for (std::size_t j = 0; j < F.point_count(); ++j) {
        acc = acc + Complex(F.measure().weight(j)) * apply(adjoint_op(F.op(j)), f.members[j]);
    }
    return acc;
}

ModuleOperator s_k(const OperatorFrame& F) { return frame_operator(F); }

double analysis_norm(const OperatorFrame& F, const ModuleVector& x) {
    return l2_norm(analysis(F, x), F.measure().weights());
}

AlgebraElement k_gram(const KOperator& K) {
    const CMatrix& k = K.op.matrix();
    CMatrix g = k.adjoint() * k;
    return AlgebraElement((g + g.adjoint()) * 0.5);
}

KFrameBounds k_frame_bounds(const OperatorFrame& F, const KOperator& K, const Tolerance& t) {
    if (!(K.op.shape() == F.shape())) throw Error(ErrorKind::DimensionMismatch, "K and frame differ in shape");
    const AlgebraElement g = frame_gram(F);
    KFrameBounds out;
    out.bounds.upper = std::max(0.0, hermitian_eigenvalues(g).back());
    out.bounds.lower = pencil_inf(g, k_gram(K), t).value;
    out.is_k_frame = out.bounds.lower > t.rel * std::max(1.0, out.bounds.upper);
    return out;
}

double remark_bound(const OperatorFrame& F, const KOperator& K, const Tolerance& t) {
    const FrameClassification c = classify(F, t);
    if (!c.is_frame) throw Error(ErrorKind::NotAFrame, "remark bound needs a frame");
    const double knorm = operator_norm(K.op);
    if (knorm <= t.abs_floor) throw Error(ErrorKind::ZeroK, "K vanishes");
    return c.bounds.lower / (knorm * knorm);
}

}  // namespace opframe
