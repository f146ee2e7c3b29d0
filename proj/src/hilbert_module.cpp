#include "opframe/hilbert_module.hpp"

#include <cmath>
#include <string>

namespace opframe {

namespace {

std::string shape_str(ModuleShape s) {
    return "(d=" + std::to_string(s.algebra_dim) + ", n=" + std::to_string(s.module_rank) + ")";
}

void require_same_shape(ModuleShape a, ModuleShape b) {
    if (!(a == b)) {
        throw Error(ErrorKind::DimensionMismatch, "module shapes " + shape_str(a) + " and " + shape_str(b));
    }
}

void check_shape(ModuleShape s) {
    if (s.algebra_dim == 0 || s.module_rank == 0) {
        throw Error(ErrorKind::DimensionMismatch, "module shape must be positive, got " + shape_str(s));
    }
}

}  // namespace

ModuleVector::ModuleVector(ModuleShape shape, CMatrix entries) : shape_(shape), entries_(std::move(entries)) {
    check_shape(shape_);
    if (entries_.rows() != static_cast<Eigen::Index>(shape_.algebra_dim) ||
        entries_.cols() != static_cast<Eigen::Index>(shape_.width())) {
        throw Error(ErrorKind::DimensionMismatch,
                    "module vector for " + shape_str(shape_) + " must be " + std::to_string(shape_.algebra_dim) +
                        "x" + std::to_string(shape_.width()));
    }
}

ModuleVector ModuleVector::zero(ModuleShape shape) {
    const auto d = static_cast<Eigen::Index>(shape.algebra_dim);
    const auto w = static_cast<Eigen::Index>(shape.width());
    return {shape, CMatrix::Zero(d, w)};
}

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x.shape_, y.shape_);
    return {x.shape_, x.entries_ + y.entries_};
}

ModuleVector operator-(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x.shape_, y.shape_);
    return {x.shape_, x.entries_ - y.entries_};
}

ModuleVector operator*(Complex s, const ModuleVector& x) { return {x.shape_, s * x.entries_}; }

ModuleOperator::ModuleOperator(ModuleShape shape, CMatrix matrix) : shape_(shape), matrix_(std::move(matrix)) {
    check_shape(shape_);
    const auto w = static_cast<Eigen::Index>(shape_.width());
    if (matrix_.rows() != w || matrix_.cols() != w) {
        throw Error(ErrorKind::DimensionMismatch,
                    "operator for " + shape_str(shape_) + " must be " + std::to_string(w) + "x" + std::to_string(w) +
                        ", got " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
    }
}

ModuleOperator ModuleOperator::identity(ModuleShape shape) {
    const auto w = static_cast<Eigen::Index>(shape.width());
    return {shape, CMatrix::Identity(w, w)};
}

ModuleOperator ModuleOperator::zero(ModuleShape shape) {
    const auto w = static_cast<Eigen::Index>(shape.width());
    return {shape, CMatrix::Zero(w, w)};
}

ModuleOperator operator+(const ModuleOperator& a, const ModuleOperator& b) {
    require_same_shape(a.shape_, b.shape_);
    return {a.shape_, a.matrix_ + b.matrix_};
}

ModuleOperator operator-(const ModuleOperator& a, const ModuleOperator& b) {
    require_same_shape(a.shape_, b.shape_);
    return {a.shape_, a.matrix_ - b.matrix_};
}

ModuleOperator operator*(Complex s, const ModuleOperator& a) { return {a.shape_, s * a.matrix_}; }

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x.shape(), y.shape());
    return AlgebraElement(x.entries() * y.entries().adjoint());
}

ModuleVector module_action(const AlgebraElement& a, const ModuleVector& x) {
    if (a.dim() != x.algebra_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "algebra element of dim " + std::to_string(a.dim()) +
                                                      " acting on module over dim " +
                                                      std::to_string(x.algebra_dim()));
    }
    return {x.shape(), a.entries() * x.entries()};
}

double vec_norm(const ModuleVector& x) { return op_norm(x.entries()); }

ModuleVector apply(const ModuleOperator& T, const ModuleVector& x) {
    require_same_shape(T.shape(), x.shape());
    return {x.shape(), x.entries() * T.matrix()};
}

ModuleOperator adjoint_op(const ModuleOperator& T) { return {T.shape(), T.matrix().adjoint()}; }

double operator_norm(const ModuleOperator& T) { return op_norm(T.matrix()); }

double lower_bound_constant(const ModuleOperator& T) { return min_singular_value(T.matrix()); }

bool is_surjective(const ModuleOperator& T, const Tolerance& t) {
    return lower_bound_constant(T) > t.rel * operator_norm(T) + t.abs_floor;
}

AlgebraElement l2_inner(const L2Family& f, const L2Family& g, std::span<const double> weights) {
    if (f.point_count() != g.point_count() || f.point_count() != weights.size()) {
        throw Error(ErrorKind::DimensionMismatch, "families of " + std::to_string(f.point_count()) + " and " +
                                                      std::to_string(g.point_count()) + " points with " +
                                                      std::to_string(weights.size()) + " weights");
    }
    if (f.point_count() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "empty family");
    }
    const auto d = static_cast<Eigen::Index>(f.members.front().algebra_dim());
    CMatrix acc = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < weights.size(); ++j) {
        acc += weights[j] * inner_product(f.members[j], g.members[j]).entries();
    }
    return AlgebraElement(std::move(acc));
}

double l2_norm(const L2Family& f, std::span<const double> weights) {
    return std::sqrt(op_norm(l2_inner(f, f, weights)));
}

}  // namespace opframe
