#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "opframe/frames.hpp"

namespace opframe::testing {

inline CMatrix diag_matrix(std::initializer_list<double> d) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

inline CMatrix scalar_matrix(std::size_t dim, Complex s) {
    return s * CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

inline OperatorFrame make_frame(std::vector<double> weights, const std::vector<CMatrix>& ops, ModuleShape shape) {
    std::vector<ModuleOperator> mods;
    for (const CMatrix& m : ops) mods.emplace_back(shape, m);
    return OperatorFrame(MeasureSpace(std::move(weights)), std::move(mods));
}

/// One-point frame with operator s·I on shape (1, 1) or a wider shape.
inline OperatorFrame scalar_frame(Complex s, ModuleShape shape = {1, 1}) {
    return make_frame({1.0}, {scalar_matrix(shape.width(), s)}, shape);
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace opframe::testing
