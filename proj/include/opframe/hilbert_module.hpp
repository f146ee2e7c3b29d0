#pragma once

// The free Hilbert A-module H = A^n in coordinates: vectors are d×(n·d)
// matrices X with <x,y> = X·Y^H, the algebra acts from the left, and
// adjointable operators act by right multiplication with an (n·d)×(n·d)
// matrix.

#include <cstddef>
#include <span>
#include <vector>

#include "opframe/cstar_core.hpp"

namespace opframe {

/// Shape of the module: algebra dimension d and module rank n.
struct ModuleShape {
    std::size_t algebra_dim = 1;
    std::size_t module_rank = 1;

    std::size_t width() const noexcept { return algebra_dim * module_rank; }
    friend bool operator==(const ModuleShape&, const ModuleShape&) = default;
};

class ModuleVector {
public:
    ModuleVector() = default;
    ModuleVector(ModuleShape shape, CMatrix entries);

    static ModuleVector zero(ModuleShape shape);

    const CMatrix& entries() const noexcept { return entries_; }
    ModuleShape shape() const noexcept { return shape_; }
    std::size_t algebra_dim() const noexcept { return shape_.algebra_dim; }
    std::size_t module_rank() const noexcept { return shape_.module_rank; }

    friend ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);
    friend ModuleVector operator-(const ModuleVector& x, const ModuleVector& y);
    friend ModuleVector operator*(Complex s, const ModuleVector& x);

private:
    ModuleShape shape_;
    CMatrix entries_;
};

class ModuleOperator {
public:
    ModuleOperator() = default;
    ModuleOperator(ModuleShape shape, CMatrix matrix);

    static ModuleOperator identity(ModuleShape shape);
    static ModuleOperator zero(ModuleShape shape);

    const CMatrix& matrix() const noexcept { return matrix_; }
    ModuleShape shape() const noexcept { return shape_; }
    std::size_t algebra_dim() const noexcept { return shape_.algebra_dim; }
    std::size_t module_rank() const noexcept { return shape_.module_rank; }

    friend ModuleOperator operator+(const ModuleOperator& a, const ModuleOperator& b);
    friend ModuleOperator operator-(const ModuleOperator& a, const ModuleOperator& b);
    friend ModuleOperator operator*(Complex s, const ModuleOperator& a);

private:
    ModuleShape shape_;
    CMatrix matrix_;
};

/// One module vector per measure point; V_w = H for every point.
struct L2Family {
    std::vector<ModuleVector> members;

    std::size_t point_count() const noexcept { return members.size(); }
};

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);
ModuleVector module_action(const AlgebraElement& a, const ModuleVector& x);
double vec_norm(const ModuleVector& x);

ModuleVector apply(const ModuleOperator& T, const ModuleVector& x);
ModuleOperator adjoint_op(const ModuleOperator& T);
double operator_norm(const ModuleOperator& T);
double lower_bound_constant(const ModuleOperator& T);
bool is_surjective(const ModuleOperator& T, const Tolerance& t = {});

/// Σ_j weights_j <f_j, g_j>.
AlgebraElement l2_inner(const L2Family& f, const L2Family& g, std::span<const double> weights);
double l2_norm(const L2Family& f, std::span<const double> weights);

}  // namespace opframe
