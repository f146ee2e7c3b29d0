#pragma once

// Matrix *-algebra primitives. The C*-algebra A is fixed to M_d(C); every
// other module goes through these routines for adjoints, positivity, the
// Loewner order, norms and PSD pencil constants.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "opframe/errors.hpp"

namespace opframe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct Tolerance {
    double rel = 1e-9;
    double abs_floor = 1e-12;

    /// Throws BadParameter unless both fields are strictly positive.
    void validate() const;
};

/// A square complex matrix. Models an element of A = M_d(C); the same type
/// also carries the (n·d)×(n·d) Gram matrices that live in the
/// right-multiplication model of End*_A(H).
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(CMatrix entries);

    static AlgebraElement identity(std::size_t dim);
    static AlgebraElement zero(std::size_t dim);
    static AlgebraElement diagonal(std::initializer_list<Complex> diag);
    static AlgebraElement diagonal(const RVector& diag);

    const CMatrix& entries() const noexcept { return entries_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(Complex s, const AlgebraElement& a);
    friend AlgebraElement operator*(double s, const AlgebraElement& a);

private:
    CMatrix entries_;
};

/// Outcome of a PSD pencil extremum. `unbounded` is only ever set by
/// pencil_sup (numerator mass on ker Q).
struct PencilResult {
    double value = 0.0;
    bool unbounded = false;
    std::size_t effective_rank = 0;
    CVector extremal;  // unit vector attaining the extremum (empty if none)

    bool bounded() const noexcept { return !unbounded; }
};

AlgebraElement adjoint_elem(const AlgebraElement& a);
AlgebraElement hermitian_part(const AlgebraElement& a);

bool is_positive(const AlgebraElement& a, const Tolerance& t = {});
bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& t = {});

/// Throws NotPositive when `a` fails is_positive.
AlgebraElement psd_sqrt(const AlgebraElement& a, const Tolerance& t = {});
AlgebraElement abs_elem(const AlgebraElement& a);

double op_norm(const AlgebraElement& a);
double op_norm(const CMatrix& m);
double min_singular_value(const CMatrix& m);

/// Ascending eigenvalues of (a + a*)/2.
std::vector<double> hermitian_eigenvalues(const AlgebraElement& a);

/// sup { v*Pv / v*Qv : v*Qv > 0 }. Reports UNBOUNDED when P has mass on the
/// discarded kernel of Q.
PencilResult pencil_sup(const AlgebraElement& P, const AlgebraElement& Q, const Tolerance& t = {});

/// inf { v*Pv / v*Qv : v*Qv > 0 }, i.e. the largest c with c·Q ⪯ P.
/// Throws DegenerateDenominator when Q vanishes.
PencilResult pencil_inf(const AlgebraElement& P, const AlgebraElement& Q, const Tolerance& t = {});

}  // namespace opframe
