#include "opframe/cstar_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace opframe {

namespace {

using Eigensolver = Eigen::SelfAdjointEigenSolver<CMatrix>;

CMatrix herm(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

CMatrix sqrt_of_hermitian(const CMatrix& h) {
    Eigensolver es(herm(h));
    RVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    CMatrix s = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
    return herm(s);
}

void require_positive(const AlgebraElement& a, const Tolerance& t, const char* name) {
    if (!is_positive(a, t)) {
        throw Error(ErrorKind::NotPositive, std::string(name) + " is not positive semidefinite");
    }
}

void require_same_dim(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
}

// Spectral split of a PSD denominator into retained range and discarded kernel.
struct RangeSplit {
    CMatrix range;     // orthonormal columns spanning the retained range
    RVector values;    // matching eigenvalues (all > threshold)
    CMatrix kernel;    // orthonormal complement
};

RangeSplit split_range(const CMatrix& q, const Tolerance& t) {
    Eigensolver es(herm(q));
    const RVector& lam = es.eigenvalues();
    const Eigen::Index n = lam.size();
    const double lmax = n > 0 ? std::max(lam(n - 1), 0.0) : 0.0;
    Eigen::Index first = n;
    if (lmax > t.abs_floor) {
        const double cut = t.rel * lmax;
        first = 0;
        while (first < n && lam(first) <= cut) ++first;
    }
    RangeSplit split;
    split.range = es.eigenvectors().rightCols(n - first);
    split.values = lam.tail(n - first);
    split.kernel = es.eigenvectors().leftCols(first);
    return split;
}

}  // namespace

void Tolerance::validate() const {
    if (!(rel > 0.0) || !(abs_floor > 0.0)) {
        throw Error(ErrorKind::BadParameter, "tolerance fields must be positive");
    }
}

AlgebraElement::AlgebraElement(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "algebra element must be square, got " + std::to_string(entries_.rows()) + "x" +
                        std::to_string(entries_.cols()));
    }
}

AlgebraElement AlgebraElement::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return AlgebraElement(CMatrix::Identity(n, n));
}

AlgebraElement AlgebraElement::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return AlgebraElement(CMatrix::Zero(n, n));
}

AlgebraElement AlgebraElement::diagonal(std::initializer_list<Complex> diag) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    CMatrix m = CMatrix::Zero(n, n);
    Eigen::Index i = 0;
    for (const Complex& z : diag) {
        m(i, i) = z;
        ++i;
    }
    return AlgebraElement(std::move(m));
}

AlgebraElement AlgebraElement::diagonal(const RVector& diag) {
    return AlgebraElement(CMatrix(diag.cast<Complex>().asDiagonal()));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_dim(a, b);
    return AlgebraElement(a.entries_ + b.entries_);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_dim(a, b);
    return AlgebraElement(a.entries_ - b.entries_);
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_dim(a, b);
    return AlgebraElement(a.entries_ * b.entries_);
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) { return AlgebraElement(s * a.entries_); }

AlgebraElement operator*(double s, const AlgebraElement& a) { return AlgebraElement(s * a.entries_); }

AlgebraElement adjoint_elem(const AlgebraElement& a) { return AlgebraElement(a.entries().adjoint()); }

AlgebraElement hermitian_part(const AlgebraElement& a) { return AlgebraElement(herm(a.entries())); }

bool is_positive(const AlgebraElement& a, const Tolerance& t) {
    if (a.dim() == 0) return true;
    const CMatrix& m = a.entries();
    const double skew = op_norm(CMatrix(m - m.adjoint()));
    if (skew > t.rel * std::max(1.0, op_norm(m))) return false;
    Eigensolver es(herm(m), Eigen::EigenvaluesOnly);
    const RVector& lam = es.eigenvalues();
    const double lmax = lam(lam.size() - 1);
    return lam(0) >= -t.rel * std::max(1.0, lmax);
}

bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& t) {
    return is_positive(b - a, t);
}

AlgebraElement psd_sqrt(const AlgebraElement& a, const Tolerance& t) {
    require_positive(a, t, "argument");
    return AlgebraElement(sqrt_of_hermitian(a.entries()));
}

AlgebraElement abs_elem(const AlgebraElement& a) {
    return AlgebraElement(sqrt_of_hermitian(a.entries().adjoint() * a.entries()));
}

double op_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double op_norm(const AlgebraElement& a) { return op_norm(a.entries()); }

double min_singular_value(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const RVector& s = svd.singularValues();
    // Non-square inputs have a nontrivial kernel on the long side.
    if (m.rows() != m.cols()) return 0.0;
    return s(s.size() - 1);
}

std::vector<double> hermitian_eigenvalues(const AlgebraElement& a) {
    if (a.dim() == 0) return {};
    Eigensolver es(herm(a.entries()), Eigen::EigenvaluesOnly);
    const RVector& lam = es.eigenvalues();
    return {lam.data(), lam.data() + lam.size()};
}

PencilResult pencil_sup(const AlgebraElement& P, const AlgebraElement& Q, const Tolerance& t) {
    require_same_dim(P, Q);
    require_positive(P, t, "numerator");
    require_positive(Q, t, "denominator");

    const CMatrix p = herm(P.entries());
    const RangeSplit split = split_range(Q.entries(), t);

    PencilResult out;
    out.effective_rank = static_cast<std::size_t>(split.range.cols());

    if (split.kernel.cols() > 0) {
        const CMatrix on_kernel = split.kernel.adjoint() * p * split.kernel;
        if (op_norm(on_kernel) > t.rel * std::max(1.0, op_norm(p))) {
            out.unbounded = true;
            out.value = std::numeric_limits<double>::infinity();
            Eigensolver es(herm(on_kernel));
            out.extremal = (split.kernel * es.eigenvectors().rightCols(1)).normalized();
            return out;
        }
    }
    if (split.range.cols() == 0) return out;

    const CMatrix whiten = split.range * split.values.cwiseSqrt().cwiseInverse().asDiagonal();
    Eigensolver es(herm(whiten.adjoint() * p * whiten));
    const Eigen::Index top = es.eigenvalues().size() - 1;
    out.value = std::max(0.0, es.eigenvalues()(top));
    out.extremal = (whiten * es.eigenvectors().col(top)).normalized();
    return out;
}

PencilResult pencil_inf(const AlgebraElement& P, const AlgebraElement& Q, const Tolerance& t) {
    require_same_dim(P, Q);
    require_positive(P, t, "numerator");
    require_positive(Q, t, "denominator");

    const CMatrix p = herm(P.entries());
    const RangeSplit split = split_range(Q.entries(), t);
    if (split.range.cols() == 0) {
        throw Error(ErrorKind::DegenerateDenominator, "denominator vanishes");
    }

    // Directions in ker Q are free: minimising over them replaces the
    // range block of P by its Schur complement.
    const CMatrix& ur = split.range;
    const CMatrix& u0 = split.kernel;
    CMatrix schur = ur.adjoint() * p * ur;
    CMatrix coupling;  // P00^+ P0r, maps range coordinates to the optimal kernel shift
    if (u0.cols() > 0) {
        const CMatrix p00 = herm(u0.adjoint() * p * u0);
        const CMatrix p0r = u0.adjoint() * p * ur;
        Eigensolver es(p00);
        const double cut = std::max(t.rel * op_norm(p), t.abs_floor);
        RVector inv = RVector::Zero(es.eigenvalues().size());
        for (Eigen::Index i = 0; i < inv.size(); ++i) {
            if (es.eigenvalues()(i) > cut) inv(i) = 1.0 / es.eigenvalues()(i);
        }
        const CMatrix pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
        coupling = pinv * p0r;
        schur -= p0r.adjoint() * coupling;
    }

    const RVector scale = split.values.cwiseSqrt().cwiseInverse();
    Eigensolver es(herm(scale.asDiagonal() * schur * scale.asDiagonal()));

    PencilResult out;
    out.effective_rank = static_cast<std::size_t>(ur.cols());
    out.value = std::max(0.0, es.eigenvalues()(0));
    const CVector coeff = scale.asDiagonal() * es.eigenvectors().col(0);
    CVector v = ur * coeff;
    if (u0.cols() > 0) v -= u0 * (coupling * coeff);
    out.extremal = v.normalized();
    return out;
}

}  // namespace opframe
