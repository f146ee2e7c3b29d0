#include "opframe/random.hpp"

#include <bit>
#include <cmath>

namespace opframe {

CMatrix random_complex_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im) * M_SQRT1_2;
        }
    }
    return m;
}

CVector random_unit_vector(Rng& rng, Eigen::Index dim) {
    CVector v = random_complex_matrix(rng, dim, 1).col(0);
    return v / v.norm();
}

CMatrix random_unitary(Rng& rng, Eigen::Index dim) {
    const CMatrix g = random_complex_matrix(rng, dim, dim);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    // Fix the phase ambiguity of QR so the distribution is Haar.
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) q.col(i) *= r(i, i) / mag;
    }
    return q;
}

CMatrix random_psd(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
    const CMatrix b = random_complex_matrix(rng, dim, rank);
    CMatrix p = b * b.adjoint();
    return (p + p.adjoint()) * 0.5;
}

ModuleVector random_module_vector(Rng& rng, ModuleShape shape) {
    return {shape, random_complex_matrix(rng, static_cast<Eigen::Index>(shape.algebra_dim),
                                         static_cast<Eigen::Index>(shape.width()))};
}

double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::uint64_t hash_matrix(const CMatrix& m, std::uint64_t h) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(m.rows()));
    h = splitmix64(h ^ static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(m.data()[k].real()));
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(m.data()[k].imag()));
    }
    return h;
}

}  // namespace opframe
