#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "opframe/harness.hpp"
#include "opframe/random.hpp"

using namespace opframe;
using opframe::testing::diag_matrix;
using opframe::testing::make_frame;
using opframe::testing::max_abs_diff;
using opframe::testing::scalar_frame;

namespace {

const ModuleShape kPlane{1, 2};

OperatorFrame diag14() { return make_frame({1, 1}, {diag_matrix({1, 0}), diag_matrix({0, 2})}, kPlane); }

OperatorFrame parseval_pair() {
    const double h = 1.0 / std::sqrt(2.0);
    return make_frame({1, 1}, {h * CMatrix::Identity(2, 2), h * CMatrix::Identity(2, 2)}, kPlane);
}

double gram_scale(const OperatorFrame& F) { return std::max(1.0, optimal_bounds(F).upper); }

}  // namespace

TEST_CASE("MeasureSpace and OperatorFrame validation") {
    CHECK_THROWS_AS(MeasureSpace(std::vector<double>{}), Error);
    CHECK_THROWS_AS(MeasureSpace({1.0, 0.0}), Error);
    CHECK_THROWS_AS(MeasureSpace({-2.0}), Error);
    CHECK_THROWS_AS(OperatorFrame(MeasureSpace({1.0, 1.0}), {ModuleOperator::identity(kPlane)}), Error);
    CHECK_THROWS_AS(
        OperatorFrame(MeasureSpace({1.0, 1.0}), {ModuleOperator::identity(kPlane), ModuleOperator::identity({1, 3})}),
        Error);
}

TEST_CASE("frame_gram examples") {
    CHECK(max_abs_diff(frame_gram(scalar_frame(1.0)).entries(), CMatrix::Identity(1, 1)) == 0.0);
    CHECK(max_abs_diff(frame_gram(diag14()).entries(), diag_matrix({1, 4})) == 0.0);
    const auto two = make_frame({2.0}, {CMatrix::Identity(2, 2)}, kPlane);
    CHECK(max_abs_diff(frame_gram(two).entries(), diag_matrix({2, 2})) == 0.0);
}

TEST_CASE("optimal_bounds examples") {
    auto b = optimal_bounds(diag14());
    CHECK(b.lower == doctest::Approx(1.0));
    CHECK(b.upper == doctest::Approx(4.0));
    b = optimal_bounds(parseval_pair());
    CHECK(b.lower == doctest::Approx(1.0));
    CHECK(b.upper == doctest::Approx(1.0));
    b = optimal_bounds(make_frame({1.0}, {CMatrix::Zero(2, 2)}, kPlane));
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 0.0);
}

TEST_CASE("classify examples") {
    auto c = classify(parseval_pair());
    CHECK(c.is_parseval);
    CHECK(c.is_tight);
    CHECK(c.is_frame);
    c = classify(diag14());
    CHECK(c.is_frame);
    CHECK_FALSE(c.is_tight);
    c = classify(make_frame({1.0}, {diag_matrix({0, 1})}, kPlane));
    CHECK(c.is_bessel);
    CHECK_FALSE(c.is_frame);
    c = classify(make_frame({1.0}, {CMatrix::Zero(2, 2)}, kPlane));
    CHECK(c.is_bessel);
    CHECK_FALSE(c.is_frame);
}

TEST_CASE("frame_operator and s_k examples") {
    CHECK(max_abs_diff(frame_operator(parseval_pair()).matrix(), CMatrix::Identity(2, 2)) < 1e-15);
    CHECK(max_abs_diff(frame_operator(diag14()).matrix(), diag_matrix({1, 4})) == 0.0);
    const auto two = make_frame({2.0}, {CMatrix::Identity(2, 2)}, kPlane);
    CHECK(max_abs_diff(s_k(two).matrix(), 2.0 * CMatrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs_diff(s_k(diag14()).matrix(), diag_matrix({1, 4})) == 0.0);
}

TEST_CASE("analysis and synthesis examples") {
    CMatrix xm(1, 2);
    xm << 1, 1;
    const ModuleVector x(kPlane, xm);
    const L2Family single = analysis(make_frame({1.0}, {CMatrix::Identity(2, 2)}, kPlane), x);
    REQUIRE(single.point_count() == 1);
    CHECK(max_abs_diff(single.members[0].entries(), xm) == 0.0);

    const L2Family zero = analysis(diag14(), ModuleVector::zero(kPlane));
    for (const auto& v : zero.members) CHECK(v.entries().norm() == 0.0);

    const L2Family f = analysis(diag14(), x);
    CHECK(f.members[0].entries()(0, 0) == Complex(1.0));
    CHECK(f.members[0].entries()(0, 1) == Complex(0.0));
    CHECK(f.members[1].entries()(0, 0) == Complex(0.0));
    CHECK(f.members[1].entries()(0, 1) == Complex(2.0));

    CHECK(max_abs_diff(synthesis(make_frame({1.0}, {CMatrix::Identity(2, 2)}, kPlane), single).entries(), xm) == 0);
    CHECK(max_abs_diff(synthesis(parseval_pair(), analysis(parseval_pair(), x)).entries(), xm) < 1e-15);
    CHECK(synthesis(diag14(), zero).entries().norm() == 0.0);
    CHECK_THROWS_AS(synthesis(diag14(), single), Error);
}

TEST_CASE("k_frame_bounds examples") {
    const auto F = diag14();
    const auto kb = k_frame_bounds(F, KOperator{ModuleOperator::identity(kPlane)});
    CHECK(kb.bounds.lower == doctest::Approx(1.0));
    CHECK(kb.bounds.upper == doctest::Approx(4.0));

    const auto I = make_frame({1.0}, {CMatrix::Identity(2, 2)}, kPlane);
    auto r = k_frame_bounds(I, KOperator{ModuleOperator(kPlane, diag_matrix({1, 0}))});
    CHECK(r.bounds.lower == doctest::Approx(1.0));
    CHECK(r.bounds.upper == doctest::Approx(1.0));
    CHECK(r.is_k_frame);

    r = k_frame_bounds(I, KOperator{ModuleOperator(kPlane, diag_matrix({2, 2}))});
    CHECK(r.bounds.lower == doctest::Approx(0.25));
    CHECK(r.bounds.upper == doctest::Approx(1.0));

    CHECK_THROWS_AS(k_frame_bounds(I, KOperator{ModuleOperator::zero(kPlane)}), Error);
}

TEST_CASE("remark_bound examples") {
    const auto I = make_frame({1.0}, {CMatrix::Identity(2, 2)}, kPlane);
    CHECK(remark_bound(I, KOperator{ModuleOperator(kPlane, diag_matrix({2, 2}))}) == doctest::Approx(0.25));
    Rng rng = make_rng(8);
    CHECK(remark_bound(I, KOperator{ModuleOperator(kPlane, random_unitary(rng, 2))}) == doctest::Approx(1.0));
    CHECK(remark_bound(diag14(), KOperator{ModuleOperator::identity(kPlane)}) == doctest::Approx(1.0));

    try {
        remark_bound(make_frame({1.0}, {diag_matrix({0, 1})}, kPlane), KOperator{ModuleOperator::identity(kPlane)});
        FAIL("expected NotAFrame");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAFrame);
    }
    try {
        remark_bound(I, KOperator{ModuleOperator::zero(kPlane)});
        FAIL("expected ZeroK");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroK);
    }
}

TEST_CASE("frame operators are self-adjoint and positive; synthesis is the adjoint of analysis") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const std::size_t d = 1 + seed % 3, n = 1 + seed / 3 % 4, m = 1 + seed % 7;
        const OperatorFrame F = random_frame(seed, d, n, m, 1.0 + static_cast<double>(seed % 10));
        const ModuleOperator S = frame_operator(F);
        CHECK(max_abs_diff(S.matrix(), S.matrix().adjoint()) == 0.0);
        CHECK(is_positive(AlgebraElement(S.matrix())));

        Rng rng = make_rng(seed, {0xf1});
        const ModuleVector x = random_module_vector(rng, F.shape());
        L2Family f;
        for (std::size_t j = 0; j < m; ++j) f.members.push_back(random_module_vector(rng, F.shape()));
        const double scale = gram_scale(F) * std::max(1.0, vec_norm(x) * l2_norm(f, F.measure().weights()));
        CHECK(max_abs_diff(l2_inner(analysis(F, x), f, F.measure().weights()).entries(),
                           inner_product(x, synthesis(F, f)).entries()) <= 1e-12 * scale);

        const ModuleVector sx = synthesis(F, analysis(F, x));
        CHECK(max_abs_diff(apply(s_k(F), x).entries(), sx.entries()) <=
              1e-12 * gram_scale(F) * std::max(1.0, vec_norm(x)));
    }
}

TEST_CASE("optimal bounds satisfy the Loewner frame inequality") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const std::size_t d = 1 + seed % 3, n = 1 + seed / 3 % 4, m = 1 + seed % 9;
        const OperatorFrame F = random_frame(seed + 1000, d, n, m, 1.0 + static_cast<double>(seed % 6));
        const FrameBounds b = optimal_bounds(F);
        Rng rng = make_rng(seed, {0xf2});
        const ModuleVector x = random_module_vector(rng, F.shape());
        AlgebraElement integral = AlgebraElement::zero(d);
        for (std::size_t j = 0; j < m; ++j) {
            const ModuleVector y = apply(F.op(j), x);
            integral = integral + F.measure().weight(j) * inner_product(y, y);
        }
        const AlgebraElement xx = inner_product(x, x);
        const Tolerance t{1e-10, 1e-12};
        CHECK(loewner_leq(b.lower * xx, integral, t));
        CHECK(loewner_leq(integral, b.upper * xx, t));
    }
}

TEST_CASE("spectral lower bound equals the sampled norm-ratio infimum") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t d = 1 + seed % 3, n = 1 + seed / 3 % 4, m = 1 + seed % 5;
        const OperatorFrame F = random_frame(seed + 77, d, n, m, 2.0 + static_cast<double>(seed % 5));
        const CMatrix G = frame_gram(F).entries();
        const double A = optimal_bounds(F).lower;
        Rng rng = make_rng(seed, {0xf3});
        auto ratio = [&](const CMatrix& X) {
            return op_norm(CMatrix(X * G * X.adjoint())) / op_norm(CMatrix(X * X.adjoint()));
        };
        double best = 1e300;
        for (int s = 0; s < 200; ++s) {
            const double r = ratio(random_module_vector(rng, F.shape()).entries());
            CHECK(r >= A - 1e-9 * std::max(1.0, A));
            best = std::min(best, r);
        }
        CHECK(best >= A - 1e-9 * std::max(1.0, A));
        // Rows drawn from the extremal eigenvector attain the bound.
        Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
        const CVector v = es.eigenvectors().col(0);
        CMatrix X(static_cast<Eigen::Index>(d), G.rows());
        for (Eigen::Index r = 0; r < X.rows(); ++r) X.row(r) = (static_cast<double>(r) + 1.0) * v.adjoint();
        X.row(0) += 1e-7 * random_complex_matrix(rng, 1, G.rows());
        CHECK(std::abs(ratio(X) - A) <= 1e-9 * std::max(1.0, optimal_bounds(F).upper));
    }
}

TEST_CASE("k_frame_bounds with identity K equals optimal_bounds") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t d = 1 + seed % 3, n = 1 + seed / 3 % 4, m = 1 + seed % 6;
        const OperatorFrame F = random_frame(seed + 3, d, n, m, 3.0);
        const auto kb = k_frame_bounds(F, KOperator{ModuleOperator::identity(F.shape())});
        const auto b = optimal_bounds(F);
        CHECK(std::abs(kb.bounds.lower - b.lower) <= 1e-10 * std::max(1.0, b.upper));
        CHECK(std::abs(kb.bounds.upper - b.upper) <= 1e-10 * std::max(1.0, b.upper));
    }
}
