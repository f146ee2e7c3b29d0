#include <doctest.h>

#include "helpers.hpp"
#include "opframe/harness.hpp"
#include "opframe/random.hpp"

using namespace opframe;
using opframe::testing::diag_matrix;
using opframe::testing::make_frame;
using opframe::testing::scalar_frame;

namespace {

const ModuleShape kPlane{1, 2};

OperatorFrame diag_T() { return make_frame({1, 1}, {diag_matrix({2, 0}), diag_matrix({0, 3})}, kPlane); }
OperatorFrame diag_R() { return make_frame({1, 1}, {diag_matrix({1, 0}), diag_matrix({0, 1})}, kPlane); }

KOperator identity_k(ModuleShape s = {1, 1}) { return KOperator{ModuleOperator::identity(s)}; }

void check_bounds(const FrameBounds& b, double lower, double upper) {
    CHECK(b.lower == doctest::Approx(lower).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(upper).epsilon(1e-12));
}

}  // namespace

TEST_CASE("theorem ids round trip through their names") {
    for (TheoremId id : kAllTheorems) CHECK(theorem_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(theorem_from_string("no_such_theorem"), Error);
}

TEST_CASE("bessel_sum on the diagonal example") {
    // Oracle: diagonal arithmetic. T+R has Gram diag(3², 4²), T−R has diag(1, 2²).
    const Certificate plus = certify_bessel_sum(diag_T(), diag_R(), +1);
    CHECK(plus.hypothesis_ok);
    check_bounds(plus.certified, 1.0, 16.0);
    check_bounds(plus.observed, 9.0, 16.0);
    CHECK(plus.upper_slack == doctest::Approx(0.0));
    CHECK(plus.encloses());

    const Certificate minus = certify_bessel_sum(diag_T(), diag_R(), -1);
    CHECK(minus.hypothesis_ok);
    check_bounds(minus.observed, 1.0, 4.0);
    CHECK(minus.encloses());
    CHECK(minus.theorem == TheoremId::BesselSumMinus);
}

TEST_CASE("bessel_sum with a zero perturbation reproduces the frame bounds") {
    const OperatorFrame zero = make_frame({1, 1}, {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}, kPlane);
    const Certificate c = certify_bessel_sum(diag_T(), zero, +1);
    CHECK(c.hypothesis_ok);
    check_bounds(c.certified, 4.0, 9.0);
    check_bounds(c.observed, 4.0, 9.0);
}

TEST_CASE("bessel_sum rejects R = T") {
    const Certificate c = certify_bessel_sum(diag_T(), diag_T(), +1);
    CHECK_FALSE(c.hypothesis_ok);
    CHECK(c.verified_by == Verification::Failed);
    CHECK(c.encloses());
}

TEST_CASE("bessel_sum rejects mismatched measures and shapes") {
    const OperatorFrame other = make_frame({1, 2}, {diag_matrix({1, 0}), diag_matrix({0, 1})}, kPlane);
    CHECK_THROWS_AS(certify_bessel_sum(diag_T(), other, +1), Error);
    CHECK_THROWS_AS(certify_bessel_sum(scalar_frame(1.0), diag_R(), +1), Error);
}

TEST_CASE("bessel_sum bound override must not be tighter than optimal") {
    CHECK_NOTHROW(certify_bessel_sum(diag_T(), diag_R(), +1, {}, FrameBounds{3.0, 10.0}));
    CHECK_THROWS_AS(certify_bessel_sum(diag_T(), diag_R(), +1, {}, FrameBounds{5.0, 9.0}), Error);
}

TEST_CASE("optimal_min_constant examples") {
    CHECK(optimal_min_constant(scalar_frame(2.0), scalar_frame(1.0)).value == doctest::Approx(1.0));
    CHECK(optimal_min_constant(diag_T(), diag_T()).value == doctest::Approx(0.0));
    CHECK(optimal_min_constant(scalar_frame(1.0), scalar_frame(-1.0)).value == doctest::Approx(4.0));
}

TEST_CASE("min_condition examples") {
    const Certificate c = certify_min_condition(scalar_frame(2.0), scalar_frame(1.0), std::nullopt);
    CHECK(c.hypothesis_ok);
    check_bounds(c.certified, 1.0, 16.0);
    check_bounds(c.observed, 1.0, 1.0);
    CHECK(c.lower_slack >= 0.0);
    CHECK(c.upper_slack >= 0.0);

    const Certificate same = certify_min_condition(diag_T(), diag_T(), std::nullopt);
    check_bounds(same.certified, 4.0, 9.0);
    check_bounds(same.observed, 4.0, 9.0);

    const Certificate k2 = certify_min_condition(scalar_frame(2.0), scalar_frame(1.0),
                                                 KOperator{ModuleOperator({1, 1}, CMatrix::Constant(1, 1, 2.0))});
    CHECK(k2.values.at("converse_applicable") == 1.0);
    CHECK(k2.theorem == TheoremId::MinConditionK);
    const Certificate khalf = certify_min_condition(scalar_frame(2.0), scalar_frame(1.0),
                                                    KOperator{ModuleOperator({1, 1}, CMatrix::Constant(1, 1, 0.5))});
    CHECK(khalf.values.at("converse_applicable") == 0.0);
}

TEST_CASE("min_condition reports an infinite constant when R vanishes on part of the space") {
    const OperatorFrame R = make_frame({1, 1}, {diag_matrix({1, 0}), diag_matrix({0, 0})}, kPlane);
    const Certificate c = certify_min_condition(diag_T(), R, std::nullopt);
    CHECK_FALSE(c.hypothesis_ok);
    CHECK(std::isinf(c.values.at("M")));
}

TEST_CASE("combination examples") {
    const std::vector<OperatorFrame> fams{scalar_frame(1.0), scalar_frame(2.0)};
    const std::vector<Complex> ones{1.0, 1.0};
    const Certificate c = certify_combination(fams, ones, 0, std::nullopt);
    CHECK(c.hypothesis_ok);
    CHECK(c.values.at("lambda_squared") == doctest::Approx(9.0));
    check_bounds(c.certified, 9.0, 9.0);
    check_bounds(c.observed, 9.0, 9.0);

    const std::vector<OperatorFrame> single{diag_T()};
    const std::vector<Complex> one{1.0};
    const Certificate s = certify_combination(single, one, 0, std::nullopt);
    CHECK(s.certified.lower == doctest::Approx(4.0));
    check_bounds(s.observed, 4.0, 9.0);

    const std::vector<OperatorFrame> twins{diag_T(), diag_T()};
    const std::vector<Complex> cancel{1.0, -1.0};
    const Certificate z = certify_combination(twins, cancel, 0, std::nullopt);
    CHECK_FALSE(z.hypothesis_ok);

    CHECK_THROWS_AS(certify_combination(fams, ones, 2, std::nullopt), Error);
    CHECK_THROWS_AS(certify_combination(fams, one, 0, std::nullopt), Error);
}

TEST_CASE("combination converse constant holds in squared form") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t d = 1 + seed % 3, n = 1 + seed % 2, m = 2 + seed % 4;
        const OperatorFrame T1 = random_frame(seed, d, n, m, 2.0);
        const OperatorFrame T2 = random_frame(seed + 500, d, n, m, 3.0);
        const OperatorFrame T2m(T1.measure(), T2.operators());
        const std::vector<OperatorFrame> fams{T1, T2m};
        const std::vector<Complex> alphas{Complex(1.0, 0.5), Complex(-0.3, 0.2)};
        const Certificate c = certify_combination(fams, alphas, seed % 2, std::nullopt);
        if (!c.hypothesis_ok || c.observed.lower <= 0.0) continue;
        CHECK(c.values.at("converse_ok") == 1.0);
        CHECK(c.encloses());
    }
}

TEST_CASE("minimal_extension_norm examples") {
    CHECK(minimal_extension_norm(scalar_frame(2.0), scalar_frame(1.0)).value == doctest::Approx(2.0));
    CHECK(minimal_extension_norm(diag_T(), diag_T()).value == doctest::Approx(1.0));
    const OperatorFrame I = make_frame({1}, {CMatrix::Identity(2, 2)}, kPlane);
    const OperatorFrame P = make_frame({1}, {diag_matrix({1, 0})}, kPlane);
    CHECK(minimal_extension_norm(I, P).unbounded);
}

TEST_CASE("extension examples") {
    const std::vector<OperatorFrame> ts{scalar_frame(2.0)};
    const std::vector<OperatorFrame> rs{scalar_frame(1.0)};
    const Certificate c = certify_extension(ts, rs, 0, 0.25, std::nullopt);
    CHECK(c.hypothesis_ok);
    CHECK(c.values.at("L_norm") == doctest::Approx(2.0));
    check_bounds(c.certified, 1.0, 9.0);
    check_bounds(c.observed, 1.0, 1.0);

    const std::vector<OperatorFrame> same{diag_T()};
    const Certificate z = certify_extension(same, same, 0, 0.0, std::nullopt);
    CHECK(z.hypothesis_ok);
    CHECK(z.certified.lower <= z.observed.lower + 1e-12);

    const std::vector<OperatorFrame> zero{make_frame({1, 1}, {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}, kPlane)};
    const Certificate u = certify_extension(same, zero, 0, 1.0, std::nullopt);
    CHECK_FALSE(u.hypothesis_ok);
    CHECK(std::isinf(u.values.at("L_norm")));

    CHECK_THROWS_AS(certify_extension(ts, std::vector<OperatorFrame>{}, 0, 0.25, std::nullopt), Error);
}

TEST_CASE("extension with identical families always certifies") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const OperatorFrame T1 = random_frame(seed, 1 + seed % 3, 1 + seed % 3, 1 + seed % 5, 4.0);
        const OperatorFrame T2(T1.measure(), random_frame(seed + 9, 1 + seed % 3, 1 + seed % 3, 1 + seed % 5, 2.0)
                                                 .operators());
        const std::vector<OperatorFrame> ts{T1, T2};
        const Certificate c = certify_extension(ts, ts, seed % 2, 0.0, std::nullopt);
        CHECK(c.hypothesis_ok);
        CHECK(c.certified.lower <= c.observed.lower + 1e-9 * c.scale());
    }
}

TEST_CASE("weighted examples") {
    const std::vector<double> ones{1.0, 1.0};
    const Certificate c = certify_weighted(diag_T(), diag_T(), ones, ones, 0.0, 0.0, identity_k(kPlane));
    CHECK(c.hypothesis_ok);
    check_bounds(c.certified, 4.0, 9.0);
    check_bounds(c.observed, 4.0, 9.0);

    const std::vector<double> twos{2.0, 2.0};
    const Certificate s = certify_weighted(diag_T(), diag_T().scaled(2.0), twos, ones, 0.0, 0.0, identity_k(kPlane));
    CHECK(s.hypothesis_ok);
    CHECK(s.certified.lower == doctest::Approx(16.0));
    CHECK(s.observed.lower == doctest::Approx(16.0));

    CHECK_NOTHROW(certify_weighted(diag_T(), diag_T(), ones, ones, 0.99, 0.0, identity_k(kPlane)));
    CHECK_THROWS_AS(certify_weighted(diag_T(), diag_T(), ones, ones, 1.0, 0.0, identity_k(kPlane)), Error);
    CHECK_THROWS_AS(certify_weighted(diag_T(), diag_T(), ones, std::vector<double>{1.0}, 0.0, 0.0,
                                     identity_k(kPlane)),
                    Error);
}

TEST_CASE("k_perturbation examples") {
    const Certificate same = certify_k_perturbation(diag_T(), diag_T(), identity_k(kPlane), 0.0, 0.0);
    CHECK(same.hypothesis_ok);
    check_bounds(same.certified, 4.0, 9.0);
    check_bounds(same.observed, 4.0, 9.0);

    const Certificate c = certify_k_perturbation(scalar_frame(2.0), scalar_frame(1.5), identity_k(), 0.0625, 0.0);
    CHECK(c.hypothesis_ok);
    CHECK(c.verified_by == Verification::Loewner);
    check_bounds(c.certified, 2.25, 6.25);
    check_bounds(c.observed, 2.25, 2.25);

    CHECK_THROWS_AS(certify_k_perturbation(scalar_frame(2.0), scalar_frame(1.5), identity_k(), 1.0, 0.0), Error);
    CHECK_THROWS_AS(certify_k_perturbation(scalar_frame(2.0), scalar_frame(1.5), identity_k(), -0.1, 0.0), Error);
}

TEST_CASE("k_perturbation corollary is the alpha = 0 call") {
    const Certificate a = certify_k_perturbation_corollary(scalar_frame(2.0), scalar_frame(1.5), identity_k(), 0.25);
    const Certificate b = certify_k_perturbation(scalar_frame(2.0), scalar_frame(1.5), identity_k(), 0.0, 0.25);
    CHECK(a.theorem == TheoremId::KPerturbationCorollary);
    CHECK(a.certified.lower == b.certified.lower);
    CHECK(a.certified.upper == b.certified.upper);
    // A(1 − √(α/A))² with A = 4, α = 1/4.
    CHECK(a.certified.lower == doctest::Approx(4.0 * std::pow(1.0 - 0.25, 2)));
}

TEST_CASE("scaling R scales the Bessel bound quadratically") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const OperatorFrame T = random_frame(seed, 1 + seed % 3, 1 + seed % 4, 1 + seed % 6, 2.0);
        const OperatorFrame R = random_bessel_below(seed, T, 0.5);
        const double s = 0.1 + 0.009 * static_cast<double>(seed);
        const double m1 = certify_bessel_sum(T, R, +1).values.at("M");
        const double ms = certify_bessel_sum(T, R.scaled(s), +1).values.at("M");
        CHECK(std::abs(ms - s * s * m1) <= 1e-10 * std::max(1.0, m1));
    }
}

TEST_CASE("every certifier encloses on random hypothesis-satisfying instances") {
    const Tolerance t;
    for (TheoremId id : kAllTheorems) {
        for (std::size_t trial = 0; trial < 30; ++trial) {
            const Dims dims{1 + trial % 3, 1 + trial % 4, 1 + trial % 9};
            const Certificate c = run_trial(99, trial, id, dims, t);
            CHECK_MESSAGE(c.hypothesis_ok, to_string(id));
            CHECK_MESSAGE(c.encloses(), to_string(id), " trial ", trial, " slacks ", c.lower_slack, " ",
                          c.upper_slack);
        }
    }
}
