#include <doctest.h>

#include "helpers.hpp"
#include "opframe/random.hpp"

using namespace opframe;
using opframe::testing::diag_matrix;
using opframe::testing::max_abs_diff;

namespace {

ModuleVector row(std::initializer_list<Complex> entries) {
    CMatrix m(1, static_cast<Eigen::Index>(entries.size()));
    Eigen::Index j = 0;
    for (Complex z : entries) m(0, j++) = z;
    return ModuleVector({1, entries.size()}, m);
}

double scale_of(std::initializer_list<double> norms) {
    double s = 1.0;
    for (double n : norms) s = std::max(s, n * n);
    return s;
}

}  // namespace

TEST_CASE("inner_product examples") {
    CHECK(std::abs(inner_product(row({1, 0}), row({0, 1})).entries()(0, 0)) == 0.0);
    CHECK(inner_product(row({1, 1}), row({1, 1})).entries()(0, 0) == Complex(2.0));
    const ModuleVector x({2, 1}, CMatrix::Identity(2, 2));
    const ModuleVector y({2, 1}, diag_matrix({1, 0}));
    CHECK(max_abs_diff(inner_product(x, y).entries(), diag_matrix({1, 0})) == 0.0);
    CHECK_THROWS_AS(inner_product(row({1}), row({1, 2})), Error);
}

TEST_CASE("module_action examples") {
    const ModuleVector x({2, 1}, CMatrix::Identity(2, 2));
    CHECK(max_abs_diff(module_action(AlgebraElement::identity(2), x).entries(), x.entries()) == 0.0);
    CHECK(module_action(AlgebraElement::zero(2), x).entries().norm() == 0.0);
    CHECK(max_abs_diff(module_action(AlgebraElement(diag_matrix({2, 3})), x).entries(), diag_matrix({2, 3})) ==
          0.0);
    CHECK_THROWS_AS(module_action(AlgebraElement::identity(3), x), Error);
}

TEST_CASE("vec_norm examples") {
    CHECK(vec_norm(ModuleVector::zero({2, 2})) == 0.0);
    CHECK(vec_norm(row({3, 4})) == doctest::Approx(5.0));
    CHECK(vec_norm(ModuleVector({2, 1}, diag_matrix({1, 2}))) == doctest::Approx(2.0));
}

TEST_CASE("apply examples") {
    const ModuleShape s{1, 2};
    const ModuleVector x = row({1, 1});
    CHECK(max_abs_diff(apply(ModuleOperator::identity(s), x).entries(), x.entries()) == 0.0);
    CHECK(max_abs_diff(apply(ModuleOperator(s, diag_matrix({2, 3})), x).entries(), row({2, 3}).entries()) == 0.0);
    CHECK(apply(ModuleOperator::zero(s), x).entries().norm() == 0.0);
    CHECK_THROWS_AS(apply(ModuleOperator::identity({1, 3}), x), Error);
}

TEST_CASE("adjoint_op examples") {
    const ModuleShape s{1, 2};
    CHECK(max_abs_diff(adjoint_op(ModuleOperator::identity(s)).matrix(), CMatrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs_diff(adjoint_op(ModuleOperator(s, diag_matrix({2, 3}))).matrix(), diag_matrix({2, 3})) == 0.0);
    CMatrix n(2, 2);
    n << 0, 1, 0, 0;
    CHECK(max_abs_diff(adjoint_op(ModuleOperator(s, n)).matrix(), n.transpose()) == 0.0);
}

TEST_CASE("operator_norm, lower_bound_constant and is_surjective examples") {
    const ModuleShape s{1, 2};
    CHECK(operator_norm(ModuleOperator::identity(s)) == doctest::Approx(1.0));
    CHECK(operator_norm(ModuleOperator(s, diag_matrix({2, -3}))) == doctest::Approx(3.0));
    CMatrix n(2, 2);
    n << 0, 5, 0, 0;
    CHECK(operator_norm(ModuleOperator(s, n)) == doctest::Approx(5.0));

    CHECK(lower_bound_constant(Complex(2.0) * ModuleOperator::identity(s)) == doctest::Approx(2.0));
    CHECK(lower_bound_constant(ModuleOperator(s, diag_matrix({1, 0}))) == doctest::Approx(0.0));
    Rng rng = make_rng(5);
    const ModuleOperator u(s, random_unitary(rng, 2));
    CHECK(lower_bound_constant(u) == doctest::Approx(1.0));

    CHECK(is_surjective(ModuleOperator::identity(s)));
    CHECK_FALSE(is_surjective(ModuleOperator(s, diag_matrix({1, 0}))));
    CHECK(is_surjective(Complex(3.0) * u));
}

TEST_CASE("l2_inner examples") {
    const std::vector<double> w2{2.0};
    L2Family f{{row({1, 0})}};
    CHECK(l2_inner(f, f, w2).entries()(0, 0) == Complex(2.0));
    L2Family z{{ModuleVector::zero({1, 2})}};
    CHECK(std::abs(l2_inner(f, z, w2).entries()(0, 0)) == 0.0);
    L2Family g{{row({1, 0}), row({0, 1})}};
    const std::vector<double> w11{1.0, 1.0};
    CHECK(l2_inner(g, g, w11).entries()(0, 0) == Complex(2.0));
    CHECK_THROWS_AS(l2_inner(f, g, w11), Error);
}

TEST_CASE("Hilbert module axioms on random data") {
    Rng rng = make_rng(21);
    for (int i = 0; i < 500; ++i) {
        const ModuleShape s{1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i / 3 % 4)};
        const auto d = static_cast<Eigen::Index>(s.algebra_dim);
        const ModuleVector x = random_module_vector(rng, s);
        const ModuleVector y = random_module_vector(rng, s);
        const ModuleVector z = random_module_vector(rng, s);
        const AlgebraElement a(random_complex_matrix(rng, d, d));
        const double scale = scale_of({vec_norm(x), vec_norm(y), vec_norm(z), op_norm(a) * vec_norm(x)});

        CHECK(is_positive(inner_product(x, x)));
        CHECK(max_abs_diff(inner_product(module_action(a, x) + y, z).entries(),
                           (a * inner_product(x, z) + inner_product(y, z)).entries()) <= 1e-12 * scale);
        CHECK(max_abs_diff(inner_product(x, y).entries(), inner_product(y, x).entries().adjoint()) <=
              1e-12 * scale);
    }
    CHECK(inner_product(ModuleVector::zero({2, 2}), ModuleVector::zero({2, 2})).entries().norm() == 0.0);
}

TEST_CASE("operator norm dominates the module inner product") {
    Rng rng = make_rng(22);
    for (int i = 0; i < 500; ++i) {
        const ModuleShape s{1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i / 3 % 4)};
        const auto w = static_cast<Eigen::Index>(s.width());
        const ModuleOperator T(s, random_complex_matrix(rng, w, w));
        const ModuleVector x = random_module_vector(rng, s);
        const ModuleVector tx = apply(T, x);
        const double n = operator_norm(T);
        CHECK(loewner_leq(inner_product(tx, tx), n * n * inner_product(x, x)));
    }
}

TEST_CASE("surjectivity, bounded-below adjoint and the sigma_min pencil coincide") {
    Rng rng = make_rng(23);
    for (int i = 0; i < 500; ++i) {
        const ModuleShape s{1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i / 3 % 4)};
        const auto w = static_cast<Eigen::Index>(s.width());
        CMatrix m = random_complex_matrix(rng, w, w);
        if (i % 3 == 0 && w > 1) m.col(0) = m.col(1);  // rank deficient
        const ModuleOperator T(s, m);
        const double lb = lower_bound_constant(T);
        const bool surj = is_surjective(T);
        CHECK(surj == (lb > Tolerance{}.rel * operator_norm(T) + Tolerance{}.abs_floor));
        // Independent rank oracle for surjectivity of X -> XT.
        Eigen::FullPivLU<CMatrix> lu(m);
        lu.setThreshold(1e-10);
        CHECK(surj == (lu.rank() == w));

        const ModuleVector x = random_module_vector(rng, s);
        const ModuleVector tsx = apply(adjoint_op(T), x);
        CHECK(loewner_leq(lb * lb * inner_product(x, x), inner_product(tsx, tsx)));
        CHECK(vec_norm(tsx) >= lb * vec_norm(x) - 1e-12 * std::max(1.0, operator_norm(T) * vec_norm(x)));
    }
}

TEST_CASE("finite sums commute with module operators") {
    Rng rng = make_rng(24);
    for (int i = 0; i < 500; ++i) {
        const ModuleShape s{1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i / 3 % 4)};
        const auto w = static_cast<Eigen::Index>(s.width());
        const ModuleOperator T(s, random_complex_matrix(rng, w, w));
        ModuleVector sum = ModuleVector::zero(s);
        ModuleVector image_sum = ModuleVector::zero(s);
        double scale = 1.0;
        for (int j = 0; j < 1 + i % 5; ++j) {
            const double wt = uniform_real(rng, 0.1, 2.0);
            const ModuleVector f = random_module_vector(rng, s);
            sum = sum + Complex(wt) * f;
            image_sum = image_sum + Complex(wt) * apply(T, f);
            scale = std::max(scale, wt * operator_norm(T) * vec_norm(f));
        }
        CHECK(max_abs_diff(apply(T, sum).entries(), image_sum.entries()) <= 1e-12 * scale * 8);
    }
}

TEST_CASE("l2_inner of a family with itself is positive") {
    Rng rng = make_rng(25);
    for (int i = 0; i < 200; ++i) {
        const ModuleShape s{1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i / 3 % 4)};
        L2Family f;
        std::vector<double> w;
        for (int j = 0; j < 1 + i % 6; ++j) {
            f.members.push_back(random_module_vector(rng, s));
            w.push_back(uniform_real(rng, 0.1, 3.0));
        }
        CHECK(is_positive(l2_inner(f, f, w)));
    }
}
