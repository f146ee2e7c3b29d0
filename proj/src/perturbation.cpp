#include "opframe/perturbation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "opframe/random.hpp"

namespace opframe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TheoremName {
    TheoremId id;
    std::string_view name;
};

constexpr TheoremName kTheoremNames[] = {
    {TheoremId::BesselSumPlus, "bessel_sum_plus"},
    {TheoremId::BesselSumMinus, "bessel_sum_minus"},
    {TheoremId::MinCondition, "min_condition"},
    {TheoremId::MinConditionK, "min_condition_k"},
    {TheoremId::Combination, "combination"},
    {TheoremId::CombinationK, "combination_k"},
    {TheoremId::Extension, "extension"},
    {TheoremId::ExtensionK, "extension_k"},
    {TheoremId::Weighted, "weighted"},
    {TheoremId::KPerturbation, "k_perturbation"},
    {TheoremId::KPerturbationCorollary, "k_perturbation_corollary"},
};

std::uint64_t frame_hash(const OperatorFrame& F, std::uint64_t h = 0) {
    for (std::size_t j = 0; j < F.point_count(); ++j) {
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(F.measure().weight(j)));
        h = hash_matrix(F.op(j).matrix(), h);
    }
    return h;
}

FrameBounds bounds_of(const OperatorFrame& F, const std::optional<KOperator>& K, const Tolerance& t) {
    return K ? k_frame_bounds(F, *K, t).bounds : optimal_bounds(F);
}

// A user-supplied (A, B) must still be valid bounds for T, i.e. no tighter
// than the optimal ones.
FrameBounds resolve_bounds(const FrameBounds& optimal, const std::optional<FrameBounds>& over, const Tolerance& t) {
    if (!over) return optimal;
    const double slack = t.rel * std::max(1.0, optimal.upper);
    if (!(over->lower >= 0.0) || !(over->lower <= over->upper)) {
        throw Error(ErrorKind::BadParameter, "bounds override must satisfy 0 <= A <= B");
    }
    if (over->lower > optimal.lower + slack || over->upper < optimal.upper - slack) {
        throw Error(ErrorKind::BadParameter, "bounds override is tighter than the optimal bounds " +
                                                 std::to_string(optimal.lower) + ", " +
                                                 std::to_string(optimal.upper));
    }
    return *over;
}

void finish(Certificate& c) {
    c.lower_slack = c.observed.lower - c.certified.lower;
    c.upper_slack = c.certified.upper - c.observed.upper;
}

OperatorFrame pointwise_scaled(const OperatorFrame& F, std::span<const double> s) {
    std::vector<ModuleOperator> ops;
    ops.reserve(F.point_count());
    for (std::size_t j = 0; j < F.point_count(); ++j) ops.push_back(Complex(s[j]) * F.op(j));
    return {F.measure(), std::move(ops)};
}

OperatorFrame sum_of(std::span<const OperatorFrame> families, std::span<const Complex> coeffs = {}) {
    OperatorFrame acc = families.front().scaled(coeffs.empty() ? Complex(1.0) : coeffs[0]);
    for (std::size_t k = 1; k < families.size(); ++k) {
        acc = acc.plus(families[k], coeffs.empty() ? Complex(1.0) : coeffs[k]);
    }
    return acc;
}

void require_k_shape(const std::optional<KOperator>& K, const OperatorFrame& F) {
    if (K && !(K->op.shape() == F.shape())) throw Error(ErrorKind::DimensionMismatch, "K and frames differ in shape");
}

double norm_form(const CMatrix& X, const CMatrix& G) { return op_norm(CMatrix(X * G * X.adjoint())); }

// Single-row module vector whose inner products reduce to v^H G v.
CMatrix row_vector(const CVector& v, Eigen::Index d) {
    CMatrix X = CMatrix::Zero(d, v.size());
    X.row(0) = v.adjoint();
    return X;
}

// Minimum of `slack(X)` over seeded random unit vectors plus single-row
// candidates built from the supplied directions.
double sampled_min_slack(ModuleShape shape, std::span<const CVector> directions, std::size_t samples, Rng& rng,
                         const std::function<double(const CMatrix&)>& slack) {
    const auto d = static_cast<Eigen::Index>(shape.algebra_dim);
    double worst = kInf;
    for (const CVector& v : directions) {
        if (v.size() == 0 || !(v.norm() > 0.0)) continue;
        worst = std::min(worst, slack(row_vector(v.normalized(), d)));
    }
    for (std::size_t s = 0; s < samples; ++s) {
        ModuleVector x = random_module_vector(rng, shape);
        const double n = vec_norm(x);
        if (!(n > 0.0)) continue;
        worst = std::min(worst, slack(x.entries() / n));
    }
    return worst;
}

void append_eigenvectors(std::vector<CVector>& out, const AlgebraElement& g) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g.entries());
    for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i) out.emplace_back(es.eigenvectors().col(i));
}

}  // namespace

std::string_view to_string(TheoremId id) {
    for (const auto& entry : kTheoremNames) {
        if (entry.id == id) return entry.name;
    }
    return "unknown";
}

TheoremId theorem_from_string(std::string_view name) {
    for (const auto& entry : kTheoremNames) {
        if (entry.name == name) return entry.id;
    }
    throw Error(ErrorKind::BadParameter, "unknown theorem id '" + std::string(name) + "'");
}

std::string_view to_string(Verification v) {
    switch (v) {
    case Verification::Exact: return "exact";
    case Verification::Loewner: return "loewner";
    case Verification::Sampling: return "sampling";
    case Verification::Failed: return "failed";
    }
    return "unknown";
}

double Certificate::scale() const { return std::max(1.0, observed.upper); }

bool Certificate::encloses() const {
    if (!hypothesis_ok) return true;
    const double tol = -kEnclosureTolerance * scale();
    return lower_slack >= tol && upper_slack >= tol;
}

Certificate certify_bessel_sum(const OperatorFrame& T, const OperatorFrame& R, int sign, const Tolerance& t,
                               std::optional<FrameBounds> bounds) {
    if (sign != 1 && sign != -1) throw Error(ErrorKind::BadParameter, "sign must be +1 or -1");
    require_compatible(T, R);

    Certificate c;
    c.theorem = sign > 0 ? TheoremId::BesselSumPlus : TheoremId::BesselSumMinus;
    const FrameBounds tb = resolve_bounds(optimal_bounds(T), bounds, t);
    const double m = std::max(0.0, hermitian_eigenvalues(frame_gram(R)).back());

    c.hypothesis_ok = m < tb.lower - t.rel;
    c.hypothesis_margin = tb.lower - m;
    c.verified_by = c.hypothesis_ok ? Verification::Exact : Verification::Failed;

    const double sa = std::sqrt(tb.lower);
    const double sb = std::sqrt(tb.upper);
    const double sm = std::sqrt(m);
    c.certified = {c.hypothesis_ok ? (sa - sm) * (sa - sm) : 0.0, (sb + sm) * (sb + sm)};
    c.observed = optimal_bounds(T.plus(R, Complex(sign)));
    c.values = {{"A", tb.lower}, {"B", tb.upper}, {"M", m}};
    if (!c.hypothesis_ok) c.notes.emplace_back("Bessel bound of R is not below the lower frame bound of T");
    finish(c);
    return c;
}

PencilResult optimal_min_constant(const OperatorFrame& T, const OperatorFrame& R, const Tolerance& t) {
    require_compatible(T, R);
    const AlgebraElement diff = frame_gram(T.plus(R, -1.0));
    PencilResult against_t = pencil_sup(diff, frame_gram(T), t);
    PencilResult against_r = pencil_sup(diff, frame_gram(R), t);
    if (against_t.unbounded) return against_t;
    if (against_r.unbounded) return against_r;
    return against_t.value >= against_r.value ? against_t : against_r;
}

Certificate certify_min_condition(const OperatorFrame& T, const OperatorFrame& R, const std::optional<KOperator>& K,
                                  const Tolerance& t, std::optional<FrameBounds> bounds) {
    require_compatible(T, R);
    require_k_shape(K, T);

    Certificate c;
    c.theorem = K ? TheoremId::MinConditionK : TheoremId::MinCondition;
    const PencilResult mres = optimal_min_constant(T, R, t);
    const FrameBounds tb = resolve_bounds(bounds_of(T, K, t), bounds, t);

    c.hypothesis_ok = mres.bounded();
    c.hypothesis_margin = kNaN;
    c.verified_by = c.hypothesis_ok ? Verification::Exact : Verification::Failed;
    c.observed = bounds_of(R, K, t);

    if (c.hypothesis_ok) {
        const double grow = (1.0 + std::sqrt(mres.value)) * (1.0 + std::sqrt(mres.value));
        c.certified = {tb.lower / grow, tb.upper * grow};
        c.values["M"] = mres.value;
    } else {
        c.certified = {0.0, kInf};
        c.values["M"] = kInf;
        c.notes.emplace_back("no finite constant M: the difference family has mass where R (or T) vanishes");
    }
    c.values["A"] = tb.lower;
    c.values["B"] = tb.upper;

    // Constant produced by the forward direction of the equivalence proof
    // (reported only; it is not claimed to satisfy the condition).
    if (c.observed.lower > 0.0 && tb.lower > 0.0) {
        c.values["paper_forward_constant"] = std::min(1.0 + std::sqrt(tb.upper / c.observed.lower),
                                                      1.0 + std::sqrt(c.observed.upper / tb.lower));
    }
    if (K) {
        const double smin = lower_bound_constant(K->op);
        c.values["k_sigma_min"] = smin;
        c.values["converse_applicable"] = smin >= 1.0 - t.rel ? 1.0 : 0.0;
    } else {
        c.values["converse_applicable"] = 1.0;
    }
    finish(c);
    return c;
}

Certificate certify_combination(std::span<const OperatorFrame> families, std::span<const Complex> alphas,
                                std::size_t p, const std::optional<KOperator>& K, const Tolerance& t,
                                CombinationOptions options) {
    if (families.empty()) throw Error(ErrorKind::CountMismatch, "no families");
    if (alphas.size() != families.size()) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(alphas.size()) + " coefficients for " +
                                                      std::to_string(families.size()) + " families");
    }
    if (p >= families.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "family index " + std::to_string(p + 1) + " outside 1.." + std::to_string(families.size()));
    }
    for (const auto& F : families) require_compatible(families.front(), F);
    require_k_shape(K, families.front());

    Certificate c;
    c.theorem = K ? TheoremId::CombinationK : TheoremId::Combination;

    const OperatorFrame combined = sum_of(families, alphas);
    const AlgebraElement g_sum = frame_gram(combined);
    const AlgebraElement g_p = frame_gram(families[p]);
    const double lambda_sq = pencil_inf(g_sum, g_p, t).value;
    const double lambda = std::sqrt(lambda_sq);

    c.hypothesis_ok = lambda > t.abs_floor;
    c.hypothesis_margin = lambda;
    c.verified_by = c.hypothesis_ok ? Verification::Exact : Verification::Failed;

    const double a_p = bounds_of(families[p], K, t).lower;
    double max_alpha = 0.0;
    double sum_sqrt_b = 0.0;
    double b_p = 0.0;
    for (std::size_t k = 0; k < families.size(); ++k) {
        max_alpha = std::max(max_alpha, std::abs(alphas[k]));
        const double bk = optimal_bounds(families[k]).upper;
        sum_sqrt_b += std::sqrt(bk);
        if (k == p) b_p = bk;
    }
    c.certified = {a_p * lambda_sq, max_alpha * max_alpha * sum_sqrt_b * sum_sqrt_b};
    c.observed = bounds_of(combined, K, t);
    c.values = {{"lambda", lambda}, {"lambda_squared", lambda_sq}, {"A_p", a_p}, {"B_p", b_p}};
    if (!c.hypothesis_ok) c.notes.emplace_back("combined family vanishes where family p does not");

    // Converse: λ_conv = A/B_p for squared norms, valid when ‖x‖ <= ‖K*x‖.
    const bool converse_applicable = !K || lower_bound_constant(K->op) >= 1.0 - t.rel;
    c.values["converse_applicable"] = converse_applicable ? 1.0 : 0.0;
    if (b_p > 0.0) {
        const double lambda_conv = c.observed.lower / b_p;
        c.values["lambda_conv"] = lambda_conv;
        c.values["sqrt_lambda_conv"] = std::sqrt(lambda_conv);
        if (converse_applicable && options.converse_samples > 0) {
            std::uint64_t h = 0;
            for (const auto& F : families) h = frame_hash(F, h);
            Rng rng = make_rng(options.seed, {h, static_cast<std::uint64_t>(p)});
            const CMatrix& gs = g_sum.entries();
            const CMatrix& gp = g_p.entries();
            std::vector<CVector> directions;
            append_eigenvectors(directions, g_p);
            append_eigenvectors(directions, g_sum);
            const double margin = sampled_min_slack(
                combined.shape(), directions, options.converse_samples, rng,
                [&](const CMatrix& X) { return norm_form(X, gs) - lambda_conv * norm_form(X, gp); });
            c.values["converse_margin"] = margin;
            c.values["converse_ok"] = margin >= -kEnclosureTolerance * c.scale() ? 1.0 : 0.0;
        }
    }
    finish(c);
    return c;
}

PencilResult minimal_extension_norm(const OperatorFrame& target, const OperatorFrame& source, const Tolerance& t) {
    require_compatible(target, source);
    PencilResult r = pencil_sup(frame_gram(target), frame_gram(source), t);
    if (r.bounded()) r.value = std::sqrt(r.value);
    return r;
}

Certificate certify_extension(std::span<const OperatorFrame> t_families, std::span<const OperatorFrame> r_families,
                              std::size_t p, double lambda_cond, const std::optional<KOperator>& K,
                              const Tolerance& t) {
    if (t_families.empty() || t_families.size() != r_families.size()) {
        throw Error(ErrorKind::CountMismatch, std::to_string(t_families.size()) + " T families and " +
                                                  std::to_string(r_families.size()) + " R families");
    }
    if (p >= t_families.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "family index " + std::to_string(p + 1) + " outside 1.." + std::to_string(t_families.size()));
    }
    if (!(lambda_cond >= 0.0)) throw Error(ErrorKind::BadParameter, "lambda must be non-negative");
    for (std::size_t k = 0; k < t_families.size(); ++k) {
        require_compatible(t_families.front(), t_families[k]);
        require_compatible(t_families.front(), r_families[k]);
    }
    require_k_shape(K, t_families.front());

    Certificate c;
    c.theorem = K ? TheoremId::ExtensionK : TheoremId::Extension;

    bool conditions_ok = true;
    double worst = 0.0;
    double sum_sqrt_b = 0.0;
    for (std::size_t k = 0; k < t_families.size(); ++k) {
        const AlgebraElement g_t = frame_gram(t_families[k]);
        const PencilResult ck = pencil_sup(frame_gram(t_families[k].plus(r_families[k], -1.0)), g_t, t);
        if (ck.unbounded || ck.value > lambda_cond + t.rel) conditions_ok = false;
        worst = std::max(worst, ck.unbounded ? kInf : ck.value);
        sum_sqrt_b += std::sqrt(std::max(0.0, hermitian_eigenvalues(g_t).back()));
    }

    const OperatorFrame r_sum = sum_of(r_families);
    const PencilResult l_norm = minimal_extension_norm(t_families[p], r_sum, t);
    const double a_p = bounds_of(t_families[p], K, t).lower;

    c.hypothesis_ok = conditions_ok && l_norm.bounded();
    c.hypothesis_margin = lambda_cond - worst;
    c.verified_by = c.hypothesis_ok ? Verification::Exact : Verification::Failed;

    const double grow = (1.0 + std::sqrt(lambda_cond)) * (1.0 + std::sqrt(lambda_cond));
    double lower = 0.0;
    if (l_norm.bounded() && l_norm.value > 0.0) lower = a_p / (l_norm.value * l_norm.value);
    c.certified = {lower, grow * sum_sqrt_b * sum_sqrt_b};
    c.observed = bounds_of(r_sum, K, t);
    c.values = {{"lambda", lambda_cond},
                {"condition_constant", worst},
                {"L_norm", l_norm.bounded() ? l_norm.value : kInf},
                {"A_p", a_p}};
    if (!conditions_ok) c.notes.emplace_back("perturbation condition exceeds lambda for some family");
    if (l_norm.unbounded) c.notes.emplace_back("inapplicable: no bounded extension operator L exists");
    finish(c);
    return c;
}

Certificate certify_weighted(const OperatorFrame& T, const OperatorFrame& R, std::span<const double> alpha_w,
                             std::span<const double> beta_w, double lam, double mu, const KOperator& K,
                             SamplingOptions sampling, const Tolerance& t, std::optional<FrameBounds> bounds) {
    if (!(lam >= 0.0 && lam < 1.0) || !(mu >= 0.0 && mu < 1.0)) {
        throw Error(ErrorKind::BadParameter, "lambda and mu must lie in [0, 1)");
    }
    require_compatible(T, R);
    require_k_shape(K, T);
    if (alpha_w.size() != T.point_count() || beta_w.size() != T.point_count()) {
        throw Error(ErrorKind::DimensionMismatch, "weight families must have one entry per measure point");
    }
    for (std::size_t j = 0; j < alpha_w.size(); ++j) {
        if (!(alpha_w[j] > 0.0) || !(beta_w[j] > 0.0)) {
            throw Error(ErrorKind::BadParameter, "alpha_w and beta_w must be positive");
        }
    }

    Certificate c;
    c.theorem = TheoremId::Weighted;
    const FrameBounds tb = resolve_bounds(k_frame_bounds(T, K, t).bounds, bounds, t);

    const OperatorFrame at = pointwise_scaled(T, alpha_w);
    const OperatorFrame br = pointwise_scaled(R, beta_w);
    const AlgebraElement g_diff = frame_gram(at.plus(br, -1.0));
    const AlgebraElement g_a = frame_gram(at);
    const AlgebraElement g_b = frame_gram(br);

    // ‖Dx‖² <= ‖X(λ²G_a + μ²G_b)X^H‖ <= (λ‖αTx‖ + μ‖βRx‖)² when the Loewner test holds.
    const PencilResult sufficient = pencil_sup(g_diff, lam * lam * g_a + mu * mu * g_b, t);
    const bool loewner_ok = sufficient.bounded() && sufficient.value <= 1.0 + t.rel;

    std::vector<CVector> directions;
    append_eigenvectors(directions, g_diff);
    append_eigenvectors(directions, g_a);
    append_eigenvectors(directions, g_b);
    if (sufficient.extremal.size() > 0) directions.push_back(sufficient.extremal);
    Rng rng = make_rng(sampling.seed, {frame_hash(R, frame_hash(T)), 0x77});
    const CMatrix& gd = g_diff.entries();
    const CMatrix& ga = g_a.entries();
    const CMatrix& gb = g_b.entries();
    const double margin = sampled_min_slack(T.shape(), directions, sampling.samples, rng, [&](const CMatrix& X) {
        return lam * std::sqrt(norm_form(X, ga)) + mu * std::sqrt(norm_form(X, gb)) - std::sqrt(norm_form(X, gd));
    });
    const double scale = std::max({1.0, std::sqrt(op_norm(g_a)), std::sqrt(op_norm(g_b))});
    const bool sampling_ok = margin >= -t.rel * scale;

    c.hypothesis_ok = loewner_ok || sampling_ok;
    c.hypothesis_margin = margin;
    c.verified_by = loewner_ok ? Verification::Loewner : (sampling_ok ? Verification::Sampling : Verification::Failed);

    const auto [amin, amax] = std::minmax_element(alpha_w.begin(), alpha_w.end());
    const auto [bmin, bmax] = std::minmax_element(beta_w.begin(), beta_w.end());
    const double low_ratio = (1.0 - lam) * *amin / ((1.0 + mu) * *bmax);
    const double up_ratio = (1.0 + lam) * *amax / ((1.0 - mu) * *bmin);
    c.certified = {tb.lower * low_ratio * low_ratio, tb.upper * up_ratio * up_ratio};
    c.observed = k_frame_bounds(R, K, t).bounds;
    c.values = {{"A", tb.lower},
                {"B", tb.upper},
                {"lower_ratio", low_ratio},
                {"upper_ratio", up_ratio},
                {"loewner_constant", sufficient.bounded() ? sufficient.value : kInf}};
    c.notes.emplace_back("lower bound certified against <K*x, K*x>");
    finish(c);
    return c;
}

Certificate certify_k_perturbation(const OperatorFrame& T, const OperatorFrame& R, const KOperator& K, double alpha,
                                   double beta, const Tolerance& t, std::optional<FrameBounds> bounds,
                                   SamplingOptions sampling) {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw Error(ErrorKind::BadParameter, "alpha and beta must be >= 0");
    require_compatible(T, R);
    require_k_shape(K, T);

    const FrameBounds tb = resolve_bounds(k_frame_bounds(T, K, t).bounds, bounds, t);
    if (!(tb.lower > 0.0)) throw Error(ErrorKind::BadParameter, "T is not a K-operator frame (A = 0)");
    const double rate = alpha + beta / tb.lower;
    if (!(rate < 1.0 - t.rel)) {
        throw Error(ErrorKind::BadParameter, "alpha + beta/A = " + std::to_string(rate) + " must be < 1");
    }

    Certificate c;
    c.theorem = TheoremId::KPerturbation;

    const AlgebraElement g_diff = frame_gram(T.plus(R, -1.0));
    const AlgebraElement g_t = frame_gram(T);
    const AlgebraElement kk = k_gram(K);
    const PencilResult sufficient = pencil_sup(g_diff, alpha * g_t + beta * kk, t);
    const bool loewner_ok = sufficient.bounded() && sufficient.value <= 1.0 + t.rel;

    bool sampling_ok = false;
    double margin = loewner_ok ? 1.0 - sufficient.value : kNaN;
    if (!loewner_ok) {
        std::vector<CVector> directions;
        append_eigenvectors(directions, g_diff);
        append_eigenvectors(directions, kk);
        if (sufficient.extremal.size() > 0) directions.push_back(sufficient.extremal);
        Rng rng = make_rng(sampling.seed, {frame_hash(R, frame_hash(T)), hash_matrix(K.op.matrix()), 0x4b});
        const CMatrix& gd = g_diff.entries();
        const CMatrix& gt = g_t.entries();
        const CMatrix& gk = kk.entries();
        margin = sampled_min_slack(T.shape(), directions, sampling.samples, rng, [&](const CMatrix& X) {
            return alpha * norm_form(X, gt) + beta * norm_form(X, gk) - norm_form(X, gd);
        });
        sampling_ok = margin >= -t.rel * std::max(1.0, tb.upper);
    }

    c.hypothesis_ok = loewner_ok || sampling_ok;
    c.hypothesis_margin = margin;
    c.verified_by = loewner_ok ? Verification::Loewner : (sampling_ok ? Verification::Sampling : Verification::Failed);

    const double root = std::sqrt(rate);
    c.certified = {tb.lower * (1.0 - root) * (1.0 - root), tb.upper * (1.0 + root) * (1.0 + root)};
    c.observed = k_frame_bounds(R, K, t).bounds;
    c.values = {{"A", tb.lower},
                {"B", tb.upper},
                {"alpha", alpha},
                {"beta", beta},
                {"rate", rate},
                {"loewner_constant", sufficient.bounded() ? sufficient.value : kInf}};
    finish(c);
    return c;
}

Certificate certify_k_perturbation_corollary(const OperatorFrame& T, const OperatorFrame& R, const KOperator& K,
                                             double alpha, const Tolerance& t, std::optional<FrameBounds> bounds,
                                             SamplingOptions sampling) {
    Certificate c = certify_k_perturbation(T, R, K, 0.0, alpha, t, bounds, sampling);
    c.theorem = TheoremId::KPerturbationCorollary;
    c.values.erase("beta");
    c.values["alpha"] = alpha;
    return c;
}

}  // namespace opframe
