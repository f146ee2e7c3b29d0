#include "opframe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <thread>

#include "opframe/random.hpp"

namespace opframe {

namespace {

using Eigensolver = Eigen::SelfAdjointEigenSolver<CMatrix>;

std::uint64_t theorem_salt(TheoremId id) { return 0x7e00u + static_cast<std::uint64_t>(id); }

std::size_t pick(Rng& rng, std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

std::size_t bin_of(double ratio) {
    if (!std::isfinite(ratio)) return 0;
    const double r = std::clamp(ratio, 0.0, 1.0);
    return std::min(kHistogramBins - 1, static_cast<std::size_t>(r * static_cast<double>(kHistogramBins)));
}

CMatrix inverse_sqrt_pd(const CMatrix& h) {
    Eigensolver es((h + h.adjoint()) * 0.5);
    const RVector inv = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix sqrt_psd(const CMatrix& h) {
    Eigensolver es((h + h.adjoint()) * 0.5);
    const RVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// K generators: general Gaussian, scaled unitary, or rank-deficient.
KOperator random_k(Rng& rng, ModuleShape shape) {
    const auto w = static_cast<Eigen::Index>(shape.width());
    const std::size_t kind = pick(rng, 3);
    if (kind == 1) return {ModuleOperator(shape, uniform_real(rng, 0.5, 2.0) * random_unitary(rng, w))};
    if (kind == 2 && w > 1) {
        const CMatrix left = random_complex_matrix(rng, w, w - 1);
        const CMatrix right = random_complex_matrix(rng, w - 1, w);
        return {ModuleOperator(shape, left * right / static_cast<double>(w))};
    }
    return {ModuleOperator(shape, random_complex_matrix(rng, w, w) / std::sqrt(static_cast<double>(w)))};
}

OperatorFrame right_multiplied(const OperatorFrame& F, const CMatrix& left) {
    std::vector<ModuleOperator> ops;
    for (const auto& op : F.operators()) ops.emplace_back(F.shape(), left * op.matrix());
    return {F.measure(), std::move(ops)};
}

Certificate trial_bessel(Rng& rng, const Dims& dims, int sign, const Tolerance& t) {
    const OperatorFrame T = random_frame(rng(), dims.d, dims.n, dims.m, uniform_real(rng, 1.0, 20.0));
    const OperatorFrame R = random_bessel_below(rng(), T, uniform_real(rng, 0.05, 0.95), t);
    return certify_bessel_sum(T, R, sign, t);
}

OperatorFrame perturbed(Rng& rng, const OperatorFrame& T, double lo, double hi) {
    const OperatorFrame E = random_family(rng(), T.measure(), T.shape());
    const double a = optimal_bounds(T).lower;
    const double e = optimal_bounds(E).upper;
    const double s = uniform_real(rng, lo, hi) * std::sqrt(a / std::max(e, 1e-300));
    return T.plus(E, s);
}

Certificate trial_min_condition(Rng& rng, const Dims& dims, bool with_k, const Tolerance& t) {
    const OperatorFrame T = random_frame(rng(), dims.d, dims.n, dims.m, uniform_real(rng, 1.0, 20.0));
    const OperatorFrame R = perturbed(rng, T, 0.05, 1.5);
    std::optional<KOperator> K;
    if (with_k) K = random_k(rng, T.shape());
    return certify_min_condition(T, R, K, t);
}

Certificate trial_combination(Rng& rng, const Dims& dims, bool with_k, std::uint64_t seed, const Tolerance& t) {
    const std::size_t count = 1 + pick(rng, 3);
    const MeasureSpace measure = random_frame(rng(), dims.d, dims.n, dims.m, 1.0).measure();
    std::vector<OperatorFrame> families;
    std::vector<Complex> alphas;
    for (std::size_t k = 0; k < count; ++k) {
        const OperatorFrame base = random_frame(rng(), dims.d, dims.n, dims.m, uniform_real(rng, 1.0, 20.0));
        families.emplace_back(measure, base.operators());
        alphas.emplace_back(uniform_real(rng, -2.0, 2.0), uniform_real(rng, -2.0, 2.0));
    }
    const std::size_t p = pick(rng, count);
    std::optional<KOperator> K;
    if (with_k) K = random_k(rng, families.front().shape());
    return certify_combination(families, alphas, p, K, t, {.converse_samples = 1000, .seed = seed});
}

Certificate trial_extension(Rng& rng, const Dims& dims, bool with_k, const Tolerance& t) {
    const std::size_t count = 1 + pick(rng, 3);
    const MeasureSpace measure = random_frame(rng(), dims.d, dims.n, dims.m, 1.0).measure();
    std::vector<OperatorFrame> t_fams;
    std::vector<OperatorFrame> r_fams;
    double lambda = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const OperatorFrame base = random_frame(rng(), dims.d, dims.n, dims.m, uniform_real(rng, 1.0, 20.0));
        OperatorFrame Tk(measure, base.operators());
        OperatorFrame Rk = perturbed(rng, Tk, 0.05, 0.9);
        const PencilResult c = pencil_sup(frame_gram(Tk.plus(Rk, -1.0)), frame_gram(Tk), t);
        lambda = std::max(lambda, c.value);
        t_fams.push_back(std::move(Tk));
        r_fams.push_back(std::move(Rk));
    }
    lambda *= uniform_real(rng, 1.0, 1.5);
    const std::size_t p = pick(rng, count);
    std::optional<KOperator> K;
    if (with_k) K = random_k(rng, t_fams.front().shape());
    return certify_extension(t_fams, r_fams, p, lambda, K, t);
}

Certificate trial_weighted(Rng& rng, const Dims& dims, std::uint64_t seed, const Tolerance& t) {
    const OperatorFrame T = random_frame(rng(), dims.d, dims.n, dims.m, uniform_real(rng, 1.0, 20.0));
    std::vector<double> alpha(dims.m);
    std::vector<double> beta(dims.m);
    for (std::size_t j = 0; j < dims.m; ++j) {
        alpha[j] = uniform_real(rng, 0.5, 2.0);
        beta[j] = uniform_real(rng, 0.5, 2.0);
    }
    const double lam = uniform_real(rng, 0.05, 0.9);
    const double mu = uniform_real(rng, 0.0, 0.9);

    // βR = αT − D with G_D ⪯ 0.9·λ²·G_{αT}.
    std::vector<ModuleOperator> at_ops;
    for (std::size_t j = 0; j < dims.m; ++j) at_ops.push_back(Complex(alpha[j]) * T.op(j));
    const OperatorFrame at(T.measure(), at_ops);
    const OperatorFrame D0 = random_family(rng(), T.measure(), T.shape());
    const double c = pencil_sup(frame_gram(D0), frame_gram(at), t).value;
    const double s = std::sqrt(0.9 * lam * lam / std::max(c, 1e-300));
    std::vector<ModuleOperator> r_ops;
    for (std::size_t j = 0; j < dims.m; ++j) {
        r_ops.push_back(Complex(1.0 / beta[j]) * (at_ops[j] - Complex(s) * D0.op(j)));
    }
    const OperatorFrame R(T.measure(), std::move(r_ops));
    const KOperator K = pick(rng, 4) == 0 ? KOperator{ModuleOperator::identity(T.shape())} : random_k(rng, T.shape());
    return certify_weighted(T, R, alpha, beta, lam, mu, K, {.samples = 256, .seed = seed}, t);
}

Certificate trial_k_perturbation(Rng& rng, const Dims& dims, bool corollary, std::uint64_t seed,
                                 const Tolerance& t) {
    const OperatorFrame T = random_frame(rng(), dims.d, dims.n, dims.m, uniform_real(rng, 1.0, 20.0));
    const KOperator K = random_k(rng, T.shape());
    const double a = k_frame_bounds(T, K, t).bounds.lower;
    const double rate = uniform_real(rng, 0.05, 0.9);
    const double alpha = corollary ? 0.0 : rate * uniform_real(rng, 0.0, 1.0);
    const double beta = (rate - alpha) * a;

    // D ranges inside K^H whenever only the K term can absorb it.
    OperatorFrame D0 = random_family(rng(), T.measure(), T.shape());
    if (alpha == 0.0) D0 = right_multiplied(D0, K.op.matrix().adjoint());
    const AlgebraElement bound = alpha * frame_gram(T) + beta * k_gram(K);
    const PencilResult c = pencil_sup(frame_gram(D0), bound, t);
    const double s = c.bounded() && c.value > 0.0 ? std::sqrt(0.95 / c.value) : 0.0;
    const OperatorFrame R = T.plus(D0, -s);
    const SamplingOptions sampling{.samples = 256, .seed = seed};
    if (corollary) return certify_k_perturbation_corollary(T, R, K, beta, t, std::nullopt, sampling);
    return certify_k_perturbation(T, R, K, alpha, beta, t, std::nullopt, sampling);
}

}  // namespace

std::vector<Dims> default_dims() {
    std::vector<Dims> out;
    for (std::size_t d = 1; d <= 3; ++d) {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t m = 1; m <= 16; ++m) out.push_back({d, n, m});
        }
    }
    return out;
}

void CampaignConfig::validate() const {
    tolerance.validate();
    if (trials < 1) throw Error(ErrorKind::BadParameter, "trials must be >= 1");
    if (dims.empty()) throw Error(ErrorKind::BadParameter, "no dimension triples");
    for (const Dims& dm : dims) {
        if (dm.d < 1 || dm.n < 1 || dm.m < 1) throw Error(ErrorKind::BadParameter, "dimensions must be >= 1");
    }
    if (theorems.empty()) throw Error(ErrorKind::BadParameter, "no theorems selected");
    for (std::size_t i = 0; i < theorems.size(); ++i) {
        for (std::size_t j = i + 1; j < theorems.size(); ++j) {
            if (theorems[i] == theorems[j]) {
                throw Error(ErrorKind::BadParameter, "theorem listed twice: " + std::string(to_string(theorems[i])));
            }
        }
    }
}

void TheoremStats::add(const TrialRecord& r) {
    ++trials;
    if (!r.error.empty()) {
        ++errors;
        return;
    }
    if (!r.hypothesis_ok) return;
    if (hypotheses_satisfied == 0) {
        min_lower_slack = r.lower_slack;
        min_upper_slack = r.upper_slack;
    } else {
        min_lower_slack = std::min(min_lower_slack, r.lower_slack);
        min_upper_slack = std::min(min_upper_slack, r.upper_slack);
    }
    ++hypotheses_satisfied;
    if (!r.enclosed) ++enclosure_failures;
    const double lower_ratio = r.observed.lower > 0.0 ? r.certified.lower / r.observed.lower : 1.0;
    const double upper_ratio = r.certified.upper > 0.0 ? r.observed.upper / r.certified.upper : 1.0;
    ++lower_tightness[bin_of(lower_ratio)];
    ++upper_tightness[bin_of(upper_ratio)];
}

void TheoremStats::merge(const TheoremStats& other) {
    if (other.hypotheses_satisfied > 0) {
        if (hypotheses_satisfied == 0) {
            min_lower_slack = other.min_lower_slack;
            min_upper_slack = other.min_upper_slack;
        } else {
            min_lower_slack = std::min(min_lower_slack, other.min_lower_slack);
            min_upper_slack = std::min(min_upper_slack, other.min_upper_slack);
        }
    }
    trials += other.trials;
    hypotheses_satisfied += other.hypotheses_satisfied;
    enclosure_failures += other.enclosure_failures;
    errors += other.errors;
    for (std::size_t b = 0; b < kHistogramBins; ++b) {
        lower_tightness[b] += other.lower_tightness[b];
        upper_tightness[b] += other.upper_tightness[b];
    }
}

std::size_t CampaignReport::enclosure_failures() const {
    std::size_t n = 0;
    for (const auto& s : per_theorem) n += s.enclosure_failures;
    return n;
}

std::size_t CampaignReport::unsatisfied_hypotheses() const {
    std::size_t n = 0;
    for (const auto& s : per_theorem) n += s.trials - s.errors - s.hypotheses_satisfied;
    return n;
}

std::size_t CampaignReport::errors() const {
    std::size_t n = 0;
    for (const auto& s : per_theorem) n += s.errors;
    return n;
}

OperatorFrame random_frame(std::uint64_t seed, std::size_t d, std::size_t n, std::size_t m,
                           double condition_target) {
    if (!(condition_target >= 1.0) || !std::isfinite(condition_target)) {
        throw Error(ErrorKind::BadParameter, "condition_target must be >= 1");
    }
    if (d < 1 || n < 1 || m < 1) throw Error(ErrorKind::BadParameter, "dimensions must be >= 1");
    const ModuleShape shape{d, n};
    const auto w = static_cast<Eigen::Index>(shape.width());
    Rng rng = make_rng(seed, {d, n, m, std::bit_cast<std::uint64_t>(condition_target)});

    std::vector<double> weights(m);
    double total = 0.0;
    for (double& x : weights) total += (x = uniform_real(rng, 0.5, 1.5));
    for (double& x : weights) x *= static_cast<double>(m) / total;

    // Spectrum spanning exactly [a, a·κ], interior log-uniform.
    const double base = uniform_real(rng, 0.5, 2.0);
    RVector spectrum(w);
    for (Eigen::Index i = 0; i < w; ++i) {
        const double u = (i == 0) ? 0.0 : (i == w - 1 ? 1.0 : uniform_real(rng, 0.0, 1.0));
        spectrum(i) = base * std::pow(condition_target, u);
    }
    const CMatrix u = random_unitary(rng, w);
    const CMatrix gram = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();

    // Factor G into weighted summands: M_j = G^{1/2} H^{-1/2} Y_j with H = Σ μ_j Y_j Y_j^H.
    std::vector<CMatrix> raw;
    CMatrix h = CMatrix::Zero(w, w);
    for (std::size_t j = 0; j < m; ++j) {
        raw.push_back(random_complex_matrix(rng, w, w));
        h += weights[j] * raw.back() * raw.back().adjoint();
    }
    const CMatrix factor = sqrt_psd(gram) * inverse_sqrt_pd(h);
    std::vector<ModuleOperator> ops;
    ops.reserve(m);
    for (const CMatrix& y : raw) ops.emplace_back(shape, factor * y);
    return {MeasureSpace(std::move(weights)), std::move(ops)};
}

OperatorFrame random_family(std::uint64_t seed, const MeasureSpace& measure, ModuleShape shape) {
    const auto w = static_cast<Eigen::Index>(shape.width());
    Rng rng = make_rng(seed, {shape.algebra_dim, shape.module_rank, measure.point_count(), 0xfa}) ;
    std::vector<ModuleOperator> ops;
    for (std::size_t j = 0; j < measure.point_count(); ++j) {
        ops.emplace_back(shape, random_complex_matrix(rng, w, w) / std::sqrt(static_cast<double>(w)));
    }
    return {measure, std::move(ops)};
}

OperatorFrame random_bessel_below(std::uint64_t seed, const OperatorFrame& T, double ratio, const Tolerance& t) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorKind::BadParameter, "ratio must lie in (0, 1)");
    const FrameClassification c = classify(T, t);
    if (!c.is_frame) throw Error(ErrorKind::NotAFrame, "random_bessel_below needs a frame");
    const OperatorFrame raw = random_family(seed, T.measure(), T.shape());
    const double top = optimal_bounds(raw).upper;
    return raw.scaled(std::sqrt(ratio * c.bounds.lower / top));
}

double sampling_oracle(const AlgebraElement& P, const AlgebraElement& Q, std::size_t n_samples, std::uint64_t seed,
                       Extremum mode) {
    const CMatrix p = (P.entries() + P.entries().adjoint()) * 0.5;
    const CMatrix q = (Q.entries() + Q.entries().adjoint()) * 0.5;
    const Eigen::Index dim = p.rows();
    const double sign = mode == Extremum::Max ? 1.0 : -1.0;

    Eigensolver qes(q);
    const double qmax = std::max(0.0, qes.eigenvalues()(dim - 1));
    const double qtol = 1e-9 * qmax;

    // Unit v only; returns NaN when v*Qv is below the admissibility floor.
    auto ratio = [&](const CVector& v) {
        const double den = v.dot(q * v).real();
        if (!(den > qtol)) return std::numeric_limits<double>::quiet_NaN();
        return v.dot(p * v).real() / den;
    };

    std::vector<std::pair<double, CVector>> pool;
    auto consider = [&](CVector v) {
        const double nv = v.norm();
        if (!(nv > 0.0)) return;
        v /= nv;
        const double r = ratio(v);
        if (!std::isnan(r)) pool.emplace_back(r, std::move(v));
    };
    for (Eigen::Index i = 0; i < dim; ++i) consider(qes.eigenvectors().col(i));
    Eigensolver pes(p);
    for (Eigen::Index i = 0; i < dim; ++i) consider(pes.eigenvectors().col(i));
    Rng rng = make_rng(seed, {hash_matrix(p), hash_matrix(q)});
    for (std::size_t s = 0; s < n_samples; ++s) consider(random_unit_vector(rng, dim));
    if (pool.empty()) return 0.0;

    std::sort(pool.begin(), pool.end(),
              [&](const auto& a, const auto& b) { return sign * a.first > sign * b.first; });
    double best = pool.front().first;

    // Rayleigh–Ritz on span{v, residual, previous step}.
    const std::size_t starts = std::min<std::size_t>(3, pool.size());
    for (std::size_t s = 0; s < starts; ++s) {
        CVector v = pool[s].second;
        double rho = pool[s].first;
        CVector prev;
        for (int it = 0; it < 200; ++it) {
            std::vector<CVector> basis;
            auto push = [&](CVector c) {
                for (const CVector& b : basis) c -= b * b.dot(c);
                for (const CVector& b : basis) c -= b * b.dot(c);
                const double nc = c.norm();
                if (nc > 1e-10) basis.push_back(c / nc);
            };
            push(v);
            push(p * v - rho * (q * v));
            if (prev.size() > 0) push(prev);
            if (basis.size() < 2) break;
            CMatrix S(dim, static_cast<Eigen::Index>(basis.size()));
            for (std::size_t k = 0; k < basis.size(); ++k) S.col(static_cast<Eigen::Index>(k)) = basis[k];
            const CMatrix ps = S.adjoint() * p * S;
            CMatrix qs = S.adjoint() * q * S;
            qs = (qs + qs.adjoint()) * 0.5;
            Eigen::LLT<CMatrix> llt(qs);
            if (llt.info() != Eigen::Success) break;
            const CMatrix linv = llt.matrixL().solve(CMatrix::Identity(qs.rows(), qs.cols()));
            CMatrix reduced = linv * ps * linv.adjoint();
            Eigensolver red((reduced + reduced.adjoint()) * 0.5);
            const Eigen::Index pickcol = mode == Extremum::Max ? red.eigenvalues().size() - 1 : 0;
            const CVector z = linv.adjoint() * red.eigenvectors().col(pickcol);
            CVector next = S * z;
            const double nn = next.norm();
            if (!(nn > 0.0)) break;
            next /= nn;
            const double r = ratio(next);
            if (std::isnan(r) || sign * r <= sign * rho + 1e-15 * std::max(1.0, std::abs(rho))) break;
            prev = next - v * v.dot(next);
            v = next;
            rho = r;
        }
        if (sign * rho > sign * best) best = rho;
    }
    return best;
}

Certificate run_trial(std::uint64_t seed, std::size_t trial, TheoremId theorem, const Dims& dims,
                      const Tolerance& t) {
    Rng rng = make_rng(seed, {static_cast<std::uint64_t>(trial), theorem_salt(theorem)});
    const std::uint64_t sample_seed = rng();
    switch (theorem) {
    case TheoremId::BesselSumPlus: return trial_bessel(rng, dims, +1, t);
    case TheoremId::BesselSumMinus: return trial_bessel(rng, dims, -1, t);
    case TheoremId::MinCondition: return trial_min_condition(rng, dims, false, t);
    case TheoremId::MinConditionK: return trial_min_condition(rng, dims, true, t);
    case TheoremId::Combination: return trial_combination(rng, dims, false, sample_seed, t);
    case TheoremId::CombinationK: return trial_combination(rng, dims, true, sample_seed, t);
    case TheoremId::Extension: return trial_extension(rng, dims, false, t);
    case TheoremId::ExtensionK: return trial_extension(rng, dims, true, t);
    case TheoremId::Weighted: return trial_weighted(rng, dims, sample_seed, t);
    case TheoremId::KPerturbation: return trial_k_perturbation(rng, dims, false, sample_seed, t);
    case TheoremId::KPerturbationCorollary: return trial_k_perturbation(rng, dims, true, sample_seed, t);
    }
    throw Error(ErrorKind::BadParameter, "unknown theorem");
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();

    const std::size_t per_trial = cfg.theorems.size();
    const std::size_t total = cfg.trials * per_trial;
    std::vector<TrialRecord> records(total);

    auto work = [&](std::size_t index) {
        const std::size_t trial = index / per_trial;
        const TheoremId theorem = cfg.theorems[index % per_trial];
        Rng dim_rng = make_rng(cfg.seed, {static_cast<std::uint64_t>(trial), 0xd1d5});
        TrialRecord& rec = records[index];
        rec.trial = trial;
        rec.theorem = theorem;
        rec.dims = cfg.dims[pick(dim_rng, cfg.dims.size())];
        try {
            const Certificate c = run_trial(cfg.seed, trial, theorem, rec.dims, cfg.tolerance);
            rec.hypothesis_ok = c.hypothesis_ok;
            rec.enclosed = c.encloses();
            rec.verified_by = c.verified_by;
            rec.certified = c.certified;
            rec.observed = c.observed;
            rec.lower_slack = c.lower_slack;
            rec.upper_slack = c.upper_slack;
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, total));
    if (threads == 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < threads; ++k) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++) work(i);
            });
        }
    }

    CampaignReport report;
    report.seed = cfg.seed;
    report.trials = cfg.trials;
    for (TheoremId id : cfg.theorems) {
        TheoremStats s;
        s.theorem = id;
        report.per_theorem.push_back(s);
    }
    for (const TrialRecord& r : records) {
        for (auto& s : report.per_theorem) {
            if (s.theorem == r.theorem) s.add(r);
        }
    }
    report.records = std::move(records);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace opframe
