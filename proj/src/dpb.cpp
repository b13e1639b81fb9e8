#include "dpbkit/dpb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dpbkit/error.hpp"
#include "dpbkit/random.hpp"

namespace dpbkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Joins spectral points whose gap is within rounding reach of each other, as
// happens when a defective eigenvalue is split by the QR iteration.
int certify_separation(const CMatrix& b, SpectrumCluster& s, double certificate) {
    const double scale = kEps * std::max(1.0, norm_inf(b));
    int merged = 0;
    while (s.points.size() > 1) {
        const IdempotentSystem sys = lagrange_idempotents(b, s.lambdas());
        double worst = std::numeric_limits<double>::infinity();
        std::size_t wi = 0, wj = 0;
        for (std::size_t i = 0; i < s.points.size(); ++i)
            for (std::size_t j = i + 1; j < s.points.size(); ++j) {
                const double reach =
                    scale * (norm_inf(sys.idempotents[i]) + norm_inf(sys.idempotents[j]));
                const double ratio = std::abs(s.points[i].lambda - s.points[j].lambda) / reach;
                if (ratio < worst) {
                    worst = ratio;
                    wi = i;
                    wj = j;
                }
            }
        if (worst >= certificate) break;
        SpectralPoint& keep = s.points[wi];
        const SpectralPoint& drop = s.points[wj];
        const int mult = keep.multiplicity + drop.multiplicity;
        keep.lambda = (static_cast<double>(keep.multiplicity) * keep.lambda +
                       static_cast<double>(drop.multiplicity) * drop.lambda) /
                      static_cast<double>(mult);
        keep.multiplicity = mult;
        s.points.erase(s.points.begin() + static_cast<std::ptrdiff_t>(wj));
        ++merged;
    }
    return merged;
}

double local_annihilation(const CMatrix& b, const IdempotentSystem& sys) {
    const double bn = norm_inf(b);
    double worst = 0.0;
    for (std::size_t j = 0; j < sys.size(); ++j) {
        const CMatrix& p = sys.idempotents[j];
        const double r = norm_inf(shifted(b, -sys.lambdas[j]) * p);
        worst = std::max(worst, r / ((bn + std::abs(sys.lambdas[j])) * std::max(1.0, norm_inf(p))));
    }
    return worst;
}

} // namespace

DpbVerdict dpb_decide(const CMatrix& b, const NormKind& kind, const DpbTolerances& tols) {
    (void)inverse(b);  // SingularMatrix

    DpbVerdict v;
    EigenResult eig = eigenvalues(b);
    if (!eig.converged) throw Error(ErrorCode::NonConvergence, "QR iteration did not converge");
    v.spectrum = cluster(eig.values, tols.cluster_tol.value_or(default_cluster_tol(b)));
    v.merged_points = certify_separation(b, v.spectrum, tols.separation_certificate);

    const auto lambdas = v.spectrum.lambdas();
    v.circle_deviation = on_unit_circle(v.spectrum, tols.circ_tol).max_deviation;
    IdempotentSystem sys = lagrange_idempotents(b, lambdas);
    v.minpoly_residual = local_annihilation(b, sys);
    v.product_residual = minimal_polynomial_residual(b, lambdas);
    v.is_dpb = v.circle_deviation <= tols.circ_tol && v.minpoly_residual <= tols.alg_tol;

    if (v.is_dpb) {
        double bound = 0.0;
        for (const auto& p : sys.idempotents) bound += operator_norm(p, kind);
        v.power_bound = bound;
        v.system = std::move(sys);
        return v;
    }

    const double threshold = tols.witness_factor * operator_norm(b, kind);
    for (int horizon = tols.witness_horizon; horizon <= tols.witness_cap; horizon *= 2) {
        const PowerNormProfile prof = power_norm_profile(b, horizon, kind);
        if (prof.max > threshold) {
            v.growth_witness = GrowthWitness{prof.argmax, prof.max};
            break;
        }
    }
    return v;
}

GelfandResult gelfand_check(const CMatrix& b, const NormKind& kind, const DpbTolerances& tols) {
    GelfandResult g;
    g.distance = operator_norm(shifted(b, -1.0), kind);
    DpbVerdict v;
    try {
        v = dpb_decide(b, kind, tols);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix) throw;
        g.reason = "not invertible";
        return g;
    }
    g.is_dpb = v.is_dpb;
    g.spectrum_is_one = v.spectrum.points.size() == 1 &&
                        std::abs(v.spectrum.points.front().lambda - 1.0) <= tols.circ_tol;
    if (!g.is_dpb) {
        g.reason = g.spectrum_is_one ? "spectrum is {1} but not doubly power-bounded"
                                     : "not doubly power-bounded";
        return g;
    }
    if (!g.spectrum_is_one) {
        g.reason = "spectrum is not {1}";
        return g;
    }
    g.is_identity = g.distance <= 1e-7;
    g.reason = g.is_identity ? "identity recovered" : "distance to e exceeds 1e-7";
    return g;
}

EigenIdempotent koehler_rosenthal(const CMatrix& b, Complex lambda, const NormKind& kind,
                                  const DpbTolerances& tols, const RieszOptions& riesz) {
    const DpbVerdict v = dpb_decide(b, kind, tols);
    if (!v.is_dpb) throw Error(ErrorCode::NotDpb, "element is not doubly power-bounded");
    EigenIdempotent out;
    out.projection = riesz_projection(b, lambda, v.spectrum, riesz);
    out.p = out.projection.q;
    const Complex center = v.spectrum.points[*v.spectrum.find(lambda, std::max(10.0 * v.spectrum.cluster_tol, 1e-8))].lambda;
    out.residual = norm_inf(b * out.p - center * out.p);
    out.idem_residual = norm_inf(out.p * out.p - out.p);
    out.within_bound = out.residual <= 1e-7 * std::max(1.0, norm_inf(b));
    return out;
}

UnitaryLikeResult unitary_like_check(const CMatrix& u, const NormKind& kind, int horizon,
                                     const DpbTolerances& tols) {
    UnitaryLikeResult r;
    r.norm = operator_norm(u, kind);
    r.inverse_norm = operator_norm(inverse(u), kind);
    if (std::abs(r.norm - 1.0) > 1e-9 || std::abs(r.inverse_norm - 1.0) > 1e-9) {
        r.reason = "||u|| = " + std::to_string(r.norm) + ", ||u^-1|| = " + std::to_string(r.inverse_norm);
        return r;
    }
    const PowerNormProfile prof = power_norm_profile(u, horizon, kind, false);
    for (const auto& [k, v] : prof.entries) r.max_power_deviation = std::max(r.max_power_deviation, std::abs(v - 1.0));
    if (r.max_power_deviation > 1e-8) {
        r.reason = "a power norm deviates from 1";
        return r;
    }
    DpbVerdict v = dpb_decide(u, kind, tols);
    if (!v.is_dpb) {
        r.reason = "decision procedure rejected a norm-one element";
        return r;
    }
    r.qualifies = true;
    r.system = std::move(v.system);
    return r;
}

Complex PeriodicDecomposition::root(int k) const {
    return std::polar(1.0, 2.0 * std::numbers::pi * k / period);
}

PeriodicDecomposition periodic_decompose(const CMatrix& a, int period) {
    if (period < 1) throw Error(ErrorCode::InvalidArgument, "period must be positive");
    const std::size_t n = a.dim();
    std::vector<CMatrix> powers;
    powers.reserve(static_cast<std::size_t>(period) + 1);
    powers.push_back(CMatrix::identity(n));
    for (int j = 1; j <= period; ++j) powers.push_back(powers.back() * a);
    const double scale = std::pow(std::max(1.0, norm_inf(a)), period);
    const double defect = norm_inf(shifted(powers.back(), -1.0));
    if (defect > 1e-9 * scale)
        throw Error(ErrorCode::NotPeriodic, "||a^m - e|| = " + std::to_string(defect));

    PeriodicDecomposition d;
    d.period = period;
    CMatrix recon(n), sum(n);
    for (int k = 1; k <= period; ++k) {
        CMatrix p(n);
        for (int j = 0; j < period; ++j) {
            // exponent reduced mod m keeps the phase accurate for large j k
            const int e = (j * k) % period;
            p += std::polar(1.0, -2.0 * std::numbers::pi * e / period) * powers[static_cast<std::size_t>(j)];
        }
        p *= 1.0 / period;
        d.zero_flags.push_back(norm_inf(p) <= kZeroIdempotentTol);
        recon += d.root(k) * p;
        sum += p;
        d.idempotents.push_back(std::move(p));
    }
    d.reconstruction = norm_inf(recon - a);
    d.resolution = norm_inf(shifted(sum, -1.0));
    return d;
}

CommutatorDemo commutator_counterexample() {
    CommutatorDemo d;
    d.u = CMatrix{{0.0, 1.0}, {1.0, 0.0}};
    d.a = CMatrix{{1.0, 0.0}, {0.0, 2.0}};
    d.k = 2.0 * operator_norm(d.a, NormKind::two());
    d.b = shifted(d.a, d.k) * Complex(1.0 / (1.0 + d.k));
    const CMatrix u_inv = inverse(d.u);
    const CMatrix b_inv = inverse(d.b);
    d.m = u_inv * b_inv * d.u * d.b;
    d.expected = (1.0 + d.k) / (2.0 + d.k);

    const EigenResult eig = eigenvalues(d.m);
    d.eigenvalue = eig.values.front();
    for (const auto& z : eig.values)
        if (std::abs(z - d.expected) < std::abs(d.eigenvalue - d.expected)) d.eigenvalue = z;

    const NormKind two = NormKind::two();
    d.u_is_dpb = dpb_decide(d.u, two).is_dpb;
    d.conjugate_is_dpb = dpb_decide(b_inv * d.u * d.b, two).is_dpb;
    d.m_verdict = dpb_decide(d.m, two);
    CMatrix p = CMatrix::identity(2);
    for (int n = 0; n <= 20; ++n) {
        d.profile.push_back(operator_norm(p, two));
        p = p * d.m;
    }
    return d;
}

double power_growth_slope(const CMatrix& m) {
    CMatrix p = m;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int j = 1; j <= 200; ++j) {
        if (j >= 100) {
            const double x = std::log(static_cast<double>(j));
            const double y = std::log(norm_inf(p));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        p = p * m;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

TriangularReport triangular_pb_classify(int n, int trials, std::uint64_t seed) {
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "triangular example needs n >= 3");
    TriangularReport rep;
    rep.n = n;
    rep.trials = trials;
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> normal;
    const auto dim = static_cast<std::size_t>(n);
    const NormKind inf = NormKind::inf();

    const Complex lambda = std::polar(1.0, angle(rng));
    rep.scalar_is_dpb = dpb_decide(lambda * CMatrix::identity(dim), inf).is_dpb;

    rep.min_degree = std::numeric_limits<int>::max();
    for (int t = 0; t < trials; ++t) {
        const Complex mu = std::polar(1.0, angle(rng));
        CMatrix m = mu * CMatrix::identity(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) m(i, j) = {normal(rng), normal(rng)};
        if (dpb_decide(m, inf).is_dpb) ++rep.false_positives;
        const double slope = power_growth_slope(m);
        rep.slopes.push_back(slope);
        rep.degrees.push_back(static_cast<int>(std::lround(slope)));
        rep.min_degree = std::min(rep.min_degree, rep.degrees.back());
    }
    if (trials == 0) rep.min_degree = 0;
    return rep;
}

namespace {

// An element of U for the given norm: ||u|| = ||u^-1|| = 1.
CMatrix sample_unit_group(const NormKind& kind, std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> phases(n);
    for (auto& z : phases) z = std::polar(1.0, angle(rng));
    const CMatrix d = CMatrix::diagonal(phases);
    switch (kind.variant()) {
    case NormKind::Variant::Two: {
        const CMatrix q = random_unitary(n, rng);
        return q * d * adjoint(q);
    }
    case NormKind::Variant::Conjugated:
        return kind.similarity() * sample_unit_group(kind.base(), n, rng) * kind.similarity_inverse();
    default:
        return random_permutation(n, rng) * d;
    }
}

} // namespace

InclusionReport inclusion_chain_probe(const NormKind& kind, int trials, std::uint64_t seed) {
    InclusionReport rep;
    rep.trials = trials;
    Rng rng(seed);
    std::uniform_int_distribution<int> dims(2, 6);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        const std::size_t n = kind.variant() == NormKind::Variant::Conjugated
                                  ? kind.similarity().dim()
                                  : static_cast<std::size_t>(dims(rng));
        const CMatrix u = sample_unit_group(kind, n, rng);
        if (std::abs(operator_norm(u, kind) - 1.0) > 1e-9 ||
            std::abs(operator_norm(inverse(u), kind) - 1.0) > 1e-9)
            ++rep.not_in_unit_group;

        const CMatrix a = random_with_condition(n, std::pow(10.0, u01(rng)), rng);
        const CMatrix a_inv = inverse(a);
        const CMatrix c = a_inv * u * a;
        const DpbVerdict v = dpb_decide(c, kind);
        if (!v.is_dpb) ++rep.not_dpb;
        if (!on_unit_circle(v.spectrum, 1e-8).on_circle) ++rep.off_circle;
        if (v.power_bound) rep.max_power_bound = std::max(rep.max_power_bound, *v.power_bound);
        const double cond = operator_norm(a, kind) * operator_norm(a_inv, kind);
        if (power_norm_profile(c, 50, kind).max > cond * (1.0 + 1e-9)) ++rep.bound_violations;
    }

    const CMatrix jordan{{1.0, 1.0}, {0.0, 1.0}};
    const DpbVerdict jv = dpb_decide(jordan, NormKind::inf());
    rep.jordan_on_circle = on_unit_circle(jv.spectrum, 1e-8).on_circle;
    rep.jordan_is_dpb = jv.is_dpb;
    return rep;
}

} // namespace dpbkit
