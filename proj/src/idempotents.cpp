#include "dpbkit/idempotents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

double min_separation(std::span<const Complex> lambdas) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            sep = std::min(sep, std::abs(lambdas[i] - lambdas[j]));
    return sep;
}

void fill_residuals(IdempotentSystem& sys, const CMatrix* b) {
    const auto& p = sys.idempotents;
    const std::size_t n = p.empty() ? 0 : p.front().dim();
    SystemResiduals r;
    CMatrix sum(n);
    CMatrix recon(n);
    sys.nonzero.assign(p.size(), false);
    for (std::size_t j = 0; j < p.size(); ++j) {
        sum += p[j];
        recon += sys.lambdas[j] * p[j];
        r.idem = std::max(r.idem, norm_inf(p[j] * p[j] - p[j]));
        for (std::size_t i = 0; i < p.size(); ++i)
            if (i != j) r.ortho = std::max(r.ortho, norm_inf(p[i] * p[j]));
        sys.nonzero[j] = norm_inf(p[j]) > kZeroIdempotentTol;
    }
    r.resolution = norm_inf(shifted(sum, -1.0));
    if (b) r.reconstruction = norm_inf(recon - *b);
    sys.residuals = r;
    sys.separation = min_separation(sys.lambdas);
}

} // namespace

IdempotentSystem make_system(std::vector<Complex> lambdas, std::vector<CMatrix> idempotents, const CMatrix* b) {
    if (lambdas.empty() || lambdas.size() != idempotents.size())
        throw Error(ErrorCode::InvalidArgument, "system needs one idempotent per lambda");
    const std::size_t n = idempotents.front().dim();
    for (const auto& p : idempotents)
        if (p.dim() != n) throw Error(ErrorCode::DimensionMismatch, "idempotents of mixed dimension");
    if (b && b->dim() != n) throw Error(ErrorCode::DimensionMismatch, "system and element differ in dimension");
    IdempotentSystem sys;
    sys.lambdas = std::move(lambdas);
    sys.idempotents = std::move(idempotents);
    fill_residuals(sys, b);
    return sys;
}

IdempotentSystem lagrange_idempotents(const CMatrix& b, std::span<const Complex> lambdas) {
    if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "no lambdas given");
    double scale = 1.0;
    for (const auto& l : lambdas) scale = std::max(scale, std::abs(l));
    if (lambdas.size() > 1 && min_separation(lambdas) <= 1e-10 * scale)
        throw Error(ErrorCode::DuplicateLambdas, "lambdas are not pairwise distinct");

    const std::size_t n = b.dim();
    std::vector<CMatrix> p;
    p.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        CMatrix acc = CMatrix::identity(n);
        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            if (j == i) continue;
            acc = acc * shifted(b, -lambdas[j]);
            acc *= 1.0 / (lambdas[i] - lambdas[j]);
        }
        p.push_back(std::move(acc));
    }
    return make_system({lambdas.begin(), lambdas.end()}, std::move(p), &b);
}

double minimal_polynomial_residual(const CMatrix& b, std::span<const Complex> lambdas) {
    const double bn = norm_inf(b);
    CMatrix acc = CMatrix::identity(b.dim());
    double scale = 1.0;
    for (const auto& l : lambdas) {
        acc = acc * shifted(b, -l);
        scale *= bn + std::abs(l);
    }
    return scale > 0.0 ? norm_inf(acc) / scale : norm_inf(acc);
}

bool VerificationReport::all_pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

const Clause* VerificationReport::clause(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return &c;
    return nullptr;
}

VerificationReport verify_system(const IdempotentSystem& sys, const CMatrix& b, double tol,
                                 double spectral_match_tol) {
    if (sys.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty system");
    if (sys.idempotents.front().dim() != b.dim())
        throw Error(ErrorCode::DimensionMismatch, "system and element differ in dimension");
    VerificationReport rep;
    const double bscale = std::max(1.0, norm_inf(b));

    const IdempotentSystem bound = make_system(sys.lambdas, sys.idempotents, &b);
    const auto& r = bound.residuals;
    rep.clauses.push_back({"idempotent", r.idem <= tol, r.idem, "max ||p_j^2 - p_j||"});
    rep.clauses.push_back({"orthogonal", r.ortho <= tol, r.ortho, "max ||p_i p_j||, i != j"});
    rep.clauses.push_back({"resolution", r.resolution <= tol, r.resolution, "||sum p_j - e||"});
    const double recon = *r.reconstruction / bscale;
    rep.clauses.push_back({"reconstruction", recon <= tol, recon, "||sum lambda_j p_j - b|| / max(1, ||b||)"});

    const double annih = minimal_polynomial_residual(b, sys.lambdas);
    rep.clauses.push_back({"annihilation", annih <= tol, annih,
                           "||prod (b - lambda_j e)|| / prod (||b|| + |lambda_j|)"});

    double lag = 0.0;
    try {
        const IdempotentSystem ref = lagrange_idempotents(b, sys.lambdas);
        for (std::size_t j = 0; j < sys.size(); ++j)
            lag = std::max(lag, max_abs_diff(ref.idempotents[j], sys.idempotents[j]) /
                                    std::max(1.0, max_abs_entry(ref.idempotents[j])));
        rep.clauses.push_back({"lagrange_agreement", lag <= tol, lag, "stored p_j vs Lagrange product"});
    } catch (const Error& e) {
        rep.clauses.push_back({"lagrange_agreement", false, std::numeric_limits<double>::infinity(), e.what()});
    }

    const SpectrumCluster sigma = spectrum(b);
    rep.spectrum = sigma.lambdas();
    const double match = spectral_match_tol * bscale;
    double worst = 0.0;
    for (const auto& s : rep.spectrum) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& l : sys.lambdas) d = std::min(d, std::abs(s - l));
        worst = std::max(worst, d);
    }
    rep.clauses.push_back({"spectrum_subset", worst <= match, worst, "sigma(b) within {lambda_j}"});

    bool consistent = true;
    for (std::size_t j = 0; j < sys.size(); ++j) {
        const bool present = sigma.find(sys.lambdas[j], match).has_value();
        if (!present) rep.lambdas_not_in_spectrum.push_back(sys.lambdas[j]);
        if (present != bound.nonzero[j]) consistent = false;
    }
    rep.clauses.push_back({"spectrum_equality", rep.lambdas_not_in_spectrum.empty(),
                           static_cast<double>(rep.lambdas_not_in_spectrum.size()),
                           "count of lambda_j outside sigma(b)"});
    rep.clauses.push_back({"nonzero_consistency", consistent, consistent ? 0.0 : 1.0,
                           "lambda_j in sigma(b) exactly when p_j != 0"});
    return rep;
}

RieszProjection riesz_projection(const CMatrix& b, Complex lambda, const SpectrumCluster& spectrum,
                                 const RieszOptions& opts) {
    if (opts.nodes < 8) throw Error(ErrorCode::InvalidArgument, "at least 8 quadrature nodes required");
    if (!(opts.radius_fraction > 0.0 && opts.radius_fraction < 1.0))
        throw Error(ErrorCode::InvalidArgument, "radius_fraction must lie in (0, 1)");
    const double locate = std::max(10.0 * spectrum.cluster_tol, 1e-8);
    const auto idx = spectrum.find(lambda, locate);
    if (!idx) throw Error(ErrorCode::LambdaNotInSpectrum, "lambda is not a point of the given spectrum");
    const Complex center = spectrum.points[*idx].lambda;

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spectrum.points.size(); ++i)
        if (i != *idx) gap = std::min(gap, std::abs(spectrum.points[i].lambda - center));
    RieszProjection out;
    out.radius = std::isfinite(gap) ? opts.radius_fraction * gap : opts.radius_fraction;

    const std::size_t n = b.dim();
    // sum over the given node indices of r e^{i theta} (w - b)^{-1}
    auto partial = [&](int count, int stride, int offset) {
        CMatrix acc(n);
        for (int k = offset; k < count; k += stride) {
            const double theta = 2.0 * std::numbers::pi * k / count;
            const Complex dir = std::polar(1.0, theta);
            const Complex w = center + out.radius * dir;
            for (const auto& p : spectrum.points)
                if (std::abs(w - p.lambda) < 1e-12)
                    throw Error(ErrorCode::ResolventSingular, "quadrature node on a spectral point");
            CMatrix resolvent;
            try {
                resolvent = inverse(shifted(Complex(-1.0) * b, w));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularMatrix) throw;
                throw Error(ErrorCode::ResolventSingular, "resolvent singular at a quadrature node");
            }
            acc += (out.radius * dir) * resolvent;
        }
        return acc;
    };

    int nodes = opts.nodes;
    CMatrix sum = partial(nodes, 1, 0);
    CMatrix q = sum * Complex(1.0 / nodes);
    out.step_change = std::numeric_limits<double>::infinity();
    while (true) {
        out.q = q;
        out.nodes = nodes;
        out.idem_residual = norm_inf(q * q - q);
        const double tol = opts.idem_tol * std::max(1.0, norm_inf(q));
        if (out.idem_residual <= opts.idem_tol && out.step_change <= tol) {
            out.converged = true;
            break;
        }
        if (2 * nodes > opts.max_nodes) break;
        // Doubling keeps the old nodes; only the odd ones of the finer grid are new.
        sum += partial(2 * nodes, 2, 1);
        nodes *= 2;
        CMatrix next = sum * Complex(1.0 / nodes);
        out.step_change = norm_inf(next - q);
        q = std::move(next);
    }
    return out;
}

CMatrix left_regular(const CMatrix& x) {
    const std::size_t n = x.dim();
    CMatrix l(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) l(i * n + j, k * n + j) = x(i, k);
    return l;
}

IsometryProbe isometry_probe(const CMatrix& x, const NormKind& kind, int samples, std::uint64_t seed) {
    IsometryProbe out;
    out.norm = operator_norm(x, kind);
    out.attained_at_e = operator_norm(x * CMatrix::identity(x.dim()), kind);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const std::size_t n = x.dim();
    for (int s = 0; s < samples; ++s) {
        CMatrix y(n);
        for (auto& z : y.entries()) z = {normal(rng), normal(rng)};
        const double ny = operator_norm(y, kind);
        if (ny == 0.0) continue;
        y *= 1.0 / ny;
        out.lower = std::max(out.lower, operator_norm(x * y, kind));
    }
    return out;
}

} // namespace dpbkit
