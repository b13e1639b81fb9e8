#include "dpbkit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<Complex> mat_vec(const CMatrix& a, const std::vector<Complex>& v) {
    const std::size_t n = a.dim();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double vec_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

// Largest singular value via power iteration on A^H A with Rayleigh quotient
// ||A v|| for unit v. The start vector is fixed so the estimate is deterministic.
NormEstimate spectral_norm(const CMatrix& a) {
    const std::size_t n = a.dim();
    NormEstimate est;
    if (n == 0 || max_abs_entry(a) == 0.0) return est;
    const CMatrix ah = adjoint(a);
    std::mt19937_64 rng(0x5eed'1234ULL);
    std::normal_distribution<double> normal;
    std::vector<Complex> v(n);
    for (auto& z : v) z = {normal(rng), normal(rng)};
    double nv = vec_norm(v);
    for (auto& z : v) z /= nv;

    double sigma = vec_norm(mat_vec(a, v));
    est.converged = false;
    // After the convergence test passes, keep iterating while the step still
    // shrinks, at most as many extra rounds again, to reach rounding level.
    int polish_until = 0;
    double last_step = 0.0;
    for (int it = 1; it <= kPowerIterationCap; ++it) {
        std::vector<Complex> w = mat_vec(ah, mat_vec(a, v));
        const double nw = vec_norm(w);
        if (nw == 0.0) {
            // v landed in the kernel; restart along a coordinate direction.
            std::fill(v.begin(), v.end(), Complex{});
            v[static_cast<std::size_t>(it) % n] = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
        const double next = vec_norm(mat_vec(a, v));
        est.iterations = it;
        const double step = std::abs(next - sigma);
        sigma = std::max(sigma, next);
        if (est.converged) {
            if (it >= polish_until || step >= last_step || step <= 4.0 * kEps * sigma) break;
        } else if (step <= kPowerIterationStep * sigma) {
            est.converged = true;
            polish_until = std::min(2 * it, kPowerIterationCap);
        }
        last_step = step;
    }
    est.value = sigma;
    return est;
}

} // namespace

NormKind NormKind::conjugated(CMatrix s, NormKind base) {
    CMatrix s_inv = inverse(s);
    NormKind k(Variant::Conjugated);
    k.conj_ = std::make_shared<const Conjugation>(
        Conjugation{std::move(s), std::move(s_inv), std::make_shared<const NormKind>(std::move(base))});
    return k;
}

const CMatrix& NormKind::similarity() const {
    if (!conj_) throw Error(ErrorCode::InvalidArgument, "norm is not conjugated");
    return conj_->s;
}

const CMatrix& NormKind::similarity_inverse() const {
    if (!conj_) throw Error(ErrorCode::InvalidArgument, "norm is not conjugated");
    return conj_->s_inv;
}

const NormKind& NormKind::base() const {
    if (!conj_) throw Error(ErrorCode::InvalidArgument, "norm is not conjugated");
    return *conj_->base;
}

std::string NormKind::name() const {
    switch (variant_) {
    case Variant::One: return "one";
    case Variant::Inf: return "inf";
    case Variant::Two: return "two";
    case Variant::Conjugated: return "conjugated(" + base().name() + ")";
    }
    return "?";
}

CMatrix NormKind::to_base_frame(const CMatrix& a) const {
    if (variant_ != Variant::Conjugated) return a;
    return conj_->s_inv * a * conj_->s;
}

NormEstimate operator_norm_checked(const CMatrix& a, const NormKind& kind) {
    switch (kind.variant()) {
    case NormKind::Variant::One: return {norm_one(a), true, 0};
    case NormKind::Variant::Inf: return {norm_inf(a), true, 0};
    case NormKind::Variant::Two: return spectral_norm(a);
    case NormKind::Variant::Conjugated:
        if (a.dim() != kind.similarity().dim())
            throw Error(ErrorCode::DimensionMismatch, "conjugated norm dimension mismatch");
        return operator_norm_checked(kind.to_base_frame(a), kind.base());
    }
    return {};
}

double operator_norm(const CMatrix& a, const NormKind& kind) {
    return operator_norm_checked(a, kind).value;
}

PowerNormProfile power_norm_profile(const CMatrix& b, int horizon, const NormKind& kind,
                                    bool forward_only_if_singular) {
    if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "profile horizon must be positive");
    PowerNormProfile prof;
    std::vector<std::pair<int, double>> negative;
    std::optional<CMatrix> b_inv;
    try {
        b_inv = inverse(b);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix || !forward_only_if_singular) throw;
        prof.negative_powers = false;
    }

    auto record = [&](int k, const CMatrix& power, auto& sink) {
        NormEstimate est = operator_norm_checked(power, kind);
        prof.converged = prof.converged && est.converged;
        sink.emplace_back(k, est.value);
    };

    if (b_inv) {
        CMatrix p = *b_inv;
        for (int k = 1; k <= horizon; ++k) {
            record(-k, p, negative);
            if (k < horizon) p = p * *b_inv;
        }
    }
    std::reverse(negative.begin(), negative.end());
    prof.entries = std::move(negative);

    CMatrix p = CMatrix::identity(b.dim());
    for (int k = 0; k <= horizon; ++k) {
        record(k, p, prof.entries);
        if (k < horizon) p = p * b;
    }
    prof.max = 0.0;
    // Ties go to the positive exponent.
    for (const auto& [k, v] : prof.entries)
        if (v > prof.max * (1.0 + 1e-12) || (k > 0 && prof.argmax < 0 && v >= prof.max * (1.0 - 1e-12))) {
            prof.max = v;
            prof.argmax = k;
        }
    return prof;
}

} // namespace dpbkit
