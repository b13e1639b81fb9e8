#include "dpbkit/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

void trim(std::vector<Complex>& c) {
    double mx = 0.0;
    for (const auto& z : c) mx = std::max(mx, std::abs(z));
    const double cut = 1e-14 * mx;
    while (!c.empty() && (std::abs(c.back()) < cut || c.back() == Complex{})) c.pop_back();
}

Poly scaled(const Poly& p, Complex s) { return s * p; }

// sum_k |c_k| r^k, an upper bound for ||p(T)|| when ||T|| = r.
double majorant(const Poly& p, double r) {
    double v = 0.0;
    const auto c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) v = v * r + std::abs(c[k]);
    return v;
}

} // namespace

Poly::Poly(std::vector<Complex> ascending) : c_(std::move(ascending)) {
    for (const auto& z : c_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorCode::InvalidArgument, "polynomial coefficients must be finite");
    trim(c_);
}

Poly Poly::constant(Complex c) { return Poly({c}); }
Poly Poly::x() { return Poly({0.0, 1.0}); }
Poly Poly::linear_factor(Complex root) { return Poly({-root, 1.0}); }

Poly Poly::from_roots(std::span<const Complex> roots) {
    Poly p = constant(1.0);
    for (const auto& r : roots) p = p * linear_factor(r);
    return p;
}

double Poly::max_abs() const noexcept {
    double mx = 0.0;
    for (const auto& z : c_) mx = std::max(mx, std::abs(z));
    return mx;
}

Complex Poly::operator()(Complex z) const {
    Complex v{};
    for (std::size_t k = c_.size(); k-- > 0;) v = v * z + c_[k];
    return v;
}

Poly operator+(const Poly& p, const Poly& q) {
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    std::vector<Complex> c(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) c[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) c[k] += b[k];
    return Poly(std::move(c));
}

Poly operator-(const Poly& p, const Poly& q) { return p + Complex(-1.0) * q; }

Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    std::vector<Complex> c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return Poly(std::move(c));
}

Poly operator*(Complex s, const Poly& p) {
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    for (auto& z : c) z *= s;
    return Poly(std::move(c));
}

double coeff_distance(const Poly& p, const Poly& q) {
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    double d = 0.0;
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
        const Complex x = k < a.size() ? a[k] : Complex{};
        const Complex y = k < b.size() ? b[k] : Complex{};
        d = std::max(d, std::abs(x - y));
    }
    return d;
}

PolyDivMod divmod(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "division by the zero polynomial");
    const int dq = q.degree();
    const int dp = p.degree();
    if (dp < dq) return {Poly{}, p};
    std::vector<Complex> rem(p.coeffs().begin(), p.coeffs().end());
    std::vector<Complex> quo(static_cast<std::size_t>(dp - dq + 1));
    const auto d = q.coeffs();
    const Complex lead = q.leading();
    for (int k = dp - dq; k >= 0; --k) {
        const Complex coef = rem[static_cast<std::size_t>(k + dq)] / lead;
        quo[static_cast<std::size_t>(k)] = coef;
        for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(k + j)] -= coef * d[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + dq)] = 0.0;
    }
    rem.resize(static_cast<std::size_t>(dq));
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Bezout extended_gcd(const Poly& p1, const Poly& p2) {
    if (p1.is_zero() && p2.is_zero())
        throw Error(ErrorCode::InvalidArgument, "gcd of two zero polynomials");

    // Invariant: s_k p1 + t_k p2 = r_k.
    Poly r0 = p1, s0 = Poly::constant(1.0), t0;
    Poly r1 = p2, s1, t1 = Poly::constant(1.0);
    if (r1.is_zero()) {
        std::swap(r0, r1);
        std::swap(s0, s1);
        std::swap(t0, t1);
    }
    auto normalize = [](Poly& r, Poly& s, Poly& t) {
        const Complex f = 1.0 / r.max_abs();
        r = scaled(r, f);
        s = scaled(s, f);
        t = scaled(t, f);
    };
    if (!r0.is_zero()) normalize(r0, s0, t0);
    normalize(r1, s1, t1);

    while (true) {
        if (r0.is_zero()) break;
        PolyDivMod qr = divmod(r0, r1);
        Poly r2 = qr.remainder;
        const double ref = std::max(r0.max_abs(), r1.max_abs());
        if (r2.is_zero() || r2.max_abs() <= kGcdZeroTol * ref) break;
        if (std::abs(r2.leading()) < kGcdLeadingTol * r2.max_abs())
            throw Error(ErrorCode::IllConditionedGcd,
                        "Euclid remainder with negligible leading coefficient (near-common root)");
        Poly s2 = s0 - qr.quotient * s1;
        Poly t2 = t0 - qr.quotient * t1;
        normalize(r2, s2, t2);
        r0 = std::move(r1);
        s0 = std::move(s1);
        t0 = std::move(t1);
        r1 = std::move(r2);
        s1 = std::move(s2);
        t1 = std::move(t2);
    }
    const Complex inv_lead = 1.0 / r1.leading();
    Bezout out{scaled(r1, inv_lead), scaled(s1, inv_lead), scaled(t1, inv_lead), 0.0};
    // With a degree-0 gcd the exact target is the constant 1.
    if (out.gcd.degree() == 0) out.gcd = Poly::constant(1.0);
    out.residual = coeff_distance(out.q1 * p1 + out.q2 * p2, out.gcd);
    return out;
}

CMatrix eval_at_matrix(const Poly& p, const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix acc(n);
    const auto c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) acc = shifted(acc * a, c[k]);
    return acc;
}

std::size_t kernel_dim(const CMatrix& a, double tol, std::optional<double> scale) {
    const std::size_t n = a.dim();
    CMatrix m = a;
    const double threshold = tol * scale.value_or(norm_inf(a));
    std::size_t rank = 0;
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        double best = 0.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (double v = std::abs(m(i, j)); v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
        if (best <= threshold || best == 0.0) break;
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pr, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, pc));
        ++rank;
        const Complex piv = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = m(i, k) / piv;
            if (l == Complex{}) continue;
            for (std::size_t j = k; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return n - rank;
}

std::size_t kernel_dim(const Poly& p, const CMatrix& t, double tol) {
    // Rounding scale of forming p(t): sum_k |c_k| ||t^k||.
    const auto c = p.coeffs();
    CMatrix power = CMatrix::identity(t.dim());
    double scale = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        scale += std::abs(c[k]) * norm_inf(power);
        if (k + 1 < c.size()) power = power * t;
    }
    return kernel_dim(eval_at_matrix(p, t), tol, scale);
}

KernelDecomposition kernel_decomposition(const CMatrix& t, const std::vector<Poly>& parts, double tol) {
    if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "kernel_decomposition needs at least one part");
    for (const auto& p : parts)
        if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial among the parts");
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!extended_gcd(parts[i], parts[j]).coprime())
                throw Error(ErrorCode::NotCoprime,
                            "parts " + std::to_string(i) + " and " + std::to_string(j) + " share a factor");

    const std::size_t n = t.dim();
    const double tn = norm_inf(t);
    std::vector<CMatrix> part_at_t;
    part_at_t.reserve(parts.size());
    for (const auto& p : parts) part_at_t.push_back(eval_at_matrix(p, t));

    KernelDecomposition out;
    CMatrix product = CMatrix::identity(n);
    double bound = 1.0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        product = product * part_at_t[j];
        bound *= majorant(parts[j], tn);
    }
    out.annihilator_residual = norm_inf(product) / bound;
    if (out.annihilator_residual > tol)
        throw Error(ErrorCode::NotAnnihilated,
                    "product of parts leaves residual " + std::to_string(out.annihilator_residual));

    // Left fold: A = P_1 ... P_k against B = P_{k+1}, with Q_A A + Q_B B = 1.
    // E_{k+1} = Q_A(T) A(T) and the earlier E_j are multiplied by Q_B(T) B(T).
    std::vector<CMatrix>& e = out.projectors;
    e.push_back(CMatrix::identity(n));
    Poly accumulated = parts.front();
    CMatrix accumulated_at_t = part_at_t.front();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        const Bezout bz = extended_gcd(accumulated, parts[k]);
        if (!bz.coprime())
            throw Error(ErrorCode::NotCoprime, "accumulated product shares a factor with part " + std::to_string(k));
        const CMatrix onto_new = eval_at_matrix(bz.q1, t) * accumulated_at_t;
        const CMatrix onto_old = eval_at_matrix(bz.q2, t) * part_at_t[k];
        for (auto& ej : e) ej = ej * onto_old;
        e.push_back(onto_new);
        accumulated = accumulated * parts[k];
        accumulated_at_t = accumulated_at_t * part_at_t[k];
    }

    CMatrix sum(n);
    for (std::size_t j = 0; j < e.size(); ++j) {
        sum += e[j];
        out.idem = std::max(out.idem, norm_inf(e[j] * e[j] - e[j]));
        const double scale = std::pow(std::max(1.0, tn), parts[j].degree());
        out.annihilation = std::max(out.annihilation, norm_inf(part_at_t[j] * e[j]) / scale);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != j) out.ortho = std::max(out.ortho, norm_inf(e[i] * e[j]));
    }
    out.resolution = norm_inf(shifted(sum, -1.0));
    return out;
}

} // namespace dpbkit
