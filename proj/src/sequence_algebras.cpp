#include "dpbkit/sequence_algebras.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

constexpr double kDropBelow = 1e-16;

Complex character_value(int k, int g, int m) {
    const int e = static_cast<int>((static_cast<long long>(k) * g) % m);
    return std::polar(1.0, 2.0 * std::numbers::pi * e / m);
}

} // namespace

WienerElement::WienerElement(std::map<int, Complex> coeffs) {
    for (const auto& [n, c] : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorCode::InvalidArgument, "Wiener coefficients must be finite");
        if (std::abs(c) >= kDropBelow) c_.emplace(n, c);
    }
}

Complex WienerElement::coeff(int n) const {
    const auto it = c_.find(n);
    return it == c_.end() ? Complex{} : it->second;
}

double WienerElement::norm() const {
    double s = 0.0;
    for (const auto& [n, c] : c_) s += std::abs(c);
    return s;
}

Complex WienerElement::operator()(Complex z) const {
    Complex s{};
    for (const auto& [n, c] : c_) s += c * std::pow(z, n);
    return s;
}

WienerElement operator+(const WienerElement& f, const WienerElement& g) {
    std::map<int, Complex> c = f.coeffs();
    for (const auto& [n, v] : g.coeffs()) c[n] += v;
    return WienerElement(std::move(c));
}

WienerElement wiener_mul(const WienerElement& f, const WienerElement& g) {
    std::map<int, Complex> c;
    for (const auto& [n, a] : f.coeffs())
        for (const auto& [m, b] : g.coeffs()) c[n + m] += a * b;
    return WienerElement(std::move(c));
}

MobiusTruncation mobius_truncation(int terms, int circle_samples) {
    if (terms < 1) throw Error(ErrorCode::InvalidArgument, "truncation needs at least one term");
    std::map<int, Complex> c{{0, -0.5}};
    for (int n = 1; n <= terms; ++n) c[n] = 1.5 * std::ldexp(1.0, -n);
    MobiusTruncation out;
    out.f = WienerElement(std::move(c));
    // Summed smallest first; the exact value is 1/2 + (3/2)(1 - 2^-N).
    double s = 0.0;
    for (auto it = out.f.coeffs().rbegin(); it != out.f.coeffs().rend(); ++it) s += std::abs(it->second);
    out.norm = s;
    for (int k = 0; k < circle_samples; ++k) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / circle_samples);
        out.max_circle_distance = std::max(out.max_circle_distance, std::abs(std::abs(out.f(z)) - 1.0));
    }
    out.value_at_one = out.f(1.0);
    return out;
}

CyclicFourierElement::CyclicFourierElement(int m, std::vector<Complex> coeffs) : m_(m), c_(std::move(coeffs)) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "group order must be positive");
    if (c_.size() != static_cast<std::size_t>(m))
        throw Error(ErrorCode::InvalidArgument, "need one coefficient per character");
}

double CyclicFourierElement::norm() const {
    double s = 0.0;
    for (const auto& z : c_) s += std::abs(z);
    return s;
}

std::vector<Complex> CyclicFourierElement::values() const {
    std::vector<Complex> v(static_cast<std::size_t>(m_));
    for (int g = 0; g < m_; ++g)
        for (int k = 0; k < m_; ++k)
            if (c_[static_cast<std::size_t>(k)] != Complex{})
                v[static_cast<std::size_t>(g)] += c_[static_cast<std::size_t>(k)] * character_value(k, g, m_);
    return v;
}

bool CyclicFourierElement::singleton_support() const {
    return std::count_if(c_.begin(), c_.end(), [](Complex z) { return std::abs(z) >= kDropBelow; }) == 1;
}

CyclicFourierElement operator*(const CyclicFourierElement& u, const CyclicFourierElement& v) {
    if (u.order() != v.order()) throw Error(ErrorCode::DimensionMismatch, "elements of different groups");
    const int m = u.order();
    std::vector<Complex> c(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const Complex a = u.coeffs()[static_cast<std::size_t>(i)];
        if (a == Complex{}) continue;
        for (int j = 0; j < m; ++j) c[static_cast<std::size_t>((i + j) % m)] += a * v.coeffs()[static_cast<std::size_t>(j)];
    }
    return {m, std::move(c)};
}

CyclicFourierElement cyclic_inverse(const CyclicFourierElement& u) {
    const int m = u.order();
    const auto vals = u.values();
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& z : vals) mn = std::min(mn, std::abs(z));
    if (!(mn > 1e-12 * std::max(1.0, u.norm())))
        throw Error(ErrorCode::NotInvertible, "function vanishes on the group");
    std::vector<Complex> c(static_cast<std::size_t>(m));
    if (u.singleton_support()) {
        for (int k = 0; k < m; ++k)
            if (const Complex a = u.coeffs()[static_cast<std::size_t>(k)]; std::abs(a) >= kDropBelow)
                c[static_cast<std::size_t>((m - k) % m)] = 1.0 / a;
        return {m, std::move(c)};
    }
    // c_k = (1/m) sum_g (1/u(g)) conj(chi_k(g))
    for (int k = 0; k < m; ++k) {
        Complex s{};
        for (int g = 0; g < m; ++g) s += std::conj(character_value(k, g, m)) / vals[static_cast<std::size_t>(g)];
        c[static_cast<std::size_t>(k)] = s / static_cast<double>(m);
    }
    return {m, std::move(c)};
}

CyclicFourierElement cyclic_power(const CyclicFourierElement& u, int n) {
    const CyclicFourierElement base = n < 0 ? cyclic_inverse(u) : u;
    std::vector<Complex> one(static_cast<std::size_t>(u.order()));
    one[0] = 1.0;
    CyclicFourierElement acc(u.order(), std::move(one));
    for (int k = 0; k < std::abs(n); ++k) acc = acc * base;
    return acc;
}

CyclicFourierElement cyclic_character(int m, int k, Complex alpha) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "group order must be positive");
    if (k < 0 || k >= m)
        throw Error(ErrorCode::IndexOutOfRange, "character index " + std::to_string(k) + " outside [0, " +
                                                    std::to_string(m) + ")");
    std::vector<Complex> c(static_cast<std::size_t>(m));
    c[static_cast<std::size_t>(k)] = alpha;
    return {m, std::move(c)};
}

CyclicProbe cyclic_dpb_probe(const CyclicFourierElement& u, int horizon) {
    CyclicProbe p;
    p.norm = u.norm();
    const auto vals = u.values();
    p.min_abs_value = std::numeric_limits<double>::infinity();
    for (const auto& z : vals) p.min_abs_value = std::min(p.min_abs_value, std::abs(z));
    const CyclicFourierElement inv = cyclic_inverse(u);  // NotInvertible

    CyclicFourierElement fwd = u, bwd = inv;
    p.sup_power_norm = 1.0;  // u^0 = e
    for (int n = 1; n <= horizon; ++n) {
        p.sup_power_norm = std::max({p.sup_power_norm, fwd.norm(), bwd.norm()});
        if (n < horizon) {
            fwd = fwd * u;
            bwd = bwd * inv;
        }
    }
    p.norm_one = std::abs(p.norm - 1.0) <= 1e-9;
    p.bounded_by_one = p.sup_power_norm <= 1.0 + 1e-9;
    p.singleton_support = u.singleton_support();
    p.consistent = (p.norm_one && p.bounded_by_one) == p.singleton_support;
    return p;
}

} // namespace dpbkit
