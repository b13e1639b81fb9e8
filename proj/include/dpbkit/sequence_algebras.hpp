#pragma once

#include <map>
#include <vector>

#include "dpbkit/matrix.hpp"

namespace dpbkit {

// Element of the Wiener algebra: a finitely supported Fourier series
// sum_n c_n z^n on the circle, with the l1 norm. Coefficients below 1e-16 in
// modulus are not stored.
class WienerElement {
public:
    WienerElement() = default;
    explicit WienerElement(std::map<int, Complex> coeffs);

    static WienerElement unit() { return WienerElement({{0, 1.0}}); }
    static WienerElement monomial(int n, Complex c = 1.0) { return WienerElement({{n, c}}); }

    [[nodiscard]] const std::map<int, Complex>& coeffs() const noexcept { return c_; }
    [[nodiscard]] Complex coeff(int n) const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] Complex operator()(Complex z) const;

    friend bool operator==(const WienerElement&, const WienerElement&) = default;

private:
    std::map<int, Complex> c_;
};

WienerElement operator+(const WienerElement& f, const WienerElement& g);
// Convolution of coefficients, the pointwise product on the circle.
WienerElement wiener_mul(const WienerElement& f, const WienerElement& g);

struct MobiusTruncation {
    WienerElement f;
    double norm = 0.0;
    double max_circle_distance = 0.0;  // max over samples of | |f_N(z)| - 1 |
    Complex value_at_one;
};

// Partial sums of (2z - 1)/(2 - z) = -1/2 + (3/2) sum_{n >= 1} 2^{-n} z^n.
MobiusTruncation mobius_truncation(int terms, int circle_samples = 256);

// A function on Z_m written in the character basis, u = sum_k c_k chi_k with
// chi_k(g) = exp(2 pi i k g / m). Multiplication is cyclic convolution of the
// coefficient vectors and the norm is their l1 sum.
class CyclicFourierElement {
public:
    CyclicFourierElement() = default;
    CyclicFourierElement(int m, std::vector<Complex> coeffs);

    [[nodiscard]] int order() const noexcept { return m_; }
    [[nodiscard]] const std::vector<Complex>& coeffs() const noexcept { return c_; }
    [[nodiscard]] double norm() const;
    [[nodiscard]] std::vector<Complex> values() const;
    [[nodiscard]] bool singleton_support() const;

    friend bool operator==(const CyclicFourierElement&, const CyclicFourierElement&) = default;

private:
    int m_ = 0;
    std::vector<Complex> c_;
};

CyclicFourierElement operator*(const CyclicFourierElement& u, const CyclicFourierElement& v);
// Exact for alpha chi_k, whose inverse is (1/alpha) chi_{-k}; otherwise by
// pointwise reciprocal of the values. Throws NotInvertible.
CyclicFourierElement cyclic_inverse(const CyclicFourierElement& u);
CyclicFourierElement cyclic_power(const CyclicFourierElement& u, int n);

// The character chi_k of Z_m. Throws IndexOutOfRange unless 0 <= k < m.
CyclicFourierElement cyclic_character(int m, int k, Complex alpha = 1.0);

struct CyclicProbe {
    double norm = 0.0;
    double sup_power_norm = 0.0;  // max_{|n| <= N} ||u^n||
    double min_abs_value = 0.0;
    bool norm_one = false;
    bool bounded_by_one = false;
    bool singleton_support = false;
    // Norm one with all powers of norm one holds exactly for alpha chi_k.
    bool consistent = false;
};

CyclicProbe cyclic_dpb_probe(const CyclicFourierElement& u, int horizon);

} // namespace dpbkit
