#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dpbkit/matrix.hpp"

namespace dpbkit {

// Polynomial over C with ascending coefficients. Trailing coefficients below
// 1e-14 * max|c| are dropped on construction; the zero polynomial is empty.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Complex> ascending);

    static Poly constant(Complex c);
    static Poly x();
    // x - root
    static Poly linear_factor(Complex root);
    static Poly from_roots(std::span<const Complex> roots);

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] std::span<const Complex> coeffs() const noexcept { return c_; }
    [[nodiscard]] Complex leading() const { return c_.empty() ? Complex{} : c_.back(); }
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] Complex operator()(Complex z) const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    std::vector<Complex> c_;
};

Poly operator+(const Poly& p, const Poly& q);
Poly operator-(const Poly& p, const Poly& q);
Poly operator*(const Poly& p, const Poly& q);
Poly operator*(Complex s, const Poly& p);

// Max coefficient difference.
double coeff_distance(const Poly& p, const Poly& q);

struct PolyDivMod {
    Poly quotient;
    Poly remainder;  // deg < deg(divisor)
};

// Throws DivisionByZeroPoly for a zero divisor.
PolyDivMod divmod(const Poly& p, const Poly& q);

struct Bezout {
    Poly gcd;  // monic
    Poly q1;
    Poly q2;
    double residual = 0.0;  // max coeff |q1 p1 + q2 p2 - gcd|
    [[nodiscard]] bool coprime() const { return gcd.degree() == 0; }
};

inline constexpr double kGcdZeroTol = 1e-10;
inline constexpr double kGcdLeadingTol = 1e-12;

// Extended Euclid with every remainder rescaled to unit max-coefficient.
// A remainder whose size relative to the previous divisor is at most
// kGcdZeroTol counts as zero. A nonzero remainder whose leading coefficient
// is below kGcdLeadingTol of its own size raises IllConditionedGcd.
Bezout extended_gcd(const Poly& p1, const Poly& p2);

// Horner; the zero polynomial gives the zero matrix.
CMatrix eval_at_matrix(const Poly& p, const CMatrix& a);

// n - numerical rank, Gaussian elimination with complete pivoting, pivots at
// or below tol * scale treated as zero. The scale defaults to ||A||_inf.
std::size_t kernel_dim(const CMatrix& a, double tol = 1e-10, std::optional<double> scale = std::nullopt);

// kernel_dim of p(t), measured against sum_k |c_k| ||t^k|| so that an
// annihilating p reports the full dimension.
std::size_t kernel_dim(const Poly& p, const CMatrix& t, double tol = 1e-10);

struct KernelDecomposition {
    std::vector<CMatrix> projectors;  // E_j, one per part
    double resolution = 0.0;          // ||sum E_j - I||
    double ortho = 0.0;               // max_{i != j} ||E_i E_j||
    double idem = 0.0;                // max ||E_j^2 - E_j||
    double annihilation = 0.0;        // max ||P_j(T) E_j|| / max(1, ||T||)^deg P_j
    double annihilator_residual = 0.0;  // ||prod P_j(T)|| / prod bound_j
};

// Splits C^n along ker P_1(T) + ... + ker P_m(T) using Bezout identities,
// associated left to right. The parts must be pairwise coprime (NotCoprime)
// and their product must annihilate T within tol (NotAnnihilated).
KernelDecomposition kernel_decomposition(const CMatrix& t, const std::vector<Poly>& parts,
                                         double tol = 1e-8);

} // namespace dpbkit
