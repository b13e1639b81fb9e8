#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dpbkit {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Every algebra element in the
// library is carried by one of these; the identity plays the unit.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n);
    // Takes n*n row-major entries. Throws InvalidArgument on a size mismatch
    // or a non-finite entry.
    CMatrix(std::size_t n, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const Complex> diag);

    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    [[nodiscard]] bool empty() const noexcept { return n_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    [[nodiscard]] std::span<const Complex> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<Complex> entries() noexcept { return data_; }

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex s);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

// Textbook triple loop. Throws DimensionMismatch.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);

CMatrix adjoint(const CMatrix& a);
// a + shift * I
CMatrix shifted(CMatrix a, Complex shift);
Complex trace(const CMatrix& a);

// Max row absolute sum; used for every residual unless stated otherwise.
double norm_inf(const CMatrix& a);
// Max column absolute sum.
double norm_one(const CMatrix& a);
double max_abs_entry(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

struct InverseResult {
    CMatrix value;
    double residual = 0.0;  // ||A X - I||_inf
};

inline constexpr double kDefaultSingularTol = 1e-12;

// LU with partial pivoting. A pivot below tol * ||A||_inf raises SingularMatrix.
InverseResult invert(const CMatrix& a, double tol = kDefaultSingularTol);
CMatrix inverse(const CMatrix& a, double tol = kDefaultSingularTol);

// Smallest pivot magnitude of partial-pivoting LU; zero for exactly singular input.
double min_pivot(const CMatrix& a);
Complex determinant(const CMatrix& a);

} // namespace dpbkit
