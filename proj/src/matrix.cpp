#include "dpbkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(op) + ": dimension " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
}

// In-place LU with partial pivoting on a row-major copy; returns the
// permutation and the smallest pivot magnitude encountered.
struct Lu {
    CMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    double min_pivot = 0.0;
    bool zero_pivot = false;
};

Lu factor(const CMatrix& a) {
    Lu f{a, {}, 1, 0.0, false};
    const std::size_t n = a.dim();
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    f.min_pivot = n ? std::numeric_limits<double>::infinity() : 0.0;
    CMatrix& m = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (double v = std::abs(m(i, k)); v > best) {
                best = v;
                p = i;
            }
        }
        f.min_pivot = std::min(f.min_pivot, best);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        if (best == 0.0) {
            f.zero_pivot = true;
            continue;
        }
        const Complex pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = m(i, k) / pivot;
            m(i, k) = l;
            if (l == Complex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return f;
}

} // namespace

CMatrix::CMatrix(std::size_t n) : n_(n), data_(n * n) {}

CMatrix::CMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
    if (data_.size() != n * n)
        throw Error(ErrorCode::InvalidArgument,
                    "matrix of dimension " + std::to_string(n) + " needs " +
                        std::to_string(n * n) + " entries, got " + std::to_string(data_.size()));
    if (!std::all_of(data_.begin(), data_.end(), finite))
        throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw Error(ErrorCode::InvalidArgument, "matrix rows must form a square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!std::all_of(data_.begin(), data_.end(), finite))
        throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_dim(*this, other, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_dim(*this, other, "sub");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }
CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

CMatrix adjoint(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(j, i) = std::conj(a(i, j));
    return h;
}

CMatrix shifted(CMatrix a, Complex shift) {
    for (std::size_t i = 0; i < a.dim(); ++i) a(i, i) += shift;
    return a;
}

Complex trace(const CMatrix& a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double norm_inf(const CMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

double norm_one(const CMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

double max_abs_entry(const CMatrix& a) {
    double best = 0.0;
    for (const auto& z : a.entries()) best = std::max(best, std::abs(z));
    return best;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        best = std::max(best, std::abs(a.entries()[k] - b.entries()[k]));
    return best;
}

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

} // namespace

InverseResult invert(const CMatrix& a, double tol) {
    const std::size_t n = a.dim();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "inverse of an empty matrix");
    const double scale = norm_inf(a);
    Lu f = factor(a);
    if (f.zero_pivot || f.min_pivot < tol * scale)
        throw Error(ErrorCode::SingularMatrix,
                    "matrix is singular to working precision (pivot " + sci(f.min_pivot) + ", threshold " +
                        sci(tol * scale) + ")");
    const CMatrix& m = f.lu;
    CMatrix x(n);
    // Solve column by column: P A = L U.
    std::vector<Complex> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) col[i] = (f.perm[i] == c) ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < i; ++k) col[i] -= m(i, k) * col[k];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k) col[i] -= m(i, k) * col[k];
            col[i] /= m(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) x(i, c) = col[i];
    }
    InverseResult out{std::move(x), 0.0};
    out.residual = norm_inf(shifted(a * out.value, -1.0));
    return out;
}

CMatrix inverse(const CMatrix& a, double tol) { return invert(a, tol).value; }

double min_pivot(const CMatrix& a) {
    if (a.empty()) return 0.0;
    Lu f = factor(a);
    return f.zero_pivot ? 0.0 : f.min_pivot;
}

Complex determinant(const CMatrix& a) {
    Lu f = factor(a);
    if (f.zero_pivot) return 0.0;
    Complex d = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < a.dim(); ++i) d *= f.lu(i, i);
    return d;
}

} // namespace dpbkit
