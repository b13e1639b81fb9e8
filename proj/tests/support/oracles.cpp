#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += at(i, j) * at(i, j);
                if (i != j) off += at(i, j) * at(i, j);
            }
        if (off <= 1e-30 * total || off == 0.0) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
    const std::size_t n = h.dim(), m = 2 * n;
    std::vector<double> r(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h(i, j).real(), im = h(i, j).imag();
            r[i * m + j] = re;
            r[(i + n) * m + j + n] = re;
            r[i * m + j + n] = -im;
            r[(i + n) * m + j] = im;
        }
    const auto doubled = symmetric_eigenvalues(std::move(r), m);
    std::vector<double> ev;
    for (std::size_t i = 0; i < m; i += 2) ev.push_back(0.5 * (doubled[i] + doubled[i + 1]));
    return ev;
}

std::vector<double> singular_values(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += std::conj(a(k, i)) * a(k, j);
            g(i, j) = s;
        }
    auto ev = hermitian_eigenvalues(g);
    for (auto& x : ev) x = std::sqrt(std::max(x, 0.0));
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

double two_norm(const CMatrix& a) { return a.dim() ? singular_values(a).front() : 0.0; }

std::size_t numerical_rank(const CMatrix& a, double rel_tol) {
    const auto sv = singular_values(a);
    if (sv.empty() || sv.front() == 0.0) return 0;
    return static_cast<std::size_t>(
        std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rel_tol * sv.front(); }));
}

Similarity random_similarity(std::size_t n, double cond, Rng& rng) {
    const CMatrix u = dpbkit::random_unitary(n, rng);
    const CMatrix v = dpbkit::random_unitary(n, rng);
    std::vector<Complex> s(n), s_inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        s[i] = std::pow(cond, -t);
        s_inv[i] = 1.0 / s[i];
    }
    return {u * CMatrix::diagonal(s) * v, dpbkit::adjoint(v) * CMatrix::diagonal(s_inv) * dpbkit::adjoint(u)};
}

DiagonalizableCase diagonalizable(const std::vector<Complex>& lambdas, const std::vector<int>& mult,
                                  double cond, Rng& rng) {
    DiagonalizableCase c;
    c.lambdas = lambdas;
    c.multiplicity = mult;
    std::vector<Complex> diag;
    for (std::size_t j = 0; j < lambdas.size(); ++j)
        for (int r = 0; r < mult[j]; ++r) diag.push_back(lambdas[j]);
    const std::size_t n = diag.size();
    c.sim = random_similarity(n, cond, rng);
    c.b = c.sim.s * CMatrix::diagonal(diag) * c.sim.s_inv;
    std::size_t offset = 0;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        std::vector<Complex> e(n, 0.0);
        for (int r = 0; r < mult[j]; ++r) e[offset + static_cast<std::size_t>(r)] = 1.0;
        offset += static_cast<std::size_t>(mult[j]);
        c.projectors.push_back(c.sim.s * CMatrix::diagonal(e) * c.sim.s_inv);
    }
    return c;
}

CMatrix jordan_conjugate(Complex lambda, std::size_t block, const std::vector<Complex>& others, double cond,
                         Rng& rng) {
    const std::size_t n = block + others.size();
    CMatrix j(n);
    for (std::size_t i = 0; i < block; ++i) {
        j(i, i) = lambda;
        if (i + 1 < block) j(i, i + 1) = 1.0;
    }
    for (std::size_t i = 0; i < others.size(); ++i) j(block + i, block + i) = others[i];
    const Similarity sim = random_similarity(n, cond, rng);
    return sim.s * j * sim.s_inv;
}

CMatrix cyclic_shift(std::size_t m) {
    CMatrix a(m);
    for (std::size_t j = 0; j < m; ++j) a((j + 1) % m, j) = 1.0;
    return a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    CMatrix k(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t q = 0; q < m; ++q) k(i * m + p, j * m + q) = a(i, j) * b(p, q);
    return k;
}

Complex cofactor_determinant(const CMatrix& a) {
    const std::size_t n = a.dim();
    if (n == 1) return a(0, 0);
    Complex det = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        CMatrix minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = a(i, j);
        det += (c % 2 ? -1.0 : 1.0) * a(0, c) * cofactor_determinant(minor);
    }
    return det;
}

} // namespace oracle
