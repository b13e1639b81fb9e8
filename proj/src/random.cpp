#include "dpbkit/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dpbkit/error.hpp"

namespace dpbkit {

CMatrix random_gaussian(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal;
    CMatrix m(n);
    for (auto& z : m.entries()) z = {normal(rng), normal(rng)};
    return m;
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
    CMatrix q = random_gaussian(n, rng);
    // Modified Gram-Schmidt over columns, applied twice.
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot{};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
            double nn = 0.0;
            for (std::size_t i = 0; i < n; ++i) nn += std::norm(q(i, j));
            nn = std::sqrt(nn);
            for (std::size_t i = 0; i < n; ++i) q(i, j) /= nn;
        }
    return q;
}

CMatrix random_with_condition(std::size_t n, double cond, Rng& rng) {
    if (cond < 1.0) throw Error(ErrorCode::InvalidArgument, "condition number below 1");
    const CMatrix u = random_unitary(n, rng);
    const CMatrix v = random_unitary(n, rng);
    std::vector<Complex> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        s[i] = std::pow(cond, -t);
    }
    return u * CMatrix::diagonal(s) * v;
}

std::vector<Complex> random_unimodular(std::size_t n, double min_sep, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> pts;
    pts.reserve(n);
    int attempts = 0;
    while (pts.size() < n) {
        if (++attempts > 100000) throw Error(ErrorCode::InvalidArgument, "cannot place separated points");
        const Complex z = std::polar(1.0, angle(rng));
        if (std::all_of(pts.begin(), pts.end(), [&](Complex w) { return std::abs(z - w) >= min_sep; }))
            pts.push_back(z);
    }
    return pts;
}

CMatrix random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    CMatrix p(n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    return p;
}

} // namespace dpbkit
