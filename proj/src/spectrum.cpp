#include "dpbkit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c = 1.0;
    Complex s{};
};

// G = [[c, s], [-conj(s), c]] maps (a, b) to (r * a/|a|, 0).
Givens make_givens(Complex a, Complex b) {
    const double aa = std::abs(a);
    const double ab = std::abs(b);
    if (ab == 0.0) return {};
    if (aa == 0.0) return {0.0, 1.0};
    const double r = std::hypot(aa, ab);
    return {aa / r, (a / aa) * std::conj(b) / r};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex half_tr = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const Complex mu1 = half_tr + disc;
    const Complex mu2 = half_tr - disc;
    return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

} // namespace

CMatrix hessenberg(const CMatrix& a) {
    CMatrix h = a;
    const std::size_t n = h.dim();
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
        if (tail == 0.0) continue;
        const Complex x0 = h(k + 1, k);
        const double xnorm = std::sqrt(tail + std::norm(x0));
        const Complex phase = (std::abs(x0) == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;
        // v = x - alpha e1, reflector I - 2 v v^H / (v^H v)
        std::fill(v.begin(), v.end(), Complex{});
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vv += std::norm(v[i]);
        const double beta = 2.0 / vv;

        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return h;
}

EigenResult eigenvalues(const CMatrix& a, const EigenOptions& opts) {
    const std::size_t n = a.dim();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "eigenvalues of an empty matrix");
    if (n > opts.max_dim)
        throw Error(ErrorCode::InvalidArgument,
                    "dimension " + std::to_string(n) + " exceeds cap " + std::to_string(opts.max_dim));

    CMatrix h = hessenberg(a);
    const double hnorm = std::max(norm_inf(h), std::numeric_limits<double>::min());
    EigenResult res;
    res.values.assign(n, Complex{});
    const int cap = opts.iterations_per_dim * static_cast<int>(n);
    std::vector<Givens> rot(n);

    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int since_deflation = 0;
    while (hi >= 0) {
        std::ptrdiff_t lo = hi;
        for (; lo > 0; --lo) {
            const double local = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            const double ref = local > 0.0 ? local : hnorm;
            if (std::abs(h(lo, lo - 1)) <= kEps * ref) {
                h(lo, lo - 1) = 0.0;
                break;
            }
        }
        if (lo == hi) {
            res.values[hi] = h(hi, hi);
            --hi;
            since_deflation = 0;
            continue;
        }
        if (res.iterations >= cap) {
            res.converged = false;
            for (std::ptrdiff_t i = 0; i <= hi; ++i) res.values[i] = h(i, i);
            break;
        }

        Complex shift;
        if (since_deflation > 0 && since_deflation % 10 == 0) {
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        const auto l = static_cast<std::size_t>(lo);
        const auto u = static_cast<std::size_t>(hi);
        for (std::size_t k = l; k <= u; ++k) h(k, k) -= shift;
        for (std::size_t k = l; k < u; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rot[k] = g;
            for (std::size_t j = k; j <= u; ++j) {
                const Complex x = h(k, j);
                const Complex y = h(k + 1, j);
                h(k, j) = g.c * x + g.s * y;
                h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (std::size_t k = l; k < u; ++k) {
            const Givens g = rot[k];
            const std::size_t last = std::min(k + 2, u);
            for (std::size_t i = l; i <= last; ++i) {
                const Complex x = h(i, k);
                const Complex y = h(i, k + 1);
                h(i, k) = g.c * x + std::conj(g.s) * y;
                h(i, k + 1) = -g.s * x + g.c * y;
            }
        }
        for (std::size_t k = l; k <= u; ++k) h(k, k) += shift;
        ++res.iterations;
        ++since_deflation;
    }
    return res;
}

std::vector<Complex> SpectrumCluster::lambdas() const {
    std::vector<Complex> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.lambda);
    return out;
}

std::optional<std::size_t> SpectrumCluster::find(Complex z, double tol) const {
    std::optional<std::size_t> best;
    double best_d = tol;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = std::abs(points[i].lambda - z);
        if (d <= best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double default_cluster_tol(const CMatrix& a) { return 1e-8 * std::max(1.0, norm_inf(a)); }

SpectrumCluster cluster(const std::vector<Complex>& eigs, double cluster_tol) {
    if (eigs.empty()) throw Error(ErrorCode::InvalidArgument, "cluster of an empty eigenvalue list");
    if (!(cluster_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "cluster_tol must be positive");
    const std::size_t m = eigs.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(eigs[i] - eigs[j]) < cluster_tol) parent[root(i)] = root(j);

    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::ptrdiff_t> slot(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = root(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }

    SpectrumCluster out;
    out.cluster_tol = cluster_tol;
    out.source_dim = m;
    for (const auto& g : groups) {
        double diameter = 0.0;
        Complex sum{};
        for (std::size_t a : g) {
            sum += eigs[a];
            for (std::size_t b : g) diameter = std::max(diameter, std::abs(eigs[a] - eigs[b]));
        }
        if (diameter > 10.0 * cluster_tol)
            throw Error(ErrorCode::ClusterTooCoarse,
                        "eigenvalue group of diameter " + std::to_string(diameter) +
                            " exceeds 10 * cluster_tol");
        out.points.push_back({sum / static_cast<double>(g.size()), static_cast<int>(g.size())});
    }
    // Ascending angle in [0, 2 pi); imaginary parts inside the tolerance count as zero.
    auto angle = [cluster_tol](Complex z) {
        const double im = std::abs(z.imag()) <= cluster_tol ? 0.0 : z.imag();
        const double t = std::atan2(im, z.real());
        return t < 0.0 ? t + 2.0 * std::numbers::pi : t;
    };
    std::sort(out.points.begin(), out.points.end(), [&](const SpectralPoint& x, const SpectralPoint& y) {
        const double ax = angle(x.lambda);
        const double ay = angle(y.lambda);
        if (ax != ay) return ax < ay;
        return std::abs(x.lambda) < std::abs(y.lambda);
    });
    return out;
}

SpectrumCluster spectrum(const CMatrix& a, std::optional<double> cluster_tol) {
    EigenResult eig = eigenvalues(a);
    if (!eig.converged) throw Error(ErrorCode::NonConvergence, "QR iteration did not converge");
    return cluster(eig.values, cluster_tol.value_or(default_cluster_tol(a)));
}

CircleCheck on_unit_circle(const SpectrumCluster& s, double circ_tol) {
    CircleCheck c;
    for (const auto& p : s.points) c.max_deviation = std::max(c.max_deviation, std::abs(std::abs(p.lambda) - 1.0));
    c.on_circle = c.max_deviation <= circ_tol;
    return c;
}

} // namespace dpbkit
