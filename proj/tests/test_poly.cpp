#include <cmath>

#include "dpbkit/idempotents.hpp"
#include "dpbkit/poly.hpp"
#include "dpbkit/random.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace dpbkit;

namespace {

const Complex I(0, 1);

Poly P(std::vector<Complex> c) { return Poly(std::move(c)); }

std::vector<Complex> random_separated_roots(std::size_t k, double sep, Rng& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Complex> roots;
    while (roots.size() < k) {
        const Complex z(u(rng), u(rng));
        bool far = true;
        for (const auto& w : roots) far = far && std::abs(z - w) >= sep;
        if (far) roots.push_back(z);
    }
    return roots;
}

} // namespace

TEST_CASE("normalized representation") {
    CHECK(P({1.0, 2.0, 0.0, 1e-20}).degree() == 1);
    CHECK(P({0.0, 0.0}).is_zero());
    CHECK(Poly().degree() == -1);
    CHECK(Poly::constant(0.0).is_zero());
    CHECK(Poly::x()(3.0) == Complex(3.0));
    CHECK_THROWS_CODE(P({std::nan("")}), ErrorCode::InvalidArgument);
}

TEST_CASE("arithmetic examples") {
    CHECK(Poly::linear_factor(1.0) * Poly::linear_factor(-1.0) == P({-1.0, 0.0, 1.0}));
    const PolyDivMod d = divmod(P({-1.0, 0.0, 1.0}), Poly::linear_factor(1.0));
    CHECK(d.quotient == P({1.0, 1.0}));
    CHECK(d.remainder.is_zero());
    CHECK(Poly::linear_factor(I) + Poly::linear_factor(-I) == P({0.0, 2.0}));
    CHECK((Poly::x() - Poly::x()).is_zero());
    CHECK_THROWS_CODE(divmod(Poly::x(), Poly()), ErrorCode::DivisionByZeroPoly);
    const PolyDivMod low = divmod(Poly::constant(3.0), Poly::x());
    CHECK(low.quotient.is_zero());
    CHECK(low.remainder == Poly::constant(3.0));
}

TEST_CASE("property: divmod reconstructs the dividend") {
    Rng rng(21);
    std::normal_distribution<double> n;
    for (int t = 0; t < 50; ++t) {
        std::vector<Complex> a(1 + t % 8), b(1 + t % 4);
        for (auto& z : a) z = {n(rng), n(rng)};
        for (auto& z : b) z = {n(rng), n(rng)};
        const Poly p(a), q(b);
        const PolyDivMod d = divmod(p, q);
        CHECK(d.remainder.degree() < q.degree() + (q.degree() == 0 ? 1 : 0));
        CHECK(coeff_distance(d.quotient * q + d.remainder, p) <= 1e-10 * (1.0 + p.max_abs()));
    }
}

TEST_CASE("extended gcd examples") {
    const Bezout a = extended_gcd(Poly::linear_factor(1.0), Poly::linear_factor(-1.0));
    CHECK(a.coprime());
    CHECK(a.gcd == Poly::constant(1.0));
    CHECK(coeff_distance(a.q1, Poly::constant(-0.5)) <= 1e-15);
    CHECK(coeff_distance(a.q2, Poly::constant(0.5)) <= 1e-15);

    const Bezout b = extended_gcd(P({-1.0, 0.0, 1.0}), Poly::linear_factor(1.0));
    CHECK_FALSE(b.coprime());
    CHECK(coeff_distance(b.gcd, Poly::linear_factor(1.0)) <= 1e-15);
    CHECK(b.q1.is_zero());
    CHECK(coeff_distance(b.q2, Poly::constant(1.0)) <= 1e-15);

    const Bezout c = extended_gcd(Poly::from_roots(std::vector<Complex>{1.0, 2.0}), Poly::linear_factor(3.0));
    CHECK(c.coprime());
    CHECK(c.residual < 1e-10);
    CHECK(coeff_distance(c.q1 * Poly::from_roots(std::vector<Complex>{1.0, 2.0}) + c.q2 * Poly::linear_factor(3.0),
                         Poly::constant(1.0)) < 1e-10);

    CHECK_THROWS_CODE(extended_gcd(Poly(), Poly()), ErrorCode::InvalidArgument);
    const Bezout z = extended_gcd(Poly(), P({2.0, 4.0}));
    CHECK(coeff_distance(z.gcd, P({0.5, 1.0})) <= 1e-15);
}

TEST_CASE("extended gcd flags near-common roots") {
    // Roots 1 and 1 + 1e-13 are indistinguishable at coefficient precision.
    bool handled = false;
    try {
        const Bezout g = extended_gcd(Poly::linear_factor(1.0), Poly::linear_factor(1.0 + 1e-13));
        handled = !g.coprime();
    } catch (const Error& e) {
        handled = e.code() == ErrorCode::IllConditionedGcd;
    }
    CHECK(handled);
}

TEST_CASE("property: Bezout residual on random coprime pairs") {
    Rng rng(22);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int t = 0; t < 100; ++t) {
        const auto d1 = static_cast<std::size_t>(deg(rng)), d2 = static_cast<std::size_t>(deg(rng));
        const auto roots = random_separated_roots(d1 + d2, 0.1, rng);
        const Poly p1 = Poly::from_roots(std::span(roots).first(d1));
        const Poly p2 = Poly::from_roots(std::span(roots).subspan(d1));
        const Bezout g = extended_gcd(p1, p2);
        CHECK(g.coprime());
        const double scale = std::max({1.0, p1.max_abs(), p2.max_abs()});
        CHECK(g.residual <= 1e-9 * scale);
    }
}

TEST_CASE("eval_at_matrix examples") {
    Rng rng(23);
    const CMatrix a = random_gaussian(3, rng);
    CHECK(eval_at_matrix(Poly::x(), a) == a);
    CHECK(eval_at_matrix(Poly::constant(1.0), a) == CMatrix::identity(3));
    CHECK(eval_at_matrix(Poly(), a) == CMatrix(3));
    const CMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(eval_at_matrix(Poly::from_roots(std::vector<Complex>{1.0, -1.0}), swap) == CMatrix(2));
    CHECK(eval_at_matrix(P({-1.0, 0.0, 1.0}), CMatrix{{1.0, 1.0}, {0.0, 1.0}}) == (CMatrix{{0.0, 2.0}, {0.0, 0.0}}));
}

TEST_CASE("kernel_dim examples") {
    CHECK(kernel_dim(CMatrix(3)) == 3);
    CHECK(kernel_dim(CMatrix::identity(4)) == 0);
    CHECK(kernel_dim(CMatrix{{0.0, 2.0}, {0.0, 0.0}}) == 1);
    CHECK(kernel_dim(CMatrix{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}, {1.0, 0.0, 1.0}}) == 1);
    // p(T) = 0 up to rounding still reports the full kernel.
    const CMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(kernel_dim(Poly::from_roots(std::vector<Complex>{1.0, -1.0}), swap) == 2);
    CHECK(kernel_dim(Poly::linear_factor(1.0), swap) == 1);
}

TEST_CASE("property: kernel_dim agrees with the singular value rank oracle") {
    Rng rng(24);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const std::size_t rank = static_cast<std::size_t>(t) % n;
        CMatrix a(n);
        for (std::size_t k = 0; k < rank; ++k) {
            const CMatrix g = random_gaussian(n, rng);
            CMatrix outer(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) outer(i, j) = g(i, 0) * g(1, j);
            a += outer;
        }
        CHECK(kernel_dim(a) == n - oracle::numerical_rank(a));
        CHECK(kernel_dim(a) == n - rank);
    }
}

TEST_CASE("kernel_decomposition examples") {
    const CMatrix t = CMatrix::diagonal(std::vector<Complex>{1.0, 2.0, 3.0});
    const KernelDecomposition d =
        kernel_decomposition(t, {Poly::linear_factor(1.0), Poly::from_roots(std::vector<Complex>{2.0, 3.0})});
    CHECK(near(d.projectors[0], CMatrix::diagonal(std::vector<Complex>{1.0, 0.0, 0.0}), 1e-12));
    CHECK(near(d.projectors[1], CMatrix::diagonal(std::vector<Complex>{0.0, 1.0, 1.0}), 1e-12));

    const CMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    const KernelDecomposition s = kernel_decomposition(swap, {Poly::linear_factor(1.0), Poly::linear_factor(-1.0)});
    CHECK(near(s.projectors[0], CMatrix{{0.5, 0.5}, {0.5, 0.5}}, 1e-15));
    CHECK(near(s.projectors[1], CMatrix{{0.5, -0.5}, {-0.5, 0.5}}, 1e-15));
    const IdempotentSystem lag = lagrange_idempotents(swap, std::vector<Complex>{1.0, -1.0});
    CHECK(near(s.projectors[0], lag.idempotents[0], 1e-15));

    CHECK_THROWS_CODE(kernel_decomposition(swap, {Poly::linear_factor(1.0), Poly::linear_factor(1.0)}),
                      ErrorCode::NotCoprime);
    CHECK_THROWS_CODE(kernel_decomposition(CMatrix{{1.0, 1.0}, {0.0, 1.0}}, {Poly::linear_factor(1.0)}),
                      ErrorCode::NotAnnihilated);
    CHECK_THROWS_CODE(kernel_decomposition(swap, {}), ErrorCode::InvalidArgument);
    const KernelDecomposition one = kernel_decomposition(swap, {Poly::from_roots(std::vector<Complex>{1.0, -1.0})});
    CHECK(near(one.projectors[0], CMatrix::identity(2), 1e-15));
}

TEST_CASE("kernel_decomposition handles a Jordan block inside one part") {
    // T = J_2(1) (+) (-1): (x-1)^2 and (x+1) annihilate and are coprime.
    const CMatrix t{{1.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, -1.0}};
    const KernelDecomposition d = kernel_decomposition(
        t, {Poly::from_roots(std::vector<Complex>{1.0, 1.0}), Poly::linear_factor(-1.0)});
    CHECK(near(d.projectors[0], CMatrix::diagonal(std::vector<Complex>{1.0, 1.0, 0.0}), 1e-12));
    CHECK(near(d.projectors[1], CMatrix::diagonal(std::vector<Complex>{0.0, 0.0, 1.0}), 1e-12));
    CHECK(kernel_dim(Poly::from_roots(std::vector<Complex>{1.0, 1.0}), t) == 2);
    CHECK(kernel_dim(Poly::linear_factor(1.0), t) == 1);
}

TEST_CASE("property: dimension additivity, projector algebra and annihilation") {
    Rng rng(25);
    std::uniform_int_distribution<int> dims(2, 8);
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(dims(rng));
        const auto values = random_separated_roots(std::min<std::size_t>(n, 1 + t % 5), 0.3, rng);
        std::vector<int> mult(values.size(), 1);
        for (std::size_t extra = n - values.size(), k = 0; extra > 0; --extra, ++k) ++mult[k % values.size()];
        const auto c = oracle::diagonalizable(values, mult, 5.0, rng);

        std::vector<Poly> parts;
        for (const auto& v : values) parts.push_back(Poly::linear_factor(v));
        std::size_t total = 0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            const std::size_t kd = kernel_dim(parts[j], c.b);
            CHECK(kd == static_cast<std::size_t>(mult[j]));
            total += kd;
        }
        CHECK(kernel_dim(Poly::from_roots(values), c.b) == total);

        const KernelDecomposition d = kernel_decomposition(c.b, parts);
        CHECK(d.resolution <= 1e-7);
        CHECK(d.ortho <= 1e-7);
        CHECK(d.idem <= 1e-7);
        const double tn = norm_inf(c.b);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            CHECK(norm_inf(eval_at_matrix(parts[j], c.b) * d.projectors[j]) <= 1e-7 * std::max(1.0, tn));
            CHECK(near(d.projectors[j], c.projectors[j], 1e-8));
        }
    }
}
