#include <cmath>
#include <numbers>

#include "dpbkit/random.hpp"
#include "dpbkit/sequence_algebras.hpp"
#include "support/checks.hpp"

using namespace dpbkit;

TEST_CASE("wiener multiplication examples") {
    const WienerElement f({{-2, Complex(1, 1)}, {3, 0.5}});
    CHECK(wiener_mul(WienerElement::unit(), f) == f);
    CHECK(wiener_mul(WienerElement::monomial(1), WienerElement::monomial(1)) == WienerElement::monomial(2));
    const WienerElement g = WienerElement::monomial(1) + WienerElement::monomial(-1);
    CHECK(wiener_mul(g, g) == WienerElement({{-2, 1.0}, {0, 2.0}, {2, 1.0}}));
    CHECK(WienerElement::unit().norm() == 1.0);
    CHECK(WienerElement({{4, 1e-17}}).coeffs().empty());
    CHECK(f.coeff(7) == Complex(0.0));
    // evaluation is the pointwise product
    const Complex z = std::polar(1.0, 0.9);
    CHECK(std::abs(wiener_mul(f, g)(z) - f(z) * g(z)) <= 1e-14);
}

TEST_CASE("property: l1 submultiplicativity") {
    Rng rng(51);
    std::normal_distribution<double> n;
    std::uniform_int_distribution<int> idx(-10, 10);
    for (int t = 0; t < 100; ++t) {
        std::map<int, Complex> a, b;
        for (int k = 0; k < 6; ++k) {
            a[idx(rng)] += Complex(n(rng), n(rng));
            b[idx(rng)] += Complex(n(rng), n(rng));
        }
        const WienerElement f(a), g(b);
        CHECK(wiener_mul(f, g).norm() <= f.norm() * g.norm() + 1e-12);
    }
}

TEST_CASE("mobius truncation") {
    const MobiusTruncation one = mobius_truncation(1);
    CHECK(one.norm == 1.25);
    CHECK(one.f.coeff(0) == Complex(-0.5));
    CHECK(one.f.coeff(1) == Complex(0.75));
    const MobiusTruncation forty = mobius_truncation(40);
    CHECK(std::abs(forty.norm - 2.0) <= 1.4e-12);
    CHECK(std::abs(forty.value_at_one - 1.0) <= 1e-11);
    CHECK(forty.max_circle_distance <= 1e-10);
    CHECK_THROWS_CODE(mobius_truncation(0), ErrorCode::InvalidArgument);
}

TEST_CASE("property: mobius norms increase to 2 with the exact tail") {
    double prev = 0.0, prev_dist = 1e300;
    for (int n = 1; n <= 45; ++n) {
        const MobiusTruncation t = mobius_truncation(n);
        CHECK(t.norm > prev);
        CHECK(std::abs((2.0 - t.norm) - 1.5 * std::ldexp(1.0, -n)) <= 1e-15);
        CHECK(t.max_circle_distance <= prev_dist * (1.0 + 1e-9) + 1e-15);
        prev = t.norm;
        prev_dist = t.max_circle_distance;
    }
}

TEST_CASE("cyclic characters") {
    const CyclicFourierElement triv = cyclic_character(4, 0);
    for (const auto& v : triv.values()) CHECK(std::abs(v - 1.0) <= 1e-15);
    const CyclicFourierElement chi = cyclic_character(4, 1);
    CHECK(chi.norm() == 1.0);
    const auto vals = chi.values();
    const Complex i(0, 1);
    for (int g = 0; g < 4; ++g) CHECK(std::abs(vals[static_cast<std::size_t>(g)] - std::pow(i, g)) <= 1e-15);
    for (const auto& v : vals) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-15);

    const Complex alpha = std::polar(1.0, 2.2);
    const CyclicFourierElement a = cyclic_character(5, 2, alpha);
    const CyclicFourierElement inv = cyclic_inverse(a);
    const CyclicFourierElement expect = cyclic_character(5, 3, std::conj(alpha));
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(inv.coeffs()[j] - expect.coeffs()[j]) <= 1e-15);
    CHECK(inv.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs((a * inv).coeffs()[0] - 1.0) <= 1e-15);

    CHECK_THROWS_CODE(cyclic_character(4, 4), ErrorCode::IndexOutOfRange);
    CHECK_THROWS_CODE(cyclic_character(4, -1), ErrorCode::IndexOutOfRange);
}

TEST_CASE("property: character powers have norm exactly one") {
    for (int m = 1; m <= 9; ++m)
        for (int k = 0; k < m; ++k) {
            const CyclicFourierElement chi = cyclic_character(m, k);
            const CyclicFourierElement rotated = cyclic_character(m, k, std::polar(1.0, 0.1 * k));
            for (int n = -100; n <= 100; ++n) {
                CHECK(cyclic_power(chi, n).norm() == 1.0);
                CHECK(std::abs(cyclic_power(rotated, n).norm() - 1.0) <= 1e-13);
            }
        }
}

TEST_CASE("cyclic probe examples") {
    const CyclicProbe p = cyclic_dpb_probe(cyclic_character(5, 1), 50);
    CHECK(p.sup_power_norm == 1.0);
    CHECK(p.singleton_support);
    CHECK(p.consistent);
    CHECK(p.norm_one);

    CHECK_THROWS_CODE(cyclic_dpb_probe(CyclicFourierElement(2, {0.5, 0.5}), 10), ErrorCode::NotInvertible);

    const CyclicProbe q = cyclic_dpb_probe(CyclicFourierElement(2, {0.6, Complex(0, 0.8)}), 20);
    CHECK(q.norm == doctest::Approx(1.4));
    CHECK_FALSE(q.norm_one);
    CHECK(q.consistent);
}

TEST_CASE("property: norm-one non-characters have growing powers") {
    Rng rng(52);
    std::uniform_real_distribution<double> u(0.05, 0.95), ph(0.0, 2.0 * std::numbers::pi);
    for (int t = 0; t < 30; ++t) {
        const int m = 2 + t % 6;
        const double w = u(rng);
        std::vector<Complex> c(static_cast<std::size_t>(m), 0.0);
        c[0] = std::polar(w, ph(rng));
        c[static_cast<std::size_t>(1 + t % (m - 1))] = std::polar(1.0 - w, ph(rng));
        const CyclicFourierElement v(m, c);
        try {
            const CyclicProbe p = cyclic_dpb_probe(v, 40);
            CHECK(p.norm_one);
            CHECK_FALSE(p.singleton_support);
            CHECK(p.sup_power_norm > 1.0 + 1e-9);
            CHECK(p.consistent);
            CHECK(p.norm >= std::abs(v.values()[0]) - 1e-15);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotInvertible);
        }
    }
}

TEST_CASE("cyclic element validation") {
    CHECK_THROWS_CODE(CyclicFourierElement(3, {1.0}), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(CyclicFourierElement(0, {}), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(CyclicFourierElement(2, {1.0, 0.0}) * CyclicFourierElement(3, {1.0, 0.0, 0.0}),
                      ErrorCode::DimensionMismatch);
}
