#include "dpbkit/demos.hpp"

#include <cmath>
#include <numbers>

#include "dpbkit/error.hpp"
#include "dpbkit/random.hpp"

namespace dpbkit {

namespace {

class Recorder {
public:
    explicit Recorder(DemoReport& r) : r_(r) {}

    void near(std::string name, double expected, double actual, double tol) {
        const bool ok = std::abs(actual - expected) <= tol;
        r_.checks.push_back({std::move(name), expected, actual, tol, ok});
    }
    void near(std::string name, Complex expected, Complex actual, double tol) {
        const bool ok = std::abs(actual - expected) <= tol;
        r_.checks.push_back({std::move(name), complex_to_json(expected), complex_to_json(actual), tol, ok});
    }
    void at_most(std::string name, double bound, double actual) {
        r_.checks.push_back({std::move(name), {{"max", bound}}, actual, 0.0, actual <= bound});
    }
    void at_least(std::string name, double bound, double actual) {
        r_.checks.push_back({std::move(name), {{"min", bound}}, actual, 0.0, actual >= bound});
    }
    template <class T>
    void equal(std::string name, const T& expected, const T& actual) {
        r_.checks.push_back({std::move(name), Json(expected), Json(actual), 0.0, expected == actual});
    }

private:
    DemoReport& r_;
};

void gelfand(DemoReport& r, std::uint64_t seed) {
    Recorder rec(r);
    const NormKind inf = NormKind::inf();
    const GelfandResult id = gelfand_check(CMatrix::identity(3), inf);
    rec.equal("identity recovered", true, id.is_identity);
    rec.near("identity distance", 0.0, id.distance, 0.0);

    Rng rng(seed);
    double worst = 0.0;
    bool all = true;
    for (int t = 0; t < 20; ++t) {
        const CMatrix s = random_with_condition(4, 10.0, rng);
        const GelfandResult g = gelfand_check(s * CMatrix::identity(4) * inverse(s), inf);
        all = all && g.is_identity;
        worst = std::max(worst, g.distance);
    }
    rec.equal("conjugates of e recovered", true, all);
    rec.at_most("conjugate distance", 1e-10, worst);

    const GelfandResult j = gelfand_check(CMatrix{{1.0, 1.0}, {0.0, 1.0}}, inf);
    rec.equal("jordan block rejected", false, j.is_identity);
    rec.equal("jordan block spectrum is {1}", true, j.spectrum_is_one);
    rec.near("jordan block distance", 1.0, j.distance, 1e-12);
    r.data = {{"jordan_reason", j.reason}, {"max_conjugate_distance", worst}};
}

void periodic(DemoReport& r, std::uint64_t) {
    Recorder rec(r);
    const CMatrix shift{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    const PeriodicDecomposition d = periodic_decompose(shift, 3);
    rec.at_most("shift reconstruction", 1e-10, d.reconstruction);
    rec.at_most("shift resolution", 1e-10, d.resolution);
    int nonzero = 0;
    for (bool z : d.zero_flags) nonzero += z ? 0 : 1;
    rec.equal("shift nonzero idempotents", 3, nonzero);

    const PeriodicDecomposition e = periodic_decompose(CMatrix::identity(2), 4);
    rec.equal("identity zero flags", std::vector<bool>{true, true, true, false}, e.zero_flags);
    rec.at_most("identity p_4 = e", 1e-12, max_abs_diff(e.idempotents[3], CMatrix::identity(2)));

    const CMatrix a{{1.0, 0.0}, {0.0, -1.0}};
    const PeriodicDecomposition f = periodic_decompose(a, 2);
    const std::vector<Complex> lambdas{-1.0, 1.0};
    const IdempotentSystem lag = lagrange_idempotents(a, lambdas);
    rec.at_most("diag(1,-1) matches lagrange, root -1", 1e-8, max_abs_diff(f.idempotents[0], lag.idempotents[0]));
    rec.at_most("diag(1,-1) matches lagrange, root 1", 1e-8, max_abs_diff(f.idempotents[1], lag.idempotents[1]));
    r.data = {{"shift", {{"reconstruction", d.reconstruction}, {"resolution", d.resolution}}}};
}

void triangular(DemoReport& r, std::uint64_t seed) {
    Recorder rec(r);
    Json rows = Json::array();
    for (int n = 3; n <= 5; ++n) {
        const TriangularReport t = triangular_pb_classify(n, 50, seed + static_cast<std::uint64_t>(n));
        const std::string tag = "n=" + std::to_string(n);
        rec.equal(tag + " scalar is DPB", true, t.scalar_is_dpb);
        rec.equal(tag + " perturbations accepted", 0, t.false_positives);
        rec.at_least(tag + " growth degree", 1.0, t.min_degree);
        rows.push_back({{"n", n}, {"trials", t.trials}, {"min_degree", t.min_degree}});
    }
    CMatrix m1 = CMatrix::identity(3);
    m1(0, 1) = 1.0;
    CMatrix m2 = m1;
    m2(1, 2) = 1.0;
    rec.equal("I + E12 rejected", false, dpb_decide(m1, NormKind::inf()).is_dpb);
    rec.near("I + E12 degree", 1.0, power_growth_slope(m1), 0.1);
    rec.near("I + E12 + E23 degree", 2.0, power_growth_slope(m2), 0.1);
    r.data = {{"sizes", std::move(rows)}};
}

void commutator(DemoReport& r, std::uint64_t) {
    Recorder rec(r);
    const CommutatorDemo d = commutator_counterexample();
    rec.near("k", 4.0, d.k, 1e-12);
    rec.near("eigenvalue (1+k)/(2+k)", Complex(5.0 / 6.0), d.eigenvalue, 1e-12);
    rec.equal("u is DPB", true, d.u_is_dpb);
    rec.equal("b^-1 u b is DPB", true, d.conjugate_is_dpb);
    rec.equal("m is DPB", false, d.m_verdict.is_dpb);
    const double expected = std::pow(1.2, 20);
    rec.near("||m^20||_2", expected, d.profile.back(), 1e-9 * expected);
    r.data = {{"m", to_json(d.m)},
              {"eigenvalue", complex_to_json(d.eigenvalue)},
              {"profile", d.profile},
              {"circle_deviation", d.m_verdict.circle_deviation}};
}

void wiener(DemoReport& r, std::uint64_t) {
    Recorder rec(r);
    Json table = Json::array();
    double prev = 0.0;
    bool monotone = true;
    for (int n = 1; n <= 40; ++n) {
        const MobiusTruncation t = mobius_truncation(n);
        monotone = monotone && t.norm > prev;
        prev = t.norm;
        table.push_back({{"N", n}, {"norm", t.norm}, {"circle_distance", t.max_circle_distance}});
        if (n == 1) rec.near("N=1 norm", 1.25, t.norm, 1e-15);
        if (n == 40) {
            rec.near("N=40 norm", 2.0, t.norm, 1.5e-12);
            rec.near("N=40 value at 1", Complex(1.0), t.value_at_one, 1e-11);
            rec.at_most("N=40 distance from circle", 1e-10, t.max_circle_distance);
        }
    }
    rec.equal("norm monotone in N", true, monotone);
    r.data = {{"table", std::move(table)}};
}

void cyclic(DemoReport& r, std::uint64_t) {
    Recorder rec(r);
    const CyclicProbe chi = cyclic_dpb_probe(cyclic_character(5, 1), 50);
    rec.near("chi_1 sup power norm", 1.0, chi.sup_power_norm, 1e-12);
    rec.equal("chi_1 consistent", true, chi.consistent);

    bool threw = false;
    try {
        cyclic_dpb_probe(CyclicFourierElement(2, {0.5, 0.5}), 10);
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::NotInvertible;
    }
    rec.equal("(chi_0 + chi_1)/2 not invertible", true, threw);

    const CyclicFourierElement v(2, {0.6, Complex(0.0, 0.8)});
    rec.near("(0.6, 0.8i) norm", 1.4, v.norm(), 1e-15);
    rec.equal("(0.6, 0.8i) consistent", true, cyclic_dpb_probe(v, 20).consistent);

    const Complex alpha = std::polar(1.0, 0.7);
    const CyclicFourierElement a = cyclic_character(6, 2, alpha);
    const CyclicFourierElement inv = cyclic_inverse(a);
    rec.near("alpha chi_k inverse norm", 1.0, inv.norm(), 1e-15);
    rec.at_most("alpha chi_k times inverse", 1e-15,
                std::abs((a * inv).coeffs()[0] - 1.0));
    r.data = {{"chi_1", {{"norm", chi.norm}, {"sup_power_norm", chi.sup_power_norm}}}};
}

void inclusion(DemoReport& r, std::uint64_t seed) {
    Recorder rec(r);
    Json rows = Json::array();
    const NormKind kinds[] = {NormKind::one(), NormKind::inf(), NormKind::two()};
    for (const auto& k : kinds) {
        const InclusionReport p = inclusion_chain_probe(k, 30, seed);
        const std::string tag = k.name();
        rec.equal(tag + " outside U", 0, p.not_in_unit_group);
        rec.equal(tag + " conjugates rejected", 0, p.not_dpb);
        rec.equal(tag + " off circle", 0, p.off_circle);
        rec.equal(tag + " bound violations", 0, p.bound_violations);
        rec.equal(tag + " jordan on circle", true, p.jordan_on_circle);
        rec.equal(tag + " jordan is DPB", false, p.jordan_is_dpb);
        rows.push_back({{"norm", tag}, {"trials", p.trials}, {"max_power_bound", p.max_power_bound}});
    }
    r.data = {{"norms", std::move(rows)}};
}

} // namespace

const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names{"gelfand", "periodic", "triangular", "commutator",
                                                "wiener", "cyclic", "inclusion"};
    return names;
}

DemoReport run_demo(const std::string& name, std::uint64_t seed) {
    DemoReport r;
    r.name = name;
    if (name == "gelfand") gelfand(r, seed);
    else if (name == "periodic") periodic(r, seed);
    else if (name == "triangular") triangular(r, seed);
    else if (name == "commutator") commutator(r, seed);
    else if (name == "wiener") wiener(r, seed);
    else if (name == "cyclic") cyclic(r, seed);
    else if (name == "inclusion") inclusion(r, seed);
    else throw Error(ErrorCode::InvalidArgument, "unknown demo \"" + name + "\"");
    r.pass = !r.checks.empty();
    for (const auto& c : r.checks) r.pass = r.pass && c.pass;
    return r;
}

Json to_json(const DemoReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"tol", c.tol}, {"pass", c.pass}});
    return {{"demo", r.name}, {"pass", r.pass}, {"checks", std::move(checks)}, {"data", r.data}};
}

} // namespace dpbkit
