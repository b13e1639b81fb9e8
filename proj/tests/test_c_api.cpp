#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "dpbkit/dpbkit.h"

using nlohmann::json;

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { dpbk_string_free(p); }
    json parse() const { return json::parse(p); }
};

dpbk_matrix* make(size_t n, std::vector<double> entries) {
    dpbk_matrix* m = nullptr;
    REQUIRE(dpbk_matrix_create(n, entries.data(), &m) == DPBK_OK);
    return m;
}

using MatrixPtr = std::unique_ptr<dpbk_matrix, decltype(&dpbk_matrix_destroy)>;
using NormPtr = std::unique_ptr<dpbk_norm, decltype(&dpbk_norm_destroy)>;
using VerdictPtr = std::unique_ptr<dpbk_verdict, decltype(&dpbk_verdict_destroy)>;

MatrixPtr swap() { return {make(2, {0, 0, 1, 0, 1, 0, 0, 0}), dpbk_matrix_destroy}; }
MatrixPtr jordan() { return {make(2, {1, 0, 1, 0, 0, 0, 1, 0}), dpbk_matrix_destroy}; }
NormPtr norm(const char* name) {
    dpbk_norm* k = nullptr;
    REQUIRE(dpbk_norm_create(name, &k) == DPBK_OK);
    return {k, dpbk_norm_destroy};
}

} // namespace

TEST_CASE("version, status names, defaults") {
    CHECK(std::string(dpbk_version()) == "0.1.0");
    CHECK(std::string(dpbk_status_name(DPBK_OK)) == "Ok");
    CHECK(std::string(dpbk_status_name(DPBK_ERR_NOT_DPB)) == "NotDpb");
    CHECK(std::string(dpbk_status_name(DPBK_ERR_PARSE)) == "ParseError");
    const dpbk_tolerances t = dpbk_tolerances_default();
    CHECK(t.circ_tol == 1e-8);
    CHECK(t.alg_tol == 1e-8);
    CHECK(t.cluster_tol < 0);
    CHECK(t.riesz_nodes > 0);
}

TEST_CASE("matrix handles") {
    MatrixPtr m = swap();
    CHECK(dpbk_matrix_dim(m.get()) == 2);
    double re = -1, im = -1;
    CHECK(dpbk_matrix_get(m.get(), 0, 1, &re, &im) == DPBK_OK);
    CHECK(re == 1.0);
    CHECK(im == 0.0);
    CHECK(dpbk_matrix_get(m.get(), 2, 0, &re, &im) == DPBK_ERR_INDEX_OUT_OF_RANGE);
    CHECK(std::strlen(dpbk_last_error()) > 0);

    Str s;
    REQUIRE(dpbk_matrix_to_json(m.get(), &s.p) == DPBK_OK);
    CHECK(std::strlen(dpbk_last_error()) == 0);
    dpbk_matrix* back = nullptr;
    REQUIRE(dpbk_matrix_from_json(s.p, &back) == DPBK_OK);
    MatrixPtr hold(back, dpbk_matrix_destroy);
    CHECK(dpbk_matrix_get(back, 1, 0, &re, &im) == DPBK_OK);
    CHECK(re == 1.0);

    dpbk_matrix* bad = nullptr;
    CHECK(dpbk_matrix_from_json("{\"n\":2,", &bad) == DPBK_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK(dpbk_matrix_create(0, nullptr, &bad) != DPBK_OK);
    dpbk_matrix_destroy(nullptr);
}

TEST_CASE("null arguments are rejected") {
    MatrixPtr m = swap();
    NormPtr k = norm("inf");
    double x = 0;
    CHECK(dpbk_operator_norm(nullptr, k.get(), &x) == DPBK_ERR_INVALID_ARGUMENT);
    CHECK(dpbk_operator_norm(m.get(), nullptr, &x) == DPBK_ERR_INVALID_ARGUMENT);
    CHECK(dpbk_operator_norm(m.get(), k.get(), nullptr) == DPBK_ERR_INVALID_ARGUMENT);
    CHECK(dpbk_matrix_from_json(nullptr, nullptr) == DPBK_ERR_INVALID_ARGUMENT);
    CHECK(dpbk_dpb_decide(m.get(), k.get(), nullptr, nullptr) == DPBK_ERR_INVALID_ARGUMENT);
    CHECK(dpbk_digest(nullptr, 0, nullptr) == DPBK_ERR_INVALID_ARGUMENT);
    dpbk_norm* bad = nullptr;
    CHECK(dpbk_norm_create("frobenius", &bad) == DPBK_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);
}

TEST_CASE("norms") {
    MatrixPtr j = jordan();
    double x = 0;
    CHECK(dpbk_operator_norm(j.get(), norm("inf").get(), &x) == DPBK_OK);
    CHECK(x == 2.0);
    CHECK(dpbk_operator_norm(j.get(), norm("two").get(), &x) == DPBK_OK);
    CHECK(x == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    dpbk_norm* c = nullptr;
    REQUIRE(dpbk_norm_from_json(
                R"({"kind":{"conjugated":{"s":{"n":2,"entries":[[[2,0],[0,0]],[[0,0],[1,0]]]},"base":{"kind":"inf"}}}})", &c) ==
            DPBK_OK);
    NormPtr hold(c, dpbk_norm_destroy);
    CHECK(dpbk_operator_norm(j.get(), c, &x) == DPBK_OK);
    CHECK(x == doctest::Approx(1.5));  // S^-1 J S = [[1, 1/2], [0, 1]]
}

TEST_CASE("decide and decompose") {
    MatrixPtr s = swap();
    NormPtr k = norm("inf");
    dpbk_verdict* v = nullptr;
    REQUIRE(dpbk_dpb_decide(s.get(), k.get(), nullptr, &v) == DPBK_OK);
    VerdictPtr hv(v, dpbk_verdict_destroy);
    CHECK(dpbk_verdict_is_dpb(v) == 1);
    double bound = 0;
    CHECK(dpbk_verdict_power_bound(v, &bound) == DPBK_OK);
    CHECK(bound == doctest::Approx(2.0));
    Str vj;
    REQUIRE(dpbk_verdict_to_json(v, &vj.p) == DPBK_OK);
    CHECK(vj.parse()["spectrum"]["points"].size() == 2);

    Str d;
    REQUIRE(dpbk_decompose_json(s.get(), k.get(), nullptr, &d.p) == DPBK_OK);
    const json dj = d.parse();
    CHECK(dj["verification"]["all_pass"] == true);
    CHECK(dj["riesz"].size() == 2);
    CHECK(dj["riesz_lagrange_agreement"].get<double>() <= 1e-9);

    MatrixPtr j = jordan();
    dpbk_verdict* w = nullptr;
    REQUIRE(dpbk_dpb_decide(j.get(), k.get(), nullptr, &w) == DPBK_OK);
    VerdictPtr hw(w, dpbk_verdict_destroy);
    CHECK(dpbk_verdict_is_dpb(w) == 0);
    CHECK(dpbk_verdict_power_bound(w, &bound) == DPBK_ERR_NOT_DPB);
    Str nd;
    CHECK(dpbk_decompose_json(j.get(), k.get(), nullptr, &nd.p) == DPBK_ERR_NOT_DPB);
    REQUIRE(nd.p != nullptr);
    CHECK(nd.parse()["verdict"]["is_dpb"] == false);

    MatrixPtr sing(make(2, {1, 0, 2, 0, 2, 0, 4, 0}), dpbk_matrix_destroy);
    dpbk_verdict* u = nullptr;
    CHECK(dpbk_dpb_decide(sing.get(), k.get(), nullptr, &u) == DPBK_ERR_SINGULAR_MATRIX);
    CHECK(std::string(dpbk_last_error()).find("singular") != std::string::npos);
}

TEST_CASE("tolerances pass through") {
    MatrixPtr m(make(2, {1.0 + 1e-6, 0, 0, 0, 0, 0, -1, 0}), dpbk_matrix_destroy);
    NormPtr k = norm("inf");
    dpbk_tolerances t = dpbk_tolerances_default();
    dpbk_verdict* v = nullptr;
    REQUIRE(dpbk_dpb_decide(m.get(), k.get(), &t, &v) == DPBK_OK);
    CHECK(dpbk_verdict_is_dpb(v) == 0);
    dpbk_verdict_destroy(v);
    t.circ_tol = 1e-5;
    REQUIRE(dpbk_dpb_decide(m.get(), k.get(), &t, &v) == DPBK_OK);
    CHECK(dpbk_verdict_is_dpb(v) == 1);
    dpbk_verdict_destroy(v);

    Str sp;
    REQUIRE(dpbk_spectrum_json(m.get(), nullptr, &sp.p) == DPBK_OK);
    CHECK(sp.parse()["points"].size() == 2);
    t.cluster_tol = 10.0;
    Str merged;
    REQUIRE(dpbk_spectrum_json(m.get(), &t, &merged.p) == DPBK_OK);
    CHECK(merged.parse()["points"].size() == 1);
}

TEST_CASE("demos and digest") {
    for (const char* name : {"gelfand", "periodic", "wiener", "cyclic"}) {
        Str s;
        int passed = 0;
        REQUIRE(dpbk_demo_json(name, 1, &s.p, &passed) == DPBK_OK);
        CHECK(passed == 1);
        CHECK(s.parse()["demo"] == name);
    }
    Str none;
    int passed = 0;
    CHECK(dpbk_demo_json("nope", 1, &none.p, &passed) == DPBK_ERR_INVALID_ARGUMENT);

    Str d;
    REQUIRE(dpbk_digest("a", 1, &d.p) == DPBK_OK);
    CHECK(std::string(d.p) == "af63dc4c8601ec8c");
}
