#include "dpbkit/dpbkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "dpbkit/demos.hpp"
#include "dpbkit/error.hpp"
#include "dpbkit/json_io.hpp"

struct dpbk_matrix {
    dpbkit::CMatrix value;
};
struct dpbk_norm {
    dpbkit::NormKind value;
};
struct dpbk_verdict {
    dpbkit::DpbVerdict value;
};

namespace {

using namespace dpbkit;

thread_local std::string last_error;

dpbk_status fail(dpbk_status s, const char* what) {
    last_error = what;
    return s;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
dpbk_status guard(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const Error& e) {
        return fail(static_cast<dpbk_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(DPBK_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DPBK_ERR_INTERNAL, e.what());
    }
}

#define DPBK_REQUIRE(cond)                                                    \
    do {                                                                      \
        if (!(cond)) return fail(DPBK_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
    } while (0)

DpbTolerances to_core(const dpbk_tolerances* t) {
    DpbTolerances out;
    if (!t) return out;
    out.circ_tol = t->circ_tol;
    out.alg_tol = t->alg_tol;
    if (t->cluster_tol >= 0.0) out.cluster_tol = t->cluster_tol;
    return out;
}

RieszOptions riesz_options(const dpbk_tolerances* t) {
    RieszOptions o;
    if (t && t->riesz_nodes > 0) o.nodes = t->riesz_nodes;
    return o;
}

} // namespace

extern "C" {

dpbk_tolerances dpbk_tolerances_default(void) {
    const DpbTolerances d;
    return {d.circ_tol, d.alg_tol, -1.0, RieszOptions{}.nodes};
}

const char* dpbk_version(void) { return "0.1.0"; }

const char* dpbk_status_name(dpbk_status s) {
    if (s == DPBK_ERR_INTERNAL) return "Internal";
    if (s < DPBK_OK || s > DPBK_ERR_PARSE) return "Unknown";
    return to_string(static_cast<ErrorCode>(s)).data();  // backed by a literal
}

const char* dpbk_last_error(void) { return last_error.c_str(); }

void dpbk_string_free(char* s) { std::free(s); }

dpbk_status dpbk_matrix_create(size_t n, const double* entries, dpbk_matrix** out) {
    DPBK_REQUIRE(entries && out);
    return guard([&] {
        std::vector<Complex> v(n * n);
        for (size_t i = 0; i < n * n; ++i) v[i] = {entries[2 * i], entries[2 * i + 1]};
        *out = new dpbk_matrix{CMatrix(n, std::move(v))};
        return DPBK_OK;
    });
}

dpbk_status dpbk_matrix_from_json(const char* json, dpbk_matrix** out) {
    DPBK_REQUIRE(json && out);
    return guard([&] {
        *out = new dpbk_matrix{matrix_from_json(parse_json(json))};
        return DPBK_OK;
    });
}

dpbk_status dpbk_matrix_to_json(const dpbk_matrix* m, char** out) {
    DPBK_REQUIRE(m && out);
    return guard([&] {
        *out = dup(to_json(m->value).dump());
        return DPBK_OK;
    });
}

size_t dpbk_matrix_dim(const dpbk_matrix* m) { return m ? m->value.dim() : 0; }

dpbk_status dpbk_matrix_get(const dpbk_matrix* m, size_t i, size_t j, double* re, double* im) {
    DPBK_REQUIRE(m && re && im);
    if (i >= m->value.dim() || j >= m->value.dim()) return fail(DPBK_ERR_INDEX_OUT_OF_RANGE, "entry index out of range");
    *re = m->value(i, j).real();
    *im = m->value(i, j).imag();
    last_error.clear();
    return DPBK_OK;
}

void dpbk_matrix_destroy(dpbk_matrix* m) { delete m; }

dpbk_status dpbk_norm_create(const char* name, dpbk_norm** out) {
    DPBK_REQUIRE(name && out);
    return guard([&] {
        const std::string s = name;
        if (s == "one") *out = new dpbk_norm{NormKind::one()};
        else if (s == "inf") *out = new dpbk_norm{NormKind::inf()};
        else if (s == "two") *out = new dpbk_norm{NormKind::two()};
        else throw Error(ErrorCode::InvalidArgument, "unknown norm \"" + s + "\"");
        return DPBK_OK;
    });
}

dpbk_status dpbk_norm_from_json(const char* json, dpbk_norm** out) {
    DPBK_REQUIRE(json && out);
    return guard([&] {
        *out = new dpbk_norm{norm_from_json(parse_json(json))};
        return DPBK_OK;
    });
}

void dpbk_norm_destroy(dpbk_norm* k) { delete k; }

dpbk_status dpbk_operator_norm(const dpbk_matrix* m, const dpbk_norm* k, double* out) {
    DPBK_REQUIRE(m && k && out);
    return guard([&] {
        *out = operator_norm(m->value, k->value);
        return DPBK_OK;
    });
}

dpbk_status dpbk_spectrum_json(const dpbk_matrix* m, const dpbk_tolerances* tols, char** out) {
    DPBK_REQUIRE(m && out);
    return guard([&] {
        const DpbTolerances t = to_core(tols);
        *out = dup(to_json(spectrum(m->value, t.cluster_tol)).dump());
        return DPBK_OK;
    });
}

dpbk_status dpbk_dpb_decide(const dpbk_matrix* m, const dpbk_norm* k, const dpbk_tolerances* tols,
                            dpbk_verdict** out) {
    DPBK_REQUIRE(m && k && out);
    return guard([&] {
        *out = new dpbk_verdict{dpb_decide(m->value, k->value, to_core(tols))};
        return DPBK_OK;
    });
}

int dpbk_verdict_is_dpb(const dpbk_verdict* v) { return v && v->value.is_dpb ? 1 : 0; }

dpbk_status dpbk_verdict_power_bound(const dpbk_verdict* v, double* out) {
    DPBK_REQUIRE(v && out);
    if (!v->value.power_bound) return fail(DPBK_ERR_NOT_DPB, "element is not doubly power-bounded");
    *out = *v->value.power_bound;
    last_error.clear();
    return DPBK_OK;
}

dpbk_status dpbk_verdict_to_json(const dpbk_verdict* v, char** out) {
    DPBK_REQUIRE(v && out);
    return guard([&] {
        *out = dup(to_json(v->value).dump());
        return DPBK_OK;
    });
}

void dpbk_verdict_destroy(dpbk_verdict* v) { delete v; }

dpbk_status dpbk_decompose_json(const dpbk_matrix* m, const dpbk_norm* k, const dpbk_tolerances* tols,
                                char** out) {
    DPBK_REQUIRE(m && k && out);
    return guard([&] {
        const CMatrix& b = m->value;
        const DpbVerdict v = dpb_decide(b, k->value, to_core(tols));
        if (!v.is_dpb) {
            *out = dup(Json{{"verdict", to_json(v)}}.dump());
            return fail(DPBK_ERR_NOT_DPB, "element is not doubly power-bounded");
        }
        const IdempotentSystem& sys = *v.system;
        const RieszOptions opts = riesz_options(tols);
        Json riesz = Json::array();
        double agreement = 0.0;
        for (std::size_t j = 0; j < sys.size(); ++j) {
            const RieszProjection q = riesz_projection(b, sys.lambdas[j], v.spectrum, opts);
            const double diff = max_abs_diff(q.q, sys.idempotents[j]);
            agreement = std::max(agreement, diff);
            riesz.push_back({{"lambda", complex_to_json(sys.lambdas[j])},
                             {"agreement", diff},
                             {"idem_residual", q.idem_residual},
                             {"step_change", q.step_change},
                             {"nodes", q.nodes},
                             {"radius", q.radius},
                             {"converged", q.converged}});
        }
        const Json doc{{"system", to_json(sys)},
                       {"verification", to_json(verify_system(sys, b))},
                       {"riesz", std::move(riesz)},
                       {"riesz_lagrange_agreement", agreement},
                       {"power_bound", *v.power_bound}};
        *out = dup(doc.dump());
        return DPBK_OK;
    });
}

dpbk_status dpbk_demo_json(const char* name, uint64_t seed, char** out, int* passed) {
    DPBK_REQUIRE(name && out && passed);
    return guard([&] {
        const DemoReport r = run_demo(name, seed);
        *passed = r.pass ? 1 : 0;
        *out = dup(to_json(r).dump());
        return DPBK_OK;
    });
}

dpbk_status dpbk_digest(const char* bytes, size_t len, char** out) {
    DPBK_REQUIRE((bytes || len == 0) && out);
    return guard([&] {
        *out = dup(content_digest(std::string_view(bytes ? bytes : "", len)));
        return DPBK_OK;
    });
}

} // extern "C"
