#include "dpbkit/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "dpbkit/error.hpp"

namespace dpbkit {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with \"") + key + "\"");
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    return j.get<double>();
}

Json optional_number(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? Json(*v) : Json(nullptr);
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// Wraps constructor validation failures of parsed data as parse errors.
template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        fail(e.what());
    } catch (const Json::exception& e) {
        fail(e.what());
    }
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) fail("complex number must be [re, im]");
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.dim()}, {"entries", std::move(rows)}};
}

CMatrix matrix_from_json(const Json& j) {
    return guarded([&] {
        const Json& jn = field(j, "n");
        if (!jn.is_number_integer() || jn.get<long long>() < 1) fail("\"n\" must be a positive integer");
        const auto n = jn.get<std::size_t>();
        const Json& rows = field(j, "entries");
        if (!rows.is_array() || rows.size() != n) fail("\"entries\" must hold n rows");
        std::vector<Complex> data;
        data.reserve(n * n);
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != n) fail("every row must hold n entries");
            for (const auto& z : row) data.push_back(complex_from_json(z));
        }
        return CMatrix(n, std::move(data));
    });
}

Json to_json(const NormKind& k) {
    switch (k.variant()) {
    case NormKind::Variant::One: return {{"kind", "one"}};
    case NormKind::Variant::Inf: return {{"kind", "inf"}};
    case NormKind::Variant::Two: return {{"kind", "two"}};
    case NormKind::Variant::Conjugated:
        return {{"kind", {{"conjugated", {{"s", to_json(k.similarity())}, {"base", to_json(k.base())}}}}}};
    }
    return {};
}

NormKind norm_from_json(const Json& j) {
    return guarded([&]() -> NormKind {
        // Accept both {"kind": ...} and the bare kind value.
        const Json& kind = (j.is_object() && j.contains("kind")) ? j["kind"] : j;
        if (kind.is_string()) {
            const auto s = kind.get<std::string>();
            if (s == "one") return NormKind::one();
            if (s == "inf") return NormKind::inf();
            if (s == "two") return NormKind::two();
            fail("unknown norm kind \"" + s + "\"");
        }
        const Json& c = field(kind, "conjugated");
        return NormKind::conjugated(matrix_from_json(field(c, "s")), norm_from_json(field(c, "base")));
    });
}

Json to_json(const SpectrumCluster& s) {
    Json pts = Json::array();
    for (const auto& p : s.points)
        pts.push_back({{"re", p.lambda.real()}, {"im", p.lambda.imag()}, {"mult", p.multiplicity}});
    return {{"points", std::move(pts)}, {"tol", s.cluster_tol}};
}

SpectrumCluster spectrum_from_json(const Json& j) {
    return guarded([&] {
        SpectrumCluster s;
        s.cluster_tol = number(field(j, "tol"), "tol");
        const Json& pts = field(j, "points");
        if (!pts.is_array()) fail("\"points\" must be an array");
        for (const auto& p : pts) {
            const Json& mult = field(p, "mult");
            if (!mult.is_number_integer() || mult.get<int>() < 1) fail("\"mult\" must be a positive integer");
            s.points.push_back({{number(field(p, "re"), "re"), number(field(p, "im"), "im")}, mult.get<int>()});
            s.source_dim += static_cast<std::size_t>(mult.get<int>());
        }
        return s;
    });
}

Json to_json(const Poly& p) {
    Json c = Json::array();
    for (const auto& z : p.coeffs()) c.push_back(complex_to_json(z));
    return {{"coeffs", std::move(c)}};
}

Poly poly_from_json(const Json& j) {
    return guarded([&] {
        const Json& c = field(j, "coeffs");
        if (!c.is_array()) fail("\"coeffs\" must be an array");
        std::vector<Complex> v;
        for (const auto& z : c) v.push_back(complex_from_json(z));
        return Poly(std::move(v));
    });
}

Json to_json(const IdempotentSystem& s) {
    Json lambdas = Json::array(), ps = Json::array(), nz = Json::array();
    for (const auto& l : s.lambdas) lambdas.push_back(complex_to_json(l));
    for (const auto& p : s.idempotents) ps.push_back(to_json(p));
    for (bool b : s.nonzero) nz.push_back(b);
    return {{"lambdas", std::move(lambdas)},
            {"idempotents", std::move(ps)},
            {"residuals",
             {{"idem", s.residuals.idem},
              {"ortho", s.residuals.ortho},
              {"resolution", s.residuals.resolution},
              {"reconstruction", optional_number(s.residuals.reconstruction)}}},
            {"nonzero", std::move(nz)},
            {"separation", finite_or_null(s.separation)}};
}

IdempotentSystem system_from_json(const Json& j) {
    return guarded([&] {
        const Json& jl = field(j, "lambdas");
        const Json& jp = field(j, "idempotents");
        if (!jl.is_array() || !jp.is_array()) fail("\"lambdas\" and \"idempotents\" must be arrays");
        std::vector<Complex> lambdas;
        std::vector<CMatrix> ps;
        for (const auto& z : jl) lambdas.push_back(complex_from_json(z));
        for (const auto& m : jp) ps.push_back(matrix_from_json(m));
        IdempotentSystem s = make_system(std::move(lambdas), std::move(ps));
        // A stored reconstruction residual refers to the element it was bound to.
        if (j.contains("residuals") && j["residuals"].contains("reconstruction") &&
            j["residuals"]["reconstruction"].is_number())
            s.residuals.reconstruction = j["residuals"]["reconstruction"].get<double>();
        return s;
    });
}

Json to_json(const VerificationReport& r) {
    Json clauses = Json::array();
    for (const auto& c : r.clauses)
        clauses.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", finite_or_null(c.residual)}, {"detail", c.detail}});
    Json sigma = Json::array(), missing = Json::array();
    for (const auto& z : r.spectrum) sigma.push_back(complex_to_json(z));
    for (const auto& z : r.lambdas_not_in_spectrum) missing.push_back(complex_to_json(z));
    return {{"all_pass", r.all_pass()}, {"clauses", std::move(clauses)}, {"spectrum", std::move(sigma)},
            {"lambdas_not_in_spectrum", std::move(missing)}};
}

Json to_json(const DpbVerdict& v) {
    Json j{{"is_dpb", v.is_dpb},
           {"spectrum", to_json(v.spectrum)},
           {"circle_deviation", v.circle_deviation},
           {"minpoly_residual", v.minpoly_residual},
           {"product_residual", v.product_residual},
           {"merged_points", v.merged_points},
           {"power_bound", optional_number(v.power_bound)},
           {"growth_witness", nullptr},
           {"system", nullptr}};
    if (v.growth_witness) j["growth_witness"] = {{"n", v.growth_witness->exponent}, {"norm", v.growth_witness->norm}};
    if (v.system) j["system"] = to_json(*v.system);
    return j;
}

Json to_json(const WienerElement& f) {
    Json c = Json::object();
    for (const auto& [n, z] : f.coeffs()) c[std::to_string(n)] = complex_to_json(z);
    return {{"coeffs", std::move(c)}};
}

WienerElement wiener_from_json(const Json& j) {
    return guarded([&] {
        const Json& c = field(j, "coeffs");
        if (!c.is_object()) fail("\"coeffs\" must map indices to [re, im]");
        std::map<int, Complex> m;
        for (const auto& [key, z] : c.items()) {
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(key, &used);
            } catch (const std::exception&) {
                fail("coefficient index \"" + key + "\" is not an integer");
            }
            if (used != key.size()) fail("coefficient index \"" + key + "\" is not an integer");
            m[n] += complex_from_json(z);
        }
        return WienerElement(std::move(m));
    });
}

Json to_json(const CyclicFourierElement& u) {
    Json c = Json::array();
    for (const auto& z : u.coeffs()) c.push_back(complex_to_json(z));
    return {{"m", u.order()}, {"coeffs", std::move(c)}};
}

CyclicFourierElement cyclic_from_json(const Json& j) {
    return guarded([&] {
        const Json& jm = field(j, "m");
        if (!jm.is_number_integer()) fail("\"m\" must be an integer");
        const Json& c = field(j, "coeffs");
        if (!c.is_array()) fail("\"coeffs\" must be an array");
        std::vector<Complex> v;
        for (const auto& z : c) v.push_back(complex_from_json(z));
        return CyclicFourierElement(jm.get<int>(), std::move(v));
    });
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(e.what());
    }
}

std::string content_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace dpbkit
