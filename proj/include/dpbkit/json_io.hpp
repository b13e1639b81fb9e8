#pragma once

#include <string>

#include <json.hpp>

#include "dpbkit/dpb.hpp"
#include "dpbkit/idempotents.hpp"
#include "dpbkit/matrix.hpp"
#include "dpbkit/norms.hpp"
#include "dpbkit/poly.hpp"
#include "dpbkit/sequence_algebras.hpp"
#include "dpbkit/spectrum.hpp"

namespace dpbkit {

using Json = nlohmann::json;

// Wire formats. Complex numbers are [re, im] pairs unless noted. Every
// *_from_json throws ParseError on malformed input.

// {"n": int, "entries": [[[re, im], ...], ...]} row-major
Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

// {"kind": "one" | "inf" | "two" | {"conjugated": {"s": matrix, "base": norm}}}
Json to_json(const NormKind& k);
NormKind norm_from_json(const Json& j);

// {"points": [{"re": x, "im": y, "mult": k}, ...], "tol": t}
Json to_json(const SpectrumCluster& s);
SpectrumCluster spectrum_from_json(const Json& j);

// {"coeffs": [[re, im], ...]} ascending
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

// {"lambdas": [...], "idempotents": [matrix, ...], "residuals": {...}, "nonzero": [...]}
Json to_json(const IdempotentSystem& s);
IdempotentSystem system_from_json(const Json& j);

Json to_json(const VerificationReport& r);

// {"is_dpb", "spectrum", "circle_deviation", "minpoly_residual", "power_bound",
//  "growth_witness", "system", ...}
Json to_json(const DpbVerdict& v);

// {"coeffs": {"n": [re, im], ...}}
Json to_json(const WienerElement& f);
WienerElement wiener_from_json(const Json& j);

// {"m": int, "coeffs": [[re, im], ...]}
Json to_json(const CyclicFourierElement& u);
CyclicFourierElement cyclic_from_json(const Json& j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// Parses text, mapping any syntax or schema failure to ParseError.
Json parse_json(const std::string& text);

// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string content_digest(std::string_view bytes);

} // namespace dpbkit
