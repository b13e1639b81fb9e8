#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpbkit/matrix.hpp"
#include "dpbkit/norms.hpp"
#include "dpbkit/spectrum.hpp"

namespace dpbkit {

inline constexpr double kZeroIdempotentTol = 1e-8;

struct SystemResiduals {
    double idem = 0.0;        // max ||p_j^2 - p_j||
    double ortho = 0.0;       // max_{i != j} ||p_i p_j||
    double resolution = 0.0;  // ||sum p_j - e||
    std::optional<double> reconstruction;  // ||sum lambda_j p_j - b||, when bound to b
};

// A finite resolution of the identity p_1 + ... + p_n = e with the scalars it
// pairs with. Residuals are measured in the induced-inf norm.
struct IdempotentSystem {
    std::vector<Complex> lambdas;
    std::vector<CMatrix> idempotents;
    SystemResiduals residuals;
    std::vector<bool> nonzero;  // ||p_j||_inf > kZeroIdempotentTol
    double separation = 0.0;    // min_{i != j} |lambda_i - lambda_j|

    [[nodiscard]] std::size_t size() const noexcept { return lambdas.size(); }
};

// Assembles a system from given parts and fills residuals (reconstruction
// only when b is supplied). Throws InvalidArgument on shape mismatch.
IdempotentSystem make_system(std::vector<Complex> lambdas, std::vector<CMatrix> idempotents,
                             const CMatrix* b = nullptr);

// p_i = prod_{j != i} (b - lambda_j e) / (lambda_i - lambda_j), p_1 = e for a
// single lambda. Throws DuplicateLambdas when two lambdas are closer than
// 1e-10 * max(1, max |lambda|). No check that b is algebraic; the residuals
// expose that.
IdempotentSystem lagrange_idempotents(const CMatrix& b, std::span<const Complex> lambdas);

// ||prod_j (b - lambda_j e)||_inf / prod_j (||b||_inf + |lambda_j|).
double minimal_polynomial_residual(const CMatrix& b, std::span<const Complex> lambdas);

struct Clause {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string detail;
};

struct VerificationReport {
    std::vector<Clause> clauses;
    std::vector<Complex> spectrum;                 // distinct points of sigma(b)
    std::vector<Complex> lambdas_not_in_spectrum;  // lambda_j with no matching point
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] const Clause* clause(const std::string& name) const;
};

// Checks a system against b: idempotent axioms, reconstruction
// b = sum lambda_j p_j, annihilation prod (b - lambda_j e) = 0, agreement with
// the Lagrange formula, sigma(b) contained in {lambda_j}, and equality of the
// two sets (expected exactly when every p_j is nonzero).
VerificationReport verify_system(const IdempotentSystem& sys, const CMatrix& b, double tol = 1e-7,
                                 double spectral_match_tol = 1e-6);

struct RieszOptions {
    int nodes = 64;
    int max_nodes = 4096;
    double idem_tol = 1e-9;
    double radius_fraction = 0.5;  // of the distance to the nearest other point
};

struct RieszProjection {
    CMatrix q;
    double idem_residual = 0.0;  // ||Q^2 - Q||_inf
    double step_change = 0.0;    // ||Q_{2N} - Q_N||_inf at the last doubling
    int nodes = 0;
    double radius = 0.0;
    bool converged = false;
};

// (1/2 pi i) times the contour integral of the resolvent (w - b)^-1 over a
// counter-clockwise circle about lambda, trapezoidal rule with node doubling.
// The radius is radius_fraction times the gap to the nearest other spectral
// point, or radius_fraction itself when lambda is the only point. Throws
// LambdaNotInSpectrum, ResolventSingular; a quadrature that hits max_nodes
// comes back with converged = false.
RieszProjection riesz_projection(const CMatrix& b, Complex lambda, const SpectrumCluster& spectrum,
                                 const RieszOptions& opts = {});

// Matrix of y -> x y on the n^2-dimensional space of n x n matrices, with y
// flattened row by row (vec index i*n + j), i.e. x (kron) I.
CMatrix left_regular(const CMatrix& x);

struct IsometryProbe {
    double lower = 0.0;          // max sampled ||x y|| over ||y|| = 1
    double attained_at_e = 0.0;  // ||x e||
    double norm = 0.0;           // ||x||
    [[nodiscard]] bool sandwich_holds() const {
        return lower <= norm * (1.0 + 1e-9) + 1e-300 && attained_at_e == norm;
    }
};

IsometryProbe isometry_probe(const CMatrix& x, const NormKind& kind, int samples, std::uint64_t seed);

} // namespace dpbkit
