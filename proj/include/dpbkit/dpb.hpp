#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpbkit/idempotents.hpp"
#include "dpbkit/matrix.hpp"
#include "dpbkit/norms.hpp"
#include "dpbkit/spectrum.hpp"

namespace dpbkit {

struct DpbTolerances {
    double circ_tol = 1e-8;
    double alg_tol = 1e-8;
    std::optional<double> cluster_tol;  // default_cluster_tol(b) when unset
    // Two spectral points count as distinct only if their gap exceeds this
    // many multiples of eps * ||b|| * (||p_i|| + ||p_j||).
    double separation_certificate = 1e4;
    int witness_horizon = 50;
    int witness_cap = 1600;
    double witness_factor = 10.0;
};

struct GrowthWitness {
    int exponent = 0;
    double norm = 0.0;
};

struct DpbVerdict {
    bool is_dpb = false;
    SpectrumCluster spectrum;
    double circle_deviation = 0.0;
    // max_j ||(b - lambda_j e) p_j|| / ((||b|| + |lambda_j|) max(1, ||p_j||)),
    // p_j the Lagrange idempotents of the distinct points.
    double minpoly_residual = 0.0;
    // ||prod_j (b - lambda_j e)|| / prod_j (||b|| + |lambda_j|)
    double product_residual = 0.0;
    int merged_points = 0;  // spectral points joined for failing the separation certificate
    std::optional<IdempotentSystem> system;
    std::optional<double> power_bound;  // sum_j ||p_j||
    std::optional<GrowthWitness> growth_witness;
};

// Decides double power-boundedness through the algebraic characterization:
// distinct spectral points all unimodular and b annihilated by the product of
// the linear factors. Power profiles only supply witnesses. Throws
// SingularMatrix for non-invertible b.
DpbVerdict dpb_decide(const CMatrix& b, const NormKind& kind, const DpbTolerances& tols = {});

struct GelfandResult {
    bool is_identity = false;
    double distance = 0.0;  // ||b - e||
    bool is_dpb = false;
    bool spectrum_is_one = false;
    std::string reason;
};

GelfandResult gelfand_check(const CMatrix& b, const NormKind& kind, const DpbTolerances& tols = {});

struct EigenIdempotent {
    CMatrix p;
    double residual = 0.0;      // ||b p - lambda p||
    double idem_residual = 0.0; // ||p^2 - p||
    bool within_bound = false;  // residual <= 1e-7 * ||b||
    RieszProjection projection;
};

// Riesz projection at an isolated point of a DPB element; b p = lambda p.
// Throws NotDpb, LambdaNotInSpectrum.
EigenIdempotent koehler_rosenthal(const CMatrix& b, Complex lambda, const NormKind& kind,
                                  const DpbTolerances& tols = {}, const RieszOptions& riesz = {});

struct UnitaryLikeResult {
    bool qualifies = false;
    double norm = 0.0;
    double inverse_norm = 0.0;
    double max_power_deviation = 0.0;  // max_{|n| <= N} | ||u^n|| - 1 |
    std::optional<IdempotentSystem> system;
    std::string reason;
};

UnitaryLikeResult unitary_like_check(const CMatrix& u, const NormKind& kind, int horizon,
                                     const DpbTolerances& tols = {});

struct PeriodicDecomposition {
    int period = 0;
    std::vector<CMatrix> idempotents;  // p_k for k = 1..m, paired with e^{2 pi i k / m}
    std::vector<bool> zero_flags;      // ||p_k|| <= 1e-8
    double reconstruction = 0.0;       // ||sum w^k p_k - a||
    double resolution = 0.0;           // ||sum p_k - e||

    [[nodiscard]] Complex root(int k) const;
};

// p_k = (1/m) sum_{j=0}^{m-1} e^{-2 pi i j k / m} a^j. Throws NotPeriodic when
// ||a^m - e|| exceeds 1e-9 * max(1, ||a||)^m.
PeriodicDecomposition periodic_decompose(const CMatrix& a, int period);

struct CommutatorDemo {
    CMatrix u, a, b, m;
    double k = 0.0;
    Complex eigenvalue;         // computed eigenvalue of m nearest (1+k)/(2+k)
    Complex expected;           // (1+k)/(2+k)
    bool u_is_dpb = false;
    bool conjugate_is_dpb = false;  // b^-1 u b
    DpbVerdict m_verdict;
    std::vector<double> profile;  // ||m^n||_2, n = 0..20
};

// Two-dimensional instance of the noncommutative product construction: a
// swap u, a = diag(1, 2), k = 2 ||a||_2, b = (a + k e)/(1 + k) and
// m = u^-1 b^-1 u b, which has the non-unimodular eigenvalue (1+k)/(2+k).
CommutatorDemo commutator_counterexample();

struct TriangularReport {
    int n = 0;
    int trials = 0;
    bool scalar_is_dpb = false;
    int false_positives = 0;  // perturbations accepted as DPB
    std::vector<double> slopes;
    std::vector<int> degrees;
    int min_degree = 0;
};

// Fitted log-log slope of ||m^j||_inf over j in [100, 200].
double power_growth_slope(const CMatrix& m);

TriangularReport triangular_pb_classify(int n, int trials, std::uint64_t seed);

struct InclusionReport {
    int trials = 0;
    int not_in_unit_group = 0;   // u with ||u|| != 1 or ||u^-1|| != 1
    int not_dpb = 0;             // a^-1 u a rejected
    int off_circle = 0;          // sigma(a^-1 u a) not on the circle
    int bound_violations = 0;    // sup ||(a^-1 u a)^n|| > ||a|| ||a^-1||
    double max_power_bound = 0.0;
    bool jordan_on_circle = false;
    bool jordan_is_dpb = true;
};

InclusionReport inclusion_chain_probe(const NormKind& kind, int trials, std::uint64_t seed);

} // namespace dpbkit
