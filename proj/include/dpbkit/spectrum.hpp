#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dpbkit/matrix.hpp"

namespace dpbkit {

struct EigenOptions {
    std::size_t max_dim = 256;
    int iterations_per_dim = 100;
};

struct EigenResult {
    std::vector<Complex> values;  // the full multiset, n entries
    bool converged = true;
    int iterations = 0;
};

// Householder reduction to upper Hessenberg form, then single-shift complex
// QR with Wilkinson shifts and deflation. On non-convergence the unreduced
// window contributes its diagonal as estimates and converged is false.
EigenResult eigenvalues(const CMatrix& a, const EigenOptions& opts = {});

// Unitary similarity to upper Hessenberg form (entries below the first
// subdiagonal are exactly zero).
CMatrix hessenberg(const CMatrix& a);

struct SpectralPoint {
    Complex lambda;
    int multiplicity = 1;
};

struct SpectrumCluster {
    std::vector<SpectralPoint> points;
    double cluster_tol = 0.0;
    std::size_t source_dim = 0;

    [[nodiscard]] std::vector<Complex> lambdas() const;
    // Index of the point within tol of z, if any.
    [[nodiscard]] std::optional<std::size_t> find(Complex z, double tol) const;
};

// 1e-8 * max(1, ||a||_inf)
double default_cluster_tol(const CMatrix& a);

// Single-linkage grouping (transitive closure of |z_i - z_j| < tol); each
// group is represented by the mean of its members. A group whose diameter
// exceeds 10 * tol raises ClusterTooCoarse.
SpectrumCluster cluster(const std::vector<Complex>& eigs, double cluster_tol);

// eigenvalues() followed by cluster() at the default tolerance unless given.
SpectrumCluster spectrum(const CMatrix& a, std::optional<double> cluster_tol = std::nullopt);

struct CircleCheck {
    bool on_circle = true;
    double max_deviation = 0.0;
};

CircleCheck on_unit_circle(const SpectrumCluster& s, double circ_tol);

} // namespace dpbkit
