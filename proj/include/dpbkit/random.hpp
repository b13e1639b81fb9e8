#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "dpbkit/matrix.hpp"

namespace dpbkit {

// Seeded generators shared by the sampling probes and the test suites.
using Rng = std::mt19937_64;

CMatrix random_gaussian(std::size_t n, Rng& rng);
// Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
CMatrix random_unitary(std::size_t n, Rng& rng);
// U diag(s) V with singular values log-spaced in [1, cond] (exact 2-norm
// condition number cond up to rounding), scaled so ||S||_2 = 1.
CMatrix random_with_condition(std::size_t n, double cond, Rng& rng);
// n unimodular points with pairwise distance at least min_sep.
std::vector<Complex> random_unimodular(std::size_t n, double min_sep, Rng& rng);
CMatrix random_permutation(std::size_t n, Rng& rng);

} // namespace dpbkit
