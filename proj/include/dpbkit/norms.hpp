#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpbkit/matrix.hpp"

namespace dpbkit {

// A unital submultiplicative algebra norm on n x n matrices. The conjugated
// variant measures ||A|| := base(S^-1 A S) for a fixed invertible S.
class NormKind {
public:
    enum class Variant { One, Inf, Two, Conjugated };

    static NormKind one() { return NormKind(Variant::One); }
    static NormKind inf() { return NormKind(Variant::Inf); }
    static NormKind two() { return NormKind(Variant::Two); }
    // Throws SingularMatrix when s is not invertible.
    static NormKind conjugated(CMatrix s, NormKind base);

    [[nodiscard]] Variant variant() const noexcept { return variant_; }
    [[nodiscard]] const CMatrix& similarity() const;
    [[nodiscard]] const CMatrix& similarity_inverse() const;
    [[nodiscard]] const NormKind& base() const;

    // "one", "inf", "two" or "conjugated(<base>)".
    [[nodiscard]] std::string name() const;

    // Maps a into the frame where the base norm applies: S^-1 a S.
    [[nodiscard]] CMatrix to_base_frame(const CMatrix& a) const;

private:
    explicit NormKind(Variant v) : variant_(v) {}

    struct Conjugation {
        CMatrix s;
        CMatrix s_inv;
        std::shared_ptr<const NormKind> base;
    };

    Variant variant_;
    std::shared_ptr<const Conjugation> conj_;
};

struct NormEstimate {
    double value = 0.0;
    bool converged = true;
    int iterations = 0;
};

inline constexpr int kPowerIterationCap = 10000;
inline constexpr double kPowerIterationStep = 1e-12;

NormEstimate operator_norm_checked(const CMatrix& a, const NormKind& kind);
// Best estimate; see operator_norm_checked for the convergence flag.
double operator_norm(const CMatrix& a, const NormKind& kind);

struct PowerNormProfile {
    std::vector<std::pair<int, double>> entries;  // ascending in the exponent
    double max = 0.0;
    int argmax = 0;
    bool negative_powers = true;  // false when b was singular
    bool converged = true;        // every induced-2 estimate converged
};

// ||b^k|| for k in [-horizon, horizon] by repeated multiplication with b and
// b^-1. A singular b yields k >= 0 only when forward_only_if_singular is set,
// otherwise SingularMatrix.
PowerNormProfile power_norm_profile(const CMatrix& b, int horizon, const NormKind& kind,
                                    bool forward_only_if_singular = true);

} // namespace dpbkit
