#pragma once

#include <doctest.h>

#include "dpbkit/error.hpp"
#include "dpbkit/matrix.hpp"

// Asserts that expr throws dpbkit::Error carrying the given code.
#define CHECK_THROWS_CODE(expr, expected_code)                                   \
    do {                                                                         \
        bool thrown_ = false;                                                    \
        try {                                                                    \
            (void)(expr);                                                        \
        } catch (const dpbkit::Error& e_) {                                      \
            thrown_ = true;                                                      \
            CHECK_MESSAGE(e_.code() == (expected_code), dpbkit::to_string(e_.code())); \
        }                                                                        \
        CHECK_MESSAGE(thrown_, "expected an exception from " #expr);             \
    } while (0)

inline bool near(const dpbkit::CMatrix& a, const dpbkit::CMatrix& b, double tol) {
    return a.dim() == b.dim() && dpbkit::max_abs_diff(a, b) <= tol;
}
