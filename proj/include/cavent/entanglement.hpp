// entanglement.hpp — Wootters concurrence for two-qubit states, plus the
// X-state closed form used as an independent cross-check.

#pragma once

#include "cavent/hilbert.hpp"
#include "cavent/linalg.hpp"

#include <array>

namespace cavent::entanglement {

enum class Method { general, x_state };

struct ConcurrenceResult {
    double value = 0.0;                    // max(0, l1 - l2 - l3 - l4)
    std::array<double, 4> lambdas{};       // sqrt-eigenvalues, descending
    Method method = Method::general;
};

// rho_tilde = (sigma_y x sigma_y) rho^* (sigma_y x sigma_y), conjugation in the
// computational basis.
Matrix spin_flip(const hilbert::DensityMatrix& rho);

// General Wootters concurrence. The sqrt-eigenvalues are obtained from the
// Hermitian PSD form sqrt(rho) rho_tilde sqrt(rho), so they are real and
// nonnegative by construction.
ConcurrenceResult concurrence(const hilbert::DensityMatrix& rho);

// Closed form for states supported on the diagonal and anti-diagonal only:
// C = 2 max(0, |rho23| - sqrt(rho11 rho44), |rho14| - sqrt(rho22 rho33)).
// Entries outside that support above x_tol are rejected.
ConcurrenceResult x_state_concurrence(const hilbert::DensityMatrix& rho, double x_tol = 1e-10);

}  // namespace cavent::entanglement
