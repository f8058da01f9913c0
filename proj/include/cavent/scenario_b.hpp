// scenario_b.hpp — two atoms crossing one leaky vacuum cavity in sequence,
// the first prepared excited, the second in the ground state. Closed-form
// two-atom state and concurrence, enhancement threshold tan(gt) > sqrt(2),
// optimum damping law, and a staged full-Lindblad oracle.

#pragma once

#include "cavent/hilbert.hpp"

#include <optional>

namespace cavent::scenario_b {

struct Params {
    double gt = 0.0;            // Rabi angle per atom (same for both)
    double kappa_over_g = 0.0;  // cavity decay rate
    double gap_gt = 0.0;        // idle Rabi angle between the two transits
    int fock_dim = 5;
};

void validate(const Params& p);

struct Coefficients {
    double gamma1, gamma2, gamma3, gamma4;
};

// The closed-form matrix elements as functions of gt and kappa*t.
Coefficients coefficients(const Params& p);

struct AnalyticState {
    hilbert::DensityMatrix state;  // renormalized, validated
    double trace_deficit = 0.0;    // 1 - raw trace (drifts above 0 at large kt)
};

// 4x4 matrix in basis (|gg>, |ge>, |eg>, |ee>), diagonal
// (gamma2, gamma3, gamma1, 0), coherence -(gamma4) between |ge> and |eg>.
// Requires gap_gt = 0 (the closed form assumes immediate succession).
AnalyticState analytic_state(const Params& p);

// C = 2 sin^2(gt) e^{-kt} sqrt(1 - sin^2(gt) e^{-kt})  (equals 2 sqrt(g1 g3)).
double concurrence_formula(const Params& p);

// First order in kt: C ~ C_ideal (1 + kt tan^2(gt)/2 - kt).
double concurrence_small_kappa(const Params& p);

double c_ideal(double gt);  // 2 cos(gt) sin^2(gt)

// ln((3/2) sin^2(gt))/gt when positive; nullopt when sin^2(gt) <= 2/3
// (no enhancement regime).
std::optional<double> optimal_kappa(double gt);

struct SimulationResult {
    hilbert::DensityMatrix rho_a1_a2;
    double c = 0.0;
    double block_leakage = 0.0;
};

// Staged oracle: |0, e, g>, transit 1 under JC(C,A1) + cavity decay, an
// optional idle stage under decay alone, transit 2 under JC(C,A2) + decay,
// then the cavity is traced out.
SimulationResult simulate(const Params& p);

}  // namespace cavent::scenario_b
