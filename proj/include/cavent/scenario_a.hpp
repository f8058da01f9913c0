// scenario_a.hpp — an atom in |g> crossing cavity C1 of an initially
// maximally entangled cavity pair, both cavities leaking. Closed-form
// state/concurrence in the two-level-cavity approximation, the optimum
// damping law, and a full-Lindblad numeric oracle.

#pragma once

#include "cavent/hilbert.hpp"

namespace cavent::scenario_a {

struct Params {
    double gt = 0.0;              // Rabi angle, radians
    double kappa1_over_g = 0.0;   // decay rate of C1
    double kappa2_over_g = 0.0;   // decay rate of C2
    int fock_dim = 5;             // truncation for the numeric oracle
    double bell_phase = 0.0;      // relative phase of (|1,0> + e^{i phi}|0,1>)/sqrt(2)
};

void validate(const Params& p);

// The closed form stores the C1-A1 coherence as i*|alpha4|. The printed
// convention carries twice the magnitude, which breaks positivity at
// kappa = 0; it is kept selectable for documentation only.
enum class CoherenceConvention { positivity_consistent, printed };

// Raw 4x4 matrix in basis (|0g>, |0e>, |1g>, |1e>), not renormalized; its
// trace drifts below 1 for nonzero rates.
Matrix analytic_matrix(const Params& p,
                       CoherenceConvention conv = CoherenceConvention::positivity_consistent);

struct AnalyticState {
    hilbert::DensityMatrix state;  // renormalized, validated
    double trace_deficit = 0.0;    // 1 - raw trace
};

AnalyticState analytic_state(const Params& p);

// C = 2 cos(gt) sin(gt) e^{-k1 t} (1 - e^{-2 k2 t}/2), evaluated literally.
double concurrence_formula(const Params& p);

// Equal rates k1 = k2: C = 2 C_ideal (e^{-kt} - e^{-3kt}/2).
double concurrence_equal_rates(double gt, double kappa_t);

double c_ideal(double gt);  // cos(gt) sin(gt)

// Location of the concurrence maximum at fixed gt: ln(3/2)/(2 gt).
double optimal_kappa(double gt);

struct SimulationResult {
    hilbert::DensityMatrix rho_c1_a1;  // qubit-block reduced
    hilbert::DensityMatrix rho_c1_c2;
    double c_c1_a1 = 0.0;
    double c_c1_c2 = 0.0;
    double block_leakage = 0.0;  // max population outside the {0,1} photon blocks
};

// Full-Lindblad oracle: Bell(C1,C2) x |g>, JC on (C1, A), both cavities
// leaking at n_th = 0, evolved for the Rabi angle. No secular approximation.
SimulationResult simulate(const Params& p);

}  // namespace cavent::scenario_a
