// micromaser.hpp — steady-state photon statistics of the one-atom micromaser
// (detailed-balance fast path and the coarse-grained pump-map fixed point
// with in-flight damping), plus the two-probe-atom reduced state and its
// concurrence.
//
// Pump model: a Poissonian stream of excited atoms at rate R = 2 kappa N is
// coarse-grained into the field generator R(F - Id) + L_cav, where F is the
// exact single-transit map including the field-reservoir (and optional
// atom-reservoir) coupling during the flight.

#pragma once

#include "cavent/hilbert.hpp"
#include "cavent/lindblad.hpp"

#include <vector>

namespace cavent::micromaser {

struct Params {
    double pump_N = 1.0;        // N = R / (2 kappa)
    double n_th = 0.0;          // thermal photon number of the reservoir
    double gt = 0.0;            // Rabi angle per transit
    double kappa_over_g = 0.0;  // cavity decay rate
    double gamma_over_g = 0.0;  // atomic decay rate
    int fock_dim = 20;
};

void validate(const Params& p);

struct PhotonDistribution {
    Eigen::VectorXd p;   // P_n, n = 0..fock_dim-1
    double mean_n = 0.0;
};

// Clamps entries above -1e-12 to zero, requires sum 1 within 1e-9.
PhotonDistribution make_distribution(Eigen::VectorXd p);

// P_n / P_{n-1} = [n_th + (N/n) sin^2(gt sqrt(n))] / (1 + n_th), normalized.
// Exact in the limit kappa/g -> 0 at fixed N (no damping during transits).
PhotonDistribution detailed_balance_pss(const Params& p);

// Single-transit gain map on the field:
//   F(rho_f) = Tr_atom[ exp(L t) (rho_f x |e><e|) ],
// L = JC + cavity damping + atomic damping, t = gt/g. Trace preserving;
// computed exactly via the excitation-graded block exponentials.
lindblad::Superoperator pump_gain_map(const Params& p);

// Fixed point of R(F - Id) + L_cav. The default solve restricts to the
// Fock-diagonal sector (the map preserves diagonality exactly for a single
// mode); full_superoperator_solve keeps the whole d^2-dimensional system as
// a cross-check.
PhotonDistribution steady_state_pss(const Params& p, bool full_superoperator_solve = false);

// Closed-form probe pair: both atoms enter excited and cross one after the
// other, undamped transits, no idle time in between. 4x4 X state in basis
// (|gg>, |ge>, |eg>, |ee>).
hilbert::DensityMatrix two_atom_state(const PhotonDistribution& pss, double gt);

double two_atom_concurrence(const PhotonDistribution& pss, double gt);

// Probe pair with an idle stage of Rabi angle gap_gt between the transits,
// during which the field damps at (kappa, n_th) while both atoms idle.
// gap_gt = 0 reproduces two_atom_state exactly (checked in tests).
hilbert::DensityMatrix two_atom_state_gapped(const Params& p, const PhotonDistribution& pss,
                                             double gap_gt);

struct SweepPoint {
    double kappa_over_g = 0.0;
    double gt = 0.0;
    double concurrence = 0.0;
    double mean_n = 0.0;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
};

// Deterministic row order: kappa outer, gt inner.
std::vector<SweepPoint> fig1_sweep(const Params& base, const std::vector<double>& gt_grid,
                                   const std::vector<double>& kappa_list);

}  // namespace cavent::micromaser
