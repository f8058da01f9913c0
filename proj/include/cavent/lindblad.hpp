// lindblad.hpp — Liouvillian superoperators for the three couplings
// (atom-field, field-reservoir, atom-reservoir) and time propagation.
//
// Unit system: g = 1; times are Rabi angles gt, rates are kappa/g, Gamma/g.
// Dissipator normalization, fixed by the field-reservoir form
//   rho' = -kappa(a^dag a rho - 2 a rho a^dag + rho a^dag a):
// a jump (rate, A) contributes rate*(2 A rho A^dag - A^dag A rho - rho A^dag A),
// so a free cavity loses energy at 2*kappa and an excited atom decays as
// exp(-2*Gamma*t).

#pragma once

#include "cavent/hilbert.hpp"
#include "cavent/linalg.hpp"

#include <string>
#include <vector>

namespace cavent::lindblad {

struct CavityBath {
    double kappa = 0.0;  // units of g
    double n_th = 0.0;   // mean thermal photon number
};

struct AtomBath {
    double gamma = 0.0;  // units of g
};

// Linear map on column-stacked density matrices, dim d^2 x d^2.
struct Superoperator {
    Matrix matrix;
    hilbert::Composite space;
};

// One collapse channel: D(rho) = rate*(2 A rho A^dag - A^dag A rho - rho A^dag A).
struct Jump {
    double rate;
    Matrix op;
};

// H = g(a sigma_+ + a^dag sigma_-) embedded in the composite (resonant,
// interaction picture).
Matrix jc_hamiltonian(double g_rate, const std::string& cavity, const std::string& atom,
                      const hilbert::Composite& space);

// Collapse channels for a leaky cavity: (kappa*(n_th+1), a) and (kappa*n_th, a^dag).
std::vector<Jump> cavity_jumps(const CavityBath& bath, const std::string& cavity,
                               const hilbert::Composite& space);

// Spontaneous emission: (gamma, sigma_-).
std::vector<Jump> atomic_jumps(const AtomBath& bath, const std::string& atom,
                               const hilbert::Composite& space);

// Matrix form of the summed jump dissipators (column-stacking convention).
Superoperator dissipator(const std::vector<Jump>& jumps, const hilbert::Composite& space);

Superoperator cavity_dissipator(const CavityBath& bath, const std::string& cavity,
                                const hilbert::Composite& space);

Superoperator atomic_dissipator(const AtomBath& bath, const std::string& atom,
                                const hilbert::Composite& space);

// L(rho) = -i[H, rho] + sum of dissipators.
Superoperator liouvillian(const Matrix& h, const std::vector<Superoperator>& dissipators,
                          const hilbert::Composite& space);

// Max row-sum of vec(I)^dag L; zero for a trace-annihilating generator.
double trace_defect(const Superoperator& sop);

// rho(t) = unvec(exp(L*t) vec(rho0)); t = 0 returns the input unchanged.
// Output is validated against the DensityMatrix contract.
hilbert::DensityMatrix evolve(const hilbert::DensityMatrix& rho0, const Superoperator& l,
                              double t);

// --- graded fast path ---------------------------------------------------
//
// When H conserves an integer grade (excitation number) and every jump
// operator is grade-homogeneous, the vectorized generator is block-diagonal
// over index pairs (i,j) grouped by grades[i] - grades[j]. Propagating each
// occupied block with its own exact exponential is algebraically identical
// to the full exp(L*t) and cheap even for large composites. Grade
// homogeneity is verified at runtime; a violating operator throws.

std::vector<std::pair<int, int>> sector_pairs(const std::vector<int>& grades, int k);

// Vectorized-generator submatrix on the given index pairs, built directly
// from H and the jumps.
Matrix sector_generator(const Matrix& h, const std::vector<Jump>& jumps,
                        const std::vector<std::pair<int, int>>& pairs);

void check_grade_homogeneous(const Matrix& op, const std::vector<int>& grades);

hilbert::DensityMatrix evolve_graded(const hilbert::DensityMatrix& rho0, const Matrix& h,
                                     const std::vector<Jump>& jumps, double t);

}  // namespace cavent::lindblad
