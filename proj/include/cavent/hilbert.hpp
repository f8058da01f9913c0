// hilbert.hpp — composite Hilbert-space bookkeeping: Fock-truncated cavity
// modes, two-level atoms, operator embedding, partial trace, state builders.
//
// Basis conventions, fixed once for the whole library:
//   - composite ordering = construction order of the subsystem list,
//     first subsystem is the leftmost Kronecker factor;
//   - atom basis (|g>, |e>), sigma_plus|g> = |e>;
//   - Fock basis (|0>, |1>, ...) truncated at dim-1.

#pragma once

#include "cavent/linalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace cavent::hilbert {

enum class SubsystemKind { atom, cavity };

struct SubsystemSpec {
    std::string label;
    int dim = 2;
    SubsystemKind kind = SubsystemKind::atom;
};

SubsystemSpec atom(std::string label);
SubsystemSpec cavity(std::string label, int fock_dim);

class Composite {
public:
    Composite() = default;
    explicit Composite(std::vector<SubsystemSpec> subsystems);

    std::size_t size() const { return subs_.size(); }
    int dim() const { return dim_; }
    const SubsystemSpec& at(std::size_t i) const { return subs_[i]; }
    const std::vector<SubsystemSpec>& subsystems() const { return subs_; }

    std::size_t index_of(const std::string& label) const;  // throws on unknown label
    std::vector<int> dims() const;

    // Flat basis index from per-subsystem indices (first factor most significant).
    int flat_index(std::span<const int> indices) const;
    std::vector<int> multi_index(int flat) const;

    // Excitation number per composite basis state: Fock level for cavities,
    // 0/1 for atoms. Grades the Jaynes-Cummings + damping generators.
    std::vector<int> excitation_grades() const;

private:
    std::vector<SubsystemSpec> subs_;
    int dim_ = 1;
};

struct StateTolerances {
    double trace = 1e-9;
    double hermiticity = 1e-10;
    double positivity = 1e-8;  // min eigenvalue >= -positivity
};

struct DensityMatrix {
    Matrix matrix;
    Composite space;
};

// Throws if rho violates the trace/Hermiticity/positivity contract.
void check_state(const DensityMatrix& rho, const StateTolerances& tol = {});

enum class AtomState { ground, excited };

struct FockOps {
    Matrix a;
    Matrix a_dagger;
    Matrix n_op;
};

// a|n> = sqrt(n)|n-1>, truncated at dim-1; n_op = a^dag a.
FockOps fock_ops(int dim);

struct AtomOps {
    Matrix sigma_plus;
    Matrix sigma_minus;
    Matrix sigma_y;
    Matrix sigma_z;
};

AtomOps atom_ops();

// Identity on all other factors, Kronecker-ordered per the composite.
Matrix embed(const Matrix& op, const std::string& target, const Composite& space);

// Result subsystem ordering follows the keep list.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

struct StateTerm {
    std::vector<int> indices;  // one basis index per subsystem, composite order
    Complex amplitude;
};

// Rank-1 |psi><psi| from a superposition of product basis kets.
// Amplitudes must normalize within 1e-12.
DensityMatrix pure_state(const Composite& space, const std::vector<StateTerm>& terms);

}  // namespace cavent::hilbert
