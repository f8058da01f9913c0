#include "cavent/lindblad.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cavent::lindblad {

using hilbert::Composite;
using hilbert::DensityMatrix;
using linalg::kron;

Matrix jc_hamiltonian(double g_rate, const std::string& cavity, const std::string& atom,
                      const Composite& space) {
    const auto& cav_spec = space.at(space.index_of(cavity));
    if (cav_spec.kind != hilbert::SubsystemKind::cavity) {
        throw std::invalid_argument("jc_hamiltonian: '" + cavity + "' is not a cavity");
    }
    const auto fock = hilbert::fock_ops(cav_spec.dim);
    const auto pauli = hilbert::atom_ops();
    const Matrix a = hilbert::embed(fock.a, cavity, space);
    const Matrix sp = hilbert::embed(pauli.sigma_plus, atom, space);
    return g_rate * (a * sp + (a * sp).adjoint());
}

std::vector<Jump> cavity_jumps(const CavityBath& bath, const std::string& cavity,
                               const Composite& space) {
    if (bath.kappa < 0 || bath.n_th < 0) {
        throw std::invalid_argument("cavity_jumps: negative rate");
    }
    const auto fock = hilbert::fock_ops(space.at(space.index_of(cavity)).dim);
    std::vector<Jump> jumps;
    jumps.push_back({bath.kappa * (bath.n_th + 1.0), hilbert::embed(fock.a, cavity, space)});
    if (bath.n_th > 0) {
        jumps.push_back({bath.kappa * bath.n_th, hilbert::embed(fock.a_dagger, cavity, space)});
    }
    return jumps;
}

std::vector<Jump> atomic_jumps(const AtomBath& bath, const std::string& atom,
                               const Composite& space) {
    if (bath.gamma < 0) {
        throw std::invalid_argument("atomic_jumps: negative rate");
    }
    const auto pauli = hilbert::atom_ops();
    return {{bath.gamma, hilbert::embed(pauli.sigma_minus, atom, space)}};
}

Superoperator dissipator(const std::vector<Jump>& jumps, const Composite& space) {
    const int d = space.dim();
    const Matrix id = Matrix::Identity(d, d);
    Matrix l = Matrix::Zero(d * d, d * d);
    for (const auto& j : jumps) {
        if (j.op.rows() != d || j.op.cols() != d) {
            throw std::invalid_argument("dissipator: jump operator dim mismatch");
        }
        const Matrix ada = j.op.adjoint() * j.op;
        l += j.rate * (2.0 * kron(j.op.conjugate(), j.op) - kron(id, ada) -
                       kron(ada.transpose(), id));
    }
    return {std::move(l), space};
}

Superoperator cavity_dissipator(const CavityBath& bath, const std::string& cavity,
                                const Composite& space) {
    return dissipator(cavity_jumps(bath, cavity, space), space);
}

Superoperator atomic_dissipator(const AtomBath& bath, const std::string& atom,
                                const Composite& space) {
    return dissipator(atomic_jumps(bath, atom, space), space);
}

Superoperator liouvillian(const Matrix& h, const std::vector<Superoperator>& dissipators,
                          const Composite& space) {
    const int d = space.dim();
    if (h.rows() != d || h.cols() != d) {
        throw std::invalid_argument("liouvillian: Hamiltonian dim mismatch");
    }
    const Matrix id = Matrix::Identity(d, d);
    const Complex i_unit(0.0, 1.0);
    Matrix l = -i_unit * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& dis : dissipators) {
        if (dis.matrix.rows() != d * d) {
            throw std::invalid_argument("liouvillian: dissipator dim mismatch");
        }
        l += dis.matrix;
    }
    return {std::move(l), space};
}

double trace_defect(const Superoperator& sop) {
    const int d = sop.space.dim();
    const Vector vec_id = linalg::vec(Matrix::Identity(d, d));
    return (vec_id.adjoint() * sop.matrix).cwiseAbs().maxCoeff();
}

DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& l, double t) {
    if (t < 0) {
        throw std::invalid_argument("evolve: negative time");
    }
    const int d = rho0.space.dim();
    if (l.space.dim() != d) {
        throw std::invalid_argument("evolve: superoperator dim mismatch");
    }
    if (t == 0.0) {
        return rho0;
    }
    const Vector v = linalg::matexp(l.matrix * t) * linalg::vec(rho0.matrix);
    DensityMatrix out{linalg::unvec(v, d, d), rho0.space};
    hilbert::check_state(out);
    return out;
}

std::vector<std::pair<int, int>> sector_pairs(const std::vector<int>& grades, int k) {
    std::vector<std::pair<int, int>> pairs;
    const int d = static_cast<int>(grades.size());
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            if (grades[static_cast<std::size_t>(i)] - grades[static_cast<std::size_t>(j)] == k) {
                pairs.emplace_back(i, j);
            }
        }
    }
    return pairs;
}

Matrix sector_generator(const Matrix& h, const std::vector<Jump>& jumps,
                        const std::vector<std::pair<int, int>>& pairs) {
    const std::size_t n = pairs.size();
    const Complex i_unit(0.0, 1.0);
    std::vector<Matrix> ada;
    ada.reserve(jumps.size());
    for (const auto& j : jumps) ada.push_back(j.op.adjoint() * j.op);

    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t col = 0; col < n; ++col) {
        const auto [k, l] = pairs[col];
        for (std::size_t row = 0; row < n; ++row) {
            const auto [i, j] = pairs[row];
            Complex entry = 0;
            if (j == l) entry -= i_unit * h(i, k);
            if (i == k) entry += i_unit * h(l, j);
            for (std::size_t c = 0; c < jumps.size(); ++c) {
                Complex term = 2.0 * jumps[c].op(i, k) * std::conj(jumps[c].op(j, l));
                if (j == l) term -= ada[c](i, k);
                if (i == k) term -= ada[c](l, j);
                entry += jumps[c].rate * term;
            }
            g(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = entry;
        }
    }
    return g;
}

void check_grade_homogeneous(const Matrix& op, const std::vector<int>& grades) {
    std::optional<int> degree;
    for (int j = 0; j < op.cols(); ++j) {
        for (int i = 0; i < op.rows(); ++i) {
            if (std::abs(op(i, j)) == 0.0) continue;
            const int d = grades[static_cast<std::size_t>(i)] - grades[static_cast<std::size_t>(j)];
            if (!degree) {
                degree = d;
            } else if (*degree != d) {
                throw std::invalid_argument(
                    "check_grade_homogeneous: operator mixes grade shifts");
            }
        }
    }
}

DensityMatrix evolve_graded(const DensityMatrix& rho0, const Matrix& h,
                            const std::vector<Jump>& jumps, double t) {
    if (t < 0) {
        throw std::invalid_argument("evolve_graded: negative time");
    }
    if (t == 0.0) {
        return rho0;
    }
    const auto grades = rho0.space.excitation_grades();
    check_grade_homogeneous(h, grades);
    // H must conserve the grade; jumps may shift it uniformly.
    for (int j = 0; j < h.cols(); ++j) {
        for (int i = 0; i < h.rows(); ++i) {
            if (std::abs(h(i, j)) != 0.0 &&
                grades[static_cast<std::size_t>(i)] != grades[static_cast<std::size_t>(j)]) {
                throw std::invalid_argument("evolve_graded: Hamiltonian does not conserve grade");
            }
        }
    }
    for (const auto& jmp : jumps) check_grade_homogeneous(jmp.op, grades);

    const int d = rho0.space.dim();
    Matrix out = Matrix::Zero(d, d);
    std::map<int, std::vector<std::pair<int, int>>> sectors;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            sectors[grades[static_cast<std::size_t>(i)] - grades[static_cast<std::size_t>(j)]]
                .emplace_back(i, j);
        }
    }
    for (const auto& [k, pairs] : sectors) {
        Vector v0(static_cast<Eigen::Index>(pairs.size()));
        bool occupied = false;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            v0(static_cast<Eigen::Index>(p)) = rho0.matrix(pairs[p].first, pairs[p].second);
            if (std::abs(v0(static_cast<Eigen::Index>(p))) != 0.0) occupied = true;
        }
        if (!occupied) continue;
        const Matrix g = sector_generator(h, jumps, pairs);
        const Vector v = linalg::matexp(g * t) * v0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            out(pairs[p].first, pairs[p].second) = v(static_cast<Eigen::Index>(p));
        }
    }
    DensityMatrix result{std::move(out), rho0.space};
    hilbert::check_state(result);
    return result;
}

}  // namespace cavent::lindblad
