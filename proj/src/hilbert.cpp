#include "cavent/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace cavent::hilbert {

SubsystemSpec atom(std::string label) {
    return {std::move(label), 2, SubsystemKind::atom};
}

SubsystemSpec cavity(std::string label, int fock_dim) {
    return {std::move(label), fock_dim, SubsystemKind::cavity};
}

Composite::Composite(std::vector<SubsystemSpec> subsystems) : subs_(std::move(subsystems)) {
    if (subs_.empty()) {
        throw std::invalid_argument("Composite: at least one subsystem required");
    }
    std::unordered_set<std::string> seen;
    for (const auto& s : subs_) {
        if (s.dim < 2) {
            throw std::invalid_argument("Composite: subsystem '" + s.label + "' has dim < 2");
        }
        if (s.kind == SubsystemKind::atom && s.dim != 2) {
            throw std::invalid_argument("Composite: atom '" + s.label + "' must have dim 2");
        }
        if (!seen.insert(s.label).second) {
            throw std::invalid_argument("Composite: duplicate label '" + s.label + "'");
        }
        dim_ *= s.dim;
    }
}

std::size_t Composite::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        if (subs_[i].label == label) return i;
    }
    throw std::invalid_argument("Composite: unknown label '" + label + "'");
}

std::vector<int> Composite::dims() const {
    std::vector<int> d(subs_.size());
    for (std::size_t i = 0; i < subs_.size(); ++i) d[i] = subs_[i].dim;
    return d;
}

int Composite::flat_index(std::span<const int> indices) const {
    if (indices.size() != subs_.size()) {
        throw std::invalid_argument("flat_index: wrong number of indices");
    }
    int flat = 0;
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= subs_[i].dim) {
            throw std::out_of_range("flat_index: index out of range for '" + subs_[i].label + "'");
        }
        flat = flat * subs_[i].dim + indices[i];
    }
    return flat;
}

std::vector<int> Composite::multi_index(int flat) const {
    if (flat < 0 || flat >= dim_) {
        throw std::out_of_range("multi_index: flat index out of range");
    }
    std::vector<int> idx(subs_.size());
    for (std::size_t i = subs_.size(); i-- > 0;) {
        idx[i] = flat % subs_[i].dim;
        flat /= subs_[i].dim;
    }
    return idx;
}

std::vector<int> Composite::excitation_grades() const {
    std::vector<int> grades(static_cast<std::size_t>(dim_), 0);
    for (int flat = 0; flat < dim_; ++flat) {
        const auto idx = multi_index(flat);
        int g = 0;
        for (std::size_t i = 0; i < subs_.size(); ++i) g += idx[i];
        grades[static_cast<std::size_t>(flat)] = g;
    }
    return grades;
}

void check_state(const DensityMatrix& rho, const StateTolerances& tol) {
    const Matrix& m = rho.matrix;
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("check_state: matrix not square");
    }
    if (rho.space.dim() != m.rows()) {
        throw std::invalid_argument("check_state: matrix dim does not match subsystem dims");
    }
    if (!m.allFinite()) {
        throw std::runtime_error("check_state: non-finite entries");
    }
    const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol.trace) {
        std::ostringstream msg;
        msg << "check_state: |trace - 1| = " << trace_dev << " exceeds " << tol.trace;
        throw std::runtime_error(msg.str());
    }
    const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > tol.hermiticity) {
        std::ostringstream msg;
        msg << "check_state: Hermiticity deviation " << herm_dev << " exceeds " << tol.hermiticity;
        throw std::runtime_error(msg.str());
    }
    const RealVector evals = linalg::hermitian_eigvals(m, std::max(tol.hermiticity, 1e-10));
    const double min_eval = evals(evals.size() - 1);
    if (min_eval < -tol.positivity) {
        std::ostringstream msg;
        msg << "check_state: min eigenvalue " << min_eval << " below -" << tol.positivity;
        throw std::runtime_error(msg.str());
    }
}

FockOps fock_ops(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("fock_ops: dim must be >= 2");
    }
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    FockOps ops;
    ops.a = a;
    ops.a_dagger = a.adjoint();
    ops.n_op = ops.a_dagger * a;
    return ops;
}

AtomOps atom_ops() {
    AtomOps ops;
    ops.sigma_plus = Matrix::Zero(2, 2);
    ops.sigma_plus(1, 0) = 1.0;  // |e><g|
    ops.sigma_minus = ops.sigma_plus.adjoint();
    ops.sigma_y = Matrix::Zero(2, 2);
    ops.sigma_y(0, 1) = Complex(0, -1);
    ops.sigma_y(1, 0) = Complex(0, 1);
    ops.sigma_z = Matrix::Zero(2, 2);
    ops.sigma_z(0, 0) = 1.0;
    ops.sigma_z(1, 1) = -1.0;
    return ops;
}

Matrix embed(const Matrix& op, const std::string& target, const Composite& space) {
    const std::size_t pos = space.index_of(target);
    if (op.rows() != op.cols() || op.rows() != space.at(pos).dim) {
        throw std::invalid_argument("embed: operator dim does not match subsystem '" + target + "'");
    }
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (i == pos) {
            out = linalg::kron(out, op);
        } else {
            out = linalg::kron(out, Matrix::Identity(space.at(i).dim, space.at(i).dim));
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep list is empty");
    }
    const Composite& space = rho.space;
    std::vector<std::size_t> keep_pos;
    keep_pos.reserve(keep.size());
    std::unordered_set<std::size_t> kept;
    for (const auto& label : keep) {
        const std::size_t pos = space.index_of(label);
        if (!kept.insert(pos).second) {
            throw std::invalid_argument("partial_trace: duplicate label '" + label + "'");
        }
        keep_pos.push_back(pos);
    }
    std::vector<std::size_t> drop_pos;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!kept.count(i)) drop_pos.push_back(i);
    }

    std::vector<SubsystemSpec> kept_subs;
    int dk = 1;
    for (const auto pos : keep_pos) {
        kept_subs.push_back(space.at(pos));
        dk *= space.at(pos).dim;
    }
    int dd = 1;
    for (const auto pos : drop_pos) dd *= space.at(pos).dim;

    // enumerate kept/dropped multi-indices into flat full-space indices
    const auto flats_for = [&](const std::vector<std::size_t>& positions, int count) {
        std::vector<std::vector<int>> result;
        result.reserve(static_cast<std::size_t>(count));
        std::vector<int> sub(positions.size(), 0);
        for (int c = 0; c < count; ++c) {
            int rem = c;
            for (std::size_t i = positions.size(); i-- > 0;) {
                sub[i] = rem % space.at(positions[i]).dim;
                rem /= space.at(positions[i]).dim;
            }
            result.push_back(sub);
        }
        return result;
    };
    const auto kept_multi = flats_for(keep_pos, dk);
    const auto drop_multi = flats_for(drop_pos, dd);

    const auto full_flat = [&](const std::vector<int>& km, const std::vector<int>& dm) {
        std::vector<int> idx(space.size(), 0);
        for (std::size_t i = 0; i < keep_pos.size(); ++i) idx[keep_pos[i]] = km[i];
        for (std::size_t i = 0; i < drop_pos.size(); ++i) idx[drop_pos[i]] = dm[i];
        return space.flat_index(idx);
    };

    Matrix out = Matrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i) {
        for (int j = 0; j < dk; ++j) {
            Complex sum = 0;
            for (int b = 0; b < dd; ++b) {
                sum += rho.matrix(full_flat(kept_multi[i], drop_multi[b]),
                                  full_flat(kept_multi[j], drop_multi[b]));
            }
            out(i, j) = sum;
        }
    }
    return {std::move(out), Composite(std::move(kept_subs))};
}

DensityMatrix pure_state(const Composite& space, const std::vector<StateTerm>& terms) {
    if (terms.empty()) {
        throw std::invalid_argument("pure_state: no terms");
    }
    Vector psi = Vector::Zero(space.dim());
    for (const auto& term : terms) {
        psi(space.flat_index(term.indices)) += term.amplitude;
    }
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "pure_state: amplitudes not normalized, |psi| = " << norm;
        throw std::invalid_argument(msg.str());
    }
    DensityMatrix rho{psi * psi.adjoint(), space};
    return rho;
}

}  // namespace cavent::hilbert
