#include "cavent/micromaser.hpp"

#include "cavent/entanglement.hpp"
#include "cavent/linalg.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cavent::micromaser {

using hilbert::Composite;
using hilbert::DensityMatrix;

namespace {

Composite field_space(int d) {
    return Composite({hilbert::cavity("field", d)});
}

// Transit generator blocks for a fixed (kappa, n_th, gamma, fock_dim),
// grouped by excitation-grade difference. gt enters only through the block
// exponentials, so a sweep over gt reuses the same kernel.
struct TransitKernel {
    int d;
    std::vector<int> ks;                                   // grade differences
    std::vector<std::vector<std::pair<int, int>>> pairs;   // joint index pairs per k
    std::vector<Matrix> gen;                               // generator block per k

    TransitKernel(const Params& p) : d(p.fock_dim) {
        const Composite joint(
            {hilbert::cavity("field", d), hilbert::atom("atom")});
        const Matrix h = lindblad::jc_hamiltonian(1.0, "field", "atom", joint);
        std::vector<lindblad::Jump> jumps =
            lindblad::cavity_jumps({p.kappa_over_g, p.n_th}, "field", joint);
        if (p.gamma_over_g > 0) {
            for (auto& j : lindblad::atomic_jumps({p.gamma_over_g}, "atom", joint)) {
                jumps.push_back(std::move(j));
            }
        }
        const auto grades = joint.excitation_grades();
        std::map<int, std::vector<std::pair<int, int>>> by_k;
        const int dim = joint.dim();
        for (int j = 0; j < dim; ++j) {
            for (int i = 0; i < dim; ++i) {
                by_k[grades[static_cast<std::size_t>(i)] -
                     grades[static_cast<std::size_t>(j)]]
                    .emplace_back(i, j);
            }
        }
        for (auto& [k, pr] : by_k) {
            ks.push_back(k);
            gen.push_back(lindblad::sector_generator(h, jumps, pr));
            pairs.push_back(std::move(pr));
        }
    }

    // Full d^2 x d^2 gain map at Rabi angle gt.
    Matrix gain(double gt) const {
        Matrix f = Matrix::Zero(d * d, d * d);
        for (std::size_t s = 0; s < ks.size(); ++s) {
            const auto& pr = pairs[s];
            const Matrix e = linalg::matexp(gen[s] * gt);
            // joint flat index of (n, atom state a) is 2n + a
            for (std::size_t col = 0; col < pr.size(); ++col) {
                const auto [ci, cj] = pr[col];
                if (ci % 2 != 1 || cj % 2 != 1) continue;  // input atom state |e><e|
                const int n = ci / 2;
                const int m = cj / 2;
                for (std::size_t row = 0; row < pr.size(); ++row) {
                    const auto [ri, rj] = pr[row];
                    if (ri % 2 != rj % 2) continue;  // atom trace keeps equal atom indices
                    f(ri / 2 + d * (rj / 2), n + d * m) +=
                        e(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                }
            }
        }
        return f;
    }
};

double mean_of(const Eigen::VectorXd& p) {
    double m = 0.0;
    for (Eigen::Index n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p(n);
    return m;
}

PhotonDistribution distribution_from_null_vector(Vector v, int d, const char* who) {
    // steady-state populations are real and of one sign; the null-vector
    // phase convention already made the dominant entry positive
    Eigen::VectorXd p(d);
    double max_imag = 0.0;
    for (int n = 0; n < d; ++n) {
        max_imag = std::max(max_imag, std::abs(v(n).imag()));
        p(n) = v(n).real();
    }
    if (max_imag > 1e-9) {
        std::ostringstream msg;
        msg << who << ": steady-state vector has imaginary residue " << max_imag;
        throw std::runtime_error(msg.str());
    }
    const double total = p.sum();
    if (!(std::abs(total) > 0)) {
        throw std::runtime_error(std::string(who) + ": null vector sums to zero");
    }
    p /= total;
    return make_distribution(std::move(p));
}

}  // namespace

void validate(const Params& p) {
    if (!(p.pump_N > 0)) throw std::invalid_argument("micromaser: N must be > 0");
    if (p.n_th < 0) throw std::invalid_argument("micromaser: n_th must be >= 0");
    if (p.gt < 0) throw std::invalid_argument("micromaser: gt must be >= 0");
    if (p.kappa_over_g < 0 || p.gamma_over_g < 0) {
        throw std::invalid_argument("micromaser: rates must be >= 0");
    }
    if (p.fock_dim < 2) throw std::invalid_argument("micromaser: fock_dim must be >= 2");
}

PhotonDistribution make_distribution(Eigen::VectorXd p) {
    for (Eigen::Index n = 0; n < p.size(); ++n) {
        if (p(n) < -1e-12) {
            std::ostringstream msg;
            msg << "make_distribution: P_" << n << " = " << p(n) << " below -1e-12";
            throw std::runtime_error(msg.str());
        }
        if (p(n) < 0) p(n) = 0.0;
    }
    const double total = p.sum();
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "make_distribution: sum " << total << " deviates from 1 beyond 1e-9";
        throw std::runtime_error(msg.str());
    }
    PhotonDistribution out{std::move(p), 0.0};
    out.mean_n = mean_of(out.p);
    return out;
}

PhotonDistribution detailed_balance_pss(const Params& p) {
    validate(p);
    const int d = p.fock_dim;
    Eigen::VectorXd w(d);
    w(0) = 1.0;
    for (int n = 1; n < d; ++n) {
        const double s = std::sin(std::sqrt(static_cast<double>(n)) * p.gt);
        const double ratio = (p.n_th + (p.pump_N / n) * s * s) / (1.0 + p.n_th);
        w(n) = w(n - 1) * ratio;
    }
    const double total = w.sum();
    if (!(total > 0) || !std::isfinite(total)) {
        throw std::runtime_error("detailed_balance_pss: normalization failed");
    }
    w /= total;
    if (w(d - 1) >= 1e-10) {
        std::ostringstream msg;
        msg << "detailed_balance_pss: P_top = " << w(d - 1)
            << "; fock_dim " << d << " too small";
        throw std::runtime_error(msg.str());
    }
    return make_distribution(std::move(w));
}

lindblad::Superoperator pump_gain_map(const Params& p) {
    validate(p);
    const TransitKernel kernel(p);
    lindblad::Superoperator f{kernel.gain(p.gt), field_space(p.fock_dim)};
    // trace preservation of the transit map
    const int d = p.fock_dim;
    for (int col = 0; col < d * d; ++col) {
        Complex colsum = 0;
        for (int q = 0; q < d; ++q) colsum += f.matrix(q + d * q, col);
        const double expected = (col % d == col / d) ? 1.0 : 0.0;
        if (std::abs(colsum - expected) > 1e-9) {
            std::ostringstream msg;
            msg << "pump_gain_map: trace defect " << std::abs(colsum - expected)
                << " in column " << col;
            throw std::runtime_error(msg.str());
        }
    }
    return f;
}

PhotonDistribution steady_state_pss(const Params& p, bool full_superoperator_solve) {
    validate(p);
    if (!(p.kappa_over_g > 0)) {
        throw std::invalid_argument("steady_state_pss: kappa must be > 0 (use the detailed-balance path for the undamped limit)");
    }
    const int d = p.fock_dim;
    const double pump_rate = 2.0 * p.kappa_over_g * p.pump_N;  // R = 2 kappa N
    const Composite field = field_space(d);
    const lindblad::Superoperator f = pump_gain_map(p);
    const lindblad::Superoperator l_cav =
        lindblad::cavity_dissipator({p.kappa_over_g, p.n_th}, "field", field);

    PhotonDistribution result{Eigen::VectorXd(), 0.0};
    if (full_superoperator_solve) {
        const Matrix m = pump_rate * (f.matrix - Matrix::Identity(d * d, d * d)) + l_cav.matrix;
        const Vector v = linalg::null_vector(m);
        Vector diag(d);
        for (int n = 0; n < d; ++n) diag(n) = v(n + d * n);
        result = distribution_from_null_vector(diag, d, "steady_state_pss[full]");
    } else {
        // Fock-diagonal sector: both generators map diagonal states to
        // diagonal states (single-mode grading), so the fixed point solves a
        // birth-death-like rate system of dimension fock_dim.
        Matrix m(d, d);
        for (int n = 0; n < d; ++n) {
            for (int q = 0; q < d; ++q) {
                m(q, n) = pump_rate * (f.matrix(q + d * q, n + d * n) - (q == n ? 1.0 : 0.0)) +
                          l_cav.matrix(q + d * q, n + d * n);
            }
        }
        result = distribution_from_null_vector(linalg::null_vector(m), d, "steady_state_pss");
    }
    if (result.p(d - 1) >= 1e-10) {
        std::ostringstream msg;
        msg << "steady_state_pss: P_top = " << result.p(d - 1) << "; fock_dim " << d
            << " too small";
        throw std::runtime_error(msg.str());
    }
    return result;
}

hilbert::DensityMatrix two_atom_state(const PhotonDistribution& pss, double gt) {
    if (pss.p.size() < 1) throw std::invalid_argument("two_atom_state: empty distribution");
    double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0;
    for (Eigen::Index n = 0; n < pss.p.size(); ++n) {
        const double r1 = std::sqrt(static_cast<double>(n) + 1.0) * gt;
        const double r2 = std::sqrt(static_cast<double>(n) + 2.0) * gt;
        const double c1 = std::cos(r1), s1 = std::sin(r1);
        const double c2 = std::cos(r2), s2 = std::sin(r2);
        const double w = pss.p(n);
        b1 += w * c1 * c1 * c1 * c1;
        b2 += w * c1 * c1 * s1 * s1;
        b3 += w * c2 * c2 * s1 * s1;
        b4 += w * s1 * s1 * c1 * c2;
        b5 += w * s1 * s1 * s2 * s2;
    }
    const double trace = b1 + b2 + b3 + b5;
    if (std::abs(trace - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "two_atom_state: trace " << trace << " deviates from 1 (inconsistent pss)";
        throw std::runtime_error(msg.str());
    }
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = b5;
    m(1, 1) = b3;
    m(2, 2) = b2;
    m(3, 3) = b1;
    m(1, 2) = b4;
    m(2, 1) = b4;
    DensityMatrix state{std::move(m),
                        Composite({hilbert::atom("A1"), hilbert::atom("A2")})};
    hilbert::check_state(state);
    return state;
}

double two_atom_concurrence(const PhotonDistribution& pss, double gt) {
    return entanglement::concurrence(two_atom_state(pss, gt)).value;
}

hilbert::DensityMatrix two_atom_state_gapped(const Params& p, const PhotonDistribution& pss,
                                             double gap_gt) {
    validate(p);
    if (gap_gt < 0) throw std::invalid_argument("two_atom_state_gapped: gap_gt must be >= 0");
    const int d = static_cast<int>(pss.p.size());
    const Composite space(
        {hilbert::cavity("field", d), hilbert::atom("A1"), hilbert::atom("A2")});

    // field in the pumped steady state, both probes excited: sum_n P_n |n,e,e>
    Matrix rho0 = Matrix::Zero(space.dim(), space.dim());
    for (int n = 0; n < d; ++n) {
        const int flat = space.flat_index(std::vector<int>{n, 1, 1});
        rho0(flat, flat) = pss.p(n);
    }
    DensityMatrix rho{std::move(rho0), space};
    hilbert::check_state(rho);

    const Matrix h1 = lindblad::jc_hamiltonian(1.0, "field", "A1", space);
    const Matrix h2 = lindblad::jc_hamiltonian(1.0, "field", "A2", space);
    const std::vector<lindblad::Jump> none;

    rho = lindblad::evolve_graded(rho, h1, none, p.gt);
    if (gap_gt > 0) {
        const auto decay = lindblad::cavity_jumps({p.kappa_over_g, p.n_th}, "field", space);
        const Matrix idle = Matrix::Zero(space.dim(), space.dim());
        rho = lindblad::evolve_graded(rho, idle, decay, gap_gt);
    }
    rho = lindblad::evolve_graded(rho, h2, none, p.gt);
    return hilbert::partial_trace(rho, {"A1", "A2"});
}

std::vector<SweepPoint> fig1_sweep(const Params& base, const std::vector<double>& gt_grid,
                                   const std::vector<double>& kappa_list) {
    if (gt_grid.empty() || kappa_list.empty()) {
        throw std::invalid_argument("fig1_sweep: empty grid");
    }
    std::vector<SweepPoint> rows;
    rows.reserve(gt_grid.size() * kappa_list.size());
    for (const double kappa : kappa_list) {
        Params p = base;
        p.kappa_over_g = kappa;
        p.gt = gt_grid.front();
        validate(p);
        const TransitKernel kernel(p);  // reused across the gt axis
        const int d = p.fock_dim;
        const Composite field = field_space(d);
        const lindblad::Superoperator l_cav =
            lindblad::cavity_dissipator({kappa, p.n_th}, "field", field);
        const double pump_rate = 2.0 * kappa * p.pump_N;
        for (const double gt : gt_grid) {
            const Matrix f = kernel.gain(gt);
            Matrix m(d, d);
            for (int n = 0; n < d; ++n) {
                for (int q = 0; q < d; ++q) {
                    m(q, n) =
                        pump_rate * (f(q + d * q, n + d * n) - (q == n ? 1.0 : 0.0)) +
                        l_cav.matrix(q + d * q, n + d * n);
                }
            }
            const PhotonDistribution pss =
                distribution_from_null_vector(linalg::null_vector(m), d, "fig1_sweep");
            if (pss.p(d - 1) >= 1e-10) {
                throw std::runtime_error("fig1_sweep: fock_dim too small for this grid point");
            }
            SweepPoint pt;
            pt.kappa_over_g = kappa;
            pt.gt = gt;
            pt.concurrence = two_atom_concurrence(pss, gt);
            pt.mean_n = pss.mean_n;
            pt.p0 = pss.p(0);
            pt.p1 = pss.p.size() > 1 ? pss.p(1) : 0.0;
            pt.p2 = pss.p.size() > 2 ? pss.p(2) : 0.0;
            rows.push_back(pt);
        }
    }
    return rows;
}

}  // namespace cavent::micromaser
