#include "cavent/scenario_b.hpp"

#include "cavent/entanglement.hpp"
#include "cavent/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cavent::scenario_b {

using hilbert::Composite;
using hilbert::DensityMatrix;

void validate(const Params& p) {
    if (!(p.gt > 0)) throw std::invalid_argument("scenario_b: gt must be > 0");
    if (p.kappa_over_g < 0) throw std::invalid_argument("scenario_b: kappa must be >= 0");
    if (p.gap_gt < 0) throw std::invalid_argument("scenario_b: gap_gt must be >= 0");
    if (p.fock_dim < 2) throw std::invalid_argument("scenario_b: fock_dim must be >= 2");
}

Coefficients coefficients(const Params& p) {
    validate(p);
    const double t = p.gt;  // g = 1
    const double k = p.kappa_over_g;
    const double s = std::sin(p.gt);
    const double c = std::cos(p.gt);
    const double e1 = std::exp(-k * t);
    const double e2 = std::exp(-2.0 * k * t);
    const double eh = std::exp(-k * t / 2.0);
    Coefficients g;
    g.gamma1 = 1.0 - s * s * e1;
    g.gamma2 = c * c * s * s * e2;
    g.gamma3 = s * s * s * s * e2;
    g.gamma4 = (s * eh - (k / 2.0) * c * eh + k / 2.0) * c * s * e1;
    return g;
}

AnalyticState analytic_state(const Params& p) {
    if (p.gap_gt != 0.0) {
        throw std::invalid_argument("scenario_b: closed form requires gap_gt = 0");
    }
    const Coefficients g = coefficients(p);
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = g.gamma2;
    m(1, 1) = g.gamma3;
    m(2, 2) = g.gamma1;
    m(1, 2) = -g.gamma4;
    m(2, 1) = -g.gamma4;
    const double trace = g.gamma1 + g.gamma2 + g.gamma3;
    m *= Complex(1.0 / trace, 0.0);
    DensityMatrix state{std::move(m), Composite({hilbert::atom("A1"), hilbert::atom("A2")})};
    hilbert::check_state(state);
    return {std::move(state), 1.0 - trace};
}

double concurrence_formula(const Params& p) {
    if (p.gap_gt != 0.0) {
        throw std::invalid_argument("scenario_b: closed form requires gap_gt = 0");
    }
    validate(p);
    const double sx = std::sin(p.gt) * std::sin(p.gt) * std::exp(-p.kappa_over_g * p.gt);
    return 2.0 * sx * std::sqrt(std::max(0.0, 1.0 - sx));
}

double concurrence_small_kappa(const Params& p) {
    if (p.gap_gt != 0.0) {
        throw std::invalid_argument("scenario_b: closed form requires gap_gt = 0");
    }
    validate(p);
    const double kt = p.kappa_over_g * p.gt;
    const double tn = std::tan(p.gt);
    return c_ideal(p.gt) * (1.0 + 0.5 * kt * tn * tn - kt);
}

double c_ideal(double gt) {
    return 2.0 * std::cos(gt) * std::sin(gt) * std::sin(gt);
}

std::optional<double> optimal_kappa(double gt) {
    if (!(gt > 0)) throw std::invalid_argument("optimal_kappa: gt must be > 0");
    const double s2 = std::sin(gt) * std::sin(gt);
    const double value = std::log(1.5 * s2) / gt;
    if (value <= 0.0) return std::nullopt;
    return value;
}

SimulationResult simulate(const Params& p) {
    validate(p);
    const Composite space(
        {hilbert::cavity("C", p.fock_dim), hilbert::atom("A1"), hilbert::atom("A2")});
    // |0, e, g>
    const DensityMatrix rho0 = hilbert::pure_state(space, {{{0, 1, 0}, 1.0}});

    const std::vector<lindblad::Jump> decay =
        lindblad::cavity_jumps({p.kappa_over_g, 0.0}, "C", space);
    const Matrix h1 = lindblad::jc_hamiltonian(1.0, "C", "A1", space);
    const Matrix h2 = lindblad::jc_hamiltonian(1.0, "C", "A2", space);
    const Matrix h_idle = Matrix::Zero(space.dim(), space.dim());

    DensityMatrix rho = lindblad::evolve_graded(rho0, h1, decay, p.gt);
    if (p.gap_gt > 0) {
        rho = lindblad::evolve_graded(rho, h_idle, decay, p.gap_gt);
    }
    rho = lindblad::evolve_graded(rho, h2, decay, p.gt);

    double leakage = 0.0;
    for (int flat = 0; flat < space.dim(); ++flat) {
        if (space.multi_index(flat)[0] >= 2) {
            leakage += rho.matrix(flat, flat).real();
        }
    }
    if (leakage > 1e-6) {
        std::ostringstream msg;
        msg << "scenario_b: photon population " << leakage << " above level 1 exceeds 1e-6";
        throw std::runtime_error(msg.str());
    }

    DensityMatrix reduced = hilbert::partial_trace(rho, {"A1", "A2"});
    SimulationResult result{std::move(reduced), 0.0, leakage};
    result.c = entanglement::concurrence(result.rho_a1_a2).value;
    return result;
}

}  // namespace cavent::scenario_b
