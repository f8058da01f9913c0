#include "cavent/scenario_a.hpp"

#include "cavent/entanglement.hpp"
#include "cavent/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cavent::scenario_a {

using hilbert::Composite;
using hilbert::DensityMatrix;

namespace {

constexpr double kExpArgCap = 700.0;  // keeps exp(-x) above underflow

double damp(double arg) {
    return std::exp(-std::min(arg, kExpArgCap));
}

// Select the {0,1} photon block of every cavity factor and renormalize.
// Returns the renormalized block and the leaked population.
std::pair<DensityMatrix, double> qubit_block(const DensityMatrix& rho) {
    const Composite& space = rho.space;
    std::vector<int> keep_flat;
    for (int flat = 0; flat < space.dim(); ++flat) {
        const auto idx = space.multi_index(flat);
        bool inside = true;
        for (int q : idx) {
            if (q > 1) inside = false;
        }
        if (inside) keep_flat.push_back(flat);
    }
    const int dk = static_cast<int>(keep_flat.size());
    Matrix block(dk, dk);
    for (int i = 0; i < dk; ++i) {
        for (int j = 0; j < dk; ++j) {
            block(i, j) = rho.matrix(keep_flat[static_cast<std::size_t>(i)],
                                     keep_flat[static_cast<std::size_t>(j)]);
        }
    }
    const double kept = block.trace().real();
    const double leakage = 1.0 - kept;
    std::vector<hilbert::SubsystemSpec> subs;
    for (const auto& s : space.subsystems()) {
        subs.push_back({s.label, 2, s.kind});
    }
    DensityMatrix out{block / kept, Composite(std::move(subs))};
    hilbert::check_state(out);
    return {std::move(out), leakage};
}

}  // namespace

void validate(const Params& p) {
    if (!(p.gt > 0)) throw std::invalid_argument("scenario_a: gt must be > 0");
    if (p.kappa1_over_g < 0 || p.kappa2_over_g < 0) {
        throw std::invalid_argument("scenario_a: rates must be >= 0");
    }
    if (p.fock_dim < 2) throw std::invalid_argument("scenario_a: fock_dim must be >= 2");
}

Matrix analytic_matrix(const Params& p, CoherenceConvention conv) {
    validate(p);
    const double t = p.gt;  // g = 1
    const double u = damp(p.kappa1_over_g * t);
    const double v = damp(2.0 * p.kappa2_over_g * t);
    const double c = std::cos(p.gt);
    const double s = std::sin(p.gt);
    const double a1 = (1.0 - u / 2.0) * v;
    const double a2 = c * c * u * (1.0 - v / 2.0);
    const double a3 = s * s * u * (1.0 - v / 2.0);
    double mag = s * c * u * (1.0 - v / 2.0);
    if (conv == CoherenceConvention::printed) {
        mag = std::sin(2.0 * p.gt) * u * (1.0 - v / 2.0);
    }
    const Complex a4(0.0, mag);
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = a1;
    m(1, 1) = a3;
    m(2, 2) = a2;
    m(1, 2) = -a4;
    m(2, 1) = std::conj(-a4);
    return m;
}

AnalyticState analytic_state(const Params& p) {
    Matrix m = analytic_matrix(p);
    const double trace = m.trace().real();
    if (!(trace > 0)) {
        throw std::runtime_error("scenario_a: analytic matrix trace vanished");
    }
    // multiply by the reciprocal: complex division by a subnormal-squared
    // denominator overflows in the deep-damping limit
    m *= Complex(1.0 / trace, 0.0);
    DensityMatrix state{std::move(m),
                        Composite({hilbert::cavity("C1", 2), hilbert::atom("A1")})};
    hilbert::check_state(state);
    return {std::move(state), 1.0 - trace};
}

double concurrence_formula(const Params& p) {
    validate(p);
    const double t = p.gt;
    return 2.0 * std::cos(p.gt) * std::sin(p.gt) * damp(p.kappa1_over_g * t) *
           (1.0 - damp(2.0 * p.kappa2_over_g * t) / 2.0);
}

double concurrence_equal_rates(double gt, double kappa_t) {
    const double e1 = damp(kappa_t);
    const double e3 = damp(3.0 * kappa_t);
    return 2.0 * c_ideal(gt) * (e1 - e3 / 2.0);
}

double c_ideal(double gt) {
    return std::cos(gt) * std::sin(gt);
}

double optimal_kappa(double gt) {
    if (!(gt > 0)) throw std::invalid_argument("optimal_kappa: gt must be > 0");
    return std::log(1.5) / (2.0 * gt);
}

SimulationResult simulate(const Params& p) {
    validate(p);
    const Composite space({hilbert::cavity("C1", p.fock_dim), hilbert::cavity("C2", p.fock_dim),
                           hilbert::atom("A1")});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex phase = std::exp(Complex(0.0, p.bell_phase));
    const DensityMatrix rho0 = hilbert::pure_state(
        space, {{{1, 0, 0}, inv_sqrt2}, {{0, 1, 0}, phase * inv_sqrt2}});

    const Matrix h = lindblad::jc_hamiltonian(1.0, "C1", "A1", space);
    std::vector<lindblad::Jump> jumps =
        lindblad::cavity_jumps({p.kappa1_over_g, 0.0}, "C1", space);
    for (auto& j : lindblad::cavity_jumps({p.kappa2_over_g, 0.0}, "C2", space)) {
        jumps.push_back(std::move(j));
    }
    const DensityMatrix rho_t = lindblad::evolve_graded(rho0, h, jumps, p.gt);

    auto [rho_c1a1, leak1] = qubit_block(hilbert::partial_trace(rho_t, {"C1", "A1"}));
    auto [rho_c1c2, leak2] = qubit_block(hilbert::partial_trace(rho_t, {"C1", "C2"}));
    const double leakage = std::max(leak1, leak2);
    if (p.fock_dim >= 3 && leakage > 1e-6) {
        std::ostringstream msg;
        msg << "scenario_a: photon-block leakage " << leakage << " exceeds 1e-6";
        throw std::runtime_error(msg.str());
    }
    SimulationResult result{std::move(rho_c1a1), std::move(rho_c1c2), 0.0, 0.0, leakage};
    result.c_c1_a1 = entanglement::concurrence(result.rho_c1_a1).value;
    result.c_c1_c2 = entanglement::concurrence(result.rho_c1_c2).value;
    return result;
}

}  // namespace cavent::scenario_a
