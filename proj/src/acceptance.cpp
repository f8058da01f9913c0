#include "cavent/acceptance.hpp"

#include "cavent/entanglement.hpp"
#include "cavent/hilbert.hpp"
#include "cavent/micromaser.hpp"
#include "cavent/scenario_a.hpp"
#include "cavent/scenario_b.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace cavent::acceptance {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    bool ok = true;
    std::vector<std::string> lines;

    void expect(bool cond, const std::string& line) {
        ok = ok && cond;
        lines.push_back(std::string(cond ? "  ok   " : "  FAIL ") + line);
    }

    void note(const std::string& line) { lines.push_back("       " + line); }
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(9);
    s << v;
    return s.str();
}

// maximizer of a smooth unimodal function, golden-section refinement
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

CriterionResult criterion_1() {
    CriterionResult r{1, "Table 1 undamped row via detailed balance", false, 0, {}};
    Check ch;
    micromaser::Params p;
    p.pump_N = 1.0;
    p.n_th = 0.033;
    p.gt = 3.0 * kPi / 4.0;
    p.kappa_over_g = 0.0000807;
    p.fock_dim = 20;
    const auto pss = micromaser::detailed_balance_pss(p);
    const double refs[4] = {0.645, 0.332, 0.016, 0.382};
    const double tols[4] = {0.001, 0.001, 0.001, 0.002};
    const double vals[4] = {pss.p(0), pss.p(1), pss.p(2), pss.mean_n};
    const char* names[4] = {"P0", "P1", "P2", "<n>"};
    for (int i = 0; i < 4; ++i) {
        ch.expect(std::abs(vals[i] - refs[i]) <= tols[i],
                  std::string(names[i]) + " = " + num(vals[i]) + " vs " + num(refs[i]) +
                      " (tol " + num(tols[i]) + ")");
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_2() {
    CriterionResult r{2, "Table 1 damped rows via pump-map fixed point", false, 0, {}};
    Check ch;
    struct Row {
        double kappa, p0, p1, p2, mean_n;
    };
    const std::vector<Row> rows = {{0.1, 0.771, 0.220, 0.007, 0.236},
                                   {0.01, 0.664, 0.316, 0.014, 0.359},
                                   {0.005, 0.655, 0.324, 0.015, 0.370}};
    for (const auto& row : rows) {
        micromaser::Params p;
        p.pump_N = 1.0;
        p.n_th = 0.033;
        p.gt = 3.0 * kPi / 4.0;
        p.kappa_over_g = row.kappa;
        p.fock_dim = 20;
        const auto pss = micromaser::steady_state_pss(p);
        const double dev = std::max({std::abs(pss.p(0) - row.p0), std::abs(pss.p(1) - row.p1),
                                     std::abs(pss.p(2) - row.p2),
                                     std::abs(pss.mean_n - row.mean_n)});
        ch.expect(dev <= 0.02, "kappa/g=" + num(row.kappa) + ": P0=" + num(pss.p(0)) +
                                   " P1=" + num(pss.p(1)) + " P2=" + num(pss.p(2)) +
                                   " <n>=" + num(pss.mean_n) + ", max dev " + num(dev) +
                                   " (tol 0.02)");
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_3() {
    CriterionResult r{3, "scenario A optimum location and enhancement ratio", false, 0, {}};
    Check ch;
    for (const double gt : {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0}) {
        const auto f = [gt](double kappa) {
            return scenario_a::concurrence_equal_rates(gt, kappa * gt);
        };
        const double found = golden_max(f, 0.0, 2.0 / gt, 1e-10);
        const double expected = scenario_a::optimal_kappa(gt);
        ch.expect(std::abs(found - expected) <= 1e-6,
                  "gt=" + num(gt) + ": argmax kappa/g " + num(found) + " vs ln(3/2)/(2gt) " +
                      num(expected));
        const double ratio = f(found) / scenario_a::c_ideal(gt);
        ch.expect(std::abs(ratio - 1.08866) <= 1e-5,
                  "gt=" + num(gt) + ": enhancement ratio " + num(ratio) + " vs 1.08866");
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_4() {
    CriterionResult r{4, "scenario A small-damping law", false, 0, {}};
    Check ch;
    const double kt = 1e-5;
    for (const double gt : {kPi / 4.0, kPi / 3.0}) {
        const double c = scenario_a::concurrence_equal_rates(gt, kt);
        const double ideal = scenario_a::c_ideal(gt);
        const double slope = (c - ideal) / (ideal * kt);
        ch.expect(std::abs(slope - 1.0) <= 1e-3,
                  "gt=" + num(gt) + ": (C - C_ideal)/(C_ideal kt) = " + num(slope));
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_5() {
    CriterionResult r{5, "scenario B enhancement threshold tan(gt) = sqrt(2)", false, 0, {}};
    Check ch;
    const int npoints = 200;
    const double kt = 1e-3;
    const double threshold = std::atan(std::sqrt(2.0));
    int flips = 0;
    double flip_lo = 0, flip_hi = 0;
    double prev_gt = 0;
    int prev_sign = 0;
    for (int i = 1; i <= npoints; ++i) {
        const double gt = (kPi / 2.0) * i / (npoints + 1);
        scenario_b::Params p{gt, kt / gt, 0.0, 5};
        const double diff = scenario_b::concurrence_formula(p) - scenario_b::c_ideal(gt);
        const int sign = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
        if (prev_sign != 0 && sign != 0 && sign != prev_sign) {
            ++flips;
            flip_lo = prev_gt;
            flip_hi = gt;
        }
        prev_sign = sign;
        prev_gt = gt;
    }
    ch.expect(flips == 1, "sign flips once on the grid (" + std::to_string(flips) + ")");
    if (flips == 1) {
        ch.expect(flip_lo <= threshold && threshold <= flip_hi,
                  "flip bracket [" + num(flip_lo) + ", " + num(flip_hi) +
                      "] contains atan(sqrt(2)) = " + num(threshold));
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_6() {
    CriterionResult r{6, "scenario B optimum location and universal peak", false, 0, {}};
    Check ch;
    const double peak_ref = 4.0 / (3.0 * std::sqrt(3.0));
    for (const double gt : {1.0, 1.2, 1.4}) {
        const auto f = [gt](double kappa) {
            return scenario_b::concurrence_formula({gt, kappa, 0.0, 5});
        };
        const double found = golden_max(f, 0.0, 3.0 / gt, 1e-10);
        const auto expected = scenario_b::optimal_kappa(gt);
        ch.expect(expected.has_value() && std::abs(found - *expected) <= 1e-6,
                  "gt=" + num(gt) + ": argmax kappa/g " + num(found) + " vs formula " +
                      num(expected.value_or(-1)));
        ch.expect(std::abs(f(found) - peak_ref) <= 1e-9,
                  "gt=" + num(gt) + ": peak " + num(f(found)) + " vs 4/(3 sqrt 3) " +
                      num(peak_ref));
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_7() {
    CriterionResult r{7, "oracle consistency at zero damping", false, 0, {}};
    Check ch;
    for (const double gt : {kPi / 4.0, kPi / 3.0}) {
        scenario_a::Params pa{gt, 0.0, 0.0, 5, 0.0};
        const auto sim_a = scenario_a::simulate(pa);
        const auto ana_a = scenario_a::analytic_state(pa);
        const double entry_dev =
            (sim_a.rho_c1_a1.matrix - ana_a.state.matrix).cwiseAbs().maxCoeff();
        ch.expect(entry_dev <= 1e-9,
                  "A gt=" + num(gt) + ": state entrywise dev " + num(entry_dev));
        ch.expect(std::abs(sim_a.c_c1_a1 - scenario_a::c_ideal(gt)) <= 1e-9,
                  "A gt=" + num(gt) + ": concurrence " + num(sim_a.c_c1_a1) + " vs C_ideal " +
                      num(scenario_a::c_ideal(gt)));

        scenario_b::Params pb{gt, 0.0, 0.0, 5};
        const auto sim_b = scenario_b::simulate(pb);
        const auto ana_b = scenario_b::analytic_state(pb);
        const double entry_dev_b =
            (sim_b.rho_a1_a2.matrix - ana_b.state.matrix).cwiseAbs().maxCoeff();
        ch.expect(entry_dev_b <= 1e-9,
                  "B gt=" + num(gt) + ": state entrywise dev " + num(entry_dev_b));
        ch.expect(std::abs(sim_b.c - scenario_b::c_ideal(gt)) <= 1e-9,
                  "B gt=" + num(gt) + ": concurrence " + num(sim_b.c) + " vs C_ideal " +
                      num(scenario_b::c_ideal(gt)));
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_8() {
    CriterionResult r{8, "closed forms track the exact dynamics at low damping", false, 0, {}};
    Check ch;
    for (const double kappa : {0.005, 0.01}) {
        for (const double gt : {kPi / 4.0, kPi / 3.0}) {
            scenario_a::Params p{gt, kappa, kappa, 5, 0.0};
            const double numeric = scenario_a::simulate(p).c_c1_a1;
            const double analytic = scenario_a::concurrence_formula(p);
            const double gap = std::abs(numeric - analytic) / std::abs(analytic);
            ch.expect(gap <= 0.05, "A gt=" + num(gt) + " kappa=" + num(kappa) + ": gap " +
                                       num(100 * gap) + "% (tol 5%)");
        }
        for (const double gt : {1.0, 1.2}) {
            scenario_b::Params p{gt, kappa, 0.0, 5};
            const double numeric = scenario_b::simulate(p).c;
            const auto analytic = scenario_b::analytic_state(p);
            const double wootters = entanglement::concurrence(analytic.state).value;
            const double gap = std::abs(numeric - wootters) / std::abs(wootters);
            ch.expect(gap <= 0.05, "B gt=" + num(gt) + " kappa=" + num(kappa) + ": gap " +
                                       num(100 * gap) + "% (tol 5%)");
        }
    }
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_9() {
    CriterionResult r{9, "two-atom entanglement rises with damping as <n> falls", false, 0, {}};
    Check ch;
    micromaser::Params base;
    base.pump_N = 1.0;
    base.n_th = 0.033;
    base.gt = 3.0 * kPi / 4.0;
    base.kappa_over_g = 0.1;
    base.fock_dim = 20;

    const std::vector<double> kappas = {0.0000807, 0.005, 0.01, 0.1};
    std::vector<double> cs, ns;
    for (const double kappa : kappas) {
        micromaser::Params p = base;
        p.kappa_over_g = kappa;
        const auto pss = micromaser::steady_state_pss(p);
        cs.push_back(micromaser::two_atom_concurrence(pss, p.gt));
        ns.push_back(pss.mean_n);
    }
    for (std::size_t i = 1; i < kappas.size(); ++i) {
        ch.expect(cs[i] > cs[i - 1], "C(" + num(kappas[i]) + ") = " + num(cs[i]) + " > C(" +
                                         num(kappas[i - 1]) + ") = " + num(cs[i - 1]));
        ch.expect(ns[i] < ns[i - 1], "<n>(" + num(kappas[i]) + ") = " + num(ns[i]) + " < <n>(" +
                                         num(kappas[i - 1]) + ") = " + num(ns[i - 1]));
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> gt_grid;
    for (double gt = 0.05; gt <= kPi + 1e-12; gt += 0.05) gt_grid.push_back(gt);
    const auto rows = micromaser::fig1_sweep(base, gt_grid, kappas);
    const double sweep_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ch.expect(rows.size() == gt_grid.size() * kappas.size(),
              "sweep produced " + std::to_string(rows.size()) + " rows");
    ch.expect(sweep_seconds < 120.0,
              "full sweep in " + num(sweep_seconds) + " s (budget 120 s)");
    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult criterion_10() {
    CriterionResult r{10, "concurrence unit suite", false, 0, {}};
    Check ch;
    using hilbert::Composite;
    using hilbert::DensityMatrix;
    const Composite qubits({hilbert::atom("A"), hilbert::atom("B")});

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto bell = hilbert::pure_state(qubits, {{{0, 1}, inv_sqrt2}, {{1, 0}, inv_sqrt2}});
    ch.expect(std::abs(entanglement::concurrence(bell).value - 1.0) <= 1e-10,
              "Bell state concurrence " + num(entanglement::concurrence(bell).value));

    const auto product = hilbert::pure_state(qubits, {{{0, 1}, 1.0}});
    ch.expect(entanglement::concurrence(product).value <= 1e-10,
              "product state concurrence " + num(entanglement::concurrence(product).value));

    const auto phi_plus =
        hilbert::pure_state(qubits, {{{0, 0}, inv_sqrt2}, {{1, 1}, inv_sqrt2}});
    for (const double p : {0.2, 0.5, 0.9}) {
        const Matrix werner =
            p * phi_plus.matrix + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
        const DensityMatrix rho{werner, qubits};
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        const double got = entanglement::concurrence(rho).value;
        ch.expect(std::abs(got - expected) <= 1e-10,
                  "Werner p=" + num(p) + ": " + num(got) + " vs " + num(expected));
    }

    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double max_dev = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        double diag[4];
        double total = 0;
        for (double& x : diag) {
            x = uni(rng);
            total += x;
        }
        for (double& x : diag) x /= total;
        const double z14 = uni(rng) * std::sqrt(diag[0] * diag[3]);
        const double z23 = uni(rng) * std::sqrt(diag[1] * diag[2]);
        const double ph14 = 2 * kPi * uni(rng);
        const double ph23 = 2 * kPi * uni(rng);
        Matrix m = Matrix::Zero(4, 4);
        for (int i = 0; i < 4; ++i) m(i, i) = diag[i];
        m(0, 3) = z14 * std::exp(Complex(0, ph14));
        m(3, 0) = std::conj(m(0, 3));
        m(1, 2) = z23 * std::exp(Complex(0, ph23));
        m(2, 1) = std::conj(m(1, 2));
        const DensityMatrix rho{m, qubits};
        const double general = entanglement::concurrence(rho).value;
        const double closed = entanglement::x_state_concurrence(rho).value;
        max_dev = std::max(max_dev, std::abs(general - closed));
    }
    ch.expect(max_dev <= 1e-10,
              "general vs X closed form on 1000 random X states: max dev " + num(max_dev));

    r.passed = ch.ok;
    r.details = std::move(ch.lines);
    return r;
}

CriterionResult timed(CriterionResult (*fn)()) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> results;
    results.push_back(timed(criterion_1));
    results.push_back(timed(criterion_2));
    results.push_back(timed(criterion_3));
    results.push_back(timed(criterion_4));
    results.push_back(timed(criterion_5));
    results.push_back(timed(criterion_6));
    results.push_back(timed(criterion_7));
    results.push_back(timed(criterion_8));
    results.push_back(timed(criterion_9));
    results.push_back(timed(criterion_10));

    // stated runtime budgets
    if (results[0].seconds >= 1.0) {
        results[0].passed = false;
        results[0].details.push_back("  FAIL runtime " + std::to_string(results[0].seconds) +
                                     " s exceeds 1 s");
    }
    if (results[1].seconds >= 30.0) {
        results[1].passed = false;
        results[1].details.push_back("  FAIL runtime " + std::to_string(results[1].seconds) +
                                     " s exceeds 30 s");
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

std::string format_report(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (";
        out.precision(3);
        out << std::fixed << r.seconds << " s)\n";
        out.unsetf(std::ios::fixed);
        for (const auto& line : r.details) {
            out << line << "\n";
        }
    }
    out << (all_passed(results) ? "all criteria passed\n" : "ACCEPTANCE FAILURES PRESENT\n");
    return out.str();
}

}  // namespace cavent::acceptance
