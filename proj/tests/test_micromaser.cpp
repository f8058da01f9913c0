#include "cavent/micromaser.hpp"

#include "cavent/entanglement.hpp"
#include "cavent/lindblad.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace cavent;
namespace mm = cavent::micromaser;
using testutil::kPi;

TEST_SUITE_BEGIN("micromaser");

namespace {

mm::Params operating_point() {
    mm::Params p;
    p.pump_N = 1.0;
    p.n_th = 0.033;
    p.gt = 3.0 * kPi / 4.0;
    p.kappa_over_g = 0.1;
    p.fock_dim = 20;
    return p;
}

}  // namespace

TEST_CASE("detailed balance at the operating point (frozen anchors)") {
    mm::Params p = operating_point();
    p.kappa_over_g = 0.0000807;
    const auto pss = mm::detailed_balance_pss(p);
    CHECK(pss.p(0) == doctest::Approx(0.645336613005).epsilon(1e-10));
    CHECK(pss.p(1) == doctest::Approx(0.332976200127).epsilon(1e-10));
    CHECK(pss.p(2) == doctest::Approx(0.016419827008).epsilon(1e-10));
    CHECK(pss.mean_n == doctest::Approx(0.383122863814).epsilon(1e-10));
    CHECK(pss.p.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("detailed balance thermal limits") {
    // gt -> 0: Bose-Einstein weights
    mm::Params p = operating_point();
    p.gt = 1e-9;
    p.n_th = 0.4;
    p.fock_dim = 25;
    const auto pss = mm::detailed_balance_pss(p);
    const double ratio = p.n_th / (1.0 + p.n_th);
    for (int n = 0; n < 6; ++n) {
        CHECK(pss.p(n + 1) / pss.p(n) == doctest::Approx(ratio).epsilon(1e-6));
    }

    // N -> 0: same thermal limit
    mm::Params p2 = operating_point();
    p2.pump_N = 1e-12;
    p2.n_th = 0.4;
    p2.fock_dim = 25;
    const auto pss2 = mm::detailed_balance_pss(p2);
    for (int n = 0; n < 6; ++n) {
        CHECK(pss2.p(n + 1) / pss2.p(n) == doctest::Approx(ratio).epsilon(1e-6));
    }
}

TEST_CASE("pump map: undamped transit gain is the Jaynes-Cummings probability") {
    mm::Params p = operating_point();
    p.kappa_over_g = 0.0;
    p.gt = 0.9;
    p.fock_dim = 8;
    const auto f = mm::pump_gain_map(p);
    const int d = p.fock_dim;
    for (int n = 0; n + 1 < d; ++n) {
        const double gain = f.matrix((n + 1) + d * (n + 1), n + d * n).real();
        const double expected = std::pow(std::sin(std::sqrt(n + 1.0) * p.gt), 2);
        CHECK(gain == doctest::Approx(expected).epsilon(1e-10));
        const double stay = f.matrix(n + d * n, n + d * n).real();
        CHECK(stay == doctest::Approx(1.0 - expected).epsilon(1e-10));
    }
}

TEST_CASE("pump map is trace preserving, diagonality preserving, and CP") {
    mm::Params p = operating_point();
    p.fock_dim = 10;
    const auto f = mm::pump_gain_map(p);
    const int d = p.fock_dim;

    // diagonal input -> diagonal output (exactly, by the grading)
    for (int n = 0; n < d; ++n) {
        for (int q = 0; q < d; ++q) {
            for (int r = 0; r < d; ++r) {
                if (q == r) continue;
                CHECK(std::abs(f.matrix(q + d * r, n + d * n)) == 0.0);
            }
        }
    }

    // complete positivity via the Choi matrix
    Matrix choi = Matrix::Zero(d * d, d * d);
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            const Vector col = f.matrix.col(n + d * m);
            const Matrix out = linalg::unvec(col, d, d);
            for (int q = 0; q < d; ++q) {
                for (int r = 0; r < d; ++r) {
                    choi(n * d + q, m * d + r) = out(q, r);
                }
            }
        }
    }
    const RealVector evals = linalg::hermitian_eigvals(choi, 1e-9);
    CHECK(evals(evals.size() - 1) > -1e-10);
}

TEST_CASE("steady state with in-flight damping (frozen anchors, Table-1 refs)") {
    struct Row {
        double kappa, p0, p1, p2, mean_n;  // frozen from the prototype oracle
        double ref_p0, ref_p1, ref_p2, ref_n;
    };
    const std::vector<Row> rows = {
        {0.1, 0.764899101, 0.224400805, 0.009485046, 0.247138641, 0.771, 0.220, 0.007, 0.236},
        {0.01, 0.663557935, 0.316749943, 0.015313775, 0.361593332, 0.664, 0.316, 0.014, 0.359},
        {0.005, 0.654722491, 0.324631119, 0.015849554, 0.371993430, 0.655, 0.324, 0.015, 0.370},
    };
    for (const auto& row : rows) {
        mm::Params p = operating_point();
        p.kappa_over_g = row.kappa;
        const auto pss = mm::steady_state_pss(p);
        CHECK(pss.p(0) == doctest::Approx(row.p0).epsilon(2e-6));
        CHECK(pss.p(1) == doctest::Approx(row.p1).epsilon(2e-6));
        CHECK(pss.p(2) == doctest::Approx(row.p2).epsilon(2e-5));
        CHECK(pss.mean_n == doctest::Approx(row.mean_n).epsilon(2e-6));
        // stays inside the documented modeling-gap tolerance of the reference
        CHECK(std::abs(pss.p(0) - row.ref_p0) < 0.02);
        CHECK(std::abs(pss.p(1) - row.ref_p1) < 0.02);
        CHECK(std::abs(pss.p(2) - row.ref_p2) < 0.02);
        CHECK(std::abs(pss.mean_n - row.ref_n) < 0.02);
    }
}

TEST_CASE("steady state is a fixed point and the full-superoperator solve agrees") {
    mm::Params p = operating_point();
    p.fock_dim = 15;
    const auto pss = mm::steady_state_pss(p);

    // residual of R(F - Id) + L_cav applied to the diagonal state
    const auto f = mm::pump_gain_map(p);
    const hilbert::Composite field({hilbert::cavity("field", p.fock_dim)});
    const auto l_cav = lindblad::cavity_dissipator({p.kappa_over_g, p.n_th}, "field", field);
    const double pump_rate = 2.0 * p.kappa_over_g * p.pump_N;
    Matrix rho = Matrix::Zero(p.fock_dim, p.fock_dim);
    for (int n = 0; n < p.fock_dim; ++n) rho(n, n) = pss.p(n);
    const Vector v = linalg::vec(rho);
    const Vector residual =
        pump_rate * (f.matrix * v - v) + l_cav.matrix * v;
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-8);

    const auto full = mm::steady_state_pss(p, true);
    CHECK((full.p - pss.p).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("detailed balance and the damped solve converge as kappa -> 0") {
    mm::Params p = operating_point();
    p.kappa_over_g = 1e-5;
    const auto damped = mm::steady_state_pss(p);
    const auto db = mm::detailed_balance_pss(p);
    CHECK((damped.p - db.p).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("fock_dim insensitivity at the operating point") {
    mm::Params p20 = operating_point();
    mm::Params p30 = operating_point();
    p30.fock_dim = 30;
    const auto a = mm::steady_state_pss(p20);
    const auto b = mm::steady_state_pss(p30);
    CHECK((a.p - b.p.head(20)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(a.mean_n - b.mean_n) < 1e-8);
    CHECK(std::abs(mm::two_atom_concurrence(a, p20.gt) -
                   mm::two_atom_concurrence(b, p30.gt)) < 1e-8);
}

TEST_CASE("P2 stays small across the Table-1 parameter range") {
    for (const double kappa : {0.0000807, 0.005, 0.01, 0.1}) {
        mm::Params p = operating_point();
        p.kappa_over_g = kappa;
        const auto pss = kappa < 1e-3 ? mm::detailed_balance_pss(p) : mm::steady_state_pss(p);
        CHECK(pss.p(2) <= 0.016 + 0.005);
    }
}

TEST_CASE("two-atom state from a vacuum distribution (frozen values)") {
    mm::PhotonDistribution vacuum = mm::make_distribution(Eigen::VectorXd::Unit(1, 0));
    const auto rho = mm::two_atom_state(vacuum, kPi / 2.0);
    // diagonal state: beta3 = cos^2(sqrt(2) pi/2), beta5 = sin^2(sqrt(2) pi/2)
    CHECK(rho.matrix(1, 1).real() == doctest::Approx(0.366872328979).epsilon(1e-10));
    CHECK(rho.matrix(0, 0).real() == doctest::Approx(0.633127671021).epsilon(1e-10));
    CHECK(rho.matrix(2, 2).real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rho.matrix(3, 3).real() == doctest::Approx(0.0).epsilon(1e-14));

    // gt -> 0: both atoms stay excited
    const auto frozen = mm::two_atom_state(vacuum, 1e-9);
    CHECK(frozen.matrix(3, 3).real() == doctest::Approx(1.0));
    CHECK(mm::two_atom_concurrence(vacuum, 1e-9) == doctest::Approx(0.0));
}

TEST_CASE("two-atom state against the brute-force two-transit unitary oracle") {
    mm::PhotonDistribution vacuum = mm::make_distribution(Eigen::VectorXd::Unit(1, 0));
    for (const double gt : {kPi / 4.0, 3.0 * kPi / 4.0, 1.1}) {
        const hilbert::Composite space(
            {hilbert::cavity("C", 4), hilbert::atom("A1"), hilbert::atom("A2")});
        const auto rho0 = hilbert::pure_state(space, {{{0, 1, 1}, 1.0}});
        const Matrix h1 = lindblad::jc_hamiltonian(1.0, "C", "A1", space);
        const Matrix h2 = lindblad::jc_hamiltonian(1.0, "C", "A2", space);
        const auto l1 = lindblad::liouvillian(h1, {}, space);
        const auto l2 = lindblad::liouvillian(h2, {}, space);
        const auto evolved = lindblad::evolve(lindblad::evolve(rho0, l1, gt), l2, gt);
        const auto brute = hilbert::partial_trace(evolved, {"A1", "A2"});

        const auto formula = mm::two_atom_state(vacuum, gt);
        CHECK(testutil::max_abs_diff(brute.matrix, formula.matrix) < 1e-12);
        CHECK(std::abs(entanglement::concurrence(brute).value -
                       mm::two_atom_concurrence(vacuum, gt)) < 1e-12);
    }
}

TEST_CASE("two-atom betas from the Table-1 rounded distribution (frozen values)") {
    // the raw rounded row (0.645, 0.332, 0.016) sums to 0.993; the betas are
    // linear in P, so evaluate on the normalized version and scale back
    Eigen::VectorXd p(3);
    p << 0.645, 0.332, 0.016;
    const double total = p.sum();
    const auto pss = mm::make_distribution(p / total);
    const double gt = 3.0 * kPi / 4.0;
    const auto rho = mm::two_atom_state(pss, gt);
    CHECK(total * rho.matrix(3, 3).real() == doctest::Approx(0.4717953415).epsilon(1e-8));
    CHECK(total * rho.matrix(2, 2).real() == doctest::Approx(0.1763666430).epsilon(1e-8));
    CHECK(total * rho.matrix(1, 1).real() == doctest::Approx(0.3150786757).epsilon(1e-8));
    CHECK(total * rho.matrix(1, 2).real() == doctest::Approx(0.2308170350).epsilon(1e-8));
    CHECK(total * rho.matrix(0, 0).real() == doctest::Approx(0.0297593398).epsilon(1e-8));

    // C = 2 max(0, |b4| - sqrt(b1 b5)) evaluated on the raw values
    const double b4 = 0.2308170350, b1 = 0.4717953415, b5 = 0.0297593398;
    CHECK(2.0 * (b4 - std::sqrt(b1 * b5)) == doctest::Approx(0.2246503755).epsilon(1e-8));
}

TEST_CASE("gapped probe pair reduces to the closed form at zero gap") {
    mm::Params p = operating_point();
    p.fock_dim = 12;
    const auto pss = mm::steady_state_pss(p);
    const auto formula = mm::two_atom_state(pss, p.gt);
    const auto staged = mm::two_atom_state_gapped(p, pss, 0.0);
    CHECK(testutil::max_abs_diff(formula.matrix, staged.matrix) < 1e-12);

    // idle damping between the transits erodes the pair correlations
    double prev = entanglement::concurrence(staged).value + 1e-12;
    for (const double gap : {0.5, 1.5, 4.0}) {
        const auto rho = mm::two_atom_state_gapped(p, pss, gap);
        const double c = entanglement::concurrence(rho).value;
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("pump map at zero transit angle is the identity") {
    mm::Params p = operating_point();
    p.gt = 0.0;
    p.fock_dim = 6;
    const auto f = mm::pump_gain_map(p);
    CHECK(testutil::max_abs_diff(f.matrix, Matrix::Identity(36, 36)) < 1e-12);
}

TEST_CASE("detailed balance rejects a truncation too small for its tail") {
    mm::Params p = operating_point();
    p.fock_dim = 3;
    CHECK_THROWS_WITH_AS(mm::detailed_balance_pss(p), doctest::Contains("fock_dim"),
                         std::runtime_error);
}

TEST_CASE("two-atom concurrence from the true detailed-balance distribution") {
    mm::Params p = operating_point();
    p.kappa_over_g = 0.0000807;
    const auto pss = mm::detailed_balance_pss(p);
    const auto rho = mm::two_atom_state(pss, p.gt);
    CHECK(rho.matrix(3, 3).real() == doctest::Approx(0.473044034244).epsilon(1e-9));
    CHECK(rho.matrix(1, 2).real() == doctest::Approx(0.231355064208).epsilon(1e-9));
    CHECK(rho.matrix(0, 0).real() == doctest::Approx(0.033118829734).epsilon(1e-9));
    CHECK(mm::two_atom_concurrence(pss, p.gt) ==
          doctest::Approx(0.212377031710).epsilon(1e-9));

    // Wootters and the X closed form agree on this state
    const auto x = entanglement::x_state_concurrence(rho);
    const auto w = entanglement::concurrence(rho);
    CHECK(std::abs(x.value - w.value) < 1e-12);
}

TEST_CASE("fig1 sweep ordering and concurrence/mean-photon anchors") {
    mm::Params base = operating_point();
    const std::vector<double> kappas = {0.0000807, 0.005, 0.01, 0.1};
    const std::vector<double> gts = {3.0 * kPi / 4.0};
    const auto rows = mm::fig1_sweep(base, gts, kappas);
    REQUIRE(rows.size() == 4);
    // frozen anchors from the prototype oracle
    CHECK(rows[0].concurrence == doctest::Approx(0.212541600).epsilon(2e-6));
    CHECK(rows[1].concurrence == doctest::Approx(0.222268727).epsilon(2e-6));
    CHECK(rows[2].concurrence == doctest::Approx(0.231574386).epsilon(2e-6));
    CHECK(rows[3].concurrence == doctest::Approx(0.336422574).epsilon(2e-6));
    for (int i = 1; i < 4; ++i) {
        CHECK(rows[i].concurrence > rows[i - 1].concurrence);
        CHECK(rows[i].mean_n < rows[i - 1].mean_n);
    }

    // a single-point sweep reproduces the scalar path bit-exactly
    mm::Params p = base;
    p.kappa_over_g = 0.01;
    const auto single = mm::fig1_sweep(base, gts, {0.01});
    const auto pss = mm::steady_state_pss(p);
    CHECK(single[0].concurrence == mm::two_atom_concurrence(pss, p.gt));
    CHECK(single[0].mean_n == pss.mean_n);
}

TEST_CASE("parameter validation and truncation guards") {
    mm::Params p = operating_point();
    p.pump_N = 0.0;
    CHECK_THROWS_AS(mm::validate(p), std::invalid_argument);
    p = operating_point();
    p.fock_dim = 1;
    CHECK_THROWS_AS(mm::validate(p), std::invalid_argument);

    // a truncation that cannot hold the steady state is rejected post-solve
    p = operating_point();
    p.fock_dim = 3;
    p.pump_N = 20.0;
    p.gt = kPi / 2.0;
    CHECK_THROWS_WITH_AS(mm::steady_state_pss(p), doctest::Contains("fock_dim"),
                         std::runtime_error);

    CHECK_THROWS_AS(mm::steady_state_pss([] {
                        mm::Params q = operating_point();
                        q.kappa_over_g = 0.0;
                        return q;
                    }()),
                    std::invalid_argument);
}

TEST_SUITE_END();
