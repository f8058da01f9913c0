#include "cavent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cavent::entanglement {

using hilbert::DensityMatrix;

namespace {

const Matrix& two_qubit_matrix(const DensityMatrix& rho) {
    if (rho.matrix.rows() != 4 || rho.matrix.cols() != 4) {
        throw std::invalid_argument("concurrence: state must be a 4x4 two-qubit matrix");
    }
    return rho.matrix;
}

ConcurrenceResult from_lambdas(std::array<double, 4> lambdas, Method method) {
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    ConcurrenceResult r;
    r.lambdas = lambdas;
    r.value = std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
    r.method = method;
    return r;
}

}  // namespace

Matrix spin_flip(const DensityMatrix& rho) {
    const Matrix& m = two_qubit_matrix(rho);
    const Matrix sy = hilbert::atom_ops().sigma_y;
    const Matrix yy = linalg::kron(sy, sy);
    return yy * m.conjugate() * yy;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
    const Matrix& m = two_qubit_matrix(rho);
    // sqrt-eigenvalues of rho*rho_tilde as singular values of L^T (sy x sy) L
    // with rho = L L^dag: the PSD form sqrt(rho) rho_tilde sqrt(rho) has the
    // same spectrum, but the factored SVD stays accurate for near-pure
    // states, where eigenvalue noise under the square root costs ~1e-8.
    Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("concurrence: eigensolver failed");
    }
    RealVector w = solver.eigenvalues();
    const double rank_floor = 64.0 * std::numeric_limits<double>::epsilon() * w.cwiseAbs().maxCoeff();
    for (int i = 0; i < w.size(); ++i) {
        if (w(i) < rank_floor) w(i) = 0.0;
    }
    const Matrix factor = solver.eigenvectors() * w.cwiseSqrt().asDiagonal();
    const Matrix sy = hilbert::atom_ops().sigma_y;
    const Matrix b = factor.transpose() * linalg::kron(sy, sy) * factor;
    Eigen::JacobiSVD<Matrix> svd(b);
    std::array<double, 4> lambdas{};
    for (int i = 0; i < 4; ++i) {
        lambdas[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    }
    return from_lambdas(lambdas, Method::general);
}

ConcurrenceResult x_state_concurrence(const DensityMatrix& rho, double x_tol) {
    const Matrix& m = two_qubit_matrix(rho);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j || i + j == 3) continue;
            if (std::abs(m(i, j)) > x_tol) {
                std::ostringstream msg;
                msg << "x_state_concurrence: entry (" << i << "," << j << ") magnitude "
                    << std::abs(m(i, j)) << " exceeds X-state tolerance " << x_tol;
                throw std::invalid_argument(msg.str());
            }
        }
    }
    const double inner = std::abs(m(1, 2));
    const double outer = std::abs(m(0, 3));
    const double gm_outer = std::sqrt(std::max(0.0, m(0, 0).real() * m(3, 3).real()));
    const double gm_inner = std::sqrt(std::max(0.0, m(1, 1).real() * m(2, 2).real()));
    // sqrt-eigenvalues of rho*rho_tilde: each 2x2 block contributes the pair
    // sqrt(populations product) +- coherence magnitude.
    return from_lambdas({gm_inner + inner, std::abs(gm_inner - inner), gm_outer + outer,
                         std::abs(gm_outer - outer)},
                        Method::x_state);
}

}  // namespace cavent::entanglement
