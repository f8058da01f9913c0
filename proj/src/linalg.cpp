#include "cavent/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/SVD>

#include <sstream>
#include <stdexcept>

namespace cavent::linalg {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (a.size() == 0 || b.size() == 0) {
        throw std::invalid_argument("kron: empty operand");
    }
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

Matrix matexp(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matexp: matrix must be square");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("matexp: non-finite entries");
    }
    return m.exp();
}

RealVector hermitian_eigvals(const Matrix& h, double herm_tol) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hermitian_eigvals: matrix must be square");
    }
    const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (dev > herm_tol) {
        std::ostringstream msg;
        msg << "hermitian_eigvals: max |h - h^dag| = " << dev
            << " exceeds tolerance " << herm_tol;
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigvals: eigensolver failed");
    }
    return solver.eigenvalues().reverse();
}

Vector null_vector(const Matrix& m, double rank_tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("null_vector: matrix must be square");
    }
    const Eigen::Index n = m.rows();
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double threshold = rank_tol * s(0);
    const double smallest = s(n - 1);
    const double second = (n >= 2) ? s(n - 2) : s(0);
    if (smallest > threshold || (n >= 2 && second <= threshold)) {
        std::ostringstream msg;
        msg << "null_vector: rank deficiency is not 1 (two smallest singular values "
            << second << ", " << smallest << "; threshold " << threshold << ")";
        throw std::runtime_error(msg.str());
    }
    Vector v = svd.matrixV().col(n - 1);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex pivot = v(imax);
    v *= std::conj(pivot) / std::abs(pivot);
    v.normalize();
    return v;
}

Vector vec(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) {
        throw std::invalid_argument("unvec: size mismatch");
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace cavent::linalg
