#include "sysid/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "sysid/errors.hpp"

namespace sysid {

namespace {

void require_finite(const Matrix& M, const char* who) {
    if (!M.allFinite()) {
        throw NonFinite(std::string(who) + ": matrix contains NaN/Inf");
    }
}

void require_square(const Matrix& M, const char* who) {
    if (M.rows() != M.cols()) {
        throw NonSquare(std::string(who) + ": matrix is not square");
    }
}

}  // namespace

void sort_spectrum(Spectrum& s) {
    std::sort(s.begin(), s.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

SvdTriple svd(const Matrix& M) {
    require_finite(M, "svd");
    Eigen::JacobiSVD<Matrix> dec(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdTriple{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

RankTruncation best_rank_n(const Matrix& M, Index n) {
    if (n < 1 || n > std::min(M.rows(), M.cols())) {
        throw BadRank("best_rank_n: n out of range");
    }
    SvdTriple full = svd(M);
    SvdTriple top{full.U.leftCols(n), full.S.head(n), full.V.leftCols(n)};
    Matrix L = top.U * top.S.asDiagonal() * top.V.transpose();
    return RankTruncation{std::move(L), std::move(top)};
}

double rank_cutoff(Index rows, Index cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) *
           std::numeric_limits<double>::epsilon() * sigma_max;
}

PinvResult pinv_detailed(const Matrix& M) {
    SvdTriple t = svd(M);
    const double cutoff =
        t.S.size() > 0 ? rank_cutoff(M.rows(), M.cols(), t.S(0)) : 0.0;
    Vector inv_s = Vector::Zero(t.S.size());
    Index rank = 0;
    for (Index i = 0; i < t.S.size(); ++i) {
        if (t.S(i) > cutoff) {
            inv_s(i) = 1.0 / t.S(i);
            ++rank;
        }
    }
    Matrix mp = t.V * inv_s.asDiagonal() * t.U.transpose();
    return PinvResult{std::move(mp), rank, cutoff};
}

Matrix pinv(const Matrix& M) { return pinv_detailed(M).pinv; }

Spectrum eig(const Matrix& M) {
    require_square(M, "eig");
    require_finite(M, "eig");
    Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
    Spectrum out(static_cast<std::size_t>(M.rows()));
    for (Index i = 0; i < M.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    }
    sort_spectrum(out);
    return out;
}

double spectral_norm(const Matrix& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> dec(M);
    return dec.singularValues()(0);
}

double spectral_radius(const Matrix& M) {
    require_square(M, "spectral_radius");
    double r = 0.0;
    for (const Complex& l : eig(M)) r = std::max(r, std::abs(l));
    return r;
}

Matrix expm(const Matrix& M) {
    require_square(M, "expm");
    require_finite(M, "expm");
    return M.exp();
}

Matrix dlyap(const Matrix& A, const Matrix& W) {
    require_square(A, "dlyap");
    if (W.rows() != A.rows() || W.cols() != A.cols()) {
        throw SizeMismatch("dlyap: W must match A in size");
    }
    if ((W - W.transpose()).norm() > 1e-10 * std::max(1.0, W.norm())) {
        throw SizeMismatch("dlyap: W must be symmetric");
    }
    if (spectral_radius(A) >= 1.0 - 1e-9) {
        throw Unstable("dlyap: spectral radius of A is not below 1");
    }
    const Index n = A.rows();
    // vec(A X A^T) = (A (x) A) vec(X), column-major vec.
    Matrix kron(n * n, n * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            kron.block(i * n, j * n, n, n) = A(i, j) * A;
        }
    }
    Matrix lhs = Matrix::Identity(n * n, n * n) - kron;
    Vector rhs = Eigen::Map<const Vector>(W.data(), n * n);
    Vector x = lhs.partialPivLu().solve(rhs);
    Matrix X = Eigen::Map<const Matrix>(x.data(), n, n);
    return 0.5 * (X + X.transpose());
}

}  // namespace sysid
