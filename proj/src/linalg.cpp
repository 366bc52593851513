#include "pdwg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdwg/errors.hpp"

#ifdef PDWG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#endif

namespace pdwg {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols)
{
    if (rows < 0 || cols < 0)
        throw Error("SparseMatrix: negative dimensions");
}

void SparseMatrix::add(int row, int col, double value)
{
    if (finalized_)
        throw Error("SparseMatrix: add after finalize");
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw Error("SparseMatrix: index (" + std::to_string(row) + ", " + std::to_string(col) +
                    ") out of range for " + std::to_string(rows_) + "x" + std::to_string(cols_));
    triplets_.emplace_back(row, col, value);
}

void SparseMatrix::finalize()
{
    if (finalized_)
        return;
    csr_.resize(rows_, cols_);
    csr_.setFromTriplets(triplets_.begin(), triplets_.end());
    csr_.makeCompressed();
    finalized_ = true;
}

const SparseMatrix::Storage& SparseMatrix::storage() const
{
    if (!finalized_)
        throw Error("SparseMatrix: not finalized");
    return csr_;
}

std::size_t SparseMatrix::nonzeros() const { return static_cast<std::size_t>(storage().nonZeros()); }

double SparseMatrix::coeff(int row, int col) const { return storage().coeff(row, col); }

Eigen::VectorXd SparseMatrix::multiply(const Eigen::VectorXd& x) const
{
    if (x.size() != cols_)
        throw Error("SparseMatrix::multiply: dimension mismatch");
    return storage() * x;
}

Eigen::VectorXd SparseMatrix::multiply_transpose(const Eigen::VectorXd& x) const
{
    if (x.size() != rows_)
        throw Error("SparseMatrix::multiply_transpose: dimension mismatch");
    return storage().transpose() * x;
}

Eigen::MatrixXd SparseMatrix::to_dense() const { return Eigen::MatrixXd(storage()); }

SparseMatrix saddle_point_matrix(const SparseMatrix& S, const SparseMatrix& B)
{
    if (S.rows() != S.cols() || B.cols() != S.rows())
        throw Error("saddle_point_matrix: incompatible blocks");
    const int n = S.rows();
    SparseMatrix K(n + B.rows(), n + B.rows());
    K.reserve(S.triplets().size() + 2 * B.triplets().size());
    for (const auto& t : S.triplets())
        K.add(t.row(), t.col(), t.value());
    for (const auto& t : B.triplets()) {
        K.add(n + t.row(), t.col(), t.value());
        K.add(t.col(), n + t.row(), t.value());
    }
    K.finalize();
    return K;
}

double relative_residual(const SparseMatrix& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    return (A.multiply(x) - b).norm() / std::max(1.0, b.norm());
}

struct SparseDirectSolver::Impl {
    using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
#ifdef PDWG_HAVE_UMFPACK
    Eigen::UmfPackLU<ColMatrix> lu;
#else
    Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>> lu;
#endif
    ColMatrix A;
    bool analyzed = false;
    Eigen::Index pattern_nnz = -1;
    std::vector<int> pattern_outer, pattern_inner;
};

SparseDirectSolver::SparseDirectSolver() : impl_(std::make_unique<Impl>()) {}
SparseDirectSolver::~SparseDirectSolver() = default;

const char* SparseDirectSolver::backend()
{
#ifdef PDWG_HAVE_UMFPACK
    return "umfpack";
#else
    return "eigen-sparselu";
#endif
}

void SparseDirectSolver::factorize(const SparseMatrix& A)
{
    if (A.rows() != A.cols())
        throw Error("SparseDirectSolver: matrix is not square");
    Impl& d = *impl_;
    d.A = A.storage();
    d.A.makeCompressed();

    const Eigen::Index nnz = d.A.nonZeros();
    const int* outer = d.A.outerIndexPtr();
    const int* inner = d.A.innerIndexPtr();
    const bool same_pattern =
        d.analyzed && nnz == d.pattern_nnz &&
        std::equal(outer, outer + d.A.outerSize() + 1, d.pattern_outer.begin(), d.pattern_outer.end()) &&
        std::equal(inner, inner + nnz, d.pattern_inner.begin(), d.pattern_inner.end());
    if (!same_pattern) {
        d.lu.analyzePattern(d.A);
        if (d.lu.info() != Eigen::Success)
            throw SingularMatrixError("sparse factorization: symbolic analysis failed "
                                      "(structurally singular matrix)");
        d.analyzed = true;
        d.pattern_nnz = nnz;
        d.pattern_outer.assign(outer, outer + d.A.outerSize() + 1);
        d.pattern_inner.assign(inner, inner + nnz);
    }
    d.lu.factorize(d.A);
    if (d.lu.info() != Eigen::Success)
        throw SingularMatrixError("sparse factorization: matrix is numerically singular");
    factorized_ = true;
}

Eigen::VectorXd SparseDirectSolver::solve(const Eigen::VectorXd& rhs, double tolerance)
{
    if (!factorized_)
        throw Error("SparseDirectSolver: solve before factorize");
    Impl& d = *impl_;
    if (rhs.size() != d.A.rows())
        throw Error("SparseDirectSolver: rhs length mismatch");
    const double scale = std::max(1.0, rhs.norm());
    Eigen::VectorXd x = d.lu.solve(rhs);
    Eigen::VectorXd r = rhs - d.A * x;
    last_residual_ = r.norm() / scale;
    for (int it = 0; it < 3 && last_residual_ > tolerance * 1e-3 && std::isfinite(last_residual_); ++it) {
        x += d.lu.solve(r);
        r = rhs - d.A * x;
        last_residual_ = r.norm() / scale;
    }
    if (!x.allFinite() || !(last_residual_ <= tolerance))
        throw SingularMatrixError("sparse solve: relative residual " + std::to_string(last_residual_) +
                                  " exceeds " + std::to_string(tolerance) +
                                  " (matrix is singular or badly conditioned)");
    return x;
}

Eigen::VectorXd solve_sparse(const SparseMatrix& A, const Eigen::VectorXd& rhs, double tolerance)
{
    SparseDirectSolver solver;
    solver.factorize(A);
    return solver.solve(rhs, tolerance);
}

} // namespace pdwg
