#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace pdwg {

/// Sparse matrix assembled from (row, col, value) triplets. Duplicates are
/// summed on finalize(); afterwards the matrix is stored in compressed row
/// form and is read-only.
class SparseMatrix {
public:
    using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void reserve(std::size_t n) { triplets_.reserve(n); }
    void add(int row, int col, double value);
    void finalize();
    bool finalized() const { return finalized_; }

    std::size_t nonzeros() const;
    double coeff(int row, int col) const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    /// y = A^T x
    Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd to_dense() const;

    const Storage& storage() const;
    const std::vector<Eigen::Triplet<double, int>>& triplets() const { return triplets_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Eigen::Triplet<double, int>> triplets_;
    Storage csr_;
    bool finalized_ = false;
};

/// [[S, B^T], [B, 0]] for S (n x n) and B (m x n).
SparseMatrix saddle_point_matrix(const SparseMatrix& S, const SparseMatrix& B);

/// Relative residual ||Ax - b|| / max(1, ||b||).
double relative_residual(const SparseMatrix& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b);

/// Sparse direct LU with pivoting. The symbolic analysis of the first matrix
/// is reused by later factorizations with the same sparsity pattern.
class SparseDirectSolver {
public:
    SparseDirectSolver();
    ~SparseDirectSolver();
    SparseDirectSolver(const SparseDirectSolver&) = delete;
    SparseDirectSolver& operator=(const SparseDirectSolver&) = delete;

    void factorize(const SparseMatrix& A);
    /// Solves with the last factorization, applying iterative refinement
    /// until the relative residual is below `tolerance`. Throws
    /// SingularMatrixError when the bound cannot be met.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double tolerance = 1e-9);
    double last_residual() const { return last_residual_; }

    /// Name of the factorization backend.
    static const char* backend();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    bool factorized_ = false;
    double last_residual_ = 0.0;
};

/// One-shot solve: factorize, solve, verify the residual.
Eigen::VectorXd solve_sparse(const SparseMatrix& A, const Eigen::VectorXd& rhs,
                             double tolerance = 1e-9);

} // namespace pdwg
