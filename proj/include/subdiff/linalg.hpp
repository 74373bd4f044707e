#pragma once

#include <vector>

namespace subdiff::linalg {

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit-shift QL.
/// On return `diag` holds the eigenvalues in ascending order and `first_row`
/// the first components of the corresponding orthonormal eigenvectors.
/// `off` (length >= diag.size()-1) is destroyed.
void sym_tridiag_eigen(std::vector<double>& diag, std::vector<double>& off,
                       std::vector<double>& first_row);

/// Thomas elimination for a tridiagonal system with constant off-diagonal
/// value `off` and constant diagonal `diag` (diagonally dominant by use).
std::vector<double> solve_tridiag_const(double diag, double off,
                                        const std::vector<double>& rhs);

/// Dense LU factorization with partial pivoting (row-major square matrix).
class DenseLu {
public:
    DenseLu(std::vector<double> a, int n);  // factors a in place
    std::vector<double> solve(std::vector<double> rhs) const;
    int size() const noexcept { return n_; }

private:
    std::vector<double> lu_;
    std::vector<int> piv_;
    int n_;
};

}  // namespace subdiff::linalg
