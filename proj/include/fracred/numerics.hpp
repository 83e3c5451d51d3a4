#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "fracred/errors.hpp"

namespace fracred {

using Complex = std::complex<double>;

/// Dense row-major complex matrix, sized at construction.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

/// Solves A x = b by LU with partial pivoting. A is taken by value and
/// factored in place. Throws singular_system when a pivot underflows.
std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b);

/// Real variant used by the nonlinear solvers.
std::vector<double> lu_solve_real(std::vector<double> a, std::vector<double> b);

struct NewtonConfig {
  double tol = 1e-12;      // residual inf-norm
  int max_iter = 100;
  double fd_step = 1e-7;   // relative central-difference step
  double backtrack = 0.5;  // line-search shrink factor
  int max_halvings = 40;
};

struct NewtonResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // inf-norm after each accepted step
};

using ResidualFn =
    std::function<std::vector<double>(const std::vector<double>&)>;

/// Damped Newton with central-difference Jacobian and backtracking line
/// search on the residual inf-norm. Never throws on non-convergence; the
/// best iterate is returned with converged = false.
NewtonResult newton_solve(const ResidualFn& fn, std::vector<double> x0,
                          const NewtonConfig& config = {});

/// Ln z = ln|z| + i Arg(z), Arg in (-pi, pi] with Arg(-r) = +pi for r > 0.
Complex principal_log(Complex z);

/// base^exponent on the principal branch.
Complex principal_pow(Complex base, Complex exponent);

/// Eigenvalues of a symmetric tridiagonal matrix, ascending. QL with
/// implicit shifts; Sturm-sequence bisection fallback.
std::vector<double> sym_tridiag_eigenvalues(std::vector<double> diag,
                                            std::vector<double> offdiag);

}  // namespace fracred
