#pragma once

#include <functional>
#include <vector>

#include "lindloc/matrix.hpp"

namespace lindloc {

/// Eigenvalues ascending; eigenvectors are the columns of a unitary matrix.
struct HermitianEigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  /// U diag(f(lambda)) U^dagger
  ComplexMatrix reconstruct(const std::function<double(double)>& f) const;
  ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Sweeps until the
/// off-diagonal Frobenius norm drops to 1e-12 of the full norm. Throws
/// NotHermitianError when the input is asymmetric beyond 1e-10 relative.
HermitianEigenSystem hermitian_eig(const ComplexMatrix& h);

/// Singular values (descending) and right singular vectors (columns of v).
struct SingularSystem {
  std::vector<double> singular_values;
  ComplexMatrix v;
};

/// One-sided (Hestenes) Jacobi SVD of an m x n matrix with m >= n.
SingularSystem singular_value_decomposition(const ComplexMatrix& a);

/// ln(rho) for a positive definite Hermitian matrix.
ComplexMatrix log_hermitian(const ComplexMatrix& h);
ComplexMatrix exp_hermitian(const ComplexMatrix& h, double scale = 1.0);

/// -sum p ln p over eigenvalues. Eigenvalues in [-1e-9, 0) are clipped to
/// zero; anything more negative raises PositivityError.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& h);

}  // namespace lindloc
