#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lindloc {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Used for states, Hamiltonians,
/// coupling operators and vectorized superoperators alike.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cplx trace() const;
  /// max_{jk} |M_jk|
  double max_abs() const noexcept;
  /// Maximum absolute row sum.
  double norm_inf() const noexcept;
  double norm_frobenius() const noexcept;
  /// max_{jk} |M_jk - conj(M_kj)|
  double hermitian_asymmetry() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
/// Matrix product, routed through the SIMD kernel layer.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// y = A x
std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_{jk} |A_jk - B_jk|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// tr(A B) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws NotHermitianError when max|M - M^dagger| > rel_tol * max(max|M|, 1e-300).
void require_hermitian(const ComplexMatrix& m, double rel_tol, const char* what);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/// Places `op` on factor `site` of a tensor product with the given dims.
ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> dims,
                    std::size_t site);

/// Reduced matrix over the factors listed in `keep` (ascending order kept).
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

}  // namespace lindloc
