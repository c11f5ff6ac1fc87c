#include "lindloc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lindloc/errors.hpp"
#include "lindloc/simd/kernels.hpp"

namespace lindloc {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols();
    throw DimensionError(msg.str());
  }
}

std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("ComplexMatrix: entries length does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace: matrix is not square");
  cplx t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) row += std::abs((*this)(r, c));
    best = std::max(best, row);
  }
  return best;
}

double ComplexMatrix::norm_frobenius() const noexcept {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_asymmetry() const {
  if (!is_square()) throw DimensionError("hermitian_asymmetry: matrix is not square");
  double m = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matrix product: inner dimensions " << a.cols() << " and " << b.rows()
        << " differ";
    throw DimensionError(msg.str());
  }
  ComplexMatrix c(a.rows(), b.cols());
  simd::gemm(a.rows(), a.cols(), b.cols(), a.data().data(), b.data().data(),
             c.data().data());
  return c;
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: length mismatch");
  std::vector<cplx> y(a.rows());
  simd::gemv(a.rows(), a.cols(), a.data().data(), x.data(), y.data());
  return y;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionError("trace_of_product: shapes incompatible");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

void require_hermitian(const ComplexMatrix& m, double rel_tol, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
  const double asym = m.hermitian_asymmetry();
  const double scale = std::max(m.max_abs(), 1e-300);
  if (asym > rel_tol * scale) {
    std::ostringstream msg;
    msg << what << ": matrix is not Hermitian (max |M - M^dagger| = " << asym
        << ", relative " << asym / scale << ")";
    throw NotHermitianError(msg.str(), asym);
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> dims,
                    std::size_t site) {
  if (site >= dims.size()) throw DimensionError("embed: site index out of range");
  if (op.rows() != dims[site] || op.cols() != dims[site]) {
    std::ostringstream msg;
    msg << "embed: operator is " << op.rows() << "x" << op.cols()
        << " but factor " << site << " has dimension " << dims[site];
    throw DimensionError(msg.str());
  }
  const std::size_t left = product_of(dims.subspan(0, site));
  const std::size_t right = product_of(dims.subspan(site + 1));
  return kron(kron(ComplexMatrix::identity(left), op), ComplexMatrix::identity(right));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (!rho.is_square()) throw DimensionError("partial_trace: rho is not square");
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (dims[f] == 0) {
      throw DimensionError("partial_trace: factor " + std::to_string(f) +
                           " has dimension 0");
    }
  }
  const std::size_t total = product_of(dims);
  if (total != rho.rows()) {
    std::ostringstream msg;
    msg << "partial_trace: product of dims is " << total << " but rho has dimension "
        << rho.rows();
    // Name the first factor at which the running product no longer divides.
    std::size_t running = 1;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      running *= dims[f];
      if (rho.rows() % running != 0) {
        msg << " (factor " << f << " of dimension " << dims[f]
            << " does not divide it)";
        break;
      }
    }
    throw DimensionError(msg.str());
  }
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      throw DimensionError("partial_trace: keep index " + std::to_string(k) +
                           " out of range");
    }
    kept[k] = true;
  }

  const std::size_t n = dims.size();
  std::vector<std::size_t> kdims, tdims;
  for (std::size_t f = 0; f < n; ++f) (kept[f] ? kdims : tdims).push_back(f);
  const std::size_t kd = std::accumulate(kdims.begin(), kdims.end(), std::size_t{1},
                                         [&](std::size_t a, std::size_t f) { return a * dims[f]; });
  const std::size_t td = total / kd;

  // Row-major mixed-radix strides of the full index.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t f = n; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  auto full_index = [&](std::size_t kept_idx, std::size_t traced_idx) {
    std::size_t idx = 0;
    for (std::size_t p = kdims.size(); p-- > 0;) {
      const std::size_t f = kdims[p];
      idx += (kept_idx % dims[f]) * stride[f];
      kept_idx /= dims[f];
    }
    for (std::size_t p = tdims.size(); p-- > 0;) {
      const std::size_t f = tdims[p];
      idx += (traced_idx % dims[f]) * stride[f];
      traced_idx /= dims[f];
    }
    return idx;
  };

  ComplexMatrix out(kd, kd);
  for (std::size_t a = 0; a < kd; ++a)
    for (std::size_t b = 0; b < kd; ++b) {
      cplx s{};
      for (std::size_t t = 0; t < td; ++t) s += rho(full_index(a, t), full_index(b, t));
      out(a, b) = s;
    }
  return out;
}

}  // namespace lindloc
