#pragma once

// Shared test helpers: seeded random operators and Eigen conversions for
// the independent oracles.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>

#include "lindloc/matrix.hpp"

namespace lindloc::test {

using EMat = Eigen::MatrixXcd;

inline std::string config_path(const std::string& name) {
  return std::string(LINDLOC_SOURCE_DIR) + "/configs/" + name;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(LINDLOC_SOURCE_DIR) + "/tests/fixtures/" + name;
}

inline EMat to_eigen(const ComplexMatrix& m) {
  EMat e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

inline ComplexMatrix from_eigen(const EMat& e) {
  ComplexMatrix m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  return hermitian_part(random_matrix(d, d, rng));
}

inline ComplexMatrix random_density(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

inline ComplexMatrix random_pure(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix v = random_matrix(d, 1, rng);
  ComplexMatrix rho = v * v.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

/// Column-stacked superoperator of X -> A X B.
inline EMat sandwich(const EMat& a, const EMat& b) {
  const auto n = a.rows();
  const auto m = b.cols();
  EMat out = EMat::Zero(n * m, n * m);
  // vec(A X B) = (B^T kron A) vec(X)
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < m; ++j) out.block(j * n, i * n, n, n) = b(i, j) * a;
  return out;
}

/// Hand-built GKLS superoperator: -i[H, .] + sum rate (A . A^dag - 1/2 {A^dag A, .}).
inline EMat gkls_superop(const EMat& h, const std::vector<std::pair<double, EMat>>& jumps) {
  const auto d = h.rows();
  const EMat id = EMat::Identity(d, d);
  const std::complex<double> i(0.0, 1.0);
  EMat l = -i * (sandwich(h, id) - sandwich(id, h));
  for (const auto& [rate, a] : jumps) {
    const EMat ada = a.adjoint() * a;
    l += rate * (sandwich(a, a.adjoint()) - 0.5 * sandwich(ada, id) - 0.5 * sandwich(id, ada));
  }
  return l;
}

}  // namespace lindloc::test
