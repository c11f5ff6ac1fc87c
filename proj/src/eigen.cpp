#include "lindloc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lindloc/errors.hpp"

namespace lindloc {

namespace {

constexpr int kMaxSweeps = 100;

// Unitary J acting on the (p, q) plane that diagonalizes the 2x2 Hermitian
// block [[a, h], [conj(h), b]]:
//   J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]],  h = |h| e^{i phi}.
struct PlaneRotation {
  double c;
  double s;
  cplx phase;  // e^{-i phi}
  double t;
};

PlaneRotation plane_rotation(double a, double b, cplx h) {
  const double g = std::abs(h);
  const double theta = (b - a) / (2.0 * g);
  double t;
  if (std::isinf(theta * theta)) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, std::conj(h) / g, t};
}

double off_diagonal_norm(const ComplexMatrix& h) {
  double s = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (r != c) s += std::norm(h(r, c));
  return std::sqrt(s);
}

}  // namespace

ComplexMatrix HermitianEigenSystem::reconstruct(
    const std::function<double(double)>& f) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix scaled = eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = f(eigenvalues[k]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, k) *= w;
  }
  return scaled * eigenvectors.adjoint();
}

ComplexMatrix HermitianEigenSystem::reconstruct() const {
  return reconstruct([](double x) { return x; });
}

HermitianEigenSystem hermitian_eig(const ComplexMatrix& input) {
  require_hermitian(input, 1e-10, "hermitian_eig");
  const std::size_t n = input.rows();
  ComplexMatrix h = hermitian_part(input);
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();

  const double threshold = 1e-12 * h.norm_frobenius();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(h) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx hpq = h(p, q);
        if (std::abs(hpq) == 0.0) continue;
        const double a = h(p, p).real();
        const double b = h(q, q).real();
        const auto rot = plane_rotation(a, b, hpq);
        const cplx sp = rot.s * rot.phase;
        const cplx cp = rot.c * rot.phase;
        // h <- h J
        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = h(r, p);
          const cplx y = h(r, q);
          h(r, p) = rot.c * x - sp * y;
          h(r, q) = rot.s * x + cp * y;
        }
        // h <- J^dagger h
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = h(p, k);
          const cplx y = h(q, k);
          h(p, k) = rot.c * x - std::conj(sp) * y;
          h(q, k) = rot.s * x + std::conj(cp) * y;
        }
        h(p, p) = a - rot.t * std::abs(hpq);
        h(q, q) = b + rot.t * std::abs(hpq);
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = v(r, p);
          const cplx y = v(r, q);
          v(r, p) = rot.c * x - sp * y;
          v(r, q) = rot.s * x + cp * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return h(i, i).real() < h(j, j).real();
  });
  HermitianEigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = h(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

SingularSystem singular_value_decomposition(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw DimensionError("singular_value_decomposition: requires rows >= cols");

  // Column-major working copies.
  std::vector<cplx> w(m * n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) w[c * m + r] = a(r, c);
  std::vector<cplx> v(n * n);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto col = [](std::vector<cplx>& data, std::size_t len, std::size_t j) {
    return data.data() + j * len;
  };
  constexpr double tol = 1e-15;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        cplx* wp = col(w, m, p);
        cplx* wq = col(w, m, q);
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t r = 0; r < m; ++r) {
          alpha += std::norm(wp[r]);
          beta += std::norm(wq[r]);
          gamma += std::conj(wp[r]) * wq[r];
        }
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0)
          continue;
        rotated = true;
        const auto rot = plane_rotation(alpha, beta, gamma);
        const cplx sp = rot.s * rot.phase;
        const cplx cp = rot.c * rot.phase;
        for (std::size_t r = 0; r < m; ++r) {
          const cplx x = wp[r];
          const cplx y = wq[r];
          wp[r] = rot.c * x - sp * y;
          wq[r] = rot.s * x + cp * y;
        }
        cplx* vp = col(v, n, p);
        cplx* vq = col(v, n, q);
        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = vp[r];
          const cplx y = vq[r];
          vp[r] = rot.c * x - sp * y;
          vq[r] = rot.s * x + cp * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += std::norm(w[j * m + r]);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });
  SingularSystem out;
  out.singular_values.resize(n);
  out.v = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.singular_values[k] = sigma[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = v[order[k] * n + r];
  }
  return out;
}

ComplexMatrix log_hermitian(const ComplexMatrix& h) {
  const auto eig = hermitian_eig(h);
  if (eig.eigenvalues.front() <= 0.0) {
    std::ostringstream msg;
    msg << "log_hermitian: matrix is not positive definite (min eigenvalue "
        << eig.eigenvalues.front() << ")";
    throw PositivityError(msg.str(), eig.eigenvalues.front());
  }
  return eig.reconstruct([](double x) { return std::log(x); });
}

ComplexMatrix exp_hermitian(const ComplexMatrix& h, double scale) {
  return hermitian_eig(h).reconstruct([scale](double x) { return std::exp(scale * x); });
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "von_neumann_entropy: trace is " << tr << ", expected 1";
    throw Error(msg.str());
  }
  const auto eig = hermitian_eig(rho);
  double s = 0.0;
  for (double p : eig.eigenvalues) {
    if (p < -1e-9) {
      std::ostringstream msg;
      msg << "von_neumann_entropy: eigenvalue " << p << " violates positivity";
      throw PositivityError(msg.str(), p);
    }
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double min_eigenvalue(const ComplexMatrix& h) {
  return hermitian_eig(h).eigenvalues.front();
}

}  // namespace lindloc
