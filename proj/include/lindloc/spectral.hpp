#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lindloc/eigen.hpp"
#include "lindloc/matrix.hpp"

namespace lindloc {

/// Distinct energies of a Hamiltonian and its eigenspaces. Projectors are
/// formed on request from the stored eigenbasis, so a large nondegenerate
/// spectrum does not hold one dense d x d matrix per level.
struct EnergyLevels {
  std::vector<double> energies;        // strictly ascending
  ComplexMatrix basis;                 // eigenvectors as columns
  std::vector<std::size_t> level_of;   // level index of each basis column
  double grouping_tol = 0.0;

  std::size_t dim() const { return basis.rows(); }
  std::size_t count() const { return energies.size(); }
  std::size_t degeneracy(std::size_t level) const;
  /// Pi(e_k) = sum of |v><v| over eigenvectors in level k.
  ComplexMatrix projector(std::size_t level) const;
  /// Every difference e_n - e_m, grouped at grouping_tol, ascending.
  std::vector<double> bohr_frequencies() const;
};

/// Default absolute grouping tolerance: 1e-9 times the largest |eigenvalue|,
/// or 1e-9 when the spectrum is identically zero.
double default_grouping_tol(const HermitianEigenSystem& eigs);

/// Single-linkage clustering of eigenvalues (gap > tol separates levels);
/// each level sits at the mean of its members. Throws
/// AmbiguousSpectrumError when a cluster spans more than 10 * tol.
EnergyLevels group_levels(const HermitianEigenSystem& eigs, double tol);

struct BohrComponent {
  double omega;
  ComplexMatrix op;
};

/// Frequency components A(omega) = sum_{e_n - e_m = omega} P(e_m) A P(e_n).
struct BohrDecomposition {
  std::vector<BohrComponent> terms;  // ascending omega
  ComplexMatrix source;

  /// Component at omega (within tol), or nullptr.
  const BohrComponent* find(double omega, double tol) const;
  ComplexMatrix sum() const;
};

BohrDecomposition decompose_operator(const ComplexMatrix& a, const EnergyLevels& levels);

/// The omega = 0 component: sum_e P(e) H P(e).
ComplexMatrix secular_filter(const ComplexMatrix& h, const EnergyLevels& levels);

enum class DiagnosticStatus { pass, warn, fail };

std::string to_string(DiagnosticStatus s);

/// Sparse spectrum check against a coupling strength.
struct SpectrumDiagnostics {
  std::optional<double> min_frequency;      // min nonzero |omega|
  std::optional<double> min_frequency_gap;  // min nonzero |omega - omega'|
  double alpha = 0.0;
  double frequency_ratio = 0.0;  // min_frequency / alpha, +inf when absent
  double gap_ratio = 0.0;        // min_frequency_gap / alpha, +inf when absent
  DiagnosticStatus status = DiagnosticStatus::pass;

  std::string summary() const;
};

/// WARN when either ratio < 10, FAIL when either is < 1.
SpectrumDiagnostics sparse_spectrum_diagnostics(const EnergyLevels& levels, double alpha);

}  // namespace lindloc
