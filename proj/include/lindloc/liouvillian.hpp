#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lindloc/baths.hpp"
#include "lindloc/matrix.hpp"
#include "lindloc/spectral.hpp"

namespace lindloc {

struct Subsystem {
  std::string label;
  ComplexMatrix hamiltonian;  // local, d_i x d_i
};

/// Network of subsystems with local baths. `interactions` act on the full
/// tensor-product space and sum to H_I; baths[i] couples to subsystems[i].
struct SystemSpec {
  std::vector<Subsystem> subsystems;
  std::vector<ComplexMatrix> interactions;
  double alpha = 0.0;          // intersubsystem strength
  std::vector<BathSpec> baths;
  double beta_coupling = 0.0;  // system-bath strength; dissipators carry its square
  double grouping_tol = 0.0;   // <= 0 selects the default relative tolerance

  std::vector<std::size_t> dims() const;
  std::size_t dim() const;
  /// Throws on any broken invariant (dimensions, Hermiticity, counts).
  void validate() const;
};

/// Full-space jump operator A(omega) with its rate, already scaled by the
/// dissipator strength.
struct JumpChannel {
  double omega;
  ComplexMatrix op;
  double rate;
};

/// D_i for one bath: sum_w rate (A rho A^dagger - 1/2 {A^dagger A, rho}).
struct Dissipator {
  std::size_t bath_index = 0;
  std::string label;
  double beta = 1.0;
  std::vector<JumpChannel> channels;
  ComplexMatrix decay;  // sum_w rate A^dagger A

  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// rho -> -i[H, rho] + sum of dissipators, in operator form and (for small
/// dimensions) as a column-stacking superoperator matrix.
class LindbladOperator {
 public:
  /// Largest Hilbert dimension whose d^2 x d^2 superoperator is materialized.
  static constexpr std::size_t kMaxSuperopDim = 32;

  LindbladOperator() = default;
  LindbladOperator(ComplexMatrix hamiltonian, const std::vector<Dissipator>& dissipators);

  std::size_t dim() const { return hamiltonian_.rows(); }
  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  bool has_superop() const { return superop_.has_value(); }
  /// Throws when the dimension exceeds kMaxSuperopDim.
  const ComplexMatrix& superop() const;
  /// Exact infinity norm of the superoperator when materialized, otherwise
  /// the Kronecker upper bound 2||G|| + sum rate ||A||^2.
  double norm_inf() const;

 private:
  ComplexMatrix hamiltonian_;
  ComplexMatrix effective_;  // -iH - 1/2 sum rate A^dagger A
  std::vector<JumpChannel> channels_;
  std::optional<ComplexMatrix> superop_;
};

enum class GeneratorKind { modified, naive };

std::string to_string(GeneratorKind k);

/// The assembled local master equation. `full` is L (H_s + h_i0 plus
/// dissipators); `partial` is L' (H_s plus dissipators).
struct Generator {
  GeneratorKind kind = GeneratorKind::modified;
  std::vector<std::size_t> dims;
  std::vector<ComplexMatrix> local_hamiltonians;
  ComplexMatrix h_s;
  ComplexMatrix h_i0;           // alpha * H_I(0) (modified) or alpha * H_I (naive)
  ComplexMatrix h_interaction;  // alpha * H_I, unfiltered
  std::vector<Dissipator> dissipators;
  double alpha = 0.0;
  double dissipator_strength = 0.0;  // beta_coupling^2
  EnergyLevels levels;               // of h_s
  std::optional<SpectrumDiagnostics> diagnostics;
  LindbladOperator full;
  LindbladOperator partial;

  std::size_t dim() const { return h_s.rows(); }
  std::vector<double> bath_betas() const;

  ComplexMatrix apply(const ComplexMatrix& rho) const { return full.apply(rho); }
  ComplexMatrix apply_partial(const ComplexMatrix& rho) const { return partial.apply(rho); }
  const ComplexMatrix& superop() const { return full.superop(); }
  const ComplexMatrix& partial_superop() const { return partial.superop(); }
};

/// Local master equation with the secular-filtered interaction alpha H_I(0).
Generator build_modified_local(const SystemSpec& spec);
/// Baseline with identical dissipators but the unfiltered alpha H_I.
Generator build_naive_local(const SystemSpec& spec);
Generator build_generator(const SystemSpec& spec, GeneratorKind kind);

/// Column stacking: v[c * d + r] = rho(r, c).
std::vector<cplx> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(std::span<const cplx> v);

ComplexMatrix apply(const Generator& gen, const ComplexMatrix& rho);

/// prod_i exp(-beta_i H_i) / Z over the generator's subsystems.
ComplexMatrix product_gibbs_state(const Generator& gen);
/// ln of product_gibbs_state, formed analytically: -sum beta_i H_i - ln Z.
ComplexMatrix log_product_gibbs_state(const Generator& gen);
/// exp(-beta H) / Z for one Hermitian H.
ComplexMatrix gibbs_state(const ComplexMatrix& h, double beta);

}  // namespace lindloc
