#include "lindloc/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lindloc/eigen.hpp"
#include "lindloc/errors.hpp"
#include "lindloc/log.hpp"

namespace lindloc {

namespace {

constexpr cplx kI{0.0, 1.0};

double grouping_tol_for(const SystemSpec& spec, const HermitianEigenSystem& eigs) {
  return spec.grouping_tol > 0.0 ? spec.grouping_tol : default_grouping_tol(eigs);
}

}  // namespace

std::vector<std::size_t> SystemSpec::dims() const {
  std::vector<std::size_t> d;
  d.reserve(subsystems.size());
  for (const auto& s : subsystems) d.push_back(s.hamiltonian.rows());
  return d;
}

std::size_t SystemSpec::dim() const {
  const auto d = dims();
  return std::accumulate(d.begin(), d.end(), std::size_t{1}, std::multiplies<>());
}

void SystemSpec::validate() const {
  if (subsystems.empty()) throw Error("system spec: no subsystems");
  for (const auto& s : subsystems) {
    if (s.hamiltonian.rows() == 0) throw DimensionError("subsystem '" + s.label + "': empty Hamiltonian");
    require_hermitian(s.hamiltonian, 1e-10, ("subsystem '" + s.label + "' Hamiltonian").c_str());
  }
  if (baths.size() != subsystems.size()) {
    std::ostringstream msg;
    msg << "system spec: " << baths.size() << " baths for " << subsystems.size()
        << " subsystems (baths pair one-to-one with subsystems)";
    throw Error(msg.str());
  }
  const std::size_t d = dim();
  for (std::size_t k = 0; k < interactions.size(); ++k) {
    const auto& h = interactions[k];
    if (h.rows() != d || h.cols() != d) {
      std::ostringstream msg;
      msg << "interaction " << k << " is " << h.rows() << "x" << h.cols()
          << " but the full space has dimension " << d;
      throw DimensionError(msg.str());
    }
    require_hermitian(h, 1e-10, ("interaction " + std::to_string(k)).c_str());
  }
  for (std::size_t i = 0; i < baths.size(); ++i) {
    baths[i].validate();
    const auto& a = baths[i].coupling_op;
    const std::size_t di = subsystems[i].hamiltonian.rows();
    if (a.rows() != di || a.cols() != di) {
      std::ostringstream msg;
      msg << "bath '" << baths[i].label << "': coupling operator is " << a.rows() << "x"
          << a.cols() << " but subsystem " << i << " has dimension " << di;
      throw DimensionError(msg.str());
    }
  }
  if (!(alpha >= 0.0)) throw Error("system spec: alpha must be >= 0");
  if (!(beta_coupling >= 0.0)) throw Error("system spec: beta_coupling must be >= 0");
}

ComplexMatrix Dissipator::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = anticommutator(decay, rho);
  out *= -0.5;
  for (const auto& ch : channels) out += ch.rate * (ch.op * rho * ch.op.adjoint());
  return out;
}

LindbladOperator::LindbladOperator(ComplexMatrix hamiltonian,
                                   const std::vector<Dissipator>& dissipators)
    : hamiltonian_(std::move(hamiltonian)) {
  const std::size_t d = hamiltonian_.rows();
  effective_ = -kI * hamiltonian_;
  for (const auto& diss : dissipators) {
    effective_ -= 0.5 * diss.decay;
    channels_.insert(channels_.end(), diss.channels.begin(), diss.channels.end());
  }
  if (d > kMaxSuperopDim) return;

  // vec(A X B) = (B^T (x) A) vec(X) for column stacking.
  const auto id = ComplexMatrix::identity(d);
  ComplexMatrix s = kron(id, effective_);
  s += kron(effective_.conjugate(), id);
  for (const auto& ch : channels_) s += ch.rate * kron(ch.op.conjugate(), ch.op);
  superop_ = std::move(s);
}

ComplexMatrix LindbladOperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) {
    std::ostringstream msg;
    msg << "generator apply: state is " << rho.rows() << "x" << rho.cols()
        << " but the generator acts on dimension " << dim();
    throw DimensionError(msg.str());
  }
  ComplexMatrix out = effective_ * rho;
  out += rho * effective_.adjoint();
  for (const auto& ch : channels_) out += ch.rate * (ch.op * rho * ch.op.adjoint());
  return out;
}

const ComplexMatrix& LindbladOperator::superop() const {
  if (!superop_) {
    std::ostringstream msg;
    msg << "superoperator not materialized for dimension " << dim() << " (limit "
        << kMaxSuperopDim << ")";
    throw DimensionError(msg.str());
  }
  return *superop_;
}

double LindbladOperator::norm_inf() const {
  if (superop_) return superop_->norm_inf();
  double bound = 2.0 * effective_.norm_inf();
  for (const auto& ch : channels_) {
    const double a = ch.op.norm_inf();
    bound += ch.rate * a * a;
  }
  return bound;
}

std::string to_string(GeneratorKind k) {
  return k == GeneratorKind::modified ? "modified" : "naive";
}

std::vector<double> Generator::bath_betas() const {
  std::vector<double> b;
  for (const auto& d : dissipators) b.push_back(d.beta);
  return b;
}

Generator build_generator(const SystemSpec& spec, GeneratorKind kind) {
  spec.validate();
  Generator gen;
  gen.kind = kind;
  gen.dims = spec.dims();
  gen.alpha = spec.alpha;
  gen.dissipator_strength = spec.beta_coupling * spec.beta_coupling;
  const std::size_t d = spec.dim();

  gen.h_s = ComplexMatrix(d, d);
  for (std::size_t i = 0; i < spec.subsystems.size(); ++i) {
    gen.local_hamiltonians.push_back(spec.subsystems[i].hamiltonian);
    gen.h_s += embed(spec.subsystems[i].hamiltonian, gen.dims, i);
  }
  const auto hs_eigs = hermitian_eig(gen.h_s);
  gen.levels = group_levels(hs_eigs, grouping_tol_for(spec, hs_eigs));

  const double strength = std::max(spec.alpha, spec.beta_coupling);
  if (strength > 0.0) {
    auto diag = sparse_spectrum_diagnostics(gen.levels, strength);
    if (diag.status == DiagnosticStatus::fail) {
      throw SpectrumTooDenseError("sparse spectrum condition fails: " + diag.summary());
    }
    if (diag.status == DiagnosticStatus::warn) {
      log().warn("sparse spectrum condition marginal: {}", diag.summary());
    } else {
      log().debug("sparse spectrum diagnostics: {}", diag.summary());
    }
    gen.diagnostics = std::move(diag);
  }

  ComplexMatrix h_int(d, d);
  for (const auto& term : spec.interactions) h_int += term;
  gen.h_interaction = spec.alpha * h_int;
  if (kind == GeneratorKind::modified) {
    gen.h_i0 = spec.alpha * secular_filter(h_int, gen.levels);
  } else {
    gen.h_i0 = gen.h_interaction;
  }

  // Jump operators come from the eigenbasis of each subsystem's own
  // Hamiltonian and are then embedded in the full space.
  for (std::size_t i = 0; i < spec.baths.size(); ++i) {
    const auto& bath = spec.baths[i];
    const auto local_eigs = hermitian_eig(spec.subsystems[i].hamiltonian);
    const auto local_levels = group_levels(local_eigs, grouping_tol_for(spec, local_eigs));
    const auto parts = decompose_operator(bath.coupling_op, local_levels);
    Dissipator diss;
    diss.bath_index = i;
    diss.label = bath.label;
    diss.beta = bath.beta;
    diss.decay = ComplexMatrix(d, d);
    for (const auto& part : parts.terms) {
      const double r = gen.dissipator_strength * rate(part.omega, bath);
      if (r <= 0.0) continue;
      ComplexMatrix op = embed(part.op, gen.dims, i);
      diss.decay += r * (op.adjoint() * op);
      diss.channels.push_back({part.omega, std::move(op), r});
    }
    gen.dissipators.push_back(std::move(diss));
  }

  gen.full = LindbladOperator(gen.h_s + gen.h_i0, gen.dissipators);
  gen.partial = LindbladOperator(gen.h_s, gen.dissipators);
  return gen;
}

Generator build_modified_local(const SystemSpec& spec) {
  return build_generator(spec, GeneratorKind::modified);
}

Generator build_naive_local(const SystemSpec& spec) {
  return build_generator(spec, GeneratorKind::naive);
}

std::vector<cplx> vectorize(const ComplexMatrix& rho) {
  std::vector<cplx> v(rho.rows() * rho.cols());
  for (std::size_t c = 0; c < rho.cols(); ++c)
    for (std::size_t r = 0; r < rho.rows(); ++r) v[c * rho.rows() + r] = rho(r, c);
  return v;
}

ComplexMatrix unvectorize(std::span<const cplx> v) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw DimensionError("unvectorize: length " + std::to_string(v.size()) +
                         " is not a perfect square");
  }
  ComplexMatrix rho(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) rho(r, c) = v[c * d + r];
  return rho;
}

ComplexMatrix apply(const Generator& gen, const ComplexMatrix& rho) { return gen.apply(rho); }

ComplexMatrix gibbs_state(const ComplexMatrix& h, double beta) {
  const auto eig = hermitian_eig(h);
  const double e0 = eig.eigenvalues.front();
  double z = 0.0;
  for (double e : eig.eigenvalues) z += std::exp(-beta * (e - e0));
  return eig.reconstruct([&](double e) { return std::exp(-beta * (e - e0)) / z; });
}

ComplexMatrix product_gibbs_state(const Generator& gen) {
  std::vector<ComplexMatrix> factors;
  for (std::size_t i = 0; i < gen.local_hamiltonians.size(); ++i)
    factors.push_back(gibbs_state(gen.local_hamiltonians[i], gen.dissipators[i].beta));
  return kron_all(factors);
}

ComplexMatrix log_product_gibbs_state(const Generator& gen) {
  const std::size_t d = gen.dim();
  ComplexMatrix out(d, d);
  double log_z = 0.0;
  for (std::size_t i = 0; i < gen.local_hamiltonians.size(); ++i) {
    const double beta = gen.dissipators[i].beta;
    const auto& h = gen.local_hamiltonians[i];
    out -= beta * embed(h, gen.dims, i);
    const auto eig = hermitian_eig(h);
    const double e0 = eig.eigenvalues.front();
    double z = 0.0;
    for (double e : eig.eigenvalues) z += std::exp(-beta * (e - e0));
    log_z += std::log(z) - beta * e0;
  }
  for (std::size_t k = 0; k < d; ++k) out(k, k) -= log_z;
  return out;
}

}  // namespace lindloc
