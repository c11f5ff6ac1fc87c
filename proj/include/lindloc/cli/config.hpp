#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "lindloc/baths.hpp"
#include "lindloc/dynamics.hpp"
#include "lindloc/liouvillian.hpp"
#include "lindloc/matrix.hpp"
#include "lindloc/models.hpp"

namespace lindloc::cli {

enum class ModelBuilder { single_qubit, two_qubit, qubit_chain, explicit_matrices };

struct SubsystemConfig {
  std::string label;
  ComplexMatrix hamiltonian;
  friend bool operator==(const SubsystemConfig&, const SubsystemConfig&) = default;
};

struct ModelConfig {
  ModelBuilder builder = ModelBuilder::two_qubit;
  GeneratorKind generator = GeneratorKind::modified;
  double alpha = 0.01;
  double beta_coupling = 0.01;
  std::vector<double> energies;                  // builders only
  QubitCoupling coupling = QubitCoupling::xx;    // builders only
  SpectralModel spectral{SpectralKind::flat, 0.5 * std::numbers::inv_pi, 1.0};
  double grouping_tol = 0.0;                     // 0 = default
  bool lamb_shift = false;                       // reserved, must stay false
  std::vector<SubsystemConfig> subsystems;       // explicit only
  std::vector<ComplexMatrix> interactions;       // explicit only
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct BathConfig {
  std::string label;
  double temperature = 0.0;
  std::optional<SpectralModel> spectral;      // overrides model.spectral
  std::optional<ComplexMatrix> coupling;      // explicit only
  friend bool operator==(const BathConfig&, const BathConfig&) = default;
};

enum class InitialKind { excited, ground, maximally_mixed, product_gibbs, basis };

struct InitialStateConfig {
  InitialKind kind = InitialKind::excited;
  std::size_t index = 0;  // basis only: computational basis index
  friend bool operator==(const InitialStateConfig&, const InitialStateConfig&) = default;
};

struct SolverSection {
  std::optional<double> dt;          // default: 0.95 * largest stable dt
  std::optional<double> t_max;       // default: relaxation_times * slowest relaxation time
  double relaxation_times = 20.0;
  std::optional<std::size_t> record_stride;  // default: about 1000 records
  double positivity_tol = 1e-9;
  Stepper stepper = Stepper::automatic;
  friend bool operator==(const SolverSection&, const SolverSection&) = default;
};

struct OutputSection {
  std::string directory = "out";
  std::vector<std::string> formats{"csv", "report"};
  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct SweepSection {
  std::string parameter;  // e.g. baths[0].temperature, model.alpha
  std::vector<std::string> linked;  // further paths set to the same value
  std::vector<double> values;
  friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct RunConfig {
  ModelConfig model;
  std::vector<BathConfig> baths;
  InitialStateConfig initial_state;
  SolverSection solver;
  OutputSection output;
  std::optional<SweepSection> sweep;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses YAML text. Errors are ConfigError naming the line and key path.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
/// Canonical YAML rendering; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& cfg);

/// Copy of cfg with the scalar at `path` (dotted, with [i] indexing, as in
/// baths[0].temperature) replaced by value.
RunConfig apply_override(const RunConfig& cfg, const std::string& path, double value);

SystemSpec build_system(const RunConfig& cfg);
ComplexMatrix initial_state(const RunConfig& cfg, const Generator& gen);
/// Solver settings with defaults resolved against the generator.
SolverConfig resolve_solver(const RunConfig& cfg, const Generator& gen);

std::string to_string(ModelBuilder b);

}  // namespace lindloc::cli
