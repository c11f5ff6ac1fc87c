#include "lindloc/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lindloc/errors.hpp"

namespace lindloc::cli {

namespace {

// ---------------------------------------------------------------- parsing

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& path,
                         const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (at.IsDefined() && at.Mark().line >= 0) msg << ":" << at.Mark().line + 1;
    msg << ": `" << path << "`: " << what;
    throw ConfigError(msg.str());
  }

  void check_keys(const YAML::Node& map, const std::string& path,
                  const std::set<std::string>& allowed) const {
    if (!map.IsMap()) fail(map, path, "expected a mapping");
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) fail(kv.first, join(path, key), "unknown key");
    }
  }

  YAML::Node required(const YAML::Node& map, const std::string& path,
                      const std::string& key) const {
    const YAML::Node n = map[key];
    if (!n.IsDefined() || n.IsNull()) fail(map, join(path, key), "missing required key");
    return n;
  }

  double number(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected a number");
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(n, path, "expected a finite number");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(n, path, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  std::size_t count(const YAML::Node& n, const std::string& path) const {
    const double v = number(n, path);
    if (v < 0 || v != std::floor(v)) fail(n, path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  bool boolean(const YAML::Node& n, const std::string& path) const {
    try {
      return n.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(n, path, "expected true or false");
    }
  }

  std::string text(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected a string");
    return n.Scalar();
  }

  template <typename Enum>
  Enum choice(const YAML::Node& n, const std::string& path,
              std::initializer_list<std::pair<const char*, Enum>> options) const {
    const std::string v = text(n, path);
    std::string names;
    for (const auto& [name, value] : options) {
      if (v == name) return value;
      names += names.empty() ? name : std::string(" | ") + name;
    }
    fail(n, path, "unknown value '" + v + "' (expected " + names + ")");
  }

  std::vector<double> numbers(const YAML::Node& n, const std::string& path) const {
    if (!n.IsSequence()) fail(n, path, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < n.size(); ++i)
      out.push_back(number(n[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<std::vector<double>> grid(const YAML::Node& n, const std::string& path) const {
    if (!n.IsSequence() || n.size() == 0) fail(n, path, "expected a nested list of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n.size(); ++i) {
      rows.push_back(numbers(n[i], path + "[" + std::to_string(i) + "]"));
      if (rows.back().size() != rows.front().size()) fail(n[i], path, "ragged matrix rows");
    }
    return rows;
  }

  ComplexMatrix matrix(const YAML::Node& n, const std::string& path) const {
    check_keys(n, path, {"re", "im"});
    const auto re = grid(required(n, path, "re"), join(path, "re"));
    const std::size_t rows = re.size();
    const std::size_t cols = re.front().size();
    if (rows != cols) fail(n, path, "matrix must be square");
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = re[r][c];
    if (n["im"].IsDefined()) {
      const auto im = grid(n["im"], join(path, "im"));
      if (im.size() != rows || im.front().size() != cols)
        fail(n["im"], join(path, "im"), "shape differs from re");
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) += cplx(0.0, im[r][c]);
    }
    return m;
  }

  ComplexMatrix hermitian_matrix(const YAML::Node& n, const std::string& path) const {
    ComplexMatrix m = matrix(n, path);
    try {
      require_hermitian(m, 1e-10, path.c_str());
    } catch (const NotHermitianError& e) {
      fail(n, path, e.what());
    }
    return m;
  }

  SpectralModel spectral(const YAML::Node& n, const std::string& path) const {
    check_keys(n, path, {"kind", "coupling_scale", "cutoff"});
    SpectralModel s;
    s.kind = choice<SpectralKind>(required(n, path, "kind"), join(path, "kind"),
                                  {{"flat", SpectralKind::flat}, {"ohmic", SpectralKind::ohmic}});
    s.coupling_scale = number(required(n, path, "coupling_scale"), join(path, "coupling_scale"));
    if (s.coupling_scale < 0) fail(n, join(path, "coupling_scale"), "must be >= 0");
    if (n["cutoff"].IsDefined()) s.cutoff = number(n["cutoff"], join(path, "cutoff"));
    if (s.kind == SpectralKind::ohmic && !(s.cutoff > 0))
      fail(n, join(path, "cutoff"), "must be > 0 for an ohmic bath");
    return s;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  std::string source_;
};

ModelConfig read_model(const Reader& rd, const YAML::Node& n) {
  const std::string p = "model";
  rd.check_keys(n, p, {"builder", "generator", "alpha", "beta_coupling", "energies", "coupling",
                       "spectral", "grouping_tol", "lamb_shift", "subsystems", "interactions"});
  ModelConfig m;
  m.builder = rd.choice<ModelBuilder>(rd.required(n, p, "builder"), "model.builder",
                                      {{"single_qubit", ModelBuilder::single_qubit},
                                       {"two_qubit", ModelBuilder::two_qubit},
                                       {"qubit_chain", ModelBuilder::qubit_chain},
                                       {"explicit", ModelBuilder::explicit_matrices}});
  if (n["generator"].IsDefined())
    m.generator = rd.choice<GeneratorKind>(
        n["generator"], "model.generator",
        {{"modified", GeneratorKind::modified}, {"naive", GeneratorKind::naive}});
  if (n["alpha"].IsDefined()) m.alpha = rd.number(n["alpha"], "model.alpha");
  if (m.alpha < 0) rd.fail(n["alpha"], "model.alpha", "must be >= 0");
  m.beta_coupling = rd.number(rd.required(n, p, "beta_coupling"), "model.beta_coupling");
  if (m.beta_coupling < 0) rd.fail(n["beta_coupling"], "model.beta_coupling", "must be >= 0");
  if (n["spectral"].IsDefined()) m.spectral = rd.spectral(n["spectral"], "model.spectral");
  if (n["grouping_tol"].IsDefined()) {
    m.grouping_tol = rd.number(n["grouping_tol"], "model.grouping_tol");
    if (m.grouping_tol < 0) rd.fail(n["grouping_tol"], "model.grouping_tol", "must be >= 0");
  }
  if (n["lamb_shift"].IsDefined()) {
    m.lamb_shift = rd.boolean(n["lamb_shift"], "model.lamb_shift");
    if (m.lamb_shift)
      rd.fail(n["lamb_shift"], "model.lamb_shift",
              "Lamb shift is not supported; the key is reserved and must be false");
  }

  if (m.builder == ModelBuilder::explicit_matrices) {
    for (const char* key : {"energies", "coupling"})
      if (n[key].IsDefined()) rd.fail(n[key], Reader::join(p, key), "not used by the explicit builder");
    const auto subs = rd.required(n, p, "subsystems");
    if (!subs.IsSequence() || subs.size() == 0) rd.fail(subs, "model.subsystems", "expected a non-empty list");
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const std::string sp = "model.subsystems[" + std::to_string(i) + "]";
      rd.check_keys(subs[i], sp, {"label", "hamiltonian"});
      SubsystemConfig s;
      s.label = rd.text(rd.required(subs[i], sp, "label"), sp + ".label");
      s.hamiltonian = rd.hermitian_matrix(rd.required(subs[i], sp, "hamiltonian"), sp + ".hamiltonian");
      m.subsystems.push_back(std::move(s));
    }
    if (n["interactions"].IsDefined()) {
      const auto ints = n["interactions"];
      if (!ints.IsSequence()) rd.fail(ints, "model.interactions", "expected a list of matrices");
      for (std::size_t i = 0; i < ints.size(); ++i)
        m.interactions.push_back(
            rd.hermitian_matrix(ints[i], "model.interactions[" + std::to_string(i) + "]"));
    }
  } else {
    for (const char* key : {"subsystems", "interactions"})
      if (n[key].IsDefined()) rd.fail(n[key], Reader::join(p, key), "only used by the explicit builder");
    m.energies = rd.numbers(rd.required(n, p, "energies"), "model.energies");
    for (std::size_t i = 0; i < m.energies.size(); ++i)
      if (!(m.energies[i] > 0))
        rd.fail(n["energies"][i], "model.energies[" + std::to_string(i) + "]", "must be > 0");
    if (n["coupling"].IsDefined())
      m.coupling = rd.choice<QubitCoupling>(n["coupling"], "model.coupling",
                                            {{"xx", QubitCoupling::xx}, {"zz", QubitCoupling::zz}});
  }
  return m;
}

std::vector<BathConfig> read_baths(const Reader& rd, const YAML::Node& n, bool explicit_model) {
  if (!n.IsSequence() || n.size() == 0) rd.fail(n, "baths", "expected a non-empty list");
  std::vector<BathConfig> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string p = "baths[" + std::to_string(i) + "]";
    rd.check_keys(n[i], p, {"label", "temperature", "spectral", "coupling"});
    BathConfig b;
    b.label = n[i]["label"].IsDefined() ? rd.text(n[i]["label"], p + ".label")
                                        : "b" + std::to_string(i + 1);
    b.temperature = rd.number(rd.required(n[i], p, "temperature"), p + ".temperature");
    if (!(b.temperature > 0)) rd.fail(n[i]["temperature"], p + ".temperature", "must be > 0");
    if (n[i]["spectral"].IsDefined()) b.spectral = rd.spectral(n[i]["spectral"], p + ".spectral");
    if (n[i]["coupling"].IsDefined()) {
      if (!explicit_model)
        rd.fail(n[i]["coupling"], p + ".coupling", "only used by the explicit builder");
      b.coupling = rd.hermitian_matrix(n[i]["coupling"], p + ".coupling");
    } else if (explicit_model) {
      rd.fail(n[i], p + ".coupling", "missing required key");
    }
    out.push_back(std::move(b));
  }
  return out;
}

InitialStateConfig read_initial(const Reader& rd, const YAML::Node& n) {
  InitialStateConfig s;
  if (n.IsScalar()) {
    s.kind = rd.choice<InitialKind>(n, "initial_state",
                                    {{"excited", InitialKind::excited},
                                     {"ground", InitialKind::ground},
                                     {"maximally_mixed", InitialKind::maximally_mixed},
                                     {"product_gibbs", InitialKind::product_gibbs}});
    return s;
  }
  rd.check_keys(n, "initial_state", {"kind", "index"});
  s.kind = rd.choice<InitialKind>(rd.required(n, "initial_state", "kind"), "initial_state.kind",
                                  {{"excited", InitialKind::excited},
                                   {"ground", InitialKind::ground},
                                   {"maximally_mixed", InitialKind::maximally_mixed},
                                   {"product_gibbs", InitialKind::product_gibbs},
                                   {"basis", InitialKind::basis}});
  if (s.kind == InitialKind::basis)
    s.index = rd.count(rd.required(n, "initial_state", "index"), "initial_state.index");
  else if (n["index"].IsDefined())
    rd.fail(n["index"], "initial_state.index", "only used with kind: basis");
  return s;
}

SolverSection read_solver(const Reader& rd, const YAML::Node& n) {
  rd.check_keys(n, "solver",
                {"dt", "t_max", "relaxation_times", "record_stride", "positivity_tol", "stepper"});
  SolverSection s;
  auto positive = [&](const char* key) {
    const double v = rd.number(n[key], std::string("solver.") + key);
    if (!(v > 0)) rd.fail(n[key], std::string("solver.") + key, "must be > 0");
    return v;
  };
  if (n["dt"].IsDefined()) s.dt = positive("dt");
  if (n["t_max"].IsDefined()) s.t_max = positive("t_max");
  if (n["relaxation_times"].IsDefined()) s.relaxation_times = positive("relaxation_times");
  if (n["record_stride"].IsDefined()) {
    s.record_stride = rd.count(n["record_stride"], "solver.record_stride");
    if (*s.record_stride == 0) rd.fail(n["record_stride"], "solver.record_stride", "must be >= 1");
  }
  if (n["positivity_tol"].IsDefined()) s.positivity_tol = positive("positivity_tol");
  if (n["stepper"].IsDefined())
    s.stepper = rd.choice<Stepper>(n["stepper"], "solver.stepper",
                                   {{"automatic", Stepper::automatic},
                                    {"propagator", Stepper::propagator},
                                    {"superop", Stepper::superop},
                                    {"direct", Stepper::direct}});
  return s;
}

OutputSection read_output(const Reader& rd, const YAML::Node& n) {
  rd.check_keys(n, "output", {"directory", "formats"});
  OutputSection o;
  if (n["directory"].IsDefined()) o.directory = rd.text(n["directory"], "output.directory");
  if (n["formats"].IsDefined()) {
    const auto f = n["formats"];
    if (!f.IsSequence()) rd.fail(f, "output.formats", "expected a list");
    o.formats.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string p = "output.formats[" + std::to_string(i) + "]";
      const auto v = rd.text(f[i], p);
      if (v != "csv" && v != "report") rd.fail(f[i], p, "unknown format '" + v + "' (expected csv | report)");
      o.formats.push_back(v);
    }
  }
  return o;
}

SweepSection read_sweep(const Reader& rd, const YAML::Node& n) {
  rd.check_keys(n, "sweep", {"parameter", "linked", "values"});
  SweepSection s;
  s.parameter = rd.text(rd.required(n, "sweep", "parameter"), "sweep.parameter");
  if (n["linked"].IsDefined()) {
    const auto l = n["linked"];
    if (!l.IsSequence()) rd.fail(l, "sweep.linked", "expected a list of parameter paths");
    for (std::size_t i = 0; i < l.size(); ++i)
      s.linked.push_back(rd.text(l[i], "sweep.linked[" + std::to_string(i) + "]"));
  }
  s.values = rd.numbers(rd.required(n, "sweep", "values"), "sweep.values");
  if (s.values.empty()) rd.fail(n["values"], "sweep.values", "expected at least one value");
  return s;
}

RunConfig from_yaml(const YAML::Node& root, const std::string& source) {
  const Reader rd(source);
  rd.check_keys(root, "", {"model", "baths", "initial_state", "solver", "output", "sweep"});
  RunConfig cfg;
  cfg.model = read_model(rd, rd.required(root, "", "model"));
  cfg.baths = read_baths(rd, rd.required(root, "", "baths"),
                         cfg.model.builder == ModelBuilder::explicit_matrices);
  if (root["initial_state"].IsDefined()) cfg.initial_state = read_initial(rd, root["initial_state"]);
  if (root["solver"].IsDefined()) cfg.solver = read_solver(rd, root["solver"]);
  if (root["output"].IsDefined()) cfg.output = read_output(rd, root["output"]);
  if (root["sweep"].IsDefined()) cfg.sweep = read_sweep(rd, root["sweep"]);

  const std::size_t n_sub = cfg.model.builder == ModelBuilder::explicit_matrices
                                ? cfg.model.subsystems.size()
                                : cfg.model.energies.size();
  std::size_t expected = n_sub;
  if (cfg.model.builder == ModelBuilder::single_qubit) expected = 1;
  if (cfg.model.builder == ModelBuilder::two_qubit) expected = 2;
  if (cfg.model.builder != ModelBuilder::explicit_matrices && n_sub != expected) {
    rd.fail(root["model"]["energies"], "model.energies",
            "expected " + std::to_string(expected) + " entries for builder " +
                to_string(cfg.model.builder));
  }
  if (cfg.baths.size() != n_sub) {
    rd.fail(root["baths"], "baths",
            "expected one bath per subsystem (" + std::to_string(n_sub) + "), got " +
                std::to_string(cfg.baths.size()));
  }
  return cfg;
}

// ---------------------------------------------------------------- emitting

YAML::Node flow_row(const std::vector<double>& values) {
  YAML::Node row(YAML::NodeType::Sequence);
  for (double v : values) row.push_back(v);
  row.SetStyle(YAML::EmitterStyle::Flow);
  return row;
}

YAML::Node matrix_node(const ComplexMatrix& m) {
  YAML::Node n;
  YAML::Node re(YAML::NodeType::Sequence), im(YAML::NodeType::Sequence);
  bool has_imag = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<double> rr, ii;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
      has_imag = has_imag || m(r, c).imag() != 0.0;
    }
    re.push_back(flow_row(rr));
    im.push_back(flow_row(ii));
  }
  n["re"] = re;
  if (has_imag) n["im"] = im;
  return n;
}

YAML::Node spectral_node(const SpectralModel& s) {
  YAML::Node n;
  n["kind"] = to_string(s.kind);
  n["coupling_scale"] = s.coupling_scale;
  n["cutoff"] = s.cutoff;
  return n;
}


std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::excited: return "excited";
    case InitialKind::ground: return "ground";
    case InitialKind::maximally_mixed: return "maximally_mixed";
    case InitialKind::product_gibbs: return "product_gibbs";
    case InitialKind::basis: return "basis";
  }
  return "excited";
}

std::string to_string(Stepper s) {
  switch (s) {
    case Stepper::automatic: return "automatic";
    case Stepper::propagator: return "propagator";
    case Stepper::superop: return "superop";
    case Stepper::direct: return "direct";
  }
  return "automatic";
}

YAML::Node to_yaml(const RunConfig& cfg) {
  YAML::Node root;
  YAML::Node model;
  const auto& m = cfg.model;
  model["builder"] = to_string(m.builder);
  model["generator"] = lindloc::to_string(m.generator);
  model["alpha"] = m.alpha;
  model["beta_coupling"] = m.beta_coupling;
  if (m.builder == ModelBuilder::explicit_matrices) {
    YAML::Node subs(YAML::NodeType::Sequence);
    for (const auto& s : m.subsystems) {
      YAML::Node sn;
      sn["label"] = s.label;
      sn["hamiltonian"] = matrix_node(s.hamiltonian);
      subs.push_back(sn);
    }
    model["subsystems"] = subs;
    YAML::Node ints(YAML::NodeType::Sequence);
    for (const auto& h : m.interactions) ints.push_back(matrix_node(h));
    model["interactions"] = ints;
  } else {
    model["energies"] = flow_row(m.energies);
    model["coupling"] = m.coupling == QubitCoupling::xx ? "xx" : "zz";
  }
  model["spectral"] = spectral_node(m.spectral);
  model["grouping_tol"] = m.grouping_tol;
  model["lamb_shift"] = m.lamb_shift;
  root["model"] = model;

  YAML::Node baths(YAML::NodeType::Sequence);
  for (const auto& b : cfg.baths) {
    YAML::Node bn;
    bn["label"] = b.label;
    bn["temperature"] = b.temperature;
    if (b.spectral) bn["spectral"] = spectral_node(*b.spectral);
    if (b.coupling) bn["coupling"] = matrix_node(*b.coupling);
    baths.push_back(bn);
  }
  root["baths"] = baths;

  YAML::Node init;
  init["kind"] = to_string(cfg.initial_state.kind);
  if (cfg.initial_state.kind == InitialKind::basis) init["index"] = cfg.initial_state.index;
  root["initial_state"] = init;

  YAML::Node solver;
  const auto& s = cfg.solver;
  if (s.dt) solver["dt"] = *s.dt;
  if (s.t_max) solver["t_max"] = *s.t_max;
  solver["relaxation_times"] = s.relaxation_times;
  if (s.record_stride) solver["record_stride"] = *s.record_stride;
  solver["positivity_tol"] = s.positivity_tol;
  solver["stepper"] = to_string(s.stepper);
  root["solver"] = solver;

  YAML::Node output;
  output["directory"] = cfg.output.directory;
  YAML::Node formats(YAML::NodeType::Sequence);
  for (const auto& f : cfg.output.formats) formats.push_back(f);
  formats.SetStyle(YAML::EmitterStyle::Flow);
  output["formats"] = formats;
  root["output"] = output;

  if (cfg.sweep) {
    YAML::Node sweep;
    sweep["parameter"] = cfg.sweep->parameter;
    if (!cfg.sweep->linked.empty()) {
      YAML::Node linked(YAML::NodeType::Sequence);
      for (const auto& l : cfg.sweep->linked) linked.push_back(l);
      linked.SetStyle(YAML::EmitterStyle::Flow);
      sweep["linked"] = linked;
    }
    sweep["values"] = flow_row(cfg.sweep->values);
    root["sweep"] = sweep;
  }
  return root;
}

// Splits "baths[0].temperature" into {"baths", 0}, {"temperature"}.
struct PathSegment {
  std::string key;
  std::optional<std::size_t> index;
};

std::vector<PathSegment> split_path(const std::string& path) {
  std::vector<PathSegment> out;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    PathSegment seg;
    const auto open = part.find('[');
    if (open == std::string::npos) {
      seg.key = part;
    } else {
      const auto close = part.find(']', open);
      if (close == std::string::npos || close != part.size() - 1)
        throw ConfigError("sweep parameter `" + path + "`: malformed index");
      seg.key = part.substr(0, open);
      try {
        seg.index = std::stoul(part.substr(open + 1, close - open - 1));
      } catch (const std::exception&) {
        throw ConfigError("sweep parameter `" + path + "`: malformed index");
      }
    }
    if (seg.key.empty()) throw ConfigError("sweep parameter `" + path + "`: empty path segment");
    out.push_back(std::move(seg));
  }
  if (out.empty()) throw ConfigError("sweep parameter is empty");
  return out;
}

}  // namespace

std::string to_string(ModelBuilder b) {
  switch (b) {
    case ModelBuilder::single_qubit: return "single_qubit";
    case ModelBuilder::two_qubit: return "two_qubit";
    case ModelBuilder::qubit_chain: return "qubit_chain";
    case ModelBuilder::explicit_matrices: return "explicit";
  }
  return "two_qubit";
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ": parse error: " << e.msg;
    throw ConfigError(msg.str());
  }
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  return from_yaml(root, source);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string dump_config(const RunConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << to_yaml(cfg);
  return std::string(out.c_str()) + "\n";
}

RunConfig apply_override(const RunConfig& cfg, const std::string& path, double value) {
  YAML::Node root = to_yaml(cfg);
  const auto segments = split_path(path);
  // Node::operator= writes through to the referenced node; reset() rebinds.
  YAML::Node leaf;
  leaf.reset(root);
  for (const auto& seg : segments) {
    if (!leaf.IsMap() || !leaf[seg.key].IsDefined())
      throw ConfigError("sweep parameter `" + path + "`: no key '" + seg.key + "'");
    leaf.reset(leaf[seg.key]);
    if (seg.index) {
      if (!leaf.IsSequence() || *seg.index >= leaf.size())
        throw ConfigError("sweep parameter `" + path + "`: index out of range");
      leaf.reset(leaf[*seg.index]);
    }
  }
  if (!leaf.IsScalar()) throw ConfigError("sweep parameter `" + path + "` is not a scalar");
  leaf = value;
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << root;
  return parse_config(out.c_str(), "sweep override " + path);
}

SystemSpec build_system(const RunConfig& cfg) {
  const auto& m = cfg.model;
  if (m.lamb_shift) throw ConfigError("model.lamb_shift: Lamb shift is not supported");
  SystemSpec spec;
  if (m.builder == ModelBuilder::explicit_matrices) {
    spec.alpha = m.alpha;
    spec.beta_coupling = m.beta_coupling;
    for (const auto& s : m.subsystems) spec.subsystems.push_back({s.label, s.hamiltonian});
    spec.interactions = m.interactions;
    for (const auto& b : cfg.baths)
      spec.baths.push_back(BathSpec::at_temperature(b.label, b.temperature,
                                                    b.spectral.value_or(m.spectral), *b.coupling));
  } else {
    std::vector<double> temps;
    for (const auto& b : cfg.baths) temps.push_back(b.temperature);
    if (m.builder == ModelBuilder::single_qubit) {
      spec = single_qubit_model(m.energies.at(0), temps.at(0), m.spectral, m.beta_coupling);
    } else {
      spec = qubit_chain_model(m.energies.size(), m.energies, m.alpha, m.beta_coupling, temps,
                               m.spectral, m.coupling);
    }
    for (std::size_t i = 0; i < cfg.baths.size(); ++i) {
      spec.baths[i].label = cfg.baths[i].label;
      if (cfg.baths[i].spectral) spec.baths[i].spectral = *cfg.baths[i].spectral;
    }
  }
  spec.grouping_tol = m.grouping_tol;
  spec.validate();
  return spec;
}

ComplexMatrix initial_state(const RunConfig& cfg, const Generator& gen) {
  const std::size_t d = gen.dim();
  const auto& basis = gen.levels.basis;
  auto eigen_projector = [&](std::size_t k) {
    ComplexMatrix p(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) p(r, c) = basis(r, k) * std::conj(basis(c, k));
    return p;
  };
  switch (cfg.initial_state.kind) {
    case InitialKind::excited:
      return eigen_projector(d - 1);
    case InitialKind::ground:
      return eigen_projector(0);
    case InitialKind::maximally_mixed: {
      ComplexMatrix m = ComplexMatrix::identity(d);
      m *= 1.0 / static_cast<double>(d);
      return m;
    }
    case InitialKind::product_gibbs:
      return product_gibbs_state(gen);
    case InitialKind::basis: {
      if (cfg.initial_state.index >= d) {
        throw ConfigError("`initial_state.index`: " + std::to_string(cfg.initial_state.index) +
                          " out of range for dimension " + std::to_string(d));
      }
      ComplexMatrix m(d, d);
      m(cfg.initial_state.index, cfg.initial_state.index) = 1.0;
      return m;
    }
  }
  throw ConfigError("initial_state: unknown kind");
}

SolverConfig resolve_solver(const RunConfig& cfg, const Generator& gen) {
  SolverConfig s;
  s.dt = cfg.solver.dt.value_or(0.95 * max_stable_dt(gen));
  if (cfg.solver.t_max) {
    s.t_max = *cfg.solver.t_max;
  } else {
    const double tau = slowest_relaxation_time(gen);
    if (!std::isfinite(tau))
      throw ConfigError("`solver.t_max`: required when some bath has zero coupling");
    s.t_max = cfg.solver.relaxation_times * tau;
  }
  if (!std::isfinite(s.dt)) throw ConfigError("`solver.dt`: required for a zero generator");
  const auto steps = static_cast<std::size_t>(std::ceil(s.t_max / s.dt - 1e-9));
  s.record_stride = cfg.solver.record_stride.value_or(std::max<std::size_t>(1, steps / 1000));
  s.positivity_tol = cfg.solver.positivity_tol;
  s.stepper = cfg.solver.stepper;
  return s;
}

}  // namespace lindloc::cli
