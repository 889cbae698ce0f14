#include "trotter/experiments.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "trotter/error_lab.hpp"
#include "trotter/hamiltonians.hpp"
#include "trotter/parallel.hpp"
#include "trotter/qre.hpp"
#include "trotter/shots.hpp"

namespace trotter::lab {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw IoError("digest computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// config schema

struct KeyDef {
  std::string key;
  json default_value;
  std::string help;
};

using Row = std::vector<std::string>;

struct RunContext {
  json config;       // resolved
  RngSeed seed;      // {master_seed, ""}
  int jobs;          // 0 = default
  json seed_record;  // labels -> derived 64-bit seeds, for the manifest
};

struct ExperimentDef {
  std::string name;
  std::string summary;
  std::vector<KeyDef> keys;
  std::vector<std::string> columns;
  std::function<std::vector<Row>(RunContext&)> run;
};

const std::vector<ExperimentDef>& registry();

const ExperimentDef& find_experiment(const std::string& name) {
  for (const auto& def : registry()) {
    if (def.name == name) return def;
  }
  std::string names;
  for (const auto& def : registry()) {
    names += names.empty() ? def.name : ", " + def.name;
  }
  throw ConfigError("unknown experiment \"" + name + "\"; known: " + names);
}

json resolve_config(const json& user, const ExperimentDef& def) {
  if (!user.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  json resolved = json::object();
  resolved["experiment"] = def.name;
  for (const auto& k : def.keys) resolved[k.key] = k.default_value;
  for (const auto& [key, value] : user.items()) {
    if (key == "experiment") continue;
    bool known = false;
    for (const auto& k : def.keys) {
      if (k.key == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown config key \"" + key + "\" for experiment " +
                        def.name);
    }
    resolved[key] = value;
  }
  return resolved;
}

// typed accessors that name the key on mismatch

double get_number(const json& cfg, const std::string& key) {
  if (!cfg.at(key).is_number()) {
    throw ConfigError("config key \"" + key + "\" must be a number");
  }
  return cfg.at(key).get<double>();
}

std::int64_t get_int(const json& cfg, const std::string& key) {
  if (!cfg.at(key).is_number_integer()) {
    throw ConfigError("config key \"" + key + "\" must be an integer");
  }
  return cfg.at(key).get<std::int64_t>();
}

std::vector<std::int64_t> get_int_list(const json& cfg, const std::string& key) {
  const json& v = cfg.at(key);
  if (v.is_number_integer()) return {v.get<std::int64_t>()};
  if (!v.is_array()) {
    throw ConfigError("config key \"" + key +
                      "\" must be an integer or an array of integers");
  }
  std::vector<std::int64_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) {
      throw ConfigError("config key \"" + key + "\" has a non-integer entry");
    }
    out.push_back(e.get<std::int64_t>());
  }
  if (out.empty()) throw ConfigError("config key \"" + key + "\" is empty");
  return out;
}

std::vector<double> get_number_list(const json& cfg, const std::string& key) {
  const json& v = cfg.at(key);
  if (!v.is_array()) {
    throw ConfigError("config key \"" + key + "\" must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw ConfigError("config key \"" + key + "\" has a non-number entry");
    }
    out.push_back(e.get<double>());
  }
  if (out.empty()) throw ConfigError("config key \"" + key + "\" is empty");
  return out;
}

// ---------------------------------------------------------------------------
// shared pieces

PauliSum resolve_hamiltonian(RunContext& ctx) {
  const json& spec = ctx.config.at("hamiltonian");
  if (spec.is_object() && spec.contains("file")) {
    if (!spec.at("file").is_string()) {
      throw ConfigError("config key \"hamiltonian.file\" must be a string");
    }
    return load_hamiltonian(spec.at("file").get<std::string>()).hamiltonian;
  }
  if (spec.is_object() && spec.contains("random")) {
    const json& r = spec.at("random");
    if (!r.is_object() || !r.contains("n") || !r.at("n").is_number_integer()) {
      throw ConfigError(
          "config key \"hamiltonian.random\" must be {\"n\": int, \"l\": int?, "
          "\"seed\": int?}");
    }
    const int n = r.at("n").get<int>();
    const std::size_t l =
        r.contains("l") ? r.at("l").get<std::size_t>() : std::size_t{0};
    RngSeed seed = ctx.seed.derived("hamiltonian");
    if (r.contains("seed")) {
      seed = RngSeed{r.at("seed").get<std::uint64_t>(), "hamiltonian"};
    }
    ctx.seed_record[seed.stream_label] = seed.value();
    return random_pauli_hamiltonian(n, l, seed);
  }
  throw ConfigError(
      "config key \"hamiltonian\" must be {\"random\": {...}} or "
      "{\"file\": \"path\"}");
}

double resolve_time(RunContext& ctx, const PauliSum& h) {
  if (!ctx.config.at("t").is_null()) {
    const double t = get_number(ctx.config, "t");
    if (!(t > 0.0)) throw ConfigError("config key \"t\" must be positive");
    return t;
  }
  return default_time(h, get_number(ctx.config, "time_divisor"));
}

double ground_phase_or_throw(const SpectralData& spectrum,
                             const RotationSchedule& schedule,
                             const StateVector& psi) {
  const double theta = phase_error(spectrum, schedule, psi);
  if (std::abs(theta) < 1e-10) {
    throw NumericalError(
        "phase error magnitude " + std::to_string(std::abs(theta)) +
        " is below 1e-10; floating-point noise would dominate this system");
  }
  return theta;
}

const KeyDef kKeyMasterSeed{"master_seed", 42,
                            "seed for every derived random stream"};
const KeyDef kKeyOutputDir{"output_dir", ".",
                           "directory for the CSV and manifest"};
const KeyDef kKeyHamRandom3{"hamiltonian", json{{"random", {{"n", 3}}}},
                            "operator spec: {\"random\": {\"n\": N, \"l\": L "
                            "(default N^2), \"seed\": S}} or {\"file\": path}"};
const KeyDef kKeyK{"k", 0, "target eigenstate index (0 = ground state)"};
const KeyDef kKeyTNull{"t", nullptr,
                       "explicit evolution time; overrides time_divisor"};

std::vector<std::int64_t> default_shots_grid() {
  return {100, 316, 1000, 3162, 10000, 31623, 100000, 316228, 1000000};
}

// log-spaced sample-count checkpoints 1..m_samples
std::vector<std::int64_t> checkpoint_grid(std::int64_t m_samples, int points) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / (points - 1);
    const auto m = static_cast<std::int64_t>(
        std::llround(std::pow(static_cast<double>(m_samples), frac)));
    if (out.empty() || m > out.back()) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// experiment bodies

std::vector<Row> run_phase_accuracy(RunContext& ctx) {
  const PauliSum h = resolve_hamiltonian(ctx);
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const double t = resolve_time(ctx, h);
  const SpectralData spectrum = exact_eigenpairs(h);
  const StateVector psi = eigenstate(spectrum, k);
  const RotationSchedule target = trotter_schedule(h, p, 1, t);
  const double theta = ground_phase_or_throw(spectrum, target, psi);

  std::vector<Row> rows;
  for (std::int64_t p_prime : get_int_list(ctx.config, "p_prime")) {
    const RotationSchedule reference =
        trotter_schedule(h, static_cast<int>(p_prime), 1, t);
    const double theta_tilde = approx_phase_error(target, reference, psi);
    const double rel = std::abs(theta_tilde - theta) / std::abs(theta);
    rows.push_back({std::to_string(p_prime), g17(theta_tilde), g17(theta),
                    g17(rel)});
  }
  return rows;
}

struct SweepPoint {
  std::int64_t n;
  std::int64_t seed_index;
};

std::vector<SweepPoint> sweep_points(const RunContext& ctx) {
  std::vector<SweepPoint> points;
  for (std::int64_t n : get_int_list(ctx.config, "n_grid")) {
    for (std::int64_t s = 0; s < get_int(ctx.config, "seeds_per_point"); ++s) {
      points.push_back({n, s});
    }
  }
  return points;
}

PauliSum sweep_hamiltonian(RunContext& ctx, const SweepPoint& pt) {
  const std::int64_t l = get_int(ctx.config, "l");
  const RngSeed seed = ctx.seed.derived("H/n" + std::to_string(pt.n) + "/s" +
                                        std::to_string(pt.seed_index));
  const auto n_terms =
      l > 0 ? static_cast<std::size_t>(l)
            : static_cast<std::size_t>(pt.n) * static_cast<std::size_t>(pt.n);
  return random_pauli_hamiltonian(static_cast<int>(pt.n), n_terms, seed);
}

void record_sweep_seeds(RunContext& ctx) {
  for (const auto& pt : sweep_points(ctx)) {
    const RngSeed seed = ctx.seed.derived("H/n" + std::to_string(pt.n) + "/s" +
                                          std::to_string(pt.seed_index));
    ctx.seed_record[seed.stream_label] = seed.value();
  }
}

std::vector<Row> run_size_sweep(RunContext& ctx) {
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto p_prime = static_cast<int>(get_int(ctx.config, "p_prime"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const double divisor = get_number(ctx.config, "time_divisor");
  const auto points = sweep_points(ctx);
  record_sweep_seeds(ctx);

  std::vector<Row> rows(points.size());
  parallel_for(static_cast<std::int64_t>(points.size()), ctx.jobs,
               [&](std::int64_t i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    const PauliSum h = sweep_hamiltonian(ctx, pt);
    const double t = default_time(h, divisor);
    const SpectralData spectrum = exact_eigenpairs(h);
    const StateVector psi = eigenstate(spectrum, k);
    const RotationSchedule target = trotter_schedule(h, p, 1, t);
    const RotationSchedule reference = trotter_schedule(h, p_prime, 1, t);
    const double theta = phase_error(spectrum, target, psi);
    const double theta_tilde = approx_phase_error(target, reference, psi);
    const double rel = std::abs(theta) >= 1e-10
                           ? std::abs(theta_tilde - theta) / std::abs(theta)
                           : std::numeric_limits<double>::quiet_NaN();
    rows[static_cast<std::size_t>(i)] = {
        std::to_string(pt.n),          std::to_string(h.size()),
        std::to_string(pt.seed_index), g17(theta),
        g17(theta_tilde),              g17(rel)};
  });
  return rows;
}

std::vector<Row> run_error_ratio(RunContext& ctx) {
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto p_prime = static_cast<int>(get_int(ctx.config, "p_prime"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const double divisor = get_number(ctx.config, "time_divisor");
  const auto points = sweep_points(ctx);
  record_sweep_seeds(ctx);

  std::vector<Row> rows(points.size());
  parallel_for(static_cast<std::int64_t>(points.size()), ctx.jobs,
               [&](std::int64_t i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    const PauliSum h = sweep_hamiltonian(ctx, pt);
    const double t = default_time(h, divisor);
    const double w_c = commutator_bound(h);
    const SpectralData spectrum = exact_eigenpairs(h);
    const StateVector psi = eigenstate(spectrum, k);
    const RotationSchedule target = trotter_schedule(h, p, 1, t);
    const RotationSchedule reference = trotter_schedule(h, p_prime, 1, t);
    const double eps_ts = trotter_error(spectrum, target, k);
    if (eps_ts < 1e-12) {
      throw NumericalError("eigenvalue error below 1e-12 for n=" +
                           std::to_string(pt.n) + " seed " +
                           std::to_string(pt.seed_index) +
                           "; ratios would be noise");
    }
    const double theta_tilde = approx_phase_error(target, reference, psi);
    rows[static_cast<std::size_t>(i)] = {
        std::to_string(pt.n),
        std::to_string(h.size()),
        std::to_string(pt.seed_index),
        g17(eps_ts),
        g17(w_c * t * t / eps_ts),
        g17(std::abs(theta_tilde) / t / eps_ts)};
  });
  return rows;
}

std::vector<Row> run_resources(RunContext& ctx) {
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto p_prime = static_cast<int>(get_int(ctx.config, "p_prime"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const double eps = get_number(ctx.config, "epsilon");
  const auto points = sweep_points(ctx);
  record_sweep_seeds(ctx);

  std::vector<Row> rows(points.size());
  parallel_for(static_cast<std::int64_t>(points.size()), ctx.jobs,
               [&](std::int64_t i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    const PauliSum h = sweep_hamiltonian(ctx, pt);
    const CompareReport report = compare_estimates(h, k, eps, p, p_prime);
    rows[static_cast<std::size_t>(i)] = {std::to_string(pt.n),
                                         std::to_string(h.size()),
                                         std::to_string(pt.seed_index),
                                         g17(report.w_commutator),
                                         g17(report.w_exact),
                                         g17(report.w_quantum),
                                         g17(report.classical.o_star),
                                         g17(report.exact.o_star),
                                         g17(report.quantum.o_star),
                                         g17(report.measurement_operations)};
  });
  return rows;
}

std::vector<Row> run_shots(RunContext& ctx) {
  const PauliSum h = resolve_hamiltonian(ctx);
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto p_prime = static_cast<int>(get_int(ctx.config, "p_prime"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const double t = resolve_time(ctx, h);
  const SpectralData spectrum = exact_eigenpairs(h);
  const StateVector psi = eigenstate(spectrum, k);
  const RotationSchedule target = trotter_schedule(h, p, 1, t);
  const RotationSchedule reference = trotter_schedule(h, p_prime, 1, t);
  const AmplitudePair truth = hadamard_amplitude(target, reference, psi);
  const double theta_true = std::atan2(truth.y, truth.x);

  const auto grid = get_int_list(ctx.config, "shots_grid");
  std::vector<Row> rows(grid.size());
  parallel_for(static_cast<std::int64_t>(grid.size()), ctx.jobs,
               [&](std::int64_t i) {
    const std::int64_t shots = grid[static_cast<std::size_t>(i)];
    if (shots < 2) throw ConfigError("config key \"shots_grid\" entries must be >= 2");
    const RngSeed seed = ctx.seed.derived("shots/" + std::to_string(i));
    const auto [ex, ey] = sample_amplitude(truth, shots / 2, seed);
    const double r2 = ex.estimate * ex.estimate + ey.estimate * ey.estimate;
    if (r2 < 1e-8) {
      throw NumericalError("estimated amplitude vanished at " +
                           std::to_string(shots) + " shots");
    }
    const double theta = std::atan2(ey.estimate, ex.estimate);
    const double se = propagate_phase_stderr(ex.estimate, ey.estimate,
                                             ex.stderr_, ey.stderr_);
    rows[static_cast<std::size_t>(i)] = {std::to_string(shots),
                                         g17(ex.estimate),
                                         g17(ey.estimate),
                                         g17(theta),
                                         g17(se),
                                         g17(theta - 1.96 * se),
                                         g17(theta + 1.96 * se),
                                         g17(theta_true)};
  });
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
    ctx.seed_record["shots/" + std::to_string(i)] =
        ctx.seed.derived("shots/" + std::to_string(i)).value();
  }
  return rows;
}

std::vector<Row> run_fidelity_sweep(RunContext& ctx) {
  const PauliSum h = resolve_hamiltonian(ctx);
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const auto states = static_cast<int>(get_int(ctx.config, "states_per_point"));
  const double t = resolve_time(ctx, h);
  const auto f_grid = get_number_list(ctx.config, "f_grid");
  const SpectralData spectrum = exact_eigenpairs(h);
  const RotationSchedule schedule = trotter_schedule(h, p, 1, t);
  const double theta_target =
      phase_error(spectrum, schedule, eigenstate(spectrum, k));

  const RngSeed seed = ctx.seed.derived("fidelity");
  ctx.seed_record[seed.stream_label] = seed.value();
  const auto table = fidelity_sweep(spectrum, schedule, k, f_grid, states, seed);

  std::vector<Row> rows;
  for (const auto& pt : table) {
    rows.push_back({g17(pt.fidelity), g17(pt.mean_theta), g17(pt.ci_low),
                    g17(pt.ci_high), g17(theta_target)});
  }
  return rows;
}

std::vector<Row> run_opnorm(RunContext& ctx) {
  const PauliSum h = resolve_hamiltonian(ctx);
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const double t = resolve_time(ctx, h);
  const auto m_samples = get_int(ctx.config, "m_samples");
  if (m_samples < 1) throw ConfigError("config key \"m_samples\" must be >= 1");
  const SpectralData spectrum = exact_eigenpairs(h);
  const RotationSchedule schedule = trotter_schedule(h, p, 1, t);
  const double delta_exact = operator_norm_exact(spectrum, schedule);

  double theta_eig_max = 0.0;
  for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
    theta_eig_max = std::max(
        theta_eig_max,
        std::abs(phase_error(spectrum, schedule, eigenstate(spectrum, k))));
  }

  const RngSeed seed = ctx.seed.derived("opnorm");
  ctx.seed_record[seed.stream_label] = seed.value();
  std::vector<Row> rows;
  for (std::int64_t m : checkpoint_grid(m_samples, 21)) {
    const double delta_est =
        operator_norm_sampled(spectrum, schedule, static_cast<int>(m), seed);
    rows.push_back({std::to_string(m), g17(delta_est), g17(delta_exact),
                    g17(theta_eig_max)});
  }
  return rows;
}

std::vector<Row> run_fit_wk(RunContext& ctx) {
  const PauliSum h = resolve_hamiltonian(ctx);
  const auto p = static_cast<int>(get_int(ctx.config, "p"));
  const auto k = static_cast<Eigen::Index>(get_int(ctx.config, "k"));
  const std::string source_name = ctx.config.at("source").get<std::string>();
  FitSource source;
  if (source_name == "exact") {
    source = FitSource::exact;
  } else if (source_name == "approx_phase") {
    source = FitSource::approx_phase;
  } else {
    throw ConfigError(
        "config key \"source\" must be \"exact\" or \"approx_phase\"");
  }
  WkFitOptions opts;
  opts.grid_points = static_cast<int>(get_int(ctx.config, "grid_points"));
  opts.reference_order = static_cast<int>(get_int(ctx.config, "p_prime"));
  const WkFit fit = fit_wk(h, p, k, source, opts);

  std::vector<Row> rows;
  for (std::size_t i = 0; i < fit.t_grid.size(); ++i) {
    rows.push_back({g17(fit.t_grid[i]), g17(fit.errors[i]), g17(fit.w),
                    g17(fit.exponent_check), g17(fit.r_squared)});
  }
  return rows;
}

std::vector<Row> run_commutator_bound(RunContext& ctx) {
  const PauliSum h = resolve_hamiltonian(ctx);
  const double w_c = commutator_bound(h);
  const double l1 = l1_norm(h);
  const double norm = h.n_qubits() <= kDefaultDenseLimit
                          ? spectral_norm(h)
                          : std::numeric_limits<double>::quiet_NaN();
  return {{std::to_string(h.n_qubits()), std::to_string(h.size()), g17(w_c),
           g17(l1), g17(norm)}};
}

// ---------------------------------------------------------------------------
// registry

const std::vector<ExperimentDef>& registry() {
  static const std::vector<ExperimentDef> defs = [] {
    std::vector<ExperimentDef> v;

    v.push_back(
        {"phase-accuracy",
         "relative error of the reference-approximation phase against the "
         "exact phase error, per reference order",
         {kKeyHamRandom3,
          {"p", 2, "target product-formula order"},
          {"p_prime", json::array({2, 4, 6}),
           "reference order grid (int or array; default [2, 4, 6])"},
          {"time_divisor", 4.0, "t = pi / (time_divisor * ||H||)"},
          kKeyTNull,
          kKeyK,
          kKeyMasterSeed,
          kKeyOutputDir},
         {"p_prime", "theta_tilde", "theta_exact", "rel_err"},
         run_phase_accuracy});

    v.push_back(
        {"size-sweep",
         "reference-approximation accuracy across system sizes, random "
         "operators with l = n^2 terms",
         {{"n_grid", json::array({2, 3, 4, 5, 6, 7, 8}), "system sizes"},
          {"l", 0, "terms per operator; 0 means n^2"},
          {"seeds_per_point", 5, "independent operators per size"},
          {"p", 2, "target product-formula order"},
          {"p_prime", 4, "reference order"},
          {"time_divisor", 4.0, "t = pi / (time_divisor * ||H||)"},
          kKeyK,
          kKeyMasterSeed,
          kKeyOutputDir},
         {"n", "l", "seed_index", "theta_exact", "theta_tilde", "rel_err"},
         run_size_sweep});

    v.push_back(
        {"error-ratio",
         "overestimation ratios of the commutator bound and the measurable "
         "phase proxy against the true eigenvalue error",
         {{"n_grid", json::array({2, 3, 4, 5, 6, 7, 8}), "system sizes"},
          {"l", 0, "terms per operator; 0 means n^2"},
          {"seeds_per_point", 5, "independent operators per size"},
          {"p", 2, "target product-formula order"},
          {"p_prime", 4, "reference order"},
          {"time_divisor", 4.0, "t = pi / (time_divisor * ||H||)"},
          kKeyK,
          kKeyMasterSeed,
          kKeyOutputDir},
         {"n", "l", "seed_index", "eps_ts", "classical_ratio", "quantum_ratio"},
         run_error_ratio});

    v.push_back(
        {"resources",
         "operation counts for eigenvalue readout under commutator-bound, "
         "exact-fit, and measured-fit error constants",
         {{"n_grid", json::array({2, 3, 4, 5, 6, 7, 8}), "system sizes"},
          {"l", 0, "terms per operator; 0 means n^2"},
          {"seeds_per_point", 3, "independent operators per size"},
          {"p", 2, "target product-formula order"},
          {"p_prime", 4, "reference order"},
          {"epsilon", 0.01, "total error budget (energy units)"},
          kKeyK,
          kKeyMasterSeed,
          kKeyOutputDir},
         {"n", "l", "seed_index", "w_c", "w_exact", "w_quantum", "o_classical",
          "o_exact", "o_quantum", "theta_measurement_ops"},
         run_resources});

    v.push_back(
        {"shots",
         "finite-shot phase estimates with a 95% confidence interval per "
         "shot budget",
         {{"hamiltonian", json{{"random", {{"n", 4}}}},
           kKeyHamRandom3.help},
          {"p", 1, "target product-formula order"},
          {"p_prime", 4, "reference order"},
          {"time_divisor", 1.0, "t = pi / (time_divisor * ||H||)"},
          kKeyTNull,
          kKeyK,
          {"shots_grid", json(default_shots_grid()),
           "total shot budgets; each splits 50/50 between the real and "
           "imaginary circuits"},
          kKeyMasterSeed,
          kKeyOutputDir},
         {"shots", "x_est", "y_est", "theta_est", "delta_theta", "ci_low",
          "ci_high", "theta_true"},
         run_shots});

    v.push_back(
        {"fidelity-sweep",
         "mean phase error over random states of fixed overlap with the "
         "target eigenstate, with 95% confidence intervals",
         {{"hamiltonian", json{{"random", {{"n", 6}}}},
           kKeyHamRandom3.help},
          {"p", 2, "target product-formula order"},
          {"time_divisor", 1.0, "t = pi / (time_divisor * ||H||)"},
          kKeyTNull,
          kKeyK,
          {"f_grid", json::array({0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0}),
           "squared-overlap grid"},
          {"states_per_point", 100, "sampled states per grid value"},
          kKeyMasterSeed,
          kKeyOutputDir},
         {"f", "mean_theta", "ci_low", "ci_high", "theta_target"},
         run_fidelity_sweep});

    v.push_back(
        {"opnorm",
         "sampled operator-norm estimate (max |phase error| over random "
         "states) against the exact norm",
         {{"hamiltonian", json{{"random", {{"n", 4}}}},
           kKeyHamRandom3.help},
          {"p", 2, "target product-formula order"},
          {"time_divisor", 2.0, "t = pi / (time_divisor * ||H||)"},
          kKeyTNull,
          {"m_samples", 10000, "total states; checkpoints are log-spaced"},
          kKeyMasterSeed,
          kKeyOutputDir},
         {"m", "delta_est", "delta_exact", "theta_eig_max"},
         run_opnorm});

    v.push_back(
        {"fit-wk",
         "power-law error-constant fit over a 10-point log-spaced time grid "
         "in [pi/(4||H||), pi/(2||H||)]",
         {{"hamiltonian", json{{"random", {{"n", 4}}}},
           kKeyHamRandom3.help},
          {"p", 2, "target product-formula order (fit slope is pinned here)"},
          kKeyK,
          {"source", "exact",
           "\"exact\" (eigenvalue error) or \"approx_phase\" (measurable)"},
          {"p_prime", 4, "reference order for the approx_phase source"},
          {"grid_points", 10, "log-spaced grid size"},
          kKeyMasterSeed,
          kKeyOutputDir},
         {"t", "epsilon", "w", "exponent_check", "r_squared"},
         run_fit_wk});

    v.push_back({"commutator-bound",
                 "nested-commutator error constant and operator norms",
                 {kKeyHamRandom3, kKeyMasterSeed, kKeyOutputDir},
                 {"n", "l", "w_c", "l1_norm", "spectral_norm"},
                 run_commutator_bound});

    return v;
  }();
  return defs;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

RunOutcome run_experiment(const nlohmann::json& config_or_manifest,
                          const RunOptions& options) {
  json config = config_or_manifest;
  if (config.is_object() && config.contains("tool_version") &&
      config.contains("config")) {
    config = config.at("config");  // re-run of an emitted manifest
  }
  if (!config.is_object() || !config.contains("experiment") ||
      !config.at("experiment").is_string()) {
    throw ConfigError("config needs an \"experiment\" string key");
  }
  const ExperimentDef& def =
      find_experiment(config.at("experiment").get<std::string>());

  RunContext ctx;
  ctx.config = resolve_config(config, def);
  if (!ctx.config.at("master_seed").is_number_integer()) {
    throw ConfigError("config key \"master_seed\" must be an integer");
  }
  ctx.seed = RngSeed{ctx.config.at("master_seed").get<std::uint64_t>(), ""};
  ctx.jobs = options.jobs;
  ctx.seed_record = json::object();

  const std::filesystem::path out_dir =
      options.output_dir.value_or(std::filesystem::path(
          ctx.config.at("output_dir").get<std::string>()));
  if (options.output_dir) ctx.config["output_dir"] = out_dir.string();

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Row> rows = def.run(ctx);
  const auto t1 = std::chrono::steady_clock::now();

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::string csv = join(def.columns, ",") + "\n";
  for (const auto& row : rows) csv += join(row, ",") + "\n";

  RunOutcome outcome;
  outcome.csv_path = out_dir / (def.name + ".csv");
  {
    std::ofstream out(outcome.csv_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + outcome.csv_path.string());
    out << csv;
    if (!out) throw IoError("write to " + outcome.csv_path.string() + " failed");
  }

  json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["experiment"] = def.name;
  manifest["config"] = ctx.config;
  manifest["derived_seeds"] = ctx.seed_record;
  manifest["outputs"] = {{def.name + ".csv", "sha256:" + sha256_hex(csv)}};
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(t1 - t0).count();

  outcome.manifest_path = out_dir / "manifest.json";
  {
    std::ofstream out(outcome.manifest_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + outcome.manifest_path.string());
    out << manifest.dump(2) << "\n";
    if (!out) {
      throw IoError("write to " + outcome.manifest_path.string() + " failed");
    }
  }
  outcome.manifest = std::move(manifest);
  return outcome;
}

RunOutcome run_experiment_file(const std::filesystem::path& config_path,
                               const RunOptions& options) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + config_path.string());
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + config_path.string() +
                      " is not valid JSON: " + e.what());
  }
  return run_experiment(config, options);
}

std::string describe_experiment(const std::string& name) {
  const ExperimentDef& def = find_experiment(name);
  std::ostringstream out;
  out << "experiment: " << def.name << "\n";
  out << "  " << def.summary << "\n";
  out << "  keys:\n";
  for (const auto& k : def.keys) {
    out << "    " << k.key << " (default " << k.default_value.dump() << ") — "
        << k.help << "\n";
  }
  out << "  columns: " << join(def.columns, ",") << "\n";
  return out.str();
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& def : registry()) names.push_back(def.name);
  return names;
}

}  // namespace trotter::lab
