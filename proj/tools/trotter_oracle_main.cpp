#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trotter/error_lab.hpp"
#include "trotter/experiments.hpp"
#include "trotter/hamiltonians.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const trotter::lab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const trotter::HamiltonianFormatError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const trotter::lab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const trotter::UnfittableError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const trotter::UndefinedPhaseError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const trotter::lab::IoError& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-formula error laboratory and resource estimator"};
  app.set_version_flag("--version",
                       std::string("trotter-oracle ") +
                           trotter::lab::kToolVersion);
  app.require_subcommand(1);

  // run
  std::string config_path;
  std::string output_dir;
  int jobs = 0;
  auto* run = app.add_subcommand(
      "run", "run an experiment from a JSON config (or a manifest)");
  run->add_option("config", config_path, "config or manifest JSON file")
      ->required();
  run->add_option("--jobs", jobs, "max concurrent sweep tasks");
  run->add_option("--output", output_dir, "output directory override");

  // describe
  std::string experiment;
  auto* describe =
      app.add_subcommand("describe", "print an experiment's config schema");
  describe->add_option("experiment", experiment, "experiment name")
      ->required();

  // gen-hamiltonian
  int gen_n = 0;
  std::int64_t gen_l = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-hamiltonian",
                                 "sample a random operator and write it to "
                                 "a canonical JSON file");
  gen->add_option("--n", gen_n, "number of qubits")->required();
  gen->add_option("--l", gen_l, "number of terms (default n^2)");
  gen->add_option("--seed", gen_seed, "sampling seed")->required();
  gen->add_option("--out", gen_out, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return guarded([&] {
      trotter::lab::RunOptions options;
      options.jobs = jobs;
      if (!output_dir.empty()) options.output_dir = output_dir;
      const auto outcome =
          trotter::lab::run_experiment_file(config_path, options);
      std::cout << "wrote " << outcome.csv_path.string() << "\n";
      std::cout << "wrote " << outcome.manifest_path.string() << "\n";
    });
  }

  if (describe->parsed()) {
    return guarded([&] {
      std::cout << trotter::lab::describe_experiment(experiment);
    });
  }

  if (gen->parsed()) {
    return guarded([&] {
      const trotter::PauliSum h = trotter::random_pauli_hamiltonian(
          gen_n, gen_l < 0 ? 0 : static_cast<std::size_t>(gen_l),
          trotter::RngSeed{gen_seed, "gen-hamiltonian"});
      trotter::save_hamiltonian(h, gen_out);
      std::cout << "wrote " << gen_out << " (n=" << gen_n
                << ", l=" << h.size() << ")\n";
    });
  }

  return 0;
}
