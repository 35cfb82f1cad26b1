#include "ima_cli/run.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ima/contrast.hpp"
#include "ima/csv.hpp"
#include "ima/errors.hpp"
#include "ima/rng.hpp"

#ifndef IMA_LAB_VERSION
#define IMA_LAB_VERSION "0.0.0"
#endif

namespace ima::cli {

namespace {

namespace fs = std::filesystem;

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << Json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << '\n';
}

std::vector<int> ints(const Json& j) { return j.get<std::vector<int>>(); }

SweepConfig sweep_config(const RunConfig& rc) {
  const Json& p = rc.params;
  SweepConfig c;
  c.d = p.at("d").get<int>();
  c.delta = p.at("delta").get<double>();
  c.m_list = ints(p.at("m_list"));
  c.trials = p.at("trials").get<int>();
  c.radial = radial_from_name(p.at("radial").get<std::string>(), "radial");
  c.kappa = p.at("kappa").get<double>();
  c.seed = rc.master_seed;
  c.threads = rc.threads;
  return c;
}

GenericityConfig genericity_config(const RunConfig& rc) {
  const Json& p = rc.params;
  GenericityConfig c;
  c.d = p.at("d").get<int>();
  c.m_list = ints(p.at("m_list"));
  c.grid_delta = p.at("grid_delta").get<double>();
  c.eps = p.at("eps").get<double>();
  c.delta_contrast = p.at("delta_contrast").get<double>();
  c.trials = p.at("trials").get<int>();
  c.n_mc = p.at("n_mc").get<int>();
  c.radial = radial_from_name(p.at("radial").get<std::string>(), "radial");
  c.kappa = p.at("kappa").get<double>();
  c.seed = rc.master_seed;
  c.threads = rc.threads;
  return c;
}

SpuriousConfig spurious_config(const RunConfig& rc) {
  const Json& p = rc.params;
  SpuriousConfig c;
  c.m = p.at("m").get<int>();
  c.sources = sources_from_json(p.at("sources"), "sources");
  c.rotation_degrees = p.at("rotation_degrees").get<double>();
  if (!p.at("rotation").is_null()) c.rotation = matrix_from_json(p.at("rotation"), "rotation");
  c.similarity_scale = p.at("similarity_scale").get<double>();
  if (!p.at("inversion_center").is_null()) {
    c.inversion_center = vector_from_json(p.at("inversion_center"), "inversion_center");
  }
  c.n_samples = p.at("n_samples").get<int>();
  c.darmois_resolution = p.at("darmois_resolution").get<int>();
  c.darmois_half_width = p.at("darmois_half_width").get<double>();
  c.floor = p.at("floor").get<double>();
  c.sigma_factor = p.at("sigma_factor").get<double>();
  c.ground_truth_tol = p.at("ground_truth_tol").get<double>();
  c.seed = rc.master_seed;
  c.threads = rc.threads;
  return c;
}

void run_contrast(const RunConfig& rc, std::ostream& csv) {
  const Json& p = rc.params;
  if (!p.at("matrix").is_null()) {
    const Matrix j = matrix_from_json(p.at("matrix"), "matrix");
    const LocalContrast c = local_ima_contrast_detail(j);
    const double coherence = offdiag_coherence(j);
    const auto d = static_cast<int>(j.cols());
    const bool bound_applies = d < 2 || (d - 1) * coherence < 1.0;
    CsvWriter w(csv);
    w.header({"rows", "cols", "local_contrast", "clamped", "coherence", "hadamard_gap_upper_bound"});
    w.cell(static_cast<long long>(j.rows())).cell(d).cell(c.value).cell(c.clamped).cell(coherence);
    if (bound_applies) {
      w.cell(hadamard_gap_upper_bound(d, coherence));
    } else {
      w.cell(std::string("inf"));
    }
    w.end_row();
    return;
  }
  const MapPtr map = build_map(p.at("map"), derive_seed(rc.master_seed, 1));
  const auto est = estimate_global_contrast(*map, sources_from_json(p.at("sources"), "sources"),
                                            p.at("n").get<int>(), derive_seed(rc.master_seed, 2), rc.threads);
  write_estimate_csv(csv, p.at("map").at("family").get<std::string>(), est);
}

void run_reparam(const RunConfig& rc, std::ostream& csv) {
  const Json& p = rc.params;
  ReparamConfig c;
  c.map = build_map(p.at("map"), derive_seed(rc.master_seed, 1));
  c.sources = sources_from_json(p.at("sources"), "sources");
  c.permutation = ints(p.at("permutation"));
  for (const auto& t : p.at("transforms")) c.transforms.push_back(transform_from_json(t, "transforms"));
  c.n = p.at("n").get<int>();
  c.seed = derive_seed(rc.master_seed, 2);
  c.threads = rc.threads;
  write_reparam_csv(csv, reparam_invariance_check(c));
}

void dispatch(const RunConfig& rc, std::ostream& csv) {
  if (rc.command == "contrast") {
    run_contrast(rc, csv);
  } else if (rc.command == "sweep") {
    write_sweep_csv(csv, concentration_sweep(sweep_config(rc)));
  } else if (rc.command == "genericity") {
    write_genericity_csv(csv, genericity_experiment(genericity_config(rc)));
  } else if (rc.command == "spurious") {
    write_gap_csv(csv, spurious_gap_experiment(spurious_config(rc)));
  } else if (rc.command == "reparam") {
    run_reparam(rc, csv);
  } else {
    throw ValidationError("unknown command '" + rc.command + "'");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::uint64_t parse_seed(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected a non-negative 64-bit integer");
  }
  if (used != text.size()) throw ValidationError(where + ": expected a non-negative 64-bit integer");
  return v;
}

}  // namespace

RunConfig run_config_from_json(const Json& j) {
  ObjectReader r(j, "config");
  RunConfig rc;
  rc.command = r.string("command", "");
  if (std::find(kCommands.begin(), kCommands.end(), rc.command) == kCommands.end()) {
    r.fail("command", "expected one of contrast, sweep, genericity, spurious, reparam");
  }
  rc.params = normalize_params(rc.command, r.has("params") ? r.raw("params") : Json::object());
  rc.master_seed = r.u64("master_seed", 0);
  rc.threads = r.integer("threads", 1);
  if (rc.threads < 1 || rc.threads > 1024) r.fail("threads", "must be in [1, 1024]");
  rc.output_dir = r.string("output_dir", ".");
  if (rc.output_dir.empty()) r.fail("output_dir", "must not be empty");
  r.finish();
  return rc;
}

Json run_config_to_json(const RunConfig& config) {
  return {{"command", config.command},
          {"params", config.params},
          {"master_seed", config.master_seed},
          {"threads", config.threads},
          {"output_dir", config.output_dir}};
}

int run(const RunConfig& config, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream csv;
  try {
    dispatch(config, csv);
  } catch (const ValidationError& e) {
    report_error(err, "ValidationError", e.what(), kExitValidation);
    return kExitValidation;
  } catch (const Error& e) {
    const int code = is_numerical_failure(e.kind()) ? kExitNumerical : kExitValidation;
    report_error(err, std::string(to_string(e.kind())), e.what(), code);
    return code;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Json manifest{{"config", run_config_to_json(config)},
                      {"master_seed", config.master_seed},
                      {"wall_time_seconds", wall},
                      {"version", IMA_LAB_VERSION},
                      {"outputs", {config.command + ".csv"}}};
  try {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    write_file(dir / (config.command + ".csv"), csv.str());
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    report_error(err, "IoError", e.what(), kExitValidation);
    return kExitValidation;
  }
  return kExitOk;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Independent mechanism analysis experiments", "ima_lab"};
  app.set_version_flag("--version", IMA_LAB_VERSION);
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::string seed;
    int threads = 0;
    std::string output_dir;
  };
  Flags flags;
  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", flags.config, "RunConfig JSON file");
    sub->add_option("--seed", flags.seed, "master seed (overrides IMA_LAB_SEED and the config)");
    sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--output-dir", flags.output_dir, "directory for <command>.csv and manifest.json");
    sub->footer(params_help(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error(std::cerr, "UsageError", e.what(), kExitValidation);
    return kExitValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig rc;
  try {
    Json doc = Json::object();
    if (!flags.config.empty()) {
      std::ifstream in(flags.config);
      if (!in) throw ValidationError("cannot read config file " + flags.config);
      try {
        doc = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!doc.is_object()) throw ValidationError("config must be a JSON object");
      if (doc.contains("command") && doc["command"] != command) {
        throw ValidationError("config command does not match subcommand '" + command + "'");
      }
    }
    doc["command"] = command;
    if (!flags.seed.empty()) {
      doc["master_seed"] = parse_seed(flags.seed, "--seed");
    } else if (const char* env = std::getenv("IMA_LAB_SEED"); env != nullptr && *env != '\0') {
      doc["master_seed"] = parse_seed(env, "IMA_LAB_SEED");
    }
    if (flags.threads > 0) doc["threads"] = flags.threads;
    if (!flags.output_dir.empty()) doc["output_dir"] = flags.output_dir;
    rc = run_config_from_json(doc);
  } catch (const ValidationError& e) {
    report_error(std::cerr, "ValidationError", e.what(), kExitValidation);
    return kExitValidation;
  }
  return run(rc, std::cerr);
}

}  // namespace ima::cli
