// jensen-lab: run one job file and print its report as JSON.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "jensen_lab/jensen_lab.hpp"

namespace {

using jlab::ojson;

struct Options {
  std::string command;
  std::string job_path;
  std::optional<std::string> csv_path;
  std::optional<std::string> witness_path;
  std::optional<long> panels;
  std::optional<long> grid;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<long> budget;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw jlab::InputError("cannot read job file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw jlab::InputError("cannot open '" + path + "' for writing");
  os << text << '\n';
}

// Command-line flags override the corresponding job params.
void apply_overrides(ojson& doc, const Options& opt) {
  if (!doc.is_object()) return;
  if (!doc.contains("command")) {
    doc["command"] = opt.command;
  } else if (doc["command"] != opt.command) {
    throw jlab::SchemaError("/command", "job command does not match the command-line command '" + opt.command + "'");
  }
  if (doc.contains("params") && !doc["params"].is_object()) return;  // reported by the schema check
  ojson& p = doc["params"];
  if (p.is_null()) p = ojson::object();
  if (opt.panels) p["panels"] = *opt.panels;
  if (opt.grid) p["grid"] = *opt.grid;
  if (opt.tol)
    for (const char* k : {"shape_tol", "cert_tol", "hyp_tol", "gap_tol"}) p[k] = *opt.tol;
  if (opt.seed) p["seed"] = *opt.seed;
  if (opt.budget) p["budget"] = *opt.budget;
}

int fail(int code, const std::string& kind, const std::string& message, ojson detail = ojson::object()) {
  std::cerr << "jensen-lab: " << kind << ": " << message << '\n';
  ojson out = ojson::object();
  out["version"] = jlab::kVersion;
  ojson err = ojson::object();
  err["kind"] = kind;
  err["message"] = message;
  for (const auto& item : detail.items()) err[item.key()] = item.value();
  out["error"] = err;
  out["exit_code"] = code;
  std::cout << jlab::dump_stable(out) << '\n';
  return code;
}

int run(const Options& opt) {
  try {
    ojson doc = jlab::parse_json_text(read_file(opt.job_path));
    apply_overrides(doc, opt);
    const jlab::Job job = jlab::parse_job_value(doc);
    if (opt.witness_path && job.command != jlab::Command::mine)
      throw jlab::InputError("--witness is only supported for mine");
    const jlab::Report rep = jlab::execute(job, opt.csv_path);
    std::cout << jlab::dump_stable(rep.json) << '\n';
    if (opt.witness_path) {
      const ojson& w = rep.json["result"]["witness"];
      if (w.is_null())
        std::cerr << "jensen-lab: no counterexample found; witness file not written\n";
      else
        write_file(*opt.witness_path, jlab::dump_stable(w));
    }
    return rep.exit_code;
  } catch (const jlab::ParseError& e) {
    ojson d = ojson::object();
    d["byte_offset"] = e.byte_offset();
    return fail(jlab::exit_code::input_error, "parse_error", e.what(), d);
  } catch (const jlab::SchemaError& e) {
    ojson d = ojson::object();
    d["path"] = e.path();
    return fail(jlab::exit_code::input_error, "schema_error", e.what(), d);
  } catch (const jlab::DomainError& e) {
    ojson d = ojson::object();
    d["point"] = e.point();
    return fail(jlab::exit_code::input_error, "domain_error", e.what(), d);
  } catch (const jlab::InputError& e) {
    return fail(jlab::exit_code::input_error, "input_error", e.what());
  } catch (const jlab::NonConvergenceError& e) {
    ojson d = ojson::object();
    d["best_value"] = e.best_value();
    d["error_estimate"] = e.error_estimate();
    return fail(jlab::exit_code::non_convergence, "non_convergence", e.what(), d);
  } catch (const jlab::ConstructionError& e) {
    ojson d = ojson::object();
    d["worst_point"] = e.worst_point();
    return fail(jlab::exit_code::hypothesis_failed, "construction_error", e.what(), d);
  } catch (const std::exception& e) {
    return fail(jlab::exit_code::input_error, "error", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify Steffensen-Popoviciu measures and verify Jensen-type inequalities"};
  app.name("jensen-lab");
  Options opt;
  std::vector<std::string> commands;
  for (const auto& [cmd, name] : jlab::kCommandNames) commands.emplace_back(name);
  app.add_option("command", opt.command, "certify-sp | moments | check-shape | check-jensen | mine | optimize-example | fuzz")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("--job", opt.job_path, "Job file (JSON)")->required();
  app.add_option("--csv", opt.csv_path, "Write profile or margin curves to this CSV file");
  app.add_option("--witness", opt.witness_path, "mine: write the found witness as a replayable job file");
  app.add_option("--panels", opt.panels, "Quadrature panels per segment")->check(CLI::PositiveNumber);
  app.add_option("--grid", opt.grid, "Shape-check grid size")->check(CLI::Range(3L, 100000000L));
  app.add_option("--tol", opt.tol, "shape, certificate, hypothesis and gap tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "Random seed for mine, optimize-example and fuzz");
  app.add_option("--budget", opt.budget, "Evaluation budget for mine and optimize-example")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return jlab::exit_code::input_error;
  }
  return run(opt);
}
