// angles: principal angles between subspaces from the geometric product.
//
//   angles run <files...> [--oracle] [--tolerance <float>]
//                         [--format json|text] [--mode euclidean|conformal]
//   angles selftest [--seed <int>] [--cases <int>]

#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gaangle/problem.hpp"
#include "gaangle/random_problem.hpp"

namespace {

using gaangle::ExitCode;

struct Outcome {
  std::string output;
  std::string error;
  ExitCode code = ExitCode::Ok;
};

Outcome run_file(const std::string& path,
                 const gaangle::ProblemOverrides& overrides, bool as_json) {
  Outcome out;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.error = path + ": cannot read file";
    out.code = ExitCode::InvalidDocument;
    return out;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const auto problem = gaangle::parse_problem(buffer.str(), overrides);
    const auto doc = gaangle::run_problem(problem);
    out.output = as_json ? gaangle::report_to_json(doc).dump() + "\n"
                         : path + "\n" + gaangle::report_to_text(doc);
  } catch (const std::exception& e) {
    out.error = path + ": " + e.what();
    out.code = gaangle::exit_code_for(e);
  }
  return out;
}

int run_command(const std::vector<std::string>& files,
                const gaangle::ProblemOverrides& overrides, bool as_json) {
  std::vector<std::future<Outcome>> pending;
  for (const auto& f : files) {
    pending.push_back(std::async(std::launch::async, run_file, f, overrides, as_json));
  }
  ExitCode status = ExitCode::Ok;
  for (auto& job : pending) {
    const Outcome o = job.get();
    std::cout << o.output;
    if (o.code != ExitCode::Ok) {
      std::cerr << "angles: " << o.error << "\n";
      if (status == ExitCode::Ok) status = o.code;
    }
  }
  std::cout.flush();
  return static_cast<int>(status);
}

int selftest_command(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  const gaangle::RandomProblemConfig config;
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const auto random = gaangle::generate_random_problem(rng, config);
    gaangle::SubspaceProblem p;
    p.n = random.n;
    p.a_span = random.a_span;
    p.b_span = random.b_span;
    p.oracle = true;
    try {
      const auto doc = gaangle::run_problem(p);
      worst = std::max(worst, doc.oracle->max_deviation);
      if (doc.oracle->max_deviation > 1e-8 || doc.oracle->s != doc.report.s ||
          doc.oracle->t != doc.report.t) {
        ++failures;
        std::cerr << "case " << i << ": engine and oracle disagree\n"
                  << gaangle::report_to_text(doc);
      }
    } catch (const std::exception& e) {
      ++failures;
      std::cerr << "case " << i << ": " << e.what() << "\n";
    }
  }
  std::cout << "selftest seed " << seed << ": " << cases << " cases, "
            << failures << " failures, max angle deviation " << worst << "\n";
  return failures == 0 ? 0 : static_cast<int>(ExitCode::SelftestFailed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal angles between subspaces via the geometric product"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  bool oracle = false;
  double tolerance = gaangle::kDefaultTolerance;
  std::string format = "json";
  std::string mode;
  auto* run = app.add_subcommand("run", "Evaluate problem documents");
  run->add_option("files", files, "Problem documents (JSON)")->required();
  run->add_flag("--oracle", oracle, "Cross-check against the matrix oracle");
  auto* tol_opt = run->add_option("--tolerance", tolerance,
                                  "Zero threshold for grade parts and tangents")
                      ->check(CLI::PositiveNumber);
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  run->add_option("--mode", mode, "Override the document mode")
      ->check(CLI::IsMember({"euclidean", "conformal"}));

  std::uint64_t seed = 1;
  int cases = 1000;
  auto* selftest = app.add_subcommand("selftest", "Random engine/oracle comparison");
  selftest->add_option("--seed", seed, "Generator seed");
  selftest->add_option("--cases", cases, "Number of random problems")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
  }

  if (*run) {
    gaangle::ProblemOverrides overrides;
    if (oracle) overrides.oracle = true;
    if (*tol_opt) overrides.tolerance = tolerance;
    if (!mode.empty()) overrides.mode = gaangle::parse_mode(mode);
    return run_command(files, overrides, format == "json");
  }
  return selftest_command(seed, cases);
}
