// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gaangle/angle_engine.hpp"
#include "gaangle/bivector_split.hpp"
#include "gaangle/conformal.hpp"
#include "gaangle/oracle.hpp"
#include "gaangle/random_problem.hpp"
#include "reference.hpp"

using namespace gaangle;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Verdict& v) {
  std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << name;
  if (!v.detail.empty()) std::cout << ": " << v.detail;
  std::cout << std::endl;
  if (!v.pass) ++failures;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// One random problem with everything the property criteria need.
struct Case {
  RandomProblem problem;
  Blade a, b;
  AngleReport report;
  oracle::PrincipalPairs pairs;
  std::vector<double> oracle_angles;  // descending
};

std::vector<Case> run_random_cases(std::uint64_t seed, int count, Verdict& ac1) {
  std::mt19937_64 rng(seed);
  const RandomProblemConfig config;
  std::vector<Case> cases;
  double worst = 0.0;
  int count_mismatch = 0, errors = 0;
  for (int i = 0; i < count; ++i) {
    const auto p = generate_random_problem(rng, config);
    const Signature sig = Signature::euclidean(p.n);
    try {
      Case c{p, Blade::from_vectors(sig, p.a_span), Blade::from_vectors(sig, p.b_span), {}, {}, {}};
      c.report = relative_angle(c.a, c.b);
      c.pairs = oracle::principal_angles(oracle::orthonormal_basis(p.a_span),
                                         oracle::orthonormal_basis(p.b_span));
      c.oracle_angles = c.pairs.angles;
      std::sort(c.oracle_angles.begin(), c.oracle_angles.end(), std::greater<>());
      for (std::size_t k = 0; k < c.oracle_angles.size(); ++k) {
        worst = std::max(worst, std::abs(c.oracle_angles[k] - c.report.angles[k]));
      }
      const int s = static_cast<int>(std::count_if(
          c.pairs.cosines.begin(), c.pairs.cosines.end(),
          [](double x) { return x >= 1.0 - oracle::kIntersectionTolerance; }));
      if (s != c.report.s || oracle::perpendicular_dimension(c.pairs) != c.report.t) {
        ++count_mismatch;
      }
      cases.push_back(std::move(c));
    } catch (const std::exception& e) {
      ++errors;
      std::cerr << "case " << i << ": " << e.what() << "\n";
    }
  }
  ac1.pass = worst <= 1e-8 && count_mismatch == 0 && errors == 0;
  ac1.detail = "max deviation " + fmt(worst) + ", s/t mismatches " +
               std::to_string(count_mismatch) + ", errors " + std::to_string(errors);
  return cases;
}

Multivector ordered_product(const Case& c) {
  return c.report.swapped ? c.b.mv() * reverse(c.a.mv()) : c.a.mv() * reverse(c.b.mv());
}

Verdict scalar_identity(const std::vector<Case>& cases) {
  double worst = 0.0;
  int checked = 0;
  for (const auto& c : cases) {
    if (c.a.grade() != c.b.grade()) continue;
    double product = 1.0;
    for (double x : c.pairs.cosines) product *= x;
    // The scalar part carries the relative orientation; the oracle cosines do not.
    worst = std::max(worst, std::abs(std::abs(cos_total(c.a, c.b)) - product));
    ++checked;
  }
  return {checked > 0 && worst <= 1e-10,
          std::to_string(checked) + " equal-grade cases, max error " + fmt(worst)};
}

Verdict top_grade_sines(const std::vector<Case>& cases) {
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto m = ordered_product(c) / (c.a.magnitude() * c.b.magnitude());
    int top = -1;
    double top_norm = 0.0;
    for (const auto& [k, part] : graded_parts(m)) {
      const double nk = coeff_norm(part);
      if (nk > 1e-9) {
        top = k;
        top_norm = nk;
      }
    }
    double sines = 1.0;
    for (double angle : c.oracle_angles) {
      if (angle > 1e-9) sines *= std::sin(angle);
    }
    if (top < 0) {
      worst = std::max(worst, 1.0);
      continue;
    }
    worst = std::max(worst, std::abs(top_norm - sines));
  }
  return {worst <= 1e-9, "max error " + fmt(worst)};
}

Verdict reconstruction(const std::vector<Case>& cases) {
  double worst = 0.0;
  for (const auto& c : cases) {
    const double scale = c.a.magnitude() * c.b.magnitude();
    const auto rebuilt = rotor_reconstruction(c.report, c.a.magnitude(), c.b.magnitude());
    worst = std::max(worst, coeff_norm(rebuilt - ordered_product(c)) / scale);
  }
  return {worst <= 1e-8, "max relative error " + fmt(worst)};
}

Verdict perpendicular_planes() {
  const Signature sig = Signature::euclidean(3);
  const auto r = relative_angle(Blade::from_multivector(Multivector::basis(sig, 0b011)),
                                Blade::from_multivector(Multivector::basis(sig, 0b101)));
  const bool ok = r.s == 1 && r.t == 1 && r.angles.size() == 2 &&
                  std::abs(r.angles[0] - std::numbers::pi / 2) <= 1e-12 &&
                  std::abs(r.angles[1]) <= 1e-12 && r.cos_total == 0.0;
  std::string angles;
  for (double a : r.angles) angles += " " + fmt(a);
  return {ok, "s=" + std::to_string(r.s) + " t=" + std::to_string(r.t) + " angles" +
                  angles + " cos_total=" + fmt(r.cos_total)};
}

Verdict bivector_contract() {
  std::mt19937_64 rng(20260);
  double recon = 0.0, square = 0.0, cross = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const Signature sig = Signature::euclidean(n);
    const auto f = grade_projection(reference::random_multivector(rng, sig), 2);
    const auto parts = bivector_split(f);
    Multivector sum(sig);
    for (const auto& p : parts) sum = sum + p.plane * p.beta;
    recon = std::max(recon, coeff_norm(sum - f));
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto sq = parts[k].plane * parts[k].plane;
      // Simple iff the square is a negative scalar.
      const double scalar = sq[0];
      square = std::max(square, coeff_norm(sq - Multivector::scalar(sig, scalar)));
      if (scalar >= 0.0) square = std::max(square, 1.0);
      for (std::size_t l = 0; l < parts.size(); ++l) {
        if (l != k) cross = std::max(cross, coeff_norm(left_contraction(parts[k].plane, parts[l].plane)));
      }
    }
  }
  return {recon <= 1e-9 && square <= 1e-9 && cross <= 1e-9,
          "reconstruction " + fmt(recon) + ", non-scalar square " + fmt(square) +
              ", cross contraction " + fmt(cross)};
}

Verdict parity(const std::vector<Case>& cases) {
  int violations = 0;
  for (const auto& c : cases) {
    const auto m = ordered_product(c);
    const int expected = (c.a.grade() + c.b.grade()) % 2;
    for (BladeMask mask = 0; mask < m.size(); ++mask) {
      if (m[mask] != 0.0 && grade_of(mask) % 2 != expected) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " wrong-parity coefficients"};
}

Verdict translation_invariance() {
  std::mt19937_64 rng(20261);
  const conformal::Space space(3);
  double worst = 0.0;
  int structure = 0;
  auto random_flat = [&](int k) {
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < k; ++i) dirs.push_back(reference::random_vector(rng, 3));
    return space.flat(reference::random_vector(rng, 3), dirs);
  };
  std::uniform_int_distribution<int> grade(1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_flat(grade(rng));
    const auto y = random_flat(grade(rng));
    const auto t = space.translator(reference::random_vector(rng, 3));
    const auto before = conformal::conformal_relative_angle(
        space, conformal::Object(space, x), conformal::Object(space, y));
    const auto after = conformal::conformal_relative_angle(
        space, conformal::Object(space, sandwich(t, x)), conformal::Object(space, sandwich(t, y)));
    if (before.s != after.s || before.t != after.t ||
        before.angles.size() != after.angles.size()) {
      ++structure;
      continue;
    }
    for (std::size_t k = 0; k < before.angles.size(); ++k) {
      worst = std::max(worst, std::abs(before.angles[k] - after.angles[k]));
    }
    worst = std::max(worst, std::abs(before.cos_total - after.cos_total));
  }
  return {worst <= 1e-8 && structure == 0,
          "max change " + fmt(worst) + ", structural changes " + std::to_string(structure)};
}

struct CliResult {
  std::string out;
  int status = -1;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ANGLES_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict cli_contract() {
  const std::string problems = PROBLEMS_DIR;
  const std::string golden = GOLDEN_DIR;
  std::vector<std::string> failed;
  std::string all_inputs, all_expected;
  for (const char* name : {"perpendicular_planes", "identical_spans", "mixed_dimension"}) {
    const std::string input = problems + "/" + name + ".json";
    const std::string expected = slurp(golden + "/" + name + ".expected");
    const auto r = run_cli("run " + input);
    if (r.status != 0 || expected.empty() || r.out != expected) failed.push_back(name);
    all_inputs += " " + input;
    all_expected += expected;
  }
  // Batch output keeps input order.
  const auto batch = run_cli("run" + all_inputs);
  if (batch.status != 0 || batch.out != all_expected) failed.push_back("batch order");

  const std::pair<const char*, int> statuses[] = {
      {"malformed.json", 2}, {"dimension_mismatch.json", 2},
      {"degenerate_span.json", 3}, {"ambiguous_rank.json", 4}};
  for (const auto& [file, code] : statuses) {
    const auto r = run_cli("run " + golden + "/" + file);
    if (r.status != code) {
      failed.push_back(std::string(file) + " exited " + std::to_string(r.status));
    }
  }
  if (run_cli("bogus").status != 1) failed.push_back("usage error status");

  std::string detail = "3 golden files, 4 error documents";
  for (const auto& f : failed) detail += "; failed " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  Verdict ac1;
  const auto start = std::chrono::steady_clock::now();
  const auto cases = run_random_cases(20260101, 1000, ac1);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ac1.pass = ac1.pass && seconds < 60.0;
  ac1.detail += ", " + fmt(seconds) + " s";

  report(1, "oracle equivalence on 1000 random problems", ac1);
  report(2, "scalar part equals product of cosines", scalar_identity(cases));
  report(3, "top grade equals product of sines", top_grade_sines(cases));
  report(4, "rotor reconstruction", reconstruction(cases));
  report(5, "perpendicular planes in R^3", perpendicular_planes());
  report(6, "bivector split contract", bivector_contract());
  report(7, "grade parity of the product", parity(cases));
  report(8, "conformal translation invariance", translation_invariance());
  report(9, "CLI golden files and exit status", cli_contract());
  return failures == 0 ? 0 : 1;
}
