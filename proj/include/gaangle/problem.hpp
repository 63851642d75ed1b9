#pragma once

// Problem documents: parsing, evaluation (engine plus optional oracle) and
// report serialization for the `angles` command line tool.
//
// Input document:
//   {"n": 3, "signature": [3, 0], "A": [[1,0,0],[0,1,0]], "B": [[...]],
//    "options": {"mode": "euclidean", "oracle": true, "tolerance": 1e-9}}
// "signature" and "options" are optional. In conformal mode each row is
// either a point of R^n (n entries) or a raw Cl(n+1,1) vector in the basis
// e_1..e_n, e_+, e_- (n + 2 entries); the object is the outer product of its
// rows.
//
// The JSON report echoes the effective input fields first, so a report is
// itself a valid input document that reproduces the same report.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gaangle/angle_engine.hpp"
#include "gaangle/blade.hpp"
#include "gaangle/conformal.hpp"
#include "gaangle/errors.hpp"
#include "gaangle/multivector.hpp"
#include "gaangle/oracle.hpp"

namespace gaangle {

enum class Mode { Euclidean, Conformal };

// Process exit status of the command line tool.
enum class ExitCode : int {
  Ok = 0,
  Usage = 1,
  InvalidDocument = 2,
  DegenerateSpan = 3,
  AmbiguousRank = 4,
  Geometry = 5,  // non-Euclidean signature, no carrier direction, non-blade
  SelftestFailed = 6,
};

class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct SubspaceProblem {
  int n = 0;
  Mode mode = Mode::Euclidean;
  std::vector<std::vector<double>> a_span;
  std::vector<std::vector<double>> b_span;
  double tolerance = kDefaultTolerance;
  bool oracle = false;

  Signature signature() const {
    return mode == Mode::Euclidean ? Signature(n, 0) : Signature(n + 1, 1);
  }
};

// Command line settings that take precedence over the document's options.
struct ProblemOverrides {
  std::optional<Mode> mode;
  std::optional<double> tolerance;
  std::optional<bool> oracle;
};

struct OracleComparison {
  std::vector<double> angles;  // descending
  double max_deviation = 0.0;
  int s = 0;
  int t = 0;
};

struct ReportDocument {
  SubspaceProblem problem;
  AngleReport report;
  std::optional<OracleComparison> oracle;
};

inline std::string_view mode_name(Mode m) {
  return m == Mode::Euclidean ? "euclidean" : "conformal";
}

inline std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "euclidean") return Mode::Euclidean;
  if (name == "conformal") return Mode::Conformal;
  return std::nullopt;
}

namespace detail {

using json = nlohmann::json;

inline std::vector<std::vector<double>> parse_span(const json& doc,
                                                   const char* key, int n,
                                                   Mode mode) {
  if (!doc.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  const json& rows = doc.at(key);
  if (!rows.is_array()) throw ParseError(std::string(key) + ": expected an array");
  if (rows.empty()) throw ParseError(std::string(key) + ": empty span");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    const json& row = rows[i];
    if (!row.is_array()) throw ParseError(where + ": expected an array of numbers");
    const bool fits = static_cast<int>(row.size()) == n ||
                      (mode == Mode::Conformal &&
                       static_cast<int>(row.size()) == n + 2);
    if (!fits) {
      throw ParseError(where + ": dimension mismatch, expected " +
                       std::to_string(n) +
                       (mode == Mode::Conformal
                            ? " or " + std::to_string(n + 2)
                            : std::string()) +
                       " entries, got " + std::to_string(row.size()));
    }
    std::vector<double> v;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) {
        throw ParseError(where + "[" + std::to_string(j) + "]: expected a number");
      }
      const double x = row[j].get<double>();
      if (!std::isfinite(x)) {
        throw ParseError(where + "[" + std::to_string(j) + "]: not finite");
      }
      v.push_back(x);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

inline SubspaceProblem parse_problem(std::string_view text,
                                     const ProblemOverrides& overrides = {}) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed document at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");

  SubspaceProblem p;
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("\"n\": expected an integer");
  }
  p.n = doc["n"].get<int>();

  if (doc.contains("options")) {
    const json& opt = doc["options"];
    if (!opt.is_object()) throw ParseError("\"options\": expected an object");
    if (opt.contains("mode")) {
      const auto mode = opt["mode"].is_string()
                            ? parse_mode(opt["mode"].get<std::string>())
                            : std::nullopt;
      if (!mode) throw ParseError("options.mode: expected \"euclidean\" or \"conformal\"");
      p.mode = *mode;
    }
    if (opt.contains("tolerance")) {
      if (!opt["tolerance"].is_number() || !(opt["tolerance"].get<double>() > 0.0)) {
        throw ParseError("options.tolerance: expected a positive number");
      }
      p.tolerance = opt["tolerance"].get<double>();
    }
    if (opt.contains("oracle")) {
      if (!opt["oracle"].is_boolean()) throw ParseError("options.oracle: expected a boolean");
      p.oracle = opt["oracle"].get<bool>();
    }
  }
  if (overrides.mode) p.mode = *overrides.mode;
  if (overrides.tolerance) p.tolerance = *overrides.tolerance;
  if (overrides.oracle) p.oracle = *overrides.oracle;

  const int limit = p.mode == Mode::Euclidean ? kMaxDimension : kMaxDimension - 2;
  if (p.n < 1 || p.n > limit) {
    throw ParseError("\"n\": must lie in [1, " + std::to_string(limit) + "]");
  }

  if (doc.contains("signature")) {
    const json& sig = doc["signature"];
    if (!sig.is_array() || sig.size() != 2 || !sig[0].is_number_integer() ||
        !sig[1].is_number_integer()) {
      throw ParseError("\"signature\": expected [p, q]");
    }
    const Signature expected = p.signature();
    if (sig[0].get<int>() != expected.p || sig[1].get<int>() != expected.q) {
      throw NonEuclidean("signature [" + std::to_string(sig[0].get<int>()) + "," +
                         std::to_string(sig[1].get<int>()) + "] unsupported in " +
                         std::string(mode_name(p.mode)) + " mode (expected [" +
                         std::to_string(expected.p) + "," +
                         std::to_string(expected.q) + "])");
    }
  }

  p.a_span = detail::parse_span(doc, "A", p.n, p.mode);
  p.b_span = detail::parse_span(doc, "B", p.n, p.mode);
  return p;
}

namespace detail {

inline Multivector conformal_object(const conformal::Space& space,
                                    const std::vector<std::vector<double>>& rows) {
  Multivector x = Multivector::scalar(space.signature(), 1.0);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) == space.n()) {
      x = x ^ space.point(row);
    } else {
      x = x ^ Multivector(space.signature(), [&] {
            std::vector<double> c(space.signature().blade_count(), 0.0);
            for (std::size_t i = 0; i < row.size(); ++i) c[BladeMask{1} << i] = row[i];
            return c;
          }());
    }
  }
  double scale = 1.0;
  for (const auto& row : rows) {
    double len = 0.0;
    for (double c : row) len += c * c;
    scale *= std::max(1.0, std::sqrt(len));
  }
  if (coeff_norm(x) <= kDependenceTolerance * scale) {
    throw DegenerateSpan("conformal rows are linearly dependent");
  }
  return x;
}

inline std::vector<oracle::Vector> factor_rows(const Blade& b) {
  return orthogonal_factorization(b).factors;
}

}  // namespace detail

inline ReportDocument run_problem(const SubspaceProblem& p) {
  ReportDocument doc;
  doc.problem = p;
  const EngineOptions options{p.tolerance};

  std::vector<oracle::Vector> oracle_a, oracle_b;
  if (p.mode == Mode::Euclidean) {
    const Signature sig = p.signature();
    const Blade a = Blade::from_vectors(sig, p.a_span);
    const Blade b = Blade::from_vectors(sig, p.b_span);
    doc.report = relative_angle(a, b, options);
    if (p.oracle) {
      oracle_a = oracle::orthonormal_basis(p.a_span);
      oracle_b = oracle::orthonormal_basis(p.b_span);
    }
  } else {
    const conformal::Space space(p.n);
    const conformal::Object x(space, detail::conformal_object(space, p.a_span));
    const conformal::Object y(space, detail::conformal_object(space, p.b_span));
    const Blade a = conformal::carrier(space, x);
    const Blade b = conformal::carrier(space, y);
    doc.report = relative_angle(a, b, options);
    if (p.oracle) {
      oracle_a = detail::factor_rows(a);
      oracle_b = detail::factor_rows(b);
    }
  }

  if (p.oracle) {
    const auto pairs = oracle::principal_angles(oracle_a, oracle_b);
    OracleComparison cmp;
    cmp.angles = pairs.angles;
    std::sort(cmp.angles.begin(), cmp.angles.end(), std::greater<>());
    for (std::size_t k = 0; k < cmp.angles.size(); ++k) {
      cmp.max_deviation = std::max(
          cmp.max_deviation, std::abs(cmp.angles[k] - doc.report.angles[k]));
    }
    cmp.s = static_cast<int>(std::count_if(
        pairs.cosines.begin(), pairs.cosines.end(),
        [&](double c) { return c >= 1.0 - p.tolerance; }));
    cmp.t = oracle::perpendicular_dimension(pairs, p.tolerance);
    doc.oracle = cmp;
  }
  return doc;
}

// Sparse map of the coefficients above 1e-12 in absolute value.
inline nlohmann::ordered_json blade_coefficients(const Multivector& x) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (BladeMask m = 0; m < x.size(); ++m) {
    if (std::abs(x[m]) > 1e-12) out[blade_name(m, x.signature().n())] = x[m];
  }
  return out;
}

inline nlohmann::ordered_json report_to_json(const ReportDocument& doc) {
  using nlohmann::ordered_json;
  const SubspaceProblem& p = doc.problem;
  const AngleReport& r = doc.report;
  const Signature sig = p.signature();

  ordered_json out;
  out["n"] = p.n;
  out["signature"] = {sig.p, sig.q};
  out["A"] = p.a_span;
  out["B"] = p.b_span;
  out["options"] = {{"mode", mode_name(p.mode)},
                    {"oracle", p.oracle},
                    {"tolerance", p.tolerance}};
  out["s"] = r.s;
  out["t"] = r.t;
  out["angles_rad"] = r.angles;
  std::vector<double> degrees;
  for (double a : r.angles) degrees.push_back(a * 180.0 / std::numbers::pi);
  out["angles_deg"] = degrees;
  out["cos_total"] = r.cos_total;
  out["cos_interior"] = r.cos_interior;
  out["sin_interior_product"] = r.sin_interior_product;
  out["planes"] = ordered_json::array();
  for (const auto& plane : r.planes) out["planes"].push_back(blade_coefficients(plane));
  out["lowest_grade"] = r.lowest_grade;
  out["repeated_angles"] = r.repeated_angles;
  out["residual"] = r.residual;
  if (doc.oracle) {
    out["oracle"] = {{"angles_rad", doc.oracle->angles},
                     {"max_deviation", doc.oracle->max_deviation},
                     {"s", doc.oracle->s},
                     {"t", doc.oracle->t}};
  }
  return out;
}

inline std::string report_to_text(const ReportDocument& doc) {
  const AngleReport& r = doc.report;
  std::ostringstream os;
  os << std::setprecision(12);
  // Blade grades as seen by the engine; in conformal mode these are carriers.
  const int lower = static_cast<int>(r.angles.size());
  const int grade_a = r.swapped ? lower : lower + r.q;
  const int grade_b = r.swapped ? lower + r.q : lower;
  os << "mode " << mode_name(doc.problem.mode) << ", n = " << doc.problem.n
     << ", grades " << grade_a << " and " << grade_b << "\n";
  os << "  intersection dimension s = " << r.s
     << ", perpendicular count t = " << r.t << "\n";
  os << "  principal angles (deg):";
  for (double a : r.angles) os << ' ' << a * 180.0 / std::numbers::pi;
  os << "\n  principal angles (rad):";
  for (double a : r.angles) os << ' ' << a;
  os << "\n  cos total = " << r.cos_total << ", cos interior = " << r.cos_interior
     << ", sine product = " << r.sin_interior_product << "\n";
  for (std::size_t k = 0; k < r.planes.size(); ++k) {
    os << "  plane " << k + 1 << ":";
    const auto coefficients = blade_coefficients(r.planes[k]);
    for (const auto& [name, value] : coefficients.items()) {
      os << ' ' << name << '=' << value.get<double>();
    }
    os << "\n";
  }
  if (r.repeated_angles) os << "  repeated angles: principal planes not unique\n";
  os << "  reconstruction residual = " << r.residual << "\n";
  if (doc.oracle) {
    os << "  oracle angles (rad):";
    for (double a : doc.oracle->angles) os << ' ' << a;
    os << "\n  oracle s = " << doc.oracle->s << ", t = " << doc.oracle->t
       << ", max deviation = " << doc.oracle->max_deviation << "\n";
  }
  return os.str();
}

inline ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DegenerateSpan*>(&e)) return ExitCode::DegenerateSpan;
  if (dynamic_cast<const AmbiguousRank*>(&e)) return ExitCode::AmbiguousRank;
  if (dynamic_cast<const InvalidInput*>(&e)) return ExitCode::InvalidDocument;
  if (dynamic_cast<const Error*>(&e)) return ExitCode::Geometry;
  return ExitCode::InvalidDocument;
}

}  // namespace gaangle
