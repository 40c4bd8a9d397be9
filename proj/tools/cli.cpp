#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <sstream>

#include "psipoint/dr.hpp"
#include "psipoint/errors.hpp"
#include "psipoint/kernel.hpp"
#include "psipoint/npoint.hpp"
#include "psipoint/oracle.hpp"
#include "psipoint/parallel.hpp"
#include "psipoint/verify.hpp"

namespace psipoint {

namespace {

using Json = nlohmann::ordered_json;

struct JobConfig {
  std::string format = "json";
  std::string out_path;
  int parallelism = -1;

  std::size_t n = 0;
  int g = 0;
  int order = -1;
  std::vector<int> d;
  std::vector<long> a;
  std::vector<long> b;
  std::string check;
  std::string level = "quick";
};

// A table of rows rendered either as {header..., entries: [...]} or as CSV.
struct Document {
  Json header = Json::object();
  std::vector<std::string> columns;  // CSV columns; "d" expands to d1..dn
  std::size_t width = 0;             // number of d columns
  Json entries = Json::array();
};

std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render(const Document& doc, const std::string& format) {
  if (format == "json") {
    Json j = doc.header;
    j["entries"] = doc.entries;
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  std::vector<std::string> head;
  for (const auto& c : doc.columns) {
    if (c == "d") {
      for (std::size_t i = 1; i <= doc.width; ++i) head.push_back("d" + std::to_string(i));
    } else {
      head.push_back(c);
    }
  }
  for (std::size_t i = 0; i < head.size(); ++i) s << (i ? "," : "") << head[i];
  s << "\n";
  for (const auto& e : doc.entries) {
    bool first = true;
    for (const auto& c : doc.columns) {
      if (c == "d") {
        for (const auto& v : e["d"]) {
          s << (first ? "" : ",") << v.get<int>();
          first = false;
        }
      } else {
        s << (first ? "" : ",") << csv_cell(e[c]);
        first = false;
      }
    }
    s << "\n";
  }
  return s.str();
}

Json degrees_json(const ExponentVector& e) { return Json(e.to_vector()); }

void require_order(const JobConfig& job) {
  if (job.order < 0) throw std::invalid_argument("--order must be given and non-negative");
}

Document npoint_doc(const JobConfig& job) {
  require_order(job);
  if (job.n == 0) throw std::invalid_argument("--n must be positive");
  const auto f = npoint_series(job.n, job.order);
  Document doc;
  doc.header["n"] = job.n;
  doc.header["order"] = job.order;
  doc.columns = {"g", "d", "value"};
  doc.width = job.n;
  for (int g = 0; 3 * g - 3 + static_cast<int>(job.n) <= job.order; ++g) {
    const int total = 3 * g - 3 + static_cast<int>(job.n);
    if (total < 0 || !intersection_genus(job.n, total)) continue;
    for (const auto& e : monomials_of_degree(job.n, total))
      doc.entries.push_back({{"g", g}, {"d", degrees_json(e)}, {"value", to_string(f.coefficient(e))}});
  }
  return doc;
}

ExponentVector degrees_of(const std::vector<int>& d) {
  if (d.empty()) throw std::invalid_argument("--d must list at least one degree");
  for (int v : d)
    if (v < 0 || v > 255) throw std::invalid_argument("degrees must lie in 0..255");
  if (d.size() > ExponentVector::kMaxVars) throw std::invalid_argument("too many points");
  return ExponentVector(std::span<const int>(d));
}

Document intersect_doc(const JobConfig& job, int& status) {
  const ExponentVector e = degrees_of(job.d);
  const Rational value = intersection_number(job.g, e);
  Document doc;
  doc.header["n"] = job.d.size();
  doc.header["order"] = e.total_degree();
  doc.columns = {"g", "d", "value"};
  doc.width = job.d.size();
  Json entry = {{"g", job.g}, {"d", degrees_json(e)}, {"value", to_string(value)}};
  if (job.check == "oracle") {
    OracleTable oracle;
    const auto report = oracle.selfcheck();
    if (!report.ok()) throw ConsistencyError("oracle self-check failed: " + report.mismatches.front());
    const Rational expected = oracle.dvv_number(job.g, job.d);
    const bool ok = expected == value;
    entry["oracle"] = to_string(expected);
    entry["check"] = ok ? "ok" : "mismatch";
    doc.columns.insert(doc.columns.end(), {"oracle", "check"});
    if (!ok) status = 2;
  } else if (!job.check.empty()) {
    throw std::invalid_argument("unknown --check target '" + job.check + "'");
  }
  doc.entries.push_back(std::move(entry));
  return doc;
}

// Degree vectors requested by --d, or every vector through --order.
std::vector<ExponentVector> requested_degrees(const JobConfig& job, std::size_t n) {
  if (!job.d.empty()) {
    if (job.d.size() != n) throw std::invalid_argument("--d must have one entry per kept point");
    return {degrees_of(job.d)};
  }
  require_order(job);
  std::vector<ExponentVector> out;
  for (int k = 0; k <= job.order; ++k)
    for (const auto& e : monomials_of_degree(n, k)) out.push_back(e);
  return out;
}

Document dr_doc(const JobConfig& job) {
  const std::size_t n = job.a.size();
  if (n < 2) throw std::invalid_argument("--a needs at least two weights");
  const auto degrees = requested_degrees(job, n);
  Document doc;
  doc.header["n"] = n;
  doc.header["order"] = job.d.empty() ? job.order : degrees.front().total_degree();
  doc.header["a"] = job.a;
  doc.columns = {"g", "d", "value"};
  doc.width = n;
  for (const auto& e : degrees) {
    const auto g = dr_genus(n, e.total_degree());
    const Rational value = dr_integral(job.a, e);
    if (!g) {
      if (!job.d.empty())
        throw std::invalid_argument("sum(d) = 2g - 3 + n has no admissible genus");
      continue;
    }
    doc.entries.push_back({{"g", *g}, {"d", degrees_json(e)}, {"value", to_string(value)}});
  }
  return doc;
}

Document drpush_doc(const JobConfig& job, int& status) {
  const ForgottenSpec spec{job.a, job.b};
  spec.validate();
  const std::size_t n = spec.kept.size();
  const std::size_t m = spec.forgotten.size();
  const auto degrees = requested_degrees(job, n);
  int top = 0;
  for (const auto& e : degrees) top = std::max(top, e.total_degree());
  const auto series = forgotten_series(spec, top);

  Document doc;
  doc.header["n"] = n;
  doc.header["order"] = top;
  doc.header["a"] = spec.kept;
  doc.header["b"] = spec.forgotten;
  doc.columns = {"g", "d", "series", "direct", "check"};
  doc.width = n;
  for (const auto& e : degrees) {
    const int twice_g = e.total_degree() - static_cast<int>(n + m) + 3;
    if (twice_g < 0 || twice_g % 2 != 0) {
      if (!job.d.empty())
        throw std::invalid_argument("sum(d) = 2g - 3 + n + m has no admissible genus");
      continue;
    }
    const Rational from_series = series.coefficient(e);
    const Rational direct = forgotten_integral_direct(spec, e);
    const bool ok = from_series == direct;
    if (!ok) status = 2;
    doc.entries.push_back({{"g", twice_g / 2},
                           {"d", degrees_json(e)},
                           {"series", to_string(from_series)},
                           {"direct", to_string(direct)},
                           {"check", ok ? "ok" : "mismatch"}});
  }
  return doc;
}

Document pn_doc(const JobConfig& job) {
  require_order(job);
  Document doc;
  doc.columns = {"d", "value"};
  if (job.a.empty()) {
    if (job.n < 2) throw std::invalid_argument("--n must be at least 2");
    const PnSymbolic p = pn_symbolic(job.n, job.order);
    doc.header["n"] = job.n;
    doc.header["order"] = job.order;
    doc.width = job.n;
    for (const auto& [e, poly] : p.coefficients())
      doc.entries.push_back({{"d", degrees_json(e)}, {"value", poly.to_string("a")}});
    return doc;
  }
  if (job.n != 0 && job.n != job.a.size()) throw std::invalid_argument("--n disagrees with the length of --a");
  const auto p = pn_value(to_avector(job.a), job.order);
  doc.header["n"] = job.a.size();
  doc.header["order"] = job.order;
  doc.header["a"] = job.a;
  doc.width = job.a.size();
  for (int k = 0; k <= job.order; ++k)
    for (const auto& e : monomials_of_degree(job.a.size(), k)) {
      const Rational c = p.coefficient(e);
      if (c != 0) doc.entries.push_back({{"d", degrees_json(e)}, {"value", to_string(c)}});
    }
  return doc;
}

Document selftest_doc(const JobConfig& job, std::ostream& err, int& status) {
  const auto results = run_selftest(job.level == "full");
  Document doc;
  doc.header["level"] = job.level;
  doc.columns = {"suite", "status", "checked"};
  bool all_ok = true;
  for (const auto& r : results) {
    all_ok = all_ok && r.ok();
    doc.entries.push_back({{"suite", r.name}, {"status", r.ok() ? "pass" : "fail"}, {"checked", r.checked}});
    err << (r.ok() ? "pass " : "FAIL ") << r.name << " (" << r.checked << " checks, " << r.seconds << " s)\n";
    for (const auto& f : r.failures) err << "  " << f << "\n";
  }
  doc.header["passed"] = all_ok;
  if (!all_ok) status = 2;
  return doc;
}

std::optional<int> env_parallelism() {
  const char* raw = std::getenv("PSI_POINT_PARALLELISM");
  if (!raw || !*raw) return std::nullopt;
  int value = -1;
  const std::string_view s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0)
    throw std::invalid_argument("PSI_POINT_PARALLELISM must be a non-negative integer");
  return value;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig job;
  CLI::App app{"Exact psi-class intersection numbers on moduli spaces of curves"};
  app.name("psipoint");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", job.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", job.out_path, "Write the document to PATH instead of stdout");
  app.add_option("--parallelism", job.parallelism, "Worker cap, 0 for auto")->check(CLI::NonNegativeNumber);

  auto* npoint = app.add_subcommand("npoint", "Coefficients of the n-point function");
  npoint->add_option("--n", job.n, "Number of points")->required();
  npoint->add_option("--order", job.order, "Truncation order")->required();

  auto* intersect = app.add_subcommand("intersect", "One intersection number");
  intersect->add_option("--g", job.g, "Genus")->required();
  intersect->add_option("--d", job.d, "Psi degrees, comma separated")->required()->delimiter(',');
  intersect->add_option("--check", job.check, "Cross-check target (oracle)");

  auto* dr = app.add_subcommand("dr", "Psi integrals over double ramification cycles");
  dr->add_option("--a", job.a, "Weights summing to zero")->required()->delimiter(',');
  dr->add_option("--d", job.d, "Psi degrees")->delimiter(',');
  dr->add_option("--order", job.order, "All degrees through this order");

  auto* drpush = app.add_subcommand("drpush", "DR integrals with forgotten points, by both routes");
  drpush->add_option("--a", job.a, "Kept weights")->required()->delimiter(',');
  drpush->add_option("--b", job.b, "Forgotten weights")->delimiter(',');
  drpush->add_option("--d", job.d, "Psi degrees at the kept points")->delimiter(',');
  drpush->add_option("--order", job.order, "All degrees through this order");

  auto* pn = app.add_subcommand("pn", "Kernel coefficients, symbolic in a or at given weights");
  pn->add_option("--n", job.n, "Number of points");
  pn->add_option("--a", job.a, "Weights")->delimiter(',');
  pn->add_option("--order", job.order, "Truncation order")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the verification suites");
  selftest->add_option("--level", job.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (job.parallelism >= 0) {
      set_parallelism(static_cast<unsigned>(job.parallelism));
    } else if (const auto env = env_parallelism()) {
      set_parallelism(static_cast<unsigned>(*env));
    }

    int status = 0;
    Document doc;
    if (npoint->parsed()) doc = npoint_doc(job);
    else if (intersect->parsed()) doc = intersect_doc(job, status);
    else if (dr->parsed()) doc = dr_doc(job);
    else if (drpush->parsed()) doc = drpush_doc(job, status);
    else if (pn->parsed()) doc = pn_doc(job);
    else doc = selftest_doc(job, err, status);

    const std::string text = render(doc, job.format);
    if (job.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(job.out_path, std::ios::binary);
      file << text;
      if (!file) {
        err << "error: cannot write " << job.out_path << "\n";
        return 1;
      }
    }
    if (status == 2) err << "error: consistency check failed\n";
    return status;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace psipoint
