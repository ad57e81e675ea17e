#include "rvcontrib/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rvcontrib/errors.hpp"

namespace rvc {

namespace {

using nlohmann::json;

constexpr const char* kSchemaTag = "rvcontrib-report/1";

json test_to_json(const TestResult& t) {
  return json{{"grid", t.grid},
              {"observed", t.observed},
              {"p_values", t.p_values},
              {"alpha_m", t.alpha_m},
              {"aspc_p", t.aspc_p}};
}

TestResult test_from_json(const json& j) {
  TestResult t;
  j.at("grid").get_to(t.grid);
  j.at("observed").get_to(t.observed);
  j.at("p_values").get_to(t.p_values);
  j.at("alpha_m").get_to(t.alpha_m);
  j.at("aspc_p").get_to(t.aspc_p);
  return t;
}

json profile_to_json(const ContributionProfile& p) {
  json j{{"alpha", p.alpha},
         {"variables", p.variable_names},
         {"values", p.contributions},
         {"flagged", p.flagged}};
  if (p.threshold)
    j["threshold"] = *p.threshold;
  else
    j["threshold"] = nullptr;
  return j;
}

ContributionProfile profile_from_json(const json& j) {
  ContributionProfile p;
  j.at("alpha").get_to(p.alpha);
  j.at("variables").get_to(p.variable_names);
  j.at("values").get_to(p.contributions);
  j.at("flagged").get_to(p.flagged);
  const json& t = j.at("threshold");
  if (!t.is_null()) p.threshold = t.get<double>();
  return p;
}

json provenance_to_json(const Provenance& p) {
  json inputs = json::array();
  for (const auto& [path, digest] : p.inputs)
    inputs.push_back(json{{"path", path}, {"fnv1a64", digest}});
  return json{{"command", p.command}, {"version", p.version},
              {"grid", p.grid},       {"n_perms", p.n_perms},
              {"level", p.level},     {"seed", p.seed},
              {"inputs", inputs}};
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  j.at("command").get_to(p.command);
  j.at("version").get_to(p.version);
  j.at("grid").get_to(p.grid);
  j.at("n_perms").get_to(p.n_perms);
  j.at("level").get_to(p.level);
  j.at("seed").get_to(p.seed);
  for (const json& entry : j.at("inputs"))
    p.inputs.emplace_back(entry.at("path").get<std::string>(),
                          entry.at("fnv1a64").get<std::string>());
  return p;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
  // per-response profiles are kept as an array of (variable, values) objects:
  // serializing them as one object would reorder keys alphabetically and lose
  // the flagged order.
  json per_response = json::array();
  for (const auto& [variable, values] : report.per_response)
    per_response.push_back(json{{"variable", variable}, {"values", values}});

  const json j{{"schema", kSchemaTag},
               {"test", test_to_json(report.test)},
               {"contributions", profile_to_json(report.profile)},
               {"responses", report.response_names},
               {"per_response", per_response},
               {"provenance", provenance_to_json(report.provenance)}};
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, 1, std::string("invalid report json: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kSchemaTag)
      throw DataError("unknown report schema tag");
    AnalysisReport report;
    report.test = test_from_json(j.at("test"));
    report.profile = profile_from_json(j.at("contributions"));
    j.at("responses").get_to(report.response_names);
    for (const json& entry : j.at("per_response"))
      report.per_response.emplace_back(
          entry.at("variable").get<std::string>(),
          entry.at("values").get<std::vector<double>>());
    report.provenance = provenance_from_json(j.at("provenance"));
    return report;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

void write_report(const AnalysisReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  const std::string text = report_to_json(report);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failure", path);
}

AnalysisReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure", path);
  return report_from_json(buffer.str());
}

bool operator==(const Provenance& a, const Provenance& b) {
  return a.command == b.command && a.version == b.version && a.grid == b.grid &&
         a.n_perms == b.n_perms && a.level == b.level && a.seed == b.seed &&
         a.inputs == b.inputs;
}

bool operator==(const TestResult& a, const TestResult& b) {
  return a.grid == b.grid && a.observed == b.observed &&
         a.p_values == b.p_values && a.alpha_m == b.alpha_m &&
         a.aspc_p == b.aspc_p;
}

bool operator==(const ContributionProfile& a, const ContributionProfile& b) {
  return a.alpha == b.alpha && a.contributions == b.contributions &&
         a.variable_names == b.variable_names && a.threshold == b.threshold &&
         a.flagged == b.flagged;
}

bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
  return a.test == b.test && a.profile == b.profile &&
         a.response_names == b.response_names &&
         a.per_response == b.per_response && a.provenance == b.provenance;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure", path);
  return fnv1a64(buffer.str());
}

}  // namespace rvc
