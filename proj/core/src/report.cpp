#include "hofib/report.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hofib/errors.hpp"

namespace hofib {

namespace {

using nlohmann::ordered_json;

ordered_json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

Integer integer_from(const ordered_json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw PreconditionError("torsion entries must be integers");
}

std::string group_text(const HomologyRow& row, const std::string& ring) {
  std::string out;
  auto add = [&](const std::string& part) { out += (out.empty() ? "" : " + ") + part; };
  if (row.free_rank == 1) add(ring);
  if (row.free_rank > 1) add(ring + "^" + std::to_string(row.free_rank));
  for (const Integer& t : row.torsion) add("Z/" + t.str());
  return out.empty() ? "0" : out;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void Report::add_check(std::string name, bool ok, std::vector<std::string> witnesses) {
  checks.push_back({std::move(name), ok, std::move(witnesses)});
}

void Report::add_homology(const std::string& space, const HomologyGroup& group) {
  homology.push_back({space, group.degree, group.free_rank, group.torsion});
}

std::string emit(const Report& report, Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["command"] = report.command;
    j["params"] = ordered_json::object();
    for (const auto& [k, v] : report.params) j["params"][k] = v;
    j["valid_up_to"] = report.valid_up_to;
    j["checks"] = ordered_json::array();
    for (const CheckResult& c : report.checks) {
      j["checks"].push_back(
          {{"name", c.name}, {"verdict", c.passed ? "pass" : "fail"}, {"witnesses", c.witnesses}});
    }
    j["homology"] = ordered_json::array();
    for (const HomologyRow& h : report.homology) {
      ordered_json torsion = ordered_json::array();
      for (const Integer& t : h.torsion) torsion.push_back(integer_json(t));
      j["homology"].push_back({{"space", h.space},
                               {"degree", h.degree},
                               {"free_rank", h.free_rank},
                               {"torsion", torsion}});
    }
    j["timing_ms"] = report.timing_ms;
    return j.dump(2) + "\n";
  }

  const auto ring = report.params.find("coefficients");
  const std::string ring_name = ring == report.params.end() ? "Z" : ring->second;
  std::ostringstream out;
  out << report.command << "\n";
  for (const auto& [k, v] : report.params) out << "  " << k << " = " << v << "\n";
  out << "valid up to degree " << report.valid_up_to << "\n";
  if (!report.homology.empty()) {
    std::string space;
    for (const HomologyRow& h : report.homology) {
      if (h.space != space) {
        space = h.space;
        out << "homology of " << space << "\n";
      }
      out << "  H_" << h.degree << " = " << group_text(h, ring_name) << "\n";
    }
  }
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    for (const auto& w : c.witnesses) out << "    " << w << "\n";
  }
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

Report parse_report(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::string>();
    r.valid_up_to = j.at("valid_up_to").get<int>();
    for (const auto& c : j.at("checks")) {
      const std::string verdict = c.at("verdict").get<std::string>();
      if (verdict != "pass" && verdict != "fail") throw PreconditionError("unknown verdict '" + verdict + "'");
      r.checks.push_back({c.at("name").get<std::string>(), verdict == "pass",
                          c.at("witnesses").get<std::vector<std::string>>()});
    }
    for (const auto& h : j.at("homology")) {
      HomologyRow row{h.at("space").get<std::string>(), h.at("degree").get<int>(),
                      h.at("free_rank").get<int>(), {}};
      for (const auto& t : h.at("torsion")) row.torsion.push_back(integer_from(t));
      r.homology.push_back(std::move(row));
    }
    r.timing_ms = j.at("timing_ms").get<double>();
    return r;
  } catch (const ordered_json::exception& e) {
    throw PreconditionError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace hofib
