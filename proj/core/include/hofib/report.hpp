#pragma once

#include <map>
#include <string>
#include <vector>

#include "hofib/homology.hpp"

namespace hofib {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> witnesses;

  bool operator==(const CheckResult&) const = default;
};

struct HomologyRow {
  std::string space;
  int degree = 0;
  int free_rank = 0;
  std::vector<Integer> torsion;

  bool operator==(const HomologyRow&) const = default;
};

/// Outcome of one command.  JSON is the contract:
///   {command, params, valid_up_to, checks: [{name, verdict, witnesses}],
///    homology: [{space, degree, free_rank, torsion}], timing_ms}
struct Report {
  std::string command;
  std::map<std::string, std::string> params;
  int valid_up_to = 0;
  std::vector<CheckResult> checks;
  std::vector<HomologyRow> homology;
  double timing_ms = 0;

  bool passed() const;
  void add_check(std::string name, bool passed, std::vector<std::string> witnesses = {});
  void add_homology(const std::string& space, const HomologyGroup& group);

  bool operator==(const Report&) const = default;
};

enum class Format { Json, Text };

std::string emit(const Report& report, Format format);
// Inverse of emit(report, Format::Json); PreconditionError on malformed input.
Report parse_report(const std::string& json);

}  // namespace hofib
