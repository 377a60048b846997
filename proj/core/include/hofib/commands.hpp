#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hofib/dsl.hpp"
#include "hofib/report.hpp"

namespace hofib {

struct RunOptions {
  int max_dim = 4;
  Coefficients ring;
  bool deep_ops = false;
  std::uint64_t seed = 0;
  bool timing = true;                 // record timing_ms; off for byte-stable output
  std::optional<std::string> alpha;   // telescope element for group-completion
};

const std::vector<std::string>& command_names();

/// Runs one pipeline on a target named in the document or by a builtin:
///   spaces    point, circle, Delta<n>, dDelta<n>, C<n>, RP2, torus, ico,
///             sigma_<space>, <space>x<space>
///   maps      collapse_circle_to_interval, cover<m>to<n>, pullback_cover,
///             proj_<space>x<space>, sigma_<space>_to_interval
///   monoids   Z<n>, idem, trivial
/// Throws PreconditionError for unknown commands or targets.
Report run(const std::string& command, const std::string& target, const Document& doc,
           const RunOptions& options);

// Names of every builtin, for suggestions and help text.
std::vector<std::string> builtin_examples();

// Builtin resolution, exposed for tests.  nullopt when the name is not a builtin.
std::optional<SSetPtr> builtin_space(const std::string& name, int max_dim);
std::optional<SimplicialMap> builtin_map(const std::string& name, int max_dim);
std::optional<Monoid> builtin_monoid(const std::string& name);

}  // namespace hofib
