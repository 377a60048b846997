#include "hofib/commands.hpp"

#include <chrono>
#include <regex>

#include "hofib/borel.hpp"
#include "hofib/fibration.hpp"
#include "hofib/subdivision.hpp"

namespace hofib {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

int number(const std::smatch& m, int group) { return std::stoi(m[group].str()); }

SSetPtr icosahedral(int max_dim) {
  return presentation_complex({"s", "t"}, {parse_relator("s^3 (ts)^-2"), parse_relator("t^5 (ts)^-2")},
                              std::max(max_dim, 2));
}

SimplicialMap collapse_circle_to_interval(int max_dim) {
  const SSetPtr circle = boundary(2, max_dim);
  const SSetPtr interval = standard_simplex(1, max_dim);
  SimplicialMap m(circle, interval);
  const int image[3] = {0, 0, 1};
  for (int d = 0; d <= 1; ++d) {
    for (GenId g : circle->generators(d)) {
      auto v = vertex_sequence(*circle, nondegenerate(g));
      for (int& u : v) u = image[u];
      m.set(g, simplex_of(*interval, v));
    }
  }
  return m;
}

std::string failure_text(const IsoCertificate& cert) {
  if (!cert.first_failure) return "";
  for (const IsoDegree& d : cert.degrees) {
    if (d.degree == *cert.first_failure) {
      return "at H_" + std::to_string(d.degree) + ": " + d.source + " -> " + d.target +
             (d.reason.empty() ? "" : " (" + d.reason + ")");
    }
  }
  return "at degree " + std::to_string(*cert.first_failure);
}

std::string pair_text(const PairCertificate& p) {
  return "(" + p.base + ", " + p.operation + "): dp(" + p.source + ") -> dp(" + p.target + ") fails " +
         failure_text(p.result);
}

void add_fibration_check(Report& r, const std::string& name, const FibrationReport& f) {
  std::vector<std::string> witnesses;
  for (const PairCertificate& p : f.pairs) {
    if (!p.result.iso && witnesses.size() < kMaxWitnesses) witnesses.push_back(pair_text(p));
  }
  for (const auto& w : f.warnings) witnesses.push_back("warning: " + w);
  r.add_check(name, f.passed, std::move(witnesses));
}

void add_table(Report& r, const std::string& space, const Homology& h, int up_to) {
  for (int k = 0; k <= up_to; ++k) {
    const HomologyGroup& g = h.group(k);
    if (!g.trivial()) r.add_homology(space, g);
  }
}

void add_table(Report& r, const std::string& space, const std::vector<HomologyGroup>& groups) {
  for (const HomologyGroup& g : groups) {
    if (!g.trivial()) r.add_homology(space, g);
  }
}

std::vector<std::string> all_names(const Document& doc) {
  std::vector<std::string> out = doc.names();
  for (const auto& b : builtin_examples()) out.push_back(b);
  return out;
}

[[noreturn]] void unknown(const std::string& what, const std::string& name, const Document& doc) {
  const auto close = suggest(name, all_names(doc));
  std::string text = "unknown " + what + " '" + name + "'";
  if (!close.empty()) {
    text += " (did you mean";
    for (const auto& c : close) text += " '" + c + "'";
    text += "?)";
  }
  throw PreconditionError(text);
}

SSetPtr resolve_space(const std::string& name, const Document& doc, int max_dim) {
  if (const SsetDecl* d = doc.find_sset(name)) return d->space;
  if (auto s = builtin_space(name, max_dim)) return *s;
  unknown("space", name, doc);
}

SimplicialMap resolve_map(const std::string& name, const Document& doc, int max_dim) {
  if (const MapDecl* d = doc.find_map(name)) return d->map;
  if (auto m = builtin_map(name, max_dim)) return *m;
  unknown("map", name, doc);
}

std::optional<Monoid> find_monoid(const std::string& name, const Document& doc) {
  if (const MonoidDecl* d = doc.find_monoid(name)) return d->monoid;
  return builtin_monoid(name);
}

bool is_group(const Monoid& m) {
  for (int a = 0; a < m.size(); ++a) {
    bool invertible = false;
    for (int b = 0; b < m.size() && !invertible; ++b) {
      invertible = m.table[a][b] == m.unit && m.table[b][a] == m.unit;
    }
    if (!invertible) return false;
  }
  return true;
}

// A declared diagram, or a diagram derived from a monoid: the restriction
// diagram for a group, otherwise the telescope along alpha (default: the
// first element other than the unit).
Diagram resolve_diagram(const std::string& name, const Document& doc, const RunOptions& options,
                        Report& r) {
  if (const DiagramDecl* d = doc.find_diagram(name)) {
    r.params["diagram"] = "declared";
    return doc.diagram(*d);
  }
  const auto m = find_monoid(name, doc);
  if (!m) unknown("diagram or monoid", name, doc);
  const SimplicialCategory c = from_monoid(*m, options.max_dim);
  if (!options.alpha && is_group(*m)) {
    r.params["diagram"] = "restriction";
    return restriction_diagram(c, 0);
  }
  int alpha = m->unit == 0 && m->size() > 1 ? 1 : 0;
  if (options.alpha) alpha = m->index_of(*options.alpha);
  r.params["diagram"] = "telescope(" + m->elements[alpha] + ")";
  return telescope_diagram(c, 0, GenId{0, alpha});
}

void run_homology(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const SSetPtr x = resolve_space(target, doc, o.max_dim);
  const auto problems = validate(*x);
  r.add_check("well-formed", problems.empty());
  const Homology h(*x, o.ring);
  r.valid_up_to = h.valid_up_to();
  add_table(r, target, h, r.valid_up_to);
}

void run_weakfib(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const SimplicialMap p = resolve_map(target, doc, o.max_dim);
  PreimageFunctor dpf(p, -1, o.ring);
  r.valid_up_to = dpf.max_dim() - 1;
  WeakCheckOptions opts;
  opts.deep_ops = o.deep_ops;
  add_fibration_check(r, "weak-fibration", weak_fibration_check(dpf, r.valid_up_to, opts));
  add_table(r, "E", Homology(*p.source(), o.ring), r.valid_up_to);
  add_table(r, "B", Homology(*p.target(), o.ring), r.valid_up_to);
}

void run_subdivide(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const SSetPtr x = resolve_space(target, doc, o.max_dim);
  const Subdivision s = sd(x);
  const Homology hx(*x, o.ring);
  const Homology hs(*s.space, o.ring);
  r.valid_up_to = std::min(hx.valid_up_to(), hs.valid_up_to());
  std::string counts;
  for (auto c : s.space->counts()) counts += (counts.empty() ? "" : ",") + std::to_string(c);
  r.params["sd_counts"] = counts;
  const IsoCertificate cert = is_homology_iso(s.last_vertex, r.valid_up_to, hs, hx);
  r.add_check("last-vertex", cert.iso, cert.iso ? std::vector<std::string>{}
                                                 : std::vector<std::string>{failure_text(cert)});
  add_table(r, target, hx, r.valid_up_to);
  add_table(r, "Sd " + target, hs, r.valid_up_to);
}

void run_star(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const SimplicialMap f = resolve_map(target, doc, o.max_dim);
  const SubdividedMap sf = sd_over_simplex(f);
  r.valid_up_to = sf.source.space->max_dim() - 1;
  std::vector<std::string> retract, end0, end1, iso;
  for (VertexSet alpha = 1; alpha <= full_set(sf.n); ++alpha) {
    const StarRetraction s = star_retraction(sf, alpha);
    const std::string a = set_label(alpha);
    if (!s.retracts) retract.push_back(a);
    if (!s.end0) end0.push_back(a);
    if (!s.end1) end1.push_back(a);
    const IsoCertificate cert = is_homology_iso(s.inclusion, r.valid_up_to, o.ring);
    if (!cert.iso) iso.push_back(a + " " + failure_text(cert));
  }
  r.add_check("r.i = id", retract.empty(), retract);
  r.add_check("H(-,0) = i.r", end0.empty(), end0);
  r.add_check("H(-,1) = id", end1.empty(), end1);
  r.add_check("fiber -> ESt homology iso", iso.empty(), iso);
  try {
    const CubeDiagram cube = cube_decomposition(sf);
    r.params["cube_objects"] = std::to_string(cube.objects.size());
    r.add_check("cube colimit = Sd E", true);
  } catch (const InternalError& e) {
    r.add_check("cube colimit = Sd E", false, {e.what()});
  }
}

void run_barycenter(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const SimplicialMap f = resolve_map(target, doc, o.max_dim);
  const SubdividedMap sf = sd_over_simplex(f);
  const SimplicialSet& e = *f.source();
  const bool complete = e.top_dim() < e.max_dim();
  r.valid_up_to = complete ? e.max_dim() - 1 : e.max_dim() - sf.n - 1;
  r.params["total_complete"] = complete ? "true" : "false";
  PreimageFunctor dpf(f, -1, o.ring);
  add_fibration_check(r, "weak-fibration", weak_fibration_check(dpf, r.valid_up_to));
  const Subcomplex b = barycenter_preimage(sf);
  r.params["preimage_simplices"] = std::to_string(b.space->size());
  const SimplicialMap to_total = compose(sf.source.last_vertex, b.inclusion);
  const Homology hb(*b.space, o.ring);
  const Homology he(e, o.ring);
  const IsoCertificate cert = is_homology_iso(to_total, r.valid_up_to, hb, he);
  r.add_check("barycenter preimage ~ E", cert.iso,
              cert.iso ? std::vector<std::string>{} : std::vector<std::string>{failure_text(cert)});
  add_table(r, "E", he, r.valid_up_to);
  add_table(r, "barycenter preimage", hb, r.valid_up_to);
}

void run_borel(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const Diagram d = resolve_diagram(target, doc, o, r);
  const BorelTotal b = borel_total(d, o.max_dim);
  r.valid_up_to = o.max_dim - 1;
  r.add_check("E_M F simplicial space", validate(b.total.space).empty(), validate(b.total.space));
  r.add_check("B M simplicial space", validate(b.base.space).empty(), validate(b.base.space));
  std::vector<std::string> witnesses;
  for (const auto& p : validate(b.projection)) witnesses.push_back(p.message);
  r.add_check("projection simplicial", witnesses.empty(), witnesses);
  add_table(r, "||E_M F||", Homology(*b.total_realized.space(), o.ring), r.valid_up_to);
  add_table(r, "||B M||", Homology(*b.base_realized.space(), o.ring), r.valid_up_to);
}

void run_classify(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  const auto m = find_monoid(target, doc);
  if (!m) unknown("monoid", target, doc);
  const SimplicialCategory c = from_monoid(*m, o.max_dim);
  const BorelSpace nerve = borel_space(trivial_diagram(c), o.max_dim);
  const ThickRealization b = thick_realize(nerve.space, o.max_dim);
  r.valid_up_to = o.max_dim - 1;
  const auto problems = validate(nerve.space);
  r.add_check("simplicial space", problems.empty(), problems);
  std::vector<std::string> witnesses;
  for (const auto& p : validate(*b.space())) witnesses.push_back(p.message);
  r.add_check("realization well-formed", witnesses.empty(), witnesses);
  add_table(r, "B" + target, Homology(*b.space(), o.ring), r.valid_up_to);
}

void run_group_completion(Report& r, const std::string& target, const Document& doc,
                          const RunOptions& o) {
  const Diagram d = resolve_diagram(target, doc, o, r);
  r.params["coefficients"] = "Z";
  const GroupCompletionReport g = group_completion_check(d, o.max_dim);
  r.valid_up_to = o.max_dim - 1;
  for (const Gate& gate : g.gates) r.add_check(gate.name, gate.passed, gate.witnesses);
  add_table(r, "||E_M F||", g.total_homology);
  add_table(r, "||B M||", g.base_homology);
  add_table(r, "dp(pi_M, *)", g.fiber_homology);
}

void run_validate(Report& r, const std::string& target, const Document& doc, const RunOptions& o) {
  std::vector<std::string> problems;
  std::string kind;
  if (const DiagramDecl* d = doc.find_diagram(target)) {
    kind = "diagram";
    problems = validate(doc.diagram(*d));
  } else if (auto m = find_monoid(target, doc)) {
    kind = "monoid";
    problems = validate(*m);
  } else if (doc.find_map(target) || builtin_map(target, o.max_dim)) {
    kind = "map";
    for (const auto& p : validate(resolve_map(target, doc, o.max_dim))) problems.push_back(p.message);
  } else {
    kind = "sset";
    const SSetPtr x = resolve_space(target, doc, o.max_dim);
    for (const auto& p : validate(*x)) problems.push_back(x->label(p.generator) + ": " + p.message);
  }
  r.params["kind"] = kind;
  r.valid_up_to = o.max_dim - 1;
  r.add_check("well-formed", problems.empty(), problems);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"homology",   "check-weakfib", "subdivide",
                                              "star-lemma", "barycenter",    "borel",
                                              "classify",   "group-completion", "validate"};
  return names;
}

std::vector<std::string> builtin_examples() {
  return {"point", "circle", "Delta2", "dDelta3", "C6", "RP2", "torus", "ico", "sigma_ico",
          "Delta2xC3", "collapse_circle_to_interval", "cover6to3", "pullback_cover",
          "proj_Delta2xC3", "sigma_ico_to_interval", "Z2", "Z3", "idem", "trivial"};
}

std::optional<SSetPtr> builtin_space(const std::string& name, int max_dim) {
  static const std::regex delta(R"(Delta(\d+))"), bd(R"(dDelta(\d+))"), cycle(R"(C(\d+))");
  std::smatch m;
  if (name == "point") return point(max_dim);
  if (name == "circle") return presentation_complex({"a"}, {}, max_dim);
  if (name == "RP2") return presentation_complex({"a"}, {parse_relator("a^2")}, std::max(max_dim, 2));
  if (name == "torus") {
    return presentation_complex({"a", "b"}, {parse_relator("a b A B")}, std::max(max_dim, 2));
  }
  if (name == "ico") return icosahedral(max_dim);
  if (std::regex_match(name, m, delta)) return standard_simplex(number(m, 1), max_dim);
  if (std::regex_match(name, m, bd) && number(m, 1) > 0) return boundary(number(m, 1), max_dim);
  if (std::regex_match(name, m, cycle) && number(m, 1) > 0) {
    return cycle_graph(number(m, 1), std::max(max_dim, 1));
  }
  if (name.rfind("sigma_", 0) == 0) {
    if (auto x = builtin_space(name.substr(6), max_dim)) return suspension(*x, max_dim).space;
  }
  for (std::size_t cut = name.find('x'); cut != std::string::npos; cut = name.find('x', cut + 1)) {
    auto a = builtin_space(name.substr(0, cut), max_dim);
    auto b = a ? builtin_space(name.substr(cut + 1), max_dim) : std::nullopt;
    if (a && b) return product(*a, *b, max_dim).space;
  }
  return std::nullopt;
}

std::optional<SimplicialMap> builtin_map(const std::string& name, int max_dim) {
  static const std::regex cover(R"(cover(\d+)to(\d+))");
  std::smatch m;
  if (name == "collapse_circle_to_interval") return collapse_circle_to_interval(max_dim);
  if (std::regex_match(name, m, cover)) {
    const int from = number(m, 1), to = number(m, 2);
    if (to < 1 || from % to != 0) return std::nullopt;
    return cycle_cover(cycle_graph(from, max_dim), cycle_graph(to, max_dim));
  }
  if (name == "pullback_cover") {
    const SSetPtr c3 = cycle_graph(3, max_dim);
    return pullback_fibration(cycle_cover(cycle_graph(6, max_dim), c3),
                              cycle_cover(cycle_graph(12, max_dim), c3), true, max_dim)
        .map;
  }
  if (name.rfind("proj_", 0) == 0) {
    const std::string rest = name.substr(5);
    for (std::size_t cut = rest.find('x'); cut != std::string::npos; cut = rest.find('x', cut + 1)) {
      auto a = builtin_space(rest.substr(0, cut), max_dim);
      auto b = a ? builtin_space(rest.substr(cut + 1), max_dim) : std::nullopt;
      if (a && b) return product(*a, *b, max_dim).projections[0];
    }
  }
  const std::string suffix = "_to_interval";
  if (name.rfind("sigma_", 0) == 0 && name.size() > suffix.size() + 6 &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    if (auto x = builtin_space(name.substr(6, name.size() - 6 - suffix.size()), max_dim)) {
      return suspension(*x, max_dim).to_interval;
    }
  }
  return std::nullopt;
}

std::optional<Monoid> builtin_monoid(const std::string& name) {
  static const std::regex cyclic(R"(Z(\d+))");
  std::smatch m;
  if (name == "idem") return Monoid::idempotent();
  if (name == "trivial") return Monoid::trivial();
  if (std::regex_match(name, m, cyclic) && number(m, 1) > 0 && m[1].length() < 5) {
    return Monoid::cyclic(number(m, 1));
  }
  return std::nullopt;
}

Report run(const std::string& command, const std::string& target, const Document& doc,
           const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.max_dim < 1) throw RangeError("--max-dim must be at least 1");
  Report r;
  r.command = command + " " + target;
  r.params["target"] = target;
  r.params["max_dim"] = std::to_string(options.max_dim);
  r.params["coefficients"] = options.ring.name();
  r.params["deep_ops"] = options.deep_ops ? "true" : "false";
  r.params["seed"] = std::to_string(options.seed);

  if (command == "homology") {
    run_homology(r, target, doc, options);
  } else if (command == "check-weakfib") {
    run_weakfib(r, target, doc, options);
  } else if (command == "subdivide") {
    run_subdivide(r, target, doc, options);
  } else if (command == "star-lemma") {
    run_star(r, target, doc, options);
  } else if (command == "barycenter") {
    run_barycenter(r, target, doc, options);
  } else if (command == "borel") {
    run_borel(r, target, doc, options);
  } else if (command == "classify") {
    run_classify(r, target, doc, options);
  } else if (command == "group-completion") {
    run_group_completion(r, target, doc, options);
  } else if (command == "validate") {
    run_validate(r, target, doc, options);
  } else {
    const auto close = suggest(command, command_names());
    throw PreconditionError("unknown command '" + command + "'" +
                            (close.empty() ? "" : " (did you mean '" + close.front() + "'?)"));
  }
  if (options.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    r.timing_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return r;
}

}  // namespace hofib
