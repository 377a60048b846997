#include "hofib/fibration.hpp"

#include <deque>
#include <set>

#include "hofib/errors.hpp"

namespace hofib {

namespace {

std::string order_map_label(const OrderMap& theta) {
  std::string out = "[";
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(theta[k]);
  }
  return out + "]";
}

void record(FibrationReport& report, PairCertificate pair) {
  if (!pair.result.iso) {
    report.passed = false;
    if (!report.first_failure) report.first_failure = report.pairs.size();
  }
  report.pairs.push_back(std::move(pair));
}

}  // namespace

PreimageRecord dp(const SimplicialMap& p, const SimplexRef& sigma, int max_dim) {
  const SimplicialSet& b = *p.target();
  if (!b.contains(sigma.gen)) throw PreconditionError("simplex is not in the base");
  const int n_max = max_dim < 0 ? p.source()->max_dim() : max_dim;
  PreimageRecord r;
  r.sigma = sigma;
  r.core = sigma.gen;
  r.delta = standard_simplex(sigma.dim(), n_max);
  r.limit = pullback(representing_map(p.target(), sigma, r.delta), p, n_max);
  return r;
}

TupleSpace dp_along(const SimplicialMap& p, const SimplicialMap& f, int max_dim) {
  if (p.target() != f.target()) throw PreconditionError("maps have different targets");
  return pullback(f, p, max_dim < 0 ? p.source()->max_dim() : max_dim);
}

PreimageFunctor::PreimageFunctor(SimplicialMap p, int max_dim, Coefficients ring)
    : p_(std::move(p)), max_dim_(max_dim < 0 ? p_.source()->max_dim() : max_dim), ring_(ring) {}

const PreimageRecord& PreimageFunctor::at(const SimplexRef& sigma) {
  auto& slot = records_[sigma];
  if (!slot) slot = std::make_unique<PreimageRecord>(dp(p_, sigma, max_dim_));
  return *slot;
}

const Homology& PreimageFunctor::homology(const SimplexRef& sigma) {
  auto& slot = homology_[sigma];
  if (!slot) slot = std::make_unique<Homology>(*at(sigma).space(), ring_);
  return *slot;
}

SimplicialMap PreimageFunctor::comparison(const SimplexRef& sigma, const OrderMap& theta) {
  const int n = sigma.dim();
  if (!is_order_preserving(theta, n)) throw RangeError("operator does not act on this simplex");
  const SimplexRef tau = base().apply(sigma, theta);
  const PreimageRecord& src = at(tau);
  const PreimageRecord& tgt = at(sigma);
  SimplicialMap m(src.space(), tgt.space());
  for (int d = 0; d <= src.space()->max_dim(); ++d) {
    for (GenId g : src.space()->generators(d)) {
      const auto parts = src.limit.components(nondegenerate(g));
      const OrderMap moved = compose(theta, vertex_sequence(*src.delta, parts[0]));
      const std::vector<SimplexRef> image{simplex_of(*tgt.delta, moved), parts[1]};
      m.set(g, tgt.limit.at(image));
    }
  }
  return m;
}

namespace {

IsoCertificate test_pair(PreimageFunctor& dp, const SimplicialMap& f, const SimplexRef& from,
                         const SimplexRef& to, int up_to, const WeakCheckOptions& options) {
  if (options.checker) return options.checker->check(f, up_to);
  return is_homology_iso(f, up_to, dp.homology(from), dp.homology(to));
}

}  // namespace

FibrationReport weak_fibration_check(PreimageFunctor& dp, int up_to,
                                     const WeakCheckOptions& options) {
  FibrationReport report;
  report.up_to = up_to;
  if (up_to > dp.max_dim() - 1) {
    report.warnings.push_back("degrees above " + std::to_string(dp.max_dim() - 1) +
                              " exceed the truncation bound");
  }
  const SimplicialSet& b = dp.base();

  auto check = [&](const SimplexRef& base, const SimplexRef& sigma, const OrderMap& theta,
                   std::string op) {
    const SimplexRef tau = b.apply(sigma, theta);
    const SimplicialMap f = dp.comparison(sigma, theta);
    PairCertificate pair{b.describe(base), std::move(op), b.describe(tau), b.describe(sigma),
                         test_pair(dp, f, tau, sigma, up_to, options)};
    record(report, std::move(pair));
    return !(options.stop_at_first_failure && report.first_failure);
  };

  for (int n = 0; n <= b.max_dim(); ++n) {
    for (GenId g : b.generators(n)) {
      const SimplexRef sigma = nondegenerate(g);
      if (options.deep_ops) {
        for (int m = 0; m <= std::min(n + 1, dp.max_dim()); ++m) {
          for (const OrderMap& theta : all_order_maps(m, n)) {
            if (m == n && theta == identity_map(n)) continue;
            if (!check(sigma, sigma, theta, order_map_label(theta))) return report;
          }
        }
        continue;
      }
      for (int i = 0; n > 0 && i <= n; ++i) {
        if (!check(sigma, sigma, coface(n, i), "d" + std::to_string(i))) return report;
      }
      if (n + 1 > dp.max_dim()) continue;
      for (int i = 0; i <= n; ++i) {
        const SimplexRef up = b.degeneracy(sigma, i);
        if (!check(sigma, up, coface(n + 1, i), "s" + std::to_string(i))) return report;
      }
    }
  }
  return report;
}

FibrationReport weak_fibration_check(const SimplicialMap& p, int up_to,
                                     const WeakCheckOptions& options) {
  PreimageFunctor dp(p);
  return weak_fibration_check(dp, up_to, options);
}

PulledBack pullback_fibration(const SimplicialMap& p, const SimplicialMap& f, bool f_is_fibration,
                              int max_dim) {
  PulledBack out;
  out.limit = dp_along(p, f, max_dim);
  out.map = out.limit.projections[0];
  out.base_change_is_fibration = f_is_fibration;
  return out;
}

ContractibleBaseReport fiber_homology_over_contractible(const SimplicialMap& p, int up_to) {
  ContractibleBaseReport out;
  PreimageFunctor dp(p);
  out.comparisons = weak_fibration_check(dp, up_to);

  const Homology hb(dp.base());
  out.base_connected = hb.group(0).free_rank == 1;
  out.base_acyclic = is_acyclic(dp.base(), up_to);
  if (!out.base_acyclic) {
    out.comparisons.passed = false;
    out.comparisons.warnings.push_back("base is not connected and acyclic through degree " +
                                       std::to_string(up_to));
  }

  const Homology he(*p.source());
  const SimplicialSet& b = dp.base();
  for (int n = 0; n <= b.max_dim(); ++n) {
    for (GenId g : b.generators(n)) {
      const SimplexRef sigma = nondegenerate(g);
      PairCertificate pair{b.describe(sigma), "incl", b.describe(sigma), "E",
                           is_homology_iso(dp.at(sigma).to_total(), up_to, dp.homology(sigma), he)};
      record(out.comparisons, std::move(pair));
    }
  }
  for (int k = 0; k <= up_to; ++k) out.table.push_back(he.group(k));
  return out;
}

std::vector<GenId> component_of(const SimplicialSet& b, GenId v) {
  if (v.dim != 0 || !b.contains(v)) throw PreconditionError("component selector must be a vertex");
  std::vector<std::vector<int>> adjacent(b.count(0));
  for (GenId e : b.generators(1)) {
    const auto faces = b.faces(e);
    const int s = faces[1].gen.index;
    const int t = faces[0].gen.index;
    adjacent[s].push_back(t);
    adjacent[t].push_back(s);
  }
  std::vector<char> seen(b.count(0), 0);
  std::deque<int> queue{v.index};
  seen[v.index] = 1;
  std::vector<GenId> out;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    out.push_back(GenId{0, u});
    for (int w : adjacent[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FibrationReport strong_check_via_known_fiber(PreimageFunctor& dp, const KnownFiberSpec& spec,
                                             int up_to) {
  FibrationReport report;
  report.up_to = up_to;
  const SimplicialSet& b = dp.base();
  const auto vertices = component_of(b, spec.vertex);
  const std::set<GenId> component(vertices.begin(), vertices.end());

  for (int n = 1; n <= b.max_dim(); ++n) {
    for (GenId g : b.generators(n)) {
      const SimplexRef sigma = nondegenerate(g);
      if (!component.count(b.vertices(sigma)[0].gen)) continue;
      for (int j = 0; j <= n; ++j) {
        const OrderMap theta{j};
        const SimplexRef v = b.apply(sigma, theta);
        PairCertificate pair{b.describe(sigma), "v" + std::to_string(j), b.describe(v),
                             b.describe(sigma),
                             is_homology_iso(dp.comparison(sigma, theta), up_to, dp.homology(v),
                                             dp.homology(sigma))};
        record(report, std::move(pair));
      }
    }
  }

  const SimplexRef v = nondegenerate(spec.vertex);
  const Homology hf(*spec.fiber, dp.ring());
  const Homology& hv = dp.homology(v);
  PairCertificate pair{b.describe(v), "fiber", "F", b.describe(v), {}};
  if (spec.fiber_map) {
    pair.result = is_homology_iso(spec.fiber_map(dp.at(v)), up_to, hf, hv);
  } else {
    report.warnings.push_back("declared fiber compared by homology invariants only");
    pair.result.up_to = up_to;
    for (int k = 0; k <= up_to; ++k) {
      const HomologyGroup& a = hf.group(k);
      const HomologyGroup& c = hv.group(k);
      IsoDegree d{k, a.free_rank == c.free_rank && a.torsion == c.torsion, a.to_string(),
                  c.to_string(), ""};
      if (!d.iso) {
        d.reason = "invariants differ";
        pair.result.iso = false;
        if (!pair.result.first_failure) pair.result.first_failure = k;
      }
      pair.result.degrees.push_back(std::move(d));
    }
  }
  record(report, std::move(pair));
  return report;
}

FibrationReport strong_check_via_known_fiber(const SimplicialMap& p, const KnownFiberSpec& spec,
                                             int up_to) {
  PreimageFunctor dp(p);
  return strong_check_via_known_fiber(dp, spec, up_to);
}

}  // namespace hofib
