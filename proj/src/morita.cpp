#include "ggd/morita.hpp"

#include <algorithm>
#include <map>

namespace ggd {

Skeleton skeleton(const FinGroupoid& g) {
  Skeleton out;
  for (const auto& block : orbits(g)) {
    int rep = *std::min_element(block.begin(), block.end());
    out.orbit_reps.push_back(rep);
    out.isotropy.push_back(isotropy_group(g, rep));
  }
  return out;
}

MoritaMorphismCheck is_morita_morphism(const GroupoidMap& m) {
  MoritaMorphismCheck out;
  Report functor_report = validate_functor(m);
  if (!functor_report.ok()) throw Error("InvalidFunctor", functor_report.summary());

  auto pb = pullback_groupoid(m.cod, m.dom.objects, m.f0, /*require_surjective=*/false);

  // canonical comparison functor: identity on objects, g -> (s(g)|f1(g)|t(g))
  GroupoidMap canonical;
  canonical.dom = m.dom;
  canonical.cod = pb.gpd;
  canonical.f0.resize(m.dom.n_objects());
  for (int x = 0; x < m.dom.n_objects(); ++x) canonical.f0[x] = x;
  std::vector<char> hit(pb.gpd.n_arrows(), 0);
  bool injective = true;
  for (int g = 0; g < m.dom.n_arrows(); ++g) {
    int idx = pb.gpd.arrow_index(tuple_id(
        {m.dom.objects[m.dom.src[g]], m.cod.arrows[m.f1[g]], m.dom.objects[m.dom.tgt[g]]}));
    if (idx < 0) throw Error("Internal", "comparison functor image missing");
    canonical.f1.push_back(idx);
    if (hit[idx]) injective = false;
    hit[idx] = 1;
  }
  bool surjective_on_arrows =
      std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  out.fully_faithful = injective && surjective_on_arrows;

  std::vector<char> covered(m.cod.n_objects(), 0);
  for (int x : m.f0) covered[x] = 1;
  out.object_surjective =
      std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
  out.essentially_surjective = true;
  for (const auto& block : orbits(m.cod)) {
    bool met = false;
    for (int x : block) met = met || covered[x];
    if (!met) {
      out.essentially_surjective = false;
      break;
    }
  }

  if (out.fully_faithful && out.essentially_surjective) {
    out.verdict = Verdict::True;
    out.witness = std::move(canonical);
  } else {
    out.verdict = Verdict::False;
    out.failed = !out.fully_faithful ? "not isomorphic to the pullback groupoid"
                                     : "image misses an orbit of the codomain";
  }
  return out;
}

namespace {

// Group the isotropy list of each skeleton into isomorphism classes,
// memoising pairwise checks.  Returns Kuhn-style matching or reports a
// budget problem.
struct BlockMatcher {
  const Skeleton& a;
  const Skeleton& b;
  Budget budget;
  bool budget_hit = false;
  std::map<std::pair<int, int>, bool> memo;

  bool iso(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto r = group_isomorphic(a.isotropy[i], b.isotropy[j], budget);
    if (r.status == SearchStatus::BudgetExceeded) {
      budget_hit = true;
      memo[key] = false;
      return false;
    }
    memo[key] = r.found();
    return r.found();
  }
};

bool augment(int i, BlockMatcher& m, std::vector<char>& visited,
             std::vector<int>& match_b) {
  for (int j = 0; j < static_cast<int>(m.b.orbit_reps.size()); ++j) {
    if (visited[j] || !m.iso(i, j)) continue;
    visited[j] = 1;
    if (match_b[j] < 0 || augment(match_b[j], m, visited, match_b)) {
      match_b[j] = i;
      return true;
    }
  }
  return false;
}

}  // namespace

MoritaEquivalence are_morita_equivalent(const FinGroupoid& a, const FinGroupoid& b,
                                        Budget budget) {
  MoritaEquivalence out;
  Skeleton sa = skeleton(a), sb = skeleton(b);
  if (sa.orbit_reps.size() != sb.orbit_reps.size()) {
    out.verdict = Verdict::False;
    return out;
  }
  BlockMatcher matcher{sa, sb, budget, false, {}};
  std::vector<int> match_b(sb.orbit_reps.size(), -1);
  int matched = 0;
  for (int i = 0; i < static_cast<int>(sa.orbit_reps.size()); ++i) {
    std::vector<char> visited(sb.orbit_reps.size(), 0);
    if (augment(i, matcher, visited, match_b)) ++matched;
  }
  if (matched == static_cast<int>(sa.orbit_reps.size())) {
    out.verdict = Verdict::True;
    for (int j = 0; j < static_cast<int>(match_b.size()); ++j)
      if (match_b[j] >= 0)
        out.matching.push_back({sa.orbit_reps[match_b[j]], sb.orbit_reps[j]});
    std::sort(out.matching.begin(), out.matching.end());
  } else {
    out.verdict = matcher.budget_hit ? Verdict::BudgetExceeded : Verdict::False;
  }
  return out;
}

PulledBackExtension pullback_extension(const GroupoidExtension& e,
                                       const std::vector<std::string>& m2,
                                       const std::vector<int>& f) {
  Report r = validate_extension(e);
  if (!r.ok()) throw Error("InvalidExtension", r.summary());

  auto px = pullback_groupoid(e.phi.dom, m2, f);  // throws NotSurjective
  auto py = pullback_groupoid(e.phi.cod, m2, f);

  GroupoidMap phi2;
  phi2.dom = px.gpd;
  phi2.cod = py.gpd;
  phi2.f0.resize(px.gpd.n_objects());
  for (int x = 0; x < px.gpd.n_objects(); ++x) phi2.f0[x] = x;
  for (int a = 0; a < px.gpd.n_arrows(); ++a) {
    // (p|x|q) -> (p|phi(x)|q)
    int p = px.gpd.src[a], q = px.gpd.tgt[a];
    int x = px.projection.f1[a];
    int idx = py.gpd.arrow_index(
        tuple_id({m2[p], e.phi.cod.arrows[e.phi.f1[x]], m2[q]}));
    if (idx < 0) throw Error("Internal", "pulled-back extension image missing");
    phi2.f1.push_back(idx);
  }
  return {GroupoidExtension{std::move(phi2)}, std::move(px.projection),
          std::move(py.projection)};
}

ExtensionWitnessCheck verify_extension_equivalence_witness(
    const GroupoidExtension& e1, const GroupoidExtension& e2,
    const GroupoidExtension& e3, const GroupoidMap& to1_dom,
    const GroupoidMap& to1_cod, const GroupoidMap& to2_dom,
    const GroupoidMap& to2_cod) {
  ExtensionWitnessCheck out;
  bool budget_hit = false;
  auto add = [&](const std::string& name, bool value) {
    out.conditions.push_back({name, value});
    return value;
  };

  bool ok = true;
  ok &= add("e1-valid", validate_extension(e1).ok());
  ok &= add("e2-valid", validate_extension(e2).ok());
  ok &= add("e3-valid", validate_extension(e3).ok());

  struct Side {
    const char* name;
    const GroupoidExtension* target;
    const GroupoidMap* leg_dom;
    const GroupoidMap* leg_cod;
  };
  for (const Side& side : {Side{"side1", &e1, &to1_dom, &to1_cod},
                           Side{"side2", &e2, &to2_dom, &to2_cod}}) {
    std::string n(side.name);
    bool wired = side.leg_dom->dom == e3.phi.dom && side.leg_cod->dom == e3.phi.cod &&
                 side.leg_dom->cod == side.target->phi.dom &&
                 side.leg_cod->cod == side.target->phi.cod;
    ok &= add(n + "-legs-wired", wired);
    if (!wired) continue;
    bool dom_functor = validate_functor(*side.leg_dom).ok();
    bool cod_functor = validate_functor(*side.leg_cod).ok();
    ok &= add(n + "-leg-dom-functor", dom_functor);
    ok &= add(n + "-leg-cod-functor", cod_functor);
    ok &= add(n + "-shared-object-map", side.leg_dom->f0 == side.leg_cod->f0);

    auto leg_morita = [&](const GroupoidMap& leg, bool leg_valid) {
      if (!leg_valid) return false;
      auto r = is_morita_morphism(leg);
      budget_hit |= (r.verdict == Verdict::BudgetExceeded);
      return r.verdict == Verdict::True;
    };
    ok &= add(n + "-leg-dom-morita", leg_morita(*side.leg_dom, dom_functor));
    ok &= add(n + "-leg-cod-morita", leg_morita(*side.leg_cod, cod_functor));

    // psi_cod . phi3 == phi_target . psi_dom
    bool square = true;
    for (int a = 0; a < e3.phi.dom.n_arrows(); ++a)
      square = square && (side.leg_cod->f1[e3.phi.f1[a]] ==
                          side.target->phi.f1[side.leg_dom->f1[a]]);
    ok &= add(n + "-square-commutes", square);
  }
  out.verdict = ok ? Verdict::True
                   : (budget_hit ? Verdict::BudgetExceeded : Verdict::False);
  return out;
}

}  // namespace ggd
