#include "ggd/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace ggd {

int RightAction::carrier_index(std::string_view id) const {
  for (int i = 0; i < n_carrier(); ++i)
    if (carrier[i] == id) return i;
  return -1;
}

namespace {

void check_action_sizes(const RightAction& a) {
  if (static_cast<int>(a.anchor.size()) != a.n_carrier() ||
      a.act.size() != static_cast<std::size_t>(a.n_carrier()) * a.grp.arrows.size())
    throw Error("Malformed", "action tables have the wrong size");
  for (int x : a.anchor)
    if (x < 0 || x >= a.grp.n_objects())
      throw Error("DanglingId", "anchor leaves the object set");
  for (int v : a.act)
    if (v < -1 || v >= a.n_carrier())
      throw Error("DanglingId", "action value leaves the carrier");
}

}  // namespace

Report validate_right_action(const RightAction& a) {
  check_action_sizes(a);
  Report report;
  const int P = a.n_carrier();
  const int A = a.grp.n_arrows();
  for (int p = 0; p < P; ++p)
    for (int h = 0; h < A; ++h) {
      int r = a.act_at(p, h);
      bool should = (a.anchor[p] == a.grp.tgt[h]);
      if (should && r < 0)
        report.add("action-domain",
                   a.carrier[p] + "." + a.grp.arrows[h] + " is undefined");
      if (!should && r >= 0)
        report.add("action-domain", a.carrier[p] + "." + a.grp.arrows[h] +
                                        " defined off the anchor fiber");
      if (should && r >= 0 && a.anchor[r] != a.grp.src[h])
        report.add("action-anchor", a.carrier[p] + "." + a.grp.arrows[h]);
    }
  for (int p = 0; p < P; ++p) {
    int u = a.grp.unit[a.anchor[p]];
    int r = a.act_at(p, u);
    if (r >= 0 && r != p) report.add("action-unit", a.carrier[p]);
  }
  for (int p = 0; p < P; ++p)
    for (int h = 0; h < A; ++h) {
      if (a.anchor[p] != a.grp.tgt[h]) continue;
      int ph = a.act_at(p, h);
      if (ph < 0) continue;
      for (int h2 = 0; h2 < A; ++h2) {
        if (a.grp.src[h] != a.grp.tgt[h2]) continue;
        int lhs = a.act_at(ph, h2);
        int c = a.grp.comp_at(h, h2);
        int rhs = (c >= 0) ? a.act_at(p, c) : -1;
        if (lhs >= 0 && rhs >= 0 && lhs != rhs)
          report.add("action-comp", "(" + a.carrier[p] + ", " + a.grp.arrows[h] +
                                        ", " + a.grp.arrows[h2] + ")");
      }
    }
  return report;
}

Report validate_principal(const PrincipalBundle& b) {
  Report report = validate_right_action(b.action);
  if (static_cast<int>(b.proj.size()) != b.action.n_carrier())
    throw Error("Malformed", "proj must be total on the carrier");
  for (int x : b.proj)
    if (x < 0 || x >= b.n_base()) throw Error("DanglingId", "proj leaves the base");

  std::vector<char> hit(b.n_base(), 0);
  for (int x : b.proj) hit[x] = 1;
  for (int i = 0; i < b.n_base(); ++i)
    if (!hit[i]) report.add("proj-surjective", "empty fiber over " + b.base[i]);

  const int P = b.action.n_carrier();
  const int A = b.action.grp.n_arrows();
  for (int p = 0; p < P; ++p)
    for (int h = 0; h < A; ++h) {
      int r = b.action.act_at(p, h);
      if (r >= 0 && b.proj[r] != b.proj[p])
        report.add("invariance", b.action.carrier[p] + "." + b.action.grp.arrows[h]);
    }

  // (p, h) -> (p, p.h) must reach every same-fiber pair exactly once.
  std::vector<int> times(static_cast<std::size_t>(P) * std::max(1, P), 0);
  for (int p = 0; p < P; ++p)
    for (int h = 0; h < A; ++h) {
      int r = b.action.act_at(p, h);
      if (r >= 0) times[static_cast<std::size_t>(p) * P + r]++;
    }
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < P; ++q) {
      int t = times[static_cast<std::size_t>(p) * P + q];
      bool same = (b.proj[p] == b.proj[q]);
      if (same && t == 0)
        report.add("principality-surjective",
                   "(" + b.action.carrier[p] + ", " + b.action.carrier[q] + ") unreached");
      if (t > 1)
        report.add("principality-injective",
                   "(" + b.action.carrier[p] + ", " + b.action.carrier[q] + ") reached " +
                       std::to_string(t) + " times");
      if (!same && t > 0)
        report.add("invariance",
                   "(" + b.action.carrier[p] + ", " + b.action.carrier[q] + ") crosses fibers");
    }
  return report;
}

PrincipalBundle unit_bundle(const FinGroupoid& g) {
  PrincipalBundle b;
  b.action.grp = g;
  b.action.carrier = g.arrows;
  b.action.anchor = g.src;
  b.action.act = g.comp;  // comp(p, h): defined iff tgt(h) == src(p)
  b.base = g.objects;
  b.proj = g.tgt;
  return b;
}

PrincipalBundle pullback_bundle(const PrincipalBundle& b,
                                const std::vector<std::string>& n,
                                const std::vector<int>& f) {
  if (f.size() != n.size()) throw Error("Malformed", "f must be total on n");
  for (int x : f)
    if (x < 0 || x >= b.n_base()) throw Error("DanglingId", "f leaves the base");

  PrincipalBundle out;
  out.action.grp = b.action.grp;
  out.base = n;
  std::vector<std::pair<int, int>> elems;  // (i, p)
  for (int i = 0; i < static_cast<int>(n.size()); ++i)
    for (int p = 0; p < b.action.n_carrier(); ++p) {
      if (b.proj[p] != f[i]) continue;
      out.action.carrier.push_back(tuple_id({n[i], b.action.carrier[p]}));
      out.action.anchor.push_back(b.action.anchor[p]);
      out.proj.push_back(i);
      elems.push_back({i, p});
    }
  const int P = static_cast<int>(elems.size());
  const int A = b.action.grp.n_arrows();
  std::unordered_map<long long, int> index;
  for (int e = 0; e < P; ++e)
    index[static_cast<long long>(elems[e].first) * b.action.n_carrier() +
          elems[e].second] = e;
  out.action.act.assign(static_cast<std::size_t>(P) * A, -1);
  for (int e = 0; e < P; ++e)
    for (int h = 0; h < A; ++h) {
      int r = b.action.act_at(elems[e].second, h);
      if (r < 0) continue;
      out.action.act[static_cast<std::size_t>(e) * A + h] =
          index.at(static_cast<long long>(elems[e].first) * b.action.n_carrier() + r);
    }
  return out;
}

Report validate_bundle_morphism(const PrincipalBundle& a, const PrincipalBundle& b,
                                const std::vector<int>& carrier_map,
                                const std::vector<int>& base_map) {
  Report report;
  if (!(a.action.grp == b.action.grp)) {
    report.add("structure-group", "bundles live over different groupoids");
    return report;
  }
  if (static_cast<int>(carrier_map.size()) != a.action.n_carrier() ||
      static_cast<int>(base_map.size()) != a.n_base())
    throw Error("Malformed", "morphism tables have the wrong size");
  for (int p = 0; p < a.action.n_carrier(); ++p) {
    int q = carrier_map[p];
    if (q < 0 || q >= b.action.n_carrier())
      throw Error("DanglingId", "carrier map leaves the codomain");
    if (b.proj[q] != base_map[a.proj[p]])
      report.add("proj-compat", a.action.carrier[p]);
    if (b.action.anchor[q] != a.action.anchor[p])
      report.add("anchor-compat", a.action.carrier[p]);
    for (int h = 0; h < a.action.grp.n_arrows(); ++h) {
      int r = a.action.act_at(p, h);
      if (r < 0) continue;
      int rq = b.action.act_at(q, h);
      if (rq < 0 || rq != carrier_map[r])
        report.add("equivariance", a.action.carrier[p] + "." + a.action.grp.arrows[h]);
    }
  }
  return report;
}

Trivialization trivialize(const PrincipalBundle& b) {
  Trivialization out;
  out.section.assign(b.n_base(), -1);
  for (int p = 0; p < b.action.n_carrier(); ++p)
    if (out.section[b.proj[p]] < 0) out.section[b.proj[p]] = p;
  for (int i = 0; i < b.n_base(); ++i)
    if (out.section[i] < 0) {
      out.obstruction = i;
      return out;  // NoSection at base[i]
    }
  out.classifying.resize(b.n_base());
  for (int i = 0; i < b.n_base(); ++i)
    out.classifying[i] = b.action.anchor[out.section[i]];

  out.model = pullback_bundle(unit_bundle(b.action.grp), b.base, out.classifying);

  // p maps to (proj(p) | h) for the unique h with section(proj p).h == p.
  // Model carrier ids are (base | arrow); rebuild the (i, h) index.
  std::unordered_map<long long, int> model_index;
  {
    int e = 0;
    for (int i = 0; i < b.n_base(); ++i)
      for (int h = 0; h < b.action.grp.n_arrows(); ++h) {
        if (b.action.grp.tgt[h] != out.classifying[i]) continue;
        model_index[static_cast<long long>(i) * b.action.grp.n_arrows() + h] = e++;
      }
  }
  out.carrier_iso.assign(b.action.n_carrier(), -1);
  for (int p = 0; p < b.action.n_carrier(); ++p) {
    int s = out.section[b.proj[p]];
    int translate = -1;
    for (int h = 0; h < b.action.grp.n_arrows(); ++h) {
      if (b.action.act_at(s, h) != p) continue;
      if (translate >= 0)
        throw Error("NotPrincipal", "translation from the section is not unique at " +
                                        b.action.carrier[p]);
      translate = h;
    }
    if (translate < 0)
      throw Error("NotPrincipal",
                  "no translation from the section reaches " + b.action.carrier[p]);
    out.carrier_iso[p] =
        model_index.at(static_cast<long long>(b.proj[p]) * b.action.grp.n_arrows() +
                       translate);
  }
  std::vector<int> id_base(b.n_base());
  std::iota(id_base.begin(), id_base.end(), 0);
  out.morphism_report = validate_bundle_morphism(b, out.model, out.carrier_iso, id_base);
  std::vector<char> used(out.model.action.n_carrier(), 0);
  for (int q : out.carrier_iso) {
    if (used[q]) out.morphism_report.add("bijective", "carrier map not injective");
    used[q] = 1;
  }
  for (int e = 0; e < out.model.action.n_carrier(); ++e)
    if (!used[e]) out.morphism_report.add("bijective", "carrier map not surjective");
  out.found = true;
  return out;
}

PrincipalBundle restrict_bundle(const PrincipalBundle& b,
                                const std::vector<int>& base_subset) {
  PrincipalBundle out;
  out.action.grp = b.action.grp;
  std::vector<int> new_base(b.n_base(), -1);
  for (int i : base_subset) {
    if (i < 0 || i >= b.n_base()) throw Error("DanglingId", "base index out of range");
    if (new_base[i] >= 0) throw Error("DuplicateId", "base point listed twice");
    new_base[i] = static_cast<int>(out.base.size());
    out.base.push_back(b.base[i]);
  }
  std::vector<int> new_carrier(b.action.n_carrier(), -1);
  for (int p = 0; p < b.action.n_carrier(); ++p) {
    if (new_base[b.proj[p]] < 0) continue;
    new_carrier[p] = static_cast<int>(out.action.carrier.size());
    out.action.carrier.push_back(b.action.carrier[p]);
    out.action.anchor.push_back(b.action.anchor[p]);
    out.proj.push_back(new_base[b.proj[p]]);
  }
  const int A = b.action.grp.n_arrows();
  out.action.act.assign(out.action.carrier.size() * static_cast<std::size_t>(A), -1);
  for (int p = 0; p < b.action.n_carrier(); ++p) {
    if (new_carrier[p] < 0) continue;
    for (int h = 0; h < A; ++h) {
      int r = b.action.act_at(p, h);
      if (r < 0) continue;
      // invariance keeps orbits inside fibers, so r stays in the subset
      out.action.act[static_cast<std::size_t>(new_carrier[p]) * A + h] = new_carrier[r];
    }
  }
  return out;
}

// --- gauge groupoid -----------------------------------------------------------

GaugeGroupoid gauge_groupoid_detailed(const PrincipalBundle& b) {
  GaugeGroupoid out;
  const int P = b.action.n_carrier();
  const int A = b.action.grp.n_arrows();

  std::unordered_map<long long, int> pair_index;
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < P; ++q) {
      if (b.action.anchor[p] != b.action.anchor[q]) continue;
      pair_index[static_cast<long long>(p) * P + q] =
          static_cast<int>(out.pairs.size());
      out.pairs.push_back({p, q});
    }
  const int N = static_cast<int>(out.pairs.size());

  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](int i, int j) {
    i = find(i);
    j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  };
  for (int e = 0; e < N; ++e) {
    auto [p, q] = out.pairs[e];
    for (int h = 0; h < A; ++h) {
      if (b.action.grp.tgt[h] != b.action.anchor[p]) continue;
      int ph = b.action.act_at(p, h), qh = b.action.act_at(q, h);
      if (ph < 0 || qh < 0) continue;
      unite(e, pair_index.at(static_cast<long long>(ph) * P + qh));
    }
  }

  // smallest member of each class is its representative and its id
  std::vector<int>& rep_of_class = out.class_rep;
  std::vector<int> class_of_root(N, -1);
  out.pair_class.assign(N, -1);
  for (int e = 0; e < N; ++e) {
    int r = find(e);
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(rep_of_class.size());
      rep_of_class.push_back(e);
    }
    out.pair_class[e] = class_of_root[r];
  }

  GroupoidBuilder builder;
  for (const auto& id : b.base) builder.add_object(id);
  for (int c = 0; c < static_cast<int>(rep_of_class.size()); ++c) {
    auto [p, q] = out.pairs[rep_of_class[c]];
    builder.add_arrow(tuple_id({b.action.carrier[p], b.action.carrier[q]}), b.proj[p],
                      b.proj[q]);
  }

  // units: diagonal pair at the first carrier element of each fiber
  std::vector<int> section(b.n_base(), -1);
  for (int p = 0; p < P; ++p)
    if (section[b.proj[p]] < 0) section[b.proj[p]] = p;
  for (int i = 0; i < b.n_base(); ++i) {
    if (section[i] < 0) throw Error("NotSurjective", "empty fiber over " + b.base[i]);
    int e = pair_index.at(static_cast<long long>(section[i]) * P + section[i]);
    builder.set_unit(i, out.pair_class[e]);
  }
  for (int c = 0; c < static_cast<int>(rep_of_class.size()); ++c) {
    auto [p, q] = out.pairs[rep_of_class[c]];
    builder.set_inv(c, out.pair_class[pair_index.at(static_cast<long long>(q) * P + p)]);
  }

  // translate(r, p'): unique h with r.h == p' (same proj fiber)
  auto translate = [&](int r, int p2) {
    int found = -1;
    for (int h = 0; h < A; ++h) {
      if (b.action.act_at(r, h) == p2) {
        if (found >= 0)
          throw Error("NotPrincipal", "ambiguous translation in gauge composition");
        found = h;
      }
    }
    if (found < 0)
      throw Error("NotPrincipal", "no translation in gauge composition");
    return found;
  };
  for (int c2 = 0; c2 < static_cast<int>(rep_of_class.size()); ++c2) {
    auto [r, r2] = out.pairs[rep_of_class[c2]];
    for (int c1 = 0; c1 < static_cast<int>(rep_of_class.size()); ++c1) {
      auto [p, p2] = out.pairs[rep_of_class[c1]];
      if (b.proj[p2] != b.proj[r]) continue;  // c1 first, then c2
      int h = translate(r, p2);
      int rr = b.action.act_at(r2, h);
      if (rr < 0) throw Error("NotPrincipal", "gauge splice left the carrier");
      builder.set_comp(c2, c1,
                       out.pair_class[pair_index.at(static_cast<long long>(p) * P + rr)]);
    }
  }

  out.gpd = builder.build();
  return out;
}

FinGroupoid gauge_groupoid(const PrincipalBundle& b) {
  return gauge_groupoid_detailed(b).gpd;
}

// --- bundle isomorphism search --------------------------------------------------

namespace {

struct BundleIsoSearch {
  const PrincipalBundle& a;
  const PrincipalBundle& b;
  long long limit;
  long long nodes = 0;
  bool out_of_budget = false;
  std::vector<int> map;
  std::vector<char> used;

  BundleIsoSearch(const PrincipalBundle& a_, const PrincipalBundle& b_, long long l)
      : a(a_), b(b_), limit(l) {}

  bool consistent(int p, int q) {
    if (a.proj[p] != b.proj[q]) return false;
    if (a.action.anchor[p] != b.action.anchor[q]) return false;
    const int A = a.action.grp.n_arrows();
    for (int h = 0; h < A; ++h) {
      int r = a.action.act_at(p, h);
      int rq = b.action.act_at(q, h);
      if ((r < 0) != (rq < 0)) return false;
      if (r < 0) continue;
      if (r == p) {
        if (rq != q) return false;
      } else if (map[r] >= 0) {
        if (map[r] != rq) return false;
      } else if (used[rq]) {
        return false;
      }
    }
    // arrows landing on p from already-assigned elements
    for (int pp = 0; pp < a.action.n_carrier(); ++pp) {
      if (map[pp] < 0) continue;
      for (int h = 0; h < A; ++h)
        if (a.action.act_at(pp, h) == p && b.action.act_at(map[pp], h) != q)
          return false;
    }
    return true;
  }

  bool assign(int p) {
    if (p == a.action.n_carrier()) return true;
    for (int q = 0; q < b.action.n_carrier(); ++q) {
      if (used[q]) continue;
      if (++nodes > limit) {
        out_of_budget = true;
        return false;
      }
      if (!consistent(p, q)) continue;
      map[p] = q;
      used[q] = 1;
      if (assign(p + 1)) return true;
      map[p] = -1;
      used[q] = 0;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

BundleIso bundle_isomorphic(const PrincipalBundle& a, const PrincipalBundle& b,
                            Budget budget) {
  BundleIso out;
  if (!(a.action.grp == b.action.grp) || a.base != b.base ||
      a.action.n_carrier() != b.action.n_carrier())
    return out;
  BundleIsoSearch s(a, b, budget.nodes);
  s.map.assign(a.action.n_carrier(), -1);
  s.used.assign(b.action.n_carrier(), 0);
  if (s.assign(0)) {
    out.status = SearchStatus::Found;
    out.map = s.map;
  } else {
    out.status = s.out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  }
  return out;
}

}  // namespace ggd
