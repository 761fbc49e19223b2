#pragma once

// Independent test oracles.  These deliberately avoid the library's own
// decision procedures: the equivalence oracle searches for a fully
// faithful, essentially surjective functor by brute force, and the
// fiber-product counter enumerates raw triples.

#include <vector>

#include "ggd/core.hpp"
#include "ggd/functor.hpp"

namespace ggd::testing {

namespace detail {

struct FunctorSearch {
  const FinGroupoid& a;
  const FinGroupoid& b;
  long long limit;
  long long nodes = 0;
  std::vector<int> f0, f1;

  FunctorSearch(const FinGroupoid& a_, const FinGroupoid& b_, long long l)
      : a(a_), b(b_), limit(l) {
    f0.assign(a.n_objects(), -1);
    f1.assign(a.n_arrows(), -1);
  }

  bool hom_sizes_match(int x, int y) {
    // full faithfulness forces equal hom-set sizes against every
    // already-assigned object (and the candidate itself)
    for (int x2 = 0; x2 < a.n_objects(); ++x2) {
      int y2 = (x2 == x) ? y : f0[x2];
      if (y2 < 0) continue;
      int ab = 0, bb = 0, ba = 0, bb2 = 0;
      for (int g = 0; g < a.n_arrows(); ++g) {
        if (a.src[g] == x && a.tgt[g] == x2) ++ab;
        if (a.src[g] == x2 && a.tgt[g] == x) ++ba;
      }
      for (int g = 0; g < b.n_arrows(); ++g) {
        if (b.src[g] == y && b.tgt[g] == y2) ++bb;
        if (b.src[g] == y2 && b.tgt[g] == y) ++bb2;
      }
      if (ab != bb || ba != bb2) return false;
    }
    return true;
  }

  bool arrow_ok(int g, int img) {
    if (b.src[img] != f0[a.src[g]] || b.tgt[img] != f0[a.tgt[g]]) return false;
    bool g_unit = (g == a.unit[a.src[g]]) && (a.src[g] == a.tgt[g]);
    bool i_unit = (img == b.unit[b.src[img]]) && (b.src[img] == b.tgt[img]);
    if (g_unit != i_unit) return false;
    // injectivity inside each hom block (necessary for full faithfulness)
    for (int g2 = 0; g2 < a.n_arrows(); ++g2)
      if (g2 != g && f1[g2] == img && a.src[g2] == a.src[g] && a.tgt[g2] == a.tgt[g])
        return false;
    if (f1[a.inv[g]] >= 0 && f1[a.inv[g]] != b.inv[img]) return false;
    for (int f = 0; f < a.n_arrows(); ++f) {
      if (f1[f] < 0) continue;
      if (a.composable(g, f)) {
        int c = a.comp_at(g, f);
        if (c >= 0 && f1[c] >= 0 && f1[c] != b.comp_at(img, f1[f])) return false;
      }
      if (a.composable(f, g)) {
        int c = a.comp_at(f, g);
        if (c >= 0 && f1[c] >= 0 && f1[c] != b.comp_at(f1[f], img)) return false;
      }
      for (int f2 = 0; f2 < a.n_arrows(); ++f2) {
        if (f1[f2] < 0 && f2 != g) continue;
        int mf2 = (f2 == g) ? img : f1[f2];
        if (a.comp_at(f, f2) == g && b.comp_at(f1[f], mf2) != img) return false;
        if (a.comp_at(f2, f) == g && b.comp_at(mf2, f1[f]) != img) return false;
      }
    }
    if (a.composable(g, g)) {
      int c = a.comp_at(g, g);
      if (c == g && b.comp_at(img, img) != img) return false;
      if (c >= 0 && c != g && f1[c] >= 0 && f1[c] != b.comp_at(img, img)) return false;
    }
    return true;
  }

  bool essentially_surjective() {
    std::vector<char> covered(b.n_objects(), 0);
    for (int x : f0) covered[x] = 1;
    // spread along arrows of b (orbit closure)
    bool changed = true;
    while (changed) {
      changed = false;
      for (int g = 0; g < b.n_arrows(); ++g) {
        if (covered[b.src[g]] != covered[b.tgt[g]]) {
          covered[b.src[g]] = covered[b.tgt[g]] = 1;
          changed = true;
        }
      }
    }
    for (char c : covered)
      if (!c) return false;
    return true;
  }

  bool fully_faithful_at_leaf() {
    // injective within hom blocks is enforced; sizes must also agree
    for (int x = 0; x < a.n_objects(); ++x)
      for (int y = 0; y < a.n_objects(); ++y) {
        int na = 0, nb = 0;
        for (int g = 0; g < a.n_arrows(); ++g)
          if (a.src[g] == x && a.tgt[g] == y) ++na;
        for (int g = 0; g < b.n_arrows(); ++g)
          if (b.src[g] == f0[x] && b.tgt[g] == f0[y]) ++nb;
        if (na != nb) return false;
      }
    return true;
  }

  bool arrows(int g) {
    if (nodes > limit) return false;
    if (g == a.n_arrows()) return fully_faithful_at_leaf() && essentially_surjective();
    for (int img = 0; img < b.n_arrows(); ++img) {
      if (++nodes > limit) return false;
      if (!arrow_ok(g, img)) continue;
      f1[g] = img;
      if (arrows(g + 1)) return true;
      f1[g] = -1;
    }
    return false;
  }

  bool objects(int x) {
    if (nodes > limit) return false;
    if (x == a.n_objects()) return arrows(0);
    for (int y = 0; y < b.n_objects(); ++y) {
      if (++nodes > limit) return false;
      if (!hom_sizes_match(x, y)) continue;
      f0[x] = y;
      if (objects(x + 1)) return true;
      f0[x] = -1;
    }
    return false;
  }
};

}  // namespace detail

// True iff a fully faithful essentially surjective functor a -> b exists.
inline bool equivalence_functor_exists(const FinGroupoid& a, const FinGroupoid& b,
                                       long long node_limit = 20'000'000) {
  if (a.n_objects() == 0 || b.n_objects() == 0)
    return a.n_objects() == 0 && b.n_objects() == 0;
  detail::FunctorSearch s(a, b, node_limit);
  bool found = s.objects(0);
  if (!found && s.nodes > node_limit)
    throw Error("OracleBudget", "equivalence oracle ran out of nodes");
  return found;
}

inline bool equivalence_oracle(const FinGroupoid& a, const FinGroupoid& b) {
  return equivalence_functor_exists(a, b) || equivalence_functor_exists(b, a);
}

// Raw triple counts for the self fiber product of an extension,
// independent of fiber_product_groupoid.
struct FiberProductCounts {
  long long objects = 0;
  long long arrows = 0;
  long long loops_at_unit = 0;  // at the object carrying unit(first object)
};

inline FiberProductCounts fiber_product_counts_oracle(const GroupoidExtension& e) {
  const FinGroupoid& g = e.phi.dom;
  const FinGroupoid& h = e.phi.cod;
  FiberProductCounts out;
  for (int a = 0; a < g.n_objects(); ++a)
    for (int x = 0; x < h.n_arrows(); ++x)
      for (int b = 0; b < g.n_objects(); ++b)
        if (h.src[x] == e.phi.f0[a] && h.tgt[x] == e.phi.f0[b]) ++out.objects;
  for (int u = 0; u < g.n_arrows(); ++u)
    for (int x = 0; x < h.n_arrows(); ++x)
      for (int v = 0; v < g.n_arrows(); ++v) {
        if (h.src[x] != h.tgt[e.phi.f1[u]] || h.tgt[x] != h.src[e.phi.f1[v]]) continue;
        ++out.arrows;
        if (g.n_objects() == 0) continue;
        int u0 = h.unit[e.phi.f0.empty() ? 0 : e.phi.f0[0]];
        bool src_is_unit = (g.src[u] == 0 && g.src[v] == 0 &&
                            h.comp_at(x, e.phi.f1[u]) == u0);
        bool tgt_is_unit = (g.tgt[u] == 0 && g.tgt[v] == 0 &&
                            h.comp_at(e.phi.f1[v], x) == u0);
        if (src_is_unit && tgt_is_unit) ++out.loops_at_unit;
      }
  return out;
}

}  // namespace ggd::testing
