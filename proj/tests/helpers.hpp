#pragma once

#include <random>
#include <string>
#include <vector>

#include "ggd/core.hpp"
#include "ggd/functor.hpp"
#include "ggd/presets.hpp"

namespace ggd::testing {

// Transitive groupoid with m objects and isotropy k: arrows (j<k>i)
// labelled by group elements, running i -> j.
inline FinGroupoid transitive_block(const FinGroup& k, int m, const std::string& prefix) {
  GroupoidBuilder b;
  std::vector<std::string> objs;
  for (int i = 0; i < m; ++i) {
    objs.push_back(prefix + std::to_string(i));
    b.add_object(objs.back());
  }
  const int n = k.n();
  auto idx = [&](int j, int g, int i) { return (j * n + g) * m + i; };
  for (int j = 0; j < m; ++j)
    for (int g = 0; g < n; ++g)
      for (int i = 0; i < m; ++i)
        b.add_arrow(tuple_id({objs[j], k.elements[g], objs[i]}), i, j);
  for (int i = 0; i < m; ++i) b.set_unit(i, idx(i, k.identity, i));
  for (int j = 0; j < m; ++j)
    for (int g = 0; g < n; ++g)
      for (int i = 0; i < m; ++i)
        b.set_inv(idx(j, g, i), idx(i, k.inverse[g], j));
  for (int l = 0; l < m; ++l)
    for (int g2 = 0; g2 < n; ++g2)
      for (int j = 0; j < m; ++j)
        for (int g1 = 0; g1 < n; ++g1)
          for (int i = 0; i < m; ++i)
            b.set_comp(idx(l, g2, j), idx(j, g1, i), idx(l, k.mul_at(g2, g1), i));
  return b.build();
}

inline FinGroupoid disjoint_union(const std::vector<FinGroupoid>& parts) {
  GroupoidBuilder b;
  std::vector<int> obj_off, arr_off;
  int objs = 0, arrs = 0;
  for (const auto& p : parts) {
    obj_off.push_back(objs);
    arr_off.push_back(arrs);
    objs += p.n_objects();
    arrs += p.n_arrows();
    for (const auto& o : p.objects) b.add_object(o);
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int a = 0; a < parts[i].n_arrows(); ++a)
      b.add_arrow(parts[i].arrows[a], obj_off[i] + parts[i].src[a],
                  obj_off[i] + parts[i].tgt[a]);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    for (int x = 0; x < p.n_objects(); ++x)
      b.set_unit(obj_off[i] + x, arr_off[i] + p.unit[x]);
    for (int a = 0; a < p.n_arrows(); ++a)
      b.set_inv(arr_off[i] + a, arr_off[i] + p.inv[a]);
    for (int g = 0; g < p.n_arrows(); ++g)
      for (int f = 0; f < p.n_arrows(); ++f)
        if (p.comp_at(g, f) >= 0)
          b.set_comp(arr_off[i] + g, arr_off[i] + f, arr_off[i] + p.comp_at(g, f));
  }
  return b.build();
}

// --- stock functors ------------------------------------------------------------

inline GroupoidMap cyclic_quotient_map(int n, int d) {
  GroupoidMap m{one_object_groupoid(cyclic_group(n)),
                one_object_groupoid(cyclic_group(d)),
                {0},
                {}};
  for (int a = 0; a < n; ++a) m.f1.push_back(a % d);
  return m;
}

inline GroupoidMap sign_map() {
  return GroupoidMap{one_object_groupoid(symmetric3()),
                     one_object_groupoid(cyclic_group(2)),
                     {0},
                     {0, 0, 0, 1, 1, 1}};
}

inline GroupoidMap klein_first_map() {
  return GroupoidMap{one_object_groupoid(klein_four()),
                     one_object_groupoid(cyclic_group(2)),
                     {0},
                     {0, 1, 0, 1}};
}

// act4swap -> pair2 from the shift actions of Z/4 and Z/2 on two points.
inline GroupoidMap shift_action_quotient() {
  FinGroupoid g = shift_action_groupoid(4, 2);
  FinGroupoid h = shift_action_groupoid(2, 2);
  GroupoidMap m{g, h, {0, 1}, {}};
  m.f1.resize(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a) {
    const std::string& name = g.arrows[a];
    std::string elem = name.substr(1, name.find('|') - 1);
    std::string x = name.substr(name.find('|') + 1);
    x.pop_back();
    int k = (elem == "e") ? 0 : std::stoi(elem.substr(1));
    std::string target = (k % 2 == 0) ? "e" : "r1";
    m.f1[a] = h.arrow_index("(" + target + "|" + x + ")");
  }
  return m;
}

// Collapse of a transitive block onto its isotropy group at the first
// object, sending (oj|x|oi) to the loop (o0|x|o0).
inline GroupoidMap block_collapse(const FinGroupoid& block) {
  FinGroup k = isotropy_group(block, 0);
  FinGroupoid cod = one_object_groupoid(k);
  GroupoidMap m{block, cod, std::vector<int>(block.n_objects(), 0), {}};
  const std::string& o0 = block.objects[0];
  for (int a = 0; a < block.n_arrows(); ++a) {
    const std::string& name = block.arrows[a];
    auto l = name.find('|');
    auto r = name.rfind('|');
    int idx = cod.arrow_index(tuple_id({o0, name.substr(l + 1, r - l - 1), o0}));
    if (idx < 0) throw Error("Internal", "collapse lookup failed for " + name);
    m.f1.push_back(idx);
  }
  return m;
}

// Inclusion of the isotropy group at the first object of a groupoid.
inline GroupoidMap isotropy_inclusion(const FinGroupoid& g) {
  FinGroup k = isotropy_group(g, 0);
  GroupoidMap incl{one_object_groupoid(k), g, {0}, {}};
  for (const auto& name : k.elements) incl.f1.push_back(g.arrow_index(name));
  return incl;
}

// --- randomized corpus -----------------------------------------------------------

inline const std::vector<FinGroup>& group_catalog() {
  static const std::vector<FinGroup> groups = [] {
    std::vector<FinGroup> gs;
    for (int n = 1; n <= 8; ++n) gs.push_back(cyclic_group(n));
    gs.push_back(klein_four());
    gs.push_back(symmetric3());
    return gs;
  }();
  return groups;
}

// Random groupoid: a disjoint union of transitive blocks, at most
// max_arrows arrows in total.
inline FinGroupoid random_groupoid(std::mt19937& rng, int max_blocks = 3,
                                   int max_arrows = 16) {
  std::uniform_int_distribution<int> nblocks(1, max_blocks);
  std::vector<FinGroupoid> blocks;
  int arrows = 0;
  int want = nblocks(rng);
  for (int i = 0; i < want; ++i) {
    std::uniform_int_distribution<int> gi(0, static_cast<int>(group_catalog().size()) - 1);
    std::uniform_int_distribution<int> mi(1, 3);
    const FinGroup& k = group_catalog()[gi(rng)];
    int m = mi(rng);
    int cost = m * m * k.n();
    if (arrows + cost > max_arrows) {
      if (blocks.empty()) {
        blocks.push_back(transitive_block(cyclic_group(1), 1, "b" + std::to_string(i) + "o"));
        arrows += 1;
      }
      continue;
    }
    arrows += cost;
    blocks.push_back(transitive_block(k, m, "b" + std::to_string(i) + "o"));
  }
  return disjoint_union(blocks);
}

// Random transitive groupoid with bounded size.
inline FinGroupoid random_transitive_groupoid(std::mt19937& rng, int max_objects = 4,
                                              int max_arrows = 16) {
  for (;;) {
    std::uniform_int_distribution<int> gi(0, static_cast<int>(group_catalog().size()) - 1);
    std::uniform_int_distribution<int> mi(1, max_objects);
    const FinGroup& k = group_catalog()[gi(rng)];
    int m = mi(rng);
    if (m * m * k.n() <= max_arrows) return transitive_block(k, m, "t");
  }
}

}  // namespace ggd::testing
