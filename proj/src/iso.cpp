#include "ggd/iso.hpp"

#include <algorithm>
#include <tuple>

namespace ggd {

int element_order(const FinGroup& k, int a) {
  int x = a, n = 1;
  while (x != k.identity) {
    x = k.mul_at(a, x);
    ++n;
  }
  return n;
}

namespace {

// Order of a loop under comp; -1 for non-loops.
std::vector<int> loop_orders(const FinGroupoid& g) {
  std::vector<int> ord(g.n_arrows(), -1);
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.src[a] != g.tgt[a]) continue;
    int x = a, n = 1;
    while (x != g.unit[g.src[a]]) {
      x = g.comp_at(a, x);
      if (x < 0 || n > g.n_arrows()) {  // defective table; no finite order
        n = -2;
        break;
      }
      ++n;
    }
    ord[a] = n;
  }
  return ord;
}

struct ObjectProfile {
  int loops = 0;
  int out_nonloop = 0;
  int in_nonloop = 0;
  std::vector<int> loop_order_multiset;

  bool operator==(const ObjectProfile&) const = default;
  bool operator<(const ObjectProfile& o) const {
    return std::tie(loops, out_nonloop, in_nonloop, loop_order_multiset) <
           std::tie(o.loops, o.out_nonloop, o.in_nonloop, o.loop_order_multiset);
  }
};

std::vector<ObjectProfile> object_profiles(const FinGroupoid& g,
                                           const std::vector<int>& orders) {
  std::vector<ObjectProfile> prof(g.n_objects());
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.src[a] == g.tgt[a]) {
      prof[g.src[a]].loops++;
      prof[g.src[a]].loop_order_multiset.push_back(orders[a]);
    } else {
      prof[g.src[a]].out_nonloop++;
      prof[g.tgt[a]].in_nonloop++;
    }
  }
  for (auto& p : prof)
    std::sort(p.loop_order_multiset.begin(), p.loop_order_multiset.end());
  return prof;
}

struct IsoSearch {
  const FinGroupoid& a;
  const FinGroupoid& b;
  long long limit;
  long long nodes = 0;
  bool out_of_budget = false;

  std::vector<int> a_orders, b_orders;
  std::vector<ObjectProfile> a_prof, b_prof;
  std::vector<std::vector<int>> obj_candidates;  // per dom object
  std::vector<int> obj_order;                    // assignment order
  std::vector<int> obj_map, obj_used;

  std::vector<std::vector<std::pair<int, int>>> factor_pairs;  // composite -> (g, f)
  std::vector<std::vector<int>> b_hom;  // b arrows grouped by src * n + tgt
  std::vector<int> arrow_map, arrow_used;

  IsoSearch(const FinGroupoid& a_, const FinGroupoid& b_, long long limit_)
      : a(a_), b(b_), limit(limit_) {}

  bool tick() {
    if (++nodes > limit) out_of_budget = true;
    return !out_of_budget;
  }

  bool prepare() {
    if (a.n_objects() != b.n_objects() || a.n_arrows() != b.n_arrows()) return false;
    a_orders = loop_orders(a);
    b_orders = loop_orders(b);
    a_prof = object_profiles(a, a_orders);
    b_prof = object_profiles(b, b_orders);
    auto sa = a_prof, sb = b_prof;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;

    obj_candidates.resize(a.n_objects());
    for (int x = 0; x < a.n_objects(); ++x)
      for (int y = 0; y < b.n_objects(); ++y)
        if (a_prof[x] == b_prof[y]) obj_candidates[x].push_back(y);

    obj_order.resize(a.n_objects());
    for (int i = 0; i < a.n_objects(); ++i) obj_order[i] = i;
    std::stable_sort(obj_order.begin(), obj_order.end(), [&](int l, int r) {
      return obj_candidates[l].size() < obj_candidates[r].size();
    });

    factor_pairs.assign(a.n_arrows(), {});
    for (int g = 0; g < a.n_arrows(); ++g)
      for (int f = 0; f < a.n_arrows(); ++f) {
        int c = a.comp_at(g, f);
        if (c >= 0) factor_pairs[c].push_back({g, f});
      }

    b_hom.assign(static_cast<std::size_t>(b.n_objects()) * std::max(1, b.n_objects()),
                 {});
    for (int e = 0; e < b.n_arrows(); ++e)
      b_hom[static_cast<std::size_t>(b.src[e]) * b.n_objects() + b.tgt[e]].push_back(e);

    obj_map.assign(a.n_objects(), -1);
    obj_used.assign(b.n_objects(), 0);
    arrow_map.assign(a.n_arrows(), -1);
    arrow_used.assign(b.n_arrows(), 0);
    return true;
  }

  bool arrow_consistent(int x, int y) {
    // units and loop orders
    bool xu = (x == a.unit[a.src[x]]);
    bool yu = (y == b.unit[b.src[y]]);
    if (xu != yu) return false;
    if (a_orders[x] != b_orders[y]) return false;
    if ((a.inv[x] == x) != (b.inv[y] == y)) return false;
    if (arrow_map[a.inv[x]] >= 0 && arrow_map[a.inv[x]] != b.inv[y]) return false;
    // composition with already-assigned factors
    for (int f = 0; f < a.n_arrows(); ++f) {
      if (arrow_map[f] < 0) continue;
      if (a.composable(x, f)) {
        int c = a.comp_at(x, f);
        if (c >= 0 && arrow_map[c] >= 0 &&
            arrow_map[c] != b.comp_at(y, arrow_map[f]))
          return false;
      }
      if (a.composable(f, x)) {
        int c = a.comp_at(f, x);
        if (c >= 0 && arrow_map[c] >= 0 &&
            arrow_map[c] != b.comp_at(arrow_map[f], y))
          return false;
      }
    }
    if (a.composable(x, x)) {
      int c = a.comp_at(x, x);
      if (c >= 0 && (c == x || arrow_map[c] >= 0)) {
        int img = (c == x) ? y : arrow_map[c];
        if (img != b.comp_at(y, y)) return false;
      }
    }
    for (const auto& [g, f] : factor_pairs[x]) {
      int mg = (g == x) ? y : arrow_map[g];
      int mf = (f == x) ? y : arrow_map[f];
      if (mg >= 0 && mf >= 0 && b.comp_at(mg, mf) != y) return false;
    }
    return true;
  }

  bool assign_arrows(int idx) {
    if (idx == a.n_arrows()) return true;
    int x = idx;
    const auto& cands =
        b_hom[static_cast<std::size_t>(obj_map[a.src[x]]) * b.n_objects() +
              obj_map[a.tgt[x]]];
    for (int y : cands) {
      if (arrow_used[y]) continue;
      if (!tick()) return false;
      if (!arrow_consistent(x, y)) continue;
      arrow_map[x] = y;
      arrow_used[y] = 1;
      if (assign_arrows(idx + 1)) return true;
      arrow_map[x] = -1;
      arrow_used[y] = 0;
      if (out_of_budget) return false;
    }
    return false;
  }

  bool assign_objects(int pos) {
    if (pos == a.n_objects()) return assign_arrows(0);
    int x = obj_order[pos];
    for (int y : obj_candidates[x]) {
      if (obj_used[y]) continue;
      if (!tick()) return false;
      obj_map[x] = y;
      obj_used[y] = 1;
      if (assign_objects(pos + 1)) return true;
      obj_map[x] = -1;
      obj_used[y] = 0;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

bool check_groupoid_witness(const FinGroupoid& a, const FinGroupoid& b,
                            const IsoWitness& w) {
  if (static_cast<int>(w.object_map.size()) != a.n_objects() ||
      static_cast<int>(w.arrow_map.size()) != a.n_arrows())
    return false;
  if (a.n_objects() != b.n_objects() || a.n_arrows() != b.n_arrows()) return false;
  std::vector<int> oseen(b.n_objects(), 0), aseen(b.n_arrows(), 0);
  for (int x : w.object_map) {
    if (x < 0 || x >= b.n_objects() || oseen[x]++) return false;
  }
  for (int x : w.arrow_map) {
    if (x < 0 || x >= b.n_arrows() || aseen[x]++) return false;
  }
  for (int f = 0; f < a.n_arrows(); ++f) {
    if (b.src[w.arrow_map[f]] != w.object_map[a.src[f]]) return false;
    if (b.tgt[w.arrow_map[f]] != w.object_map[a.tgt[f]]) return false;
    if (w.arrow_map[a.inv[f]] != b.inv[w.arrow_map[f]]) return false;
  }
  for (int x = 0; x < a.n_objects(); ++x)
    if (w.arrow_map[a.unit[x]] != b.unit[w.object_map[x]]) return false;
  for (int g = 0; g < a.n_arrows(); ++g)
    for (int f = 0; f < a.n_arrows(); ++f) {
      int c = a.comp_at(g, f);
      int d = b.comp_at(w.arrow_map[g], w.arrow_map[f]);
      if ((c < 0) != (d < 0)) return false;
      if (c >= 0 && w.arrow_map[c] != d) return false;
    }
  return true;
}

IsoResult groupoid_isomorphic(const FinGroupoid& a, const FinGroupoid& b,
                              Budget budget) {
  IsoResult result;
  IsoSearch s(a, b, budget.nodes);
  if (!s.prepare()) {
    result.status = SearchStatus::Exhausted;
    return result;
  }
  bool found = s.assign_objects(0);
  result.nodes = s.nodes;
  if (found) {
    IsoWitness w{s.obj_map, s.arrow_map};
    if (!check_groupoid_witness(a, b, w))
      throw Error("Internal", "isomorphism search produced an invalid witness");
    result.status = SearchStatus::Found;
    result.witness = std::move(w);
  } else {
    result.status =
        s.out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  }
  return result;
}

// --- group isomorphism ----------------------------------------------------

namespace {

// Greedy generating set: scan elements in order, keep those that grow
// the generated subgroup.
std::vector<int> generating_set(const FinGroup& k) {
  std::vector<int> gens;
  std::vector<char> in(k.n(), 0);
  in[k.identity] = 1;
  int size = 1;
  auto grow = [&](int g) {
    std::vector<int> queue{g};
    if (!in[g]) {
      in[g] = 1;
      ++size;
    }
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (int y = 0; y < k.n(); ++y) {
        if (!in[y]) continue;
        for (int z : {k.mul_at(x, y), k.mul_at(y, x)}) {
          if (!in[z]) {
            in[z] = 1;
            ++size;
            queue.push_back(z);
          }
        }
      }
    }
  };
  for (int g = 0; g < k.n() && size < k.n(); ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    grow(g);
  }
  return gens;
}

struct GroupIsoSearch {
  const FinGroup& a;
  const FinGroup& b;
  long long limit;
  long long nodes = 0;
  bool out_of_budget = false;

  std::vector<int> gens;
  std::vector<int> a_ord, b_ord;
  std::vector<int> map;  // a -> b, -1 unset

  GroupIsoSearch(const FinGroup& a_, const FinGroup& b_, long long limit_)
      : a(a_), b(b_), limit(limit_) {}

  // Extends the partial homomorphism by gen -> img and closes under
  // products; returns the touched indices for rollback, or nullopt on
  // conflict.
  std::optional<std::vector<int>> close_over(int gen, int img) {
    std::vector<int> touched;
    map[gen] = img;
    touched.push_back(gen);
    std::vector<int> known;
    for (int x = 0; x < a.n(); ++x)
      if (map[x] >= 0) known.push_back(x);
    std::vector<int> queue = known;
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i < known.size(); ++i) {
        int y = known[i];
        int xy = a.mul_at(x, y), yx = a.mul_at(y, x);
        int bxy = b.mul_at(map[x], map[y]), byx = b.mul_at(map[y], map[x]);
        for (auto [p, q] : {std::pair{xy, bxy}, std::pair{yx, byx}}) {
          if (map[p] < 0) {
            map[p] = q;
            touched.push_back(p);
            known.push_back(p);
            queue.push_back(p);
          } else if (map[p] != q) {
            for (int t : touched) map[t] = -1;
            return std::nullopt;
          }
        }
      }
    }
    return touched;
  }

  bool assign(std::size_t gi) {
    if (gi == gens.size()) {
      // gens generate a, so the map is total; require bijectivity
      std::vector<char> used(b.n(), 0);
      for (int x = 0; x < a.n(); ++x) {
        if (map[x] < 0 || used[map[x]]) return false;
        used[map[x]] = 1;
      }
      return true;
    }
    int g = gens[gi];
    if (map[g] >= 0) return assign(gi + 1);  // already forced by closure
    for (int h = 0; h < b.n(); ++h) {
      if (b_ord[h] != a_ord[g]) continue;
      if (++nodes > limit) {
        out_of_budget = true;
        return false;
      }
      auto touched = close_over(g, h);
      if (touched) {
        if (assign(gi + 1)) return true;
        for (int t : *touched) map[t] = -1;
        if (out_of_budget) return false;
      }
    }
    return false;
  }
};

}  // namespace

GroupIsoResult group_isomorphic(const FinGroup& a, const FinGroup& b, Budget budget) {
  GroupIsoResult result;
  if (a.n() != b.n()) return result;
  GroupIsoSearch s(a, b, budget.nodes);
  s.a_ord.resize(a.n());
  s.b_ord.resize(b.n());
  for (int i = 0; i < a.n(); ++i) s.a_ord[i] = element_order(a, i);
  for (int i = 0; i < b.n(); ++i) s.b_ord[i] = element_order(b, i);
  auto pa = s.a_ord, pb = s.b_ord;
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) return result;

  s.gens = generating_set(a);
  s.map.assign(a.n(), -1);
  s.map[a.identity] = b.identity;
  bool found = s.assign(0);
  result.nodes = s.nodes;
  if (found) {
    result.status = SearchStatus::Found;
    result.map = s.map;
  } else {
    result.status =
        s.out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  }
  return result;
}

}  // namespace ggd
