#include "ggd/bibundle.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace ggd {

int Bibundle::carrier_index(std::string_view id) const {
  for (int i = 0; i < n_carrier(); ++i)
    if (carrier[i] == id) return i;
  return -1;
}

namespace {

void check_bibundle_sizes(const Bibundle& b) {
  const std::size_t P = b.carrier.size();
  if (b.lanchor.size() != P || b.ranchor.size() != P ||
      b.lact.size() != b.left.arrows.size() * P ||
      b.ract.size() != P * b.right.arrows.size())
    throw Error("Malformed", "bibundle tables have the wrong size");
  for (int x : b.lanchor)
    if (x < 0 || x >= b.left.n_objects())
      throw Error("DanglingId", "left anchor leaves the object set");
  for (int x : b.ranchor)
    if (x < 0 || x >= b.right.n_objects())
      throw Error("DanglingId", "right anchor leaves the object set");
  for (int v : b.lact)
    if (v < -1 || v >= static_cast<int>(P))
      throw Error("DanglingId", "left action leaves the carrier");
  for (int v : b.ract)
    if (v < -1 || v >= static_cast<int>(P))
      throw Error("DanglingId", "right action leaves the carrier");
}

}  // namespace

PrincipalBundle right_leg_bundle(const Bibundle& b) {
  PrincipalBundle out;
  out.action.grp = b.right;
  out.action.carrier = b.carrier;
  out.action.anchor = b.ranchor;
  out.action.act = b.ract;
  out.base = b.left.objects;
  out.proj = b.lanchor;
  return out;
}

PrincipalBundle mirror_bundle(const Bibundle& b) {
  PrincipalBundle out;
  out.action.grp = opposite_groupoid(b.left);
  out.action.carrier = b.carrier;
  out.action.anchor = b.lanchor;  // tgt_op(g) == src(g)
  const int P = b.n_carrier();
  const int A = b.left.n_arrows();
  out.action.act.assign(static_cast<std::size_t>(P) * A, -1);
  for (int g = 0; g < A; ++g)
    for (int p = 0; p < P; ++p)
      out.action.act[static_cast<std::size_t>(p) * A + g] = b.lact_at(g, p);
  out.base = b.right.objects;
  out.proj = b.ranchor;
  return out;
}

Report validate_bibundle(const Bibundle& b) {
  check_bibundle_sizes(b);
  Report report;

  // left action axioms
  const int P = b.n_carrier();
  const int L = b.left.n_arrows();
  for (int g = 0; g < L; ++g)
    for (int p = 0; p < P; ++p) {
      int r = b.lact_at(g, p);
      bool should = (b.left.src[g] == b.lanchor[p]);
      if (should && r < 0)
        report.add("lact-domain", b.left.arrows[g] + "." + b.carrier[p] + " undefined");
      if (!should && r >= 0)
        report.add("lact-domain",
                   b.left.arrows[g] + "." + b.carrier[p] + " defined off the anchor");
      if (should && r >= 0 && b.lanchor[r] != b.left.tgt[g])
        report.add("lact-anchor", b.left.arrows[g] + "." + b.carrier[p]);
    }
  for (int p = 0; p < P; ++p) {
    int u = b.left.unit[b.lanchor[p]];
    int r = b.lact_at(u, p);
    if (r >= 0 && r != p) report.add("lact-unit", b.carrier[p]);
  }
  for (int g2 = 0; g2 < L; ++g2)
    for (int p = 0; p < P; ++p) {
      int r = b.lact_at(g2, p);
      if (r < 0) continue;
      for (int g = 0; g < L; ++g) {
        if (b.left.src[g] != b.left.tgt[g2]) continue;
        int lhs = b.lact_at(g, r);
        int c = b.left.comp_at(g, g2);
        int rhs = (c >= 0) ? b.lact_at(c, p) : -1;
        if (lhs >= 0 && rhs >= 0 && lhs != rhs)
          report.add("lact-comp", "(" + b.left.arrows[g] + ", " + b.left.arrows[g2] +
                                      ", " + b.carrier[p] + ")");
      }
    }

  // right side is a principal H-bundle over the left anchor
  report.merge(validate_principal(right_leg_bundle(b)), "right-");

  // G-invariance of the right anchor
  for (int g = 0; g < L; ++g)
    for (int p = 0; p < P; ++p) {
      int r = b.lact_at(g, p);
      if (r >= 0 && b.ranchor[r] != b.ranchor[p])
        report.add("ranchor-invariance", b.left.arrows[g] + "." + b.carrier[p]);
    }

  // (g.p).h == g.(p.h)
  for (int g = 0; g < L; ++g)
    for (int p = 0; p < P; ++p) {
      int gp = b.lact_at(g, p);
      if (gp < 0) continue;
      for (int h = 0; h < b.right.n_arrows(); ++h) {
        int lhs = b.ract_at(gp, h);
        int ph = b.ract_at(p, h);
        int rhs = (ph >= 0) ? b.lact_at(g, ph) : -1;
        if (lhs >= 0 && rhs >= 0 && lhs != rhs)
          report.add("compatibility", "(" + b.left.arrows[g] + ", " + b.carrier[p] +
                                          ", " + b.right.arrows[h] + ")");
      }
    }
  return report;
}

Bibundle bibundle_from_functor(const GroupoidMap& m) {
  Bibundle out;
  out.left = m.dom;
  out.right = m.cod;
  std::vector<std::pair<int, int>> elems;  // (u, h)
  std::unordered_map<long long, int> index;
  for (int u = 0; u < m.dom.n_objects(); ++u)
    for (int h = 0; h < m.cod.n_arrows(); ++h) {
      if (m.cod.tgt[h] != m.f0[u]) continue;
      index[static_cast<long long>(u) * m.cod.n_arrows() + h] =
          static_cast<int>(elems.size());
      elems.push_back({u, h});
      out.carrier.push_back(tuple_id({m.dom.objects[u], m.cod.arrows[h]}));
      out.lanchor.push_back(u);
      out.ranchor.push_back(m.cod.src[h]);
    }
  const int P = static_cast<int>(elems.size());
  out.lact.assign(static_cast<std::size_t>(m.dom.n_arrows()) * P, -1);
  out.ract.assign(static_cast<std::size_t>(P) * m.cod.n_arrows(), -1);
  for (int p = 0; p < P; ++p) {
    auto [u, h] = elems[p];
    for (int k = 0; k < m.cod.n_arrows(); ++k) {
      if (m.cod.src[h] != m.cod.tgt[k]) continue;
      int hk = m.cod.comp_at(h, k);
      out.ract[static_cast<std::size_t>(p) * m.cod.n_arrows() + k] =
          index.at(static_cast<long long>(u) * m.cod.n_arrows() + hk);
    }
    for (int g = 0; g < m.dom.n_arrows(); ++g) {
      if (m.dom.src[g] != u) continue;
      int gh = m.cod.comp_at(m.f1[g], h);
      if (gh < 0) throw Error("Internal", "functor image fails to compose");
      out.lact[static_cast<std::size_t>(g) * P + p] =
          index.at(static_cast<long long>(m.dom.tgt[g]) * m.cod.n_arrows() + gh);
    }
  }
  return out;
}

BiprincipalCheck is_biprincipal(const Bibundle& b) {
  BiprincipalCheck out;
  out.detail = validate_principal(mirror_bundle(b));
  out.biprincipal = out.detail.ok();
  return out;
}

Bibundle invert_bibundle(const Bibundle& b) {
  auto check = is_biprincipal(b);
  if (!check.biprincipal)
    throw Error("NotBiprincipal", check.detail.summary());
  Bibundle out;
  out.left = b.right;
  out.right = b.left;
  out.carrier = b.carrier;
  out.lanchor = b.ranchor;
  out.ranchor = b.lanchor;
  const int P = b.n_carrier();
  out.lact.assign(static_cast<std::size_t>(b.right.n_arrows()) * P, -1);
  out.ract.assign(static_cast<std::size_t>(P) * b.left.n_arrows(), -1);
  for (int h = 0; h < b.right.n_arrows(); ++h)
    for (int p = 0; p < P; ++p)
      out.lact[static_cast<std::size_t>(h) * P + p] = b.ract_at(p, b.right.inv[h]);
  for (int p = 0; p < P; ++p)
    for (int g = 0; g < b.left.n_arrows(); ++g)
      out.ract[static_cast<std::size_t>(p) * b.left.n_arrows() + g] =
          b.lact_at(b.left.inv[g], p);
  return out;
}

// --- quotient helpers -----------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int i, int j) {
    i = find(i);
    j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  }
};

void label_classes(UnionFind& uf, QuotientData& q) {
  const int N = static_cast<int>(q.pairs.size());
  std::vector<int> class_of_root(N, -1);
  q.pair_class.assign(N, -1);
  for (int e = 0; e < N; ++e) {
    int r = uf.find(e);
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(q.class_rep.size());
      q.class_rep.push_back(e);
    }
    q.pair_class[e] = class_of_root[r];
  }
}

}  // namespace

ComposedBibundle compose_bibundles_detailed(const Bibundle& p, const Bibundle& q) {
  if (!(p.right == q.left))
    throw Error("MiddleGroupoidMismatch",
                "compose requires p's right groupoid to equal q's left groupoid");
  const FinGroupoid& H = p.right;
  ComposedBibundle out;
  out.bib.left = p.left;
  out.bib.right = q.right;

  QuotientData& quot = out.quotient;
  std::unordered_map<long long, int> pidx;
  for (int x = 0; x < p.n_carrier(); ++x)
    for (int y = 0; y < q.n_carrier(); ++y) {
      if (p.ranchor[x] != q.lanchor[y]) continue;
      pidx[static_cast<long long>(x) * q.n_carrier() + y] =
          static_cast<int>(quot.pairs.size());
      quot.pairs.push_back({x, y});
    }
  UnionFind uf(static_cast<int>(quot.pairs.size()));
  for (int x = 0; x < p.n_carrier(); ++x)
    for (int h = 0; h < H.n_arrows(); ++h) {
      int xh = p.ract_at(x, h);
      if (xh < 0) continue;
      for (int y = 0; y < q.n_carrier(); ++y) {
        int hy = q.lact_at(h, y);
        if (hy < 0) continue;
        // (x.h, y) ~ (x, h.y)
        uf.unite(pidx.at(static_cast<long long>(xh) * q.n_carrier() + y),
                 pidx.at(static_cast<long long>(x) * q.n_carrier() + hy));
      }
    }
  label_classes(uf, quot);

  const int C = static_cast<int>(quot.class_rep.size());
  for (int c = 0; c < C; ++c) {
    auto [x, y] = quot.pairs[quot.class_rep[c]];
    out.bib.carrier.push_back(tuple_id({p.carrier[x], q.carrier[y]}));
    out.bib.lanchor.push_back(p.lanchor[x]);
    out.bib.ranchor.push_back(q.ranchor[y]);
  }
  // induced actions: g.[x, y] = [g.x, y] and [x, y].k = [x, y.k];
  // well-definedness is asserted over every member of every class.
  out.bib.lact.assign(static_cast<std::size_t>(p.left.n_arrows()) * C, -1);
  out.bib.ract.assign(static_cast<std::size_t>(C) * q.right.n_arrows(), -1);
  auto class_of = [&](int x, int y) {
    return quot.pair_class[pidx.at(static_cast<long long>(x) * q.n_carrier() + y)];
  };
  for (int e = 0; e < static_cast<int>(quot.pairs.size()); ++e) {
    auto [x, y] = quot.pairs[e];
    int c = quot.pair_class[e];
    for (int g = 0; g < p.left.n_arrows(); ++g) {
      int gx = p.lact_at(g, x);
      if (gx < 0) continue;
      int& slot = out.bib.lact[static_cast<std::size_t>(g) * C + c];
      int value = class_of(gx, y);
      if (slot >= 0 && slot != value)
        throw Error("Internal", "left action is not constant on a quotient class");
      slot = value;
    }
    for (int k = 0; k < q.right.n_arrows(); ++k) {
      int yk = q.ract_at(y, k);
      if (yk < 0) continue;
      int& slot = out.bib.ract[static_cast<std::size_t>(c) * q.right.n_arrows() + k];
      int value = class_of(x, yk);
      if (slot >= 0 && slot != value)
        throw Error("Internal", "right action is not constant on a quotient class");
      slot = value;
    }
  }
  return out;
}

Bibundle compose_bibundles(const Bibundle& p, const Bibundle& q) {
  return compose_bibundles_detailed(p, q).bib;
}

AppliedBundle apply_bibundle_detailed(const Bibundle& p, const PrincipalBundle& b) {
  if (!(b.action.grp == p.left))
    throw Error("GroupoidMismatch",
                "apply requires the bundle's groupoid to equal the bibundle's left leg");
  const FinGroupoid& G = p.left;
  AppliedBundle out;
  out.bundle.action.grp = p.right;
  out.bundle.base = b.base;

  QuotientData& quot = out.quotient;
  std::unordered_map<long long, int> pidx;
  for (int qe = 0; qe < b.action.n_carrier(); ++qe)
    for (int x = 0; x < p.n_carrier(); ++x) {
      if (b.action.anchor[qe] != p.lanchor[x]) continue;
      pidx[static_cast<long long>(qe) * p.n_carrier() + x] =
          static_cast<int>(quot.pairs.size());
      quot.pairs.push_back({qe, x});
    }
  UnionFind uf(static_cast<int>(quot.pairs.size()));
  for (int qe = 0; qe < b.action.n_carrier(); ++qe)
    for (int g = 0; g < G.n_arrows(); ++g) {
      int qg = b.action.act_at(qe, g);
      if (qg < 0) continue;
      for (int x = 0; x < p.n_carrier(); ++x) {
        int gx = p.lact_at(g, x);
        if (gx < 0) continue;
        // (q.g, x) ~ (q, g.x)
        uf.unite(pidx.at(static_cast<long long>(qg) * p.n_carrier() + x),
                 pidx.at(static_cast<long long>(qe) * p.n_carrier() + gx));
      }
    }
  label_classes(uf, quot);

  const int C = static_cast<int>(quot.class_rep.size());
  for (int c = 0; c < C; ++c) {
    auto [qe, x] = quot.pairs[quot.class_rep[c]];
    out.bundle.action.carrier.push_back(tuple_id({b.action.carrier[qe], p.carrier[x]}));
    out.bundle.action.anchor.push_back(p.ranchor[x]);
    out.bundle.proj.push_back(b.proj[qe]);
  }
  out.bundle.action.act.assign(static_cast<std::size_t>(C) * p.right.n_arrows(), -1);
  auto class_of = [&](int qe, int x) {
    return quot.pair_class[pidx.at(static_cast<long long>(qe) * p.n_carrier() + x)];
  };
  for (int e = 0; e < static_cast<int>(quot.pairs.size()); ++e) {
    auto [qe, x] = quot.pairs[e];
    int c = quot.pair_class[e];
    if (out.bundle.proj[c] != b.proj[qe])
      throw Error("Internal", "projection is not constant on a quotient class");
    if (out.bundle.action.anchor[c] != p.ranchor[x])
      throw Error("Internal", "anchor is not constant on a quotient class");
    for (int h = 0; h < p.right.n_arrows(); ++h) {
      int xh = p.ract_at(x, h);
      if (xh < 0) continue;
      int& slot = out.bundle.action.act[static_cast<std::size_t>(c) * p.right.n_arrows() + h];
      int value = class_of(qe, xh);
      if (slot >= 0 && slot != value)
        throw Error("Internal", "induced action is not constant on a quotient class");
      slot = value;
    }
  }
  return out;
}

PrincipalBundle apply_bibundle(const Bibundle& p, const PrincipalBundle& b) {
  return apply_bibundle_detailed(p, b).bundle;
}

// --- bibundle isomorphism ----------------------------------------------------------

namespace {

struct BibundleIsoSearch {
  const Bibundle& a;
  const Bibundle& b;
  long long limit;
  long long nodes = 0;
  bool out_of_budget = false;
  std::vector<int> map;
  std::vector<char> used;

  BibundleIsoSearch(const Bibundle& a_, const Bibundle& b_, long long l)
      : a(a_), b(b_), limit(l) {}

  bool consistent(int p, int q) {
    if (a.lanchor[p] != b.lanchor[q] || a.ranchor[p] != b.ranchor[q]) return false;
    for (int h = 0; h < a.right.n_arrows(); ++h) {
      int r = a.ract_at(p, h);
      int rq = b.ract_at(q, h);
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
    for (int g = 0; g < a.left.n_arrows(); ++g) {
      int r = a.lact_at(g, p);
      int rq = b.lact_at(g, q);
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
    // actions landing on p from assigned elements
    for (int pp = 0; pp < a.n_carrier(); ++pp) {
      if (map[pp] < 0) continue;
      for (int h = 0; h < a.right.n_arrows(); ++h)
        if (a.ract_at(pp, h) == p && b.ract_at(map[pp], h) != q) return false;
      for (int g = 0; g < a.left.n_arrows(); ++g)
        if (a.lact_at(g, pp) == p && b.lact_at(g, map[pp]) != q) return false;
    }
    return true;
  }

  bool assign(int p) {
    if (p == a.n_carrier()) return true;
    for (int q = 0; q < b.n_carrier(); ++q) {
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

BibundleIso bibundle_isomorphic(const Bibundle& a, const Bibundle& b, Budget budget) {
  BibundleIso out;
  if (!(a.left == b.left) || !(a.right == b.right) || a.n_carrier() != b.n_carrier())
    return out;
  BibundleIsoSearch s(a, b, budget.nodes);
  s.map.assign(a.n_carrier(), -1);
  s.used.assign(b.n_carrier(), 0);
  if (s.assign(0)) {
    out.status = SearchStatus::Found;
    out.map = s.map;
  } else {
    out.status = s.out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  }
  return out;
}

}  // namespace ggd
