#include "ggd/functor.hpp"

#include <numeric>
#include <unordered_map>

namespace ggd {

GroupoidMap identity_functor(const FinGroupoid& g) {
  GroupoidMap m{g, g, {}, {}};
  m.f0.resize(g.n_objects());
  m.f1.resize(g.n_arrows());
  std::iota(m.f0.begin(), m.f0.end(), 0);
  std::iota(m.f1.begin(), m.f1.end(), 0);
  return m;
}

GroupoidMap compose_functors(const GroupoidMap& g, const GroupoidMap& f) {
  if (f.cod != g.dom)
    throw Error("CodomainMismatch", "functor composition requires f.cod == g.dom");
  GroupoidMap m{f.dom, g.cod, {}, {}};
  m.f0.reserve(f.f0.size());
  m.f1.reserve(f.f1.size());
  for (int x : f.f0) m.f0.push_back(g.f0[x]);
  for (int a : f.f1) m.f1.push_back(g.f1[a]);
  return m;
}

Report validate_functor(const GroupoidMap& m) {
  Report report;
  if (static_cast<int>(m.f0.size()) != m.dom.n_objects() ||
      static_cast<int>(m.f1.size()) != m.dom.n_arrows())
    throw Error("Malformed", "functor tables have the wrong size");
  for (int x : m.f0)
    if (x < 0 || x >= m.cod.n_objects())
      throw Error("DanglingId", "object map leaves the codomain");
  for (int a : m.f1)
    if (a < 0 || a >= m.cod.n_arrows())
      throw Error("DanglingId", "arrow map leaves the codomain");

  for (int a = 0; a < m.dom.n_arrows(); ++a) {
    if (m.cod.src[m.f1[a]] != m.f0[m.dom.src[a]])
      report.add("src-compat", m.dom.arrows[a]);
    if (m.cod.tgt[m.f1[a]] != m.f0[m.dom.tgt[a]])
      report.add("tgt-compat", m.dom.arrows[a]);
  }
  for (int x = 0; x < m.dom.n_objects(); ++x)
    if (m.f1[m.dom.unit[x]] != m.cod.unit[m.f0[x]])
      report.add("unit-compat", m.dom.objects[x]);
  for (int g = 0; g < m.dom.n_arrows(); ++g)
    for (int f = 0; f < m.dom.n_arrows(); ++f) {
      int c = m.dom.comp_at(g, f);
      if (c < 0) continue;
      int d = m.cod.comp_at(m.f1[g], m.f1[f]);
      if (d != m.f1[c])
        report.add("comp-compat",
                   "comp(" + m.dom.arrows[g] + ", " + m.dom.arrows[f] + ")");
    }
  return report;
}

Report validate_extension(const GroupoidExtension& e) {
  Report report = validate_functor(e.phi);
  if (e.phi.dom.objects != e.phi.cod.objects) {
    report.add("objects-identity", "domain and codomain object sets differ");
  } else {
    for (int x = 0; x < e.phi.dom.n_objects(); ++x)
      if (e.phi.f0[x] != x) {
        report.add("objects-identity",
                   e.phi.dom.objects[x] + " -> " + e.phi.cod.objects[e.phi.f0[x]]);
      }
  }
  std::vector<char> hit(e.phi.cod.n_arrows(), 0);
  for (int a : e.phi.f1) hit[a] = 1;
  std::string uncovered;
  for (int a = 0; a < e.phi.cod.n_arrows(); ++a)
    if (!hit[a]) uncovered += (uncovered.empty() ? "" : " ") + e.phi.cod.arrows[a];
  if (!uncovered.empty()) report.add("arrows-surjective", "uncovered: " + uncovered);
  return report;
}

// --- pullback groupoid -----------------------------------------------------

PullbackGroupoid pullback_groupoid(const FinGroupoid& gamma,
                                   const std::vector<std::string>& p0,
                                   const std::vector<int>& J,
                                   bool require_surjective) {
  if (J.size() != p0.size()) throw Error("Malformed", "J must be total on p0");
  for (int x : J)
    if (x < 0 || x >= gamma.n_objects())
      throw Error("DanglingId", "J leaves gamma's object set");
  if (require_surjective) {
    std::vector<char> hit(gamma.n_objects(), 0);
    for (int x : J) hit[x] = 1;
    std::string missing;
    for (int x = 0; x < gamma.n_objects(); ++x)
      if (!hit[x]) missing += (missing.empty() ? "" : " ") + gamma.objects[x];
    if (!missing.empty()) throw Error("NotSurjective", "uncovered: " + missing);
  }

  const int P = static_cast<int>(p0.size());
  GroupoidBuilder b;
  for (const auto& id : p0) b.add_object(id);

  // Arrows (p|x|q) with src(x) = J(p), tgt(x) = J(q); runs p -> q.
  struct Arrow {
    int p, x, q;
  };
  std::vector<Arrow> arrows;
  std::unordered_map<long long, int> index;
  auto key = [&](int p, int x, int q) {
    return (static_cast<long long>(p) * gamma.n_arrows() + x) * P + q;
  };
  for (int p = 0; p < P; ++p)
    for (int x = 0; x < gamma.n_arrows(); ++x) {
      if (gamma.src[x] != J[p]) continue;
      for (int q = 0; q < P; ++q) {
        if (gamma.tgt[x] != J[q]) continue;
        index[key(p, x, q)] = b.add_arrow(
            tuple_id({p0[p], gamma.arrows[x], p0[q]}), p, q);
        arrows.push_back({p, x, q});
      }
    }

  for (int p = 0; p < P; ++p)
    b.set_unit(p, index.at(key(p, gamma.unit[J[p]], p)));
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const auto& a = arrows[i];
    b.set_inv(static_cast<int>(i), index.at(key(a.q, gamma.inv[a.x], a.p)));
  }
  for (std::size_t i = 0; i < arrows.size(); ++i)
    for (std::size_t j = 0; j < arrows.size(); ++j) {
      const auto& g = arrows[i];  // later arrow
      const auto& f = arrows[j];  // first arrow
      if (f.q != g.p) continue;
      int c = gamma.comp_at(g.x, f.x);
      if (c < 0) throw Error("Internal", "gamma composition table is not total");
      b.set_comp(static_cast<int>(i), static_cast<int>(j),
                 index.at(key(f.p, c, g.q)));
    }

  PullbackGroupoid out{b.build(), {}};
  out.projection.dom = out.gpd;
  out.projection.cod = gamma;
  out.projection.f0 = J;
  out.projection.f1.reserve(arrows.size());
  for (const auto& a : arrows) out.projection.f1.push_back(a.x);
  return out;
}

// --- 2-fiber product --------------------------------------------------------

FiberProduct fiber_product_groupoid(const GroupoidMap& phi, const GroupoidMap& psi) {
  if (phi.cod != psi.cod)
    throw Error("CodomainMismatch", "fiber product legs must share a codomain");
  const FinGroupoid& G = phi.dom;
  const FinGroupoid& H = psi.dom;
  const FinGroupoid& K = phi.cod;

  GroupoidBuilder b;
  struct Obj {
    int a, x, bb;
  };
  std::vector<Obj> objs;
  std::unordered_map<long long, int> oindex;
  auto okey = [&](int a, int x, int bb) {
    return (static_cast<long long>(a) * K.n_arrows() + x) * std::max(1, H.n_objects()) +
           bb;
  };
  for (int a = 0; a < G.n_objects(); ++a)
    for (int x = 0; x < K.n_arrows(); ++x) {
      if (K.src[x] != phi.f0[a]) continue;
      for (int bb = 0; bb < H.n_objects(); ++bb) {
        if (K.tgt[x] != psi.f0[bb]) continue;
        oindex[okey(a, x, bb)] =
            b.add_object(tuple_id({G.objects[a], K.arrows[x], H.objects[bb]}));
        objs.push_back({a, x, bb});
      }
    }

  struct Arr {
    int u, x, v;
  };
  std::vector<Arr> arrs;
  std::unordered_map<long long, int> aindex;
  auto akey = [&](int u, int x, int v) {
    return (static_cast<long long>(u) * K.n_arrows() + x) * std::max(1, H.n_arrows()) +
           v;
  };
  // src(x) = tgt(phi(u)), tgt(x) = src(psi(v))
  auto src_obj = [&](const Arr& e) {
    int mid = K.comp_at(e.x, phi.f1[e.u]);
    if (mid < 0) throw Error("Internal", "fiber product source middle undefined");
    return oindex.at(okey(G.src[e.u], mid, H.src[e.v]));
  };
  auto tgt_obj = [&](const Arr& e) {
    int mid = K.comp_at(psi.f1[e.v], e.x);
    if (mid < 0) throw Error("Internal", "fiber product target middle undefined");
    return oindex.at(okey(G.tgt[e.u], mid, H.tgt[e.v]));
  };
  for (int u = 0; u < G.n_arrows(); ++u)
    for (int x = 0; x < K.n_arrows(); ++x) {
      if (K.src[x] != K.tgt[phi.f1[u]]) continue;
      for (int v = 0; v < H.n_arrows(); ++v) {
        if (K.tgt[x] != K.src[psi.f1[v]]) continue;
        arrs.push_back({u, x, v});
      }
    }
  std::vector<int> asrc(arrs.size()), atgt(arrs.size());
  for (std::size_t i = 0; i < arrs.size(); ++i) {
    asrc[i] = src_obj(arrs[i]);
    atgt[i] = tgt_obj(arrs[i]);
    aindex[akey(arrs[i].u, arrs[i].x, arrs[i].v)] = b.add_arrow(
        tuple_id({G.arrows[arrs[i].u], K.arrows[arrs[i].x], H.arrows[arrs[i].v]}),
        asrc[i], atgt[i]);
  }

  // unit at (a|x|b) is (unit(a)|x|unit(b))
  for (std::size_t o = 0; o < objs.size(); ++o)
    b.set_unit(static_cast<int>(o),
               aindex.at(akey(G.unit[objs[o].a], objs[o].x, H.unit[objs[o].bb])));

  // The middle of an arrow with source middle m is comp(m, inv(phi(u))).
  auto middle_from_source = [&](int source_mid, int u) {
    int mid = K.comp_at(source_mid, K.inv[phi.f1[u]]);
    if (mid < 0) throw Error("Internal", "fiber product middle transport undefined");
    return mid;
  };
  for (std::size_t i = 0; i < arrs.size(); ++i) {
    const auto& e = arrs[i];
    int iu = G.inv[e.u], iv = H.inv[e.v];
    int tgt_mid = objs[atgt[i]].x;
    b.set_inv(static_cast<int>(i), aindex.at(akey(iu, middle_from_source(tgt_mid, iu), iv)));
  }
  for (std::size_t i = 0; i < arrs.size(); ++i)
    for (std::size_t j = 0; j < arrs.size(); ++j) {
      if (atgt[j] != asrc[i]) continue;  // j first, then i
      const auto& e2 = arrs[i];
      const auto& e1 = arrs[j];
      int u = G.comp_at(e2.u, e1.u);
      int v = H.comp_at(e2.v, e1.v);
      if (u < 0 || v < 0) throw Error("Internal", "component composition undefined");
      int src_mid = objs[asrc[j]].x;
      int mid = middle_from_source(src_mid, u);
      // commuting square: comp(tgt middle, phi(u)) == comp(psi(v), src middle)
      int lhs = K.comp_at(objs[atgt[i]].x, phi.f1[u]);
      int rhs = K.comp_at(psi.f1[v], src_mid);
      if (lhs != rhs || lhs < 0)
        throw Error("Internal", "fiber product composite violates the square");
      b.set_comp(static_cast<int>(i), static_cast<int>(j), aindex.at(akey(u, mid, v)));
    }

  FiberProduct out{b.build(), {}, {}, {}, {}, {}};
  out.to_left.dom = out.gpd;
  out.to_left.cod = G;
  out.to_right.dom = out.gpd;
  out.to_right.cod = H;
  for (const auto& o : objs) {
    out.to_left.f0.push_back(o.a);
    out.to_right.f0.push_back(o.bb);
    out.object_middle.push_back(o.x);
    out.object_left.push_back(o.a);
    out.object_right.push_back(o.bb);
  }
  for (const auto& e : arrs) {
    out.to_left.f1.push_back(e.u);
    out.to_right.f1.push_back(e.v);
  }
  return out;
}

// --- diagonal ----------------------------------------------------------------

DiagonalFunctor diagonal_functor(const GroupoidExtension& e) {
  Report r = validate_extension(e);
  if (!r.ok()) throw Error("InvalidExtension", r.summary());
  DiagonalFunctor out{fiber_product_groupoid(e.phi, e.phi), {}};
  const FinGroupoid& G = e.phi.dom;
  const FinGroupoid& K = e.phi.cod;
  out.delta.dom = G;
  out.delta.cod = out.fp.gpd;
  for (int a = 0; a < G.n_objects(); ++a) {
    int idx = out.fp.gpd.object_index(
        tuple_id({G.objects[a], K.arrows[K.unit[e.phi.f0[a]]], G.objects[a]}));
    if (idx < 0) throw Error("Internal", "diagonal object image missing");
    out.delta.f0.push_back(idx);
  }
  for (int g = 0; g < G.n_arrows(); ++g) {
    int mid = K.inv[e.phi.f1[g]];
    int idx = out.fp.gpd.arrow_index(
        tuple_id({G.arrows[g], K.arrows[mid], G.arrows[g]}));
    if (idx < 0) throw Error("Internal", "diagonal arrow image missing");
    out.delta.f1.push_back(idx);
  }
  return out;
}

}  // namespace ggd
