#include "ggd/gerbe.hpp"

#include <algorithm>
#include <unordered_map>

namespace ggd {

GerbeCertificate certify_gerbe(const GroupoidExtension& e, Budget budget) {
  Report valid = validate_extension(e);
  if (!valid.ok()) throw Error("InvalidExtension", valid.summary());

  GerbeCertificate cert;
  cert.extension = e;
  cert.fiber_product = fiber_product_groupoid(e.phi, e.phi);
  const FinGroupoid& fp = cert.fiber_product.gpd;
  const FinGroupoid& H = e.phi.cod;

  // objects (a|x|b) of the self fiber product stand in bijection with
  // the codomain arrows x (a and b are forced to be x's endpoints)
  cert.object_to_cod_arrow = cert.fiber_product.object_middle;
  {
    std::vector<char> seen(H.n_arrows(), 0);
    for (int x : cert.object_to_cod_arrow) {
      if (seen[x]) throw Error("Internal", "fiber product objects do not match H1");
      seen[x] = 1;
    }
    if (fp.n_objects() != H.n_arrows())
      throw Error("Internal", "fiber product objects do not match H1");
  }

  cert.arrows_surjective = !validate_extension(e).has("arrows-surjective");
  cert.transitive = is_transitive(fp);
  if (!cert.transitive || fp.n_objects() == 0) {
    cert.orbit_report = orbits(fp);
    if (fp.n_objects() == 0) cert.transitive = is_transitive(fp);
    if (!cert.transitive) return cert;
  }
  if (fp.n_objects() == 0) return cert;

  // isotropy at the object carrying the unit arrow of the first object
  auto unit_object = [&](int base_object) {
    int u = H.unit[base_object];
    for (int o = 0; o < fp.n_objects(); ++o)
      if (cert.object_to_cod_arrow[o] == u) return o;
    throw Error("Internal", "unit object missing from the fiber product");
  };
  int o0 = unit_object(0);
  cert.isotropy = isotropy_group(fp, o0);
  cert.morita_witness =
      are_morita_equivalent(fp, one_object_groupoid(*cert.isotropy), budget);

  // transitivity should make the basepoint immaterial; sample a second one
  if (H.n_objects() > 1) {
    FinGroup k2 = isotropy_group(fp, unit_object(1));
    auto r = group_isomorphic(*cert.isotropy, k2, budget);
    cert.basepoint_independent = r.found();
  } else if (fp.n_objects() > 1) {
    int other = (o0 == 0) ? 1 : 0;
    FinGroup k2 = isotropy_group(fp, other);
    auto r = group_isomorphic(*cert.isotropy, k2, budget);
    cert.basepoint_independent = r.found();
  }
  return cert;
}

RoundtripReport roundtrip_extension(const GroupoidExtension& e) {
  Report valid = validate_extension(e);
  if (!valid.ok()) throw Error("InvalidExtension", valid.summary());
  const FinGroupoid& G = e.phi.dom;
  const FinGroupoid& H = e.phi.cod;

  RoundtripReport out;
  out.bibundle = bibundle_from_functor(e.phi);
  auto applied = apply_bibundle_detailed(out.bibundle, unit_bundle(G));
  out.applied = applied.bundle;
  auto gauge = gauge_groupoid_detailed(out.applied);
  out.gauge = gauge.gpd;

  // Carrier classes of the applied bundle normalise to (unit(b) | (b|k)):
  // acting by q itself moves (q, (u|h)) to (unit(t q), (t q | phi(q).h)).
  // k is therefore comp(phi(q), h), constant on each class.
  const int nG = G.n_arrows();
  const int nH = H.n_arrows();
  auto bib_index = [&](int u, int h) {
    int idx = out.bibundle.carrier_index(tuple_id({G.objects[u], H.arrows[h]}));
    if (idx < 0) throw Error("Internal", "bibundle carrier lookup failed");
    return idx;
  };
  std::unordered_map<long long, int> pair_index;  // (q, x) -> matched pair
  for (int i = 0; i < static_cast<int>(applied.quotient.pairs.size()); ++i) {
    auto [q, x] = applied.quotient.pairs[i];
    pair_index[static_cast<long long>(q) * out.bibundle.n_carrier() + x] = i;
  }
  const int classes = static_cast<int>(applied.quotient.class_rep.size());
  std::vector<int> class_k(classes, -1);
  for (int i = 0; i < static_cast<int>(applied.quotient.pairs.size()); ++i) {
    auto [q, x] = applied.quotient.pairs[i];
    // x is a bibundle element (u|h) with u == src(q)
    int u = out.bibundle.lanchor[x];
    int h = -1;
    for (int hh = 0; hh < nH; ++hh)
      if (H.tgt[hh] == e.phi.f0[u] && bib_index(u, hh) == x) {
        h = hh;
        break;
      }
    if (h < 0) throw Error("Internal", "bibundle element has no (u, h) form");
    int k = H.comp_at(e.phi.f1[q], h);
    if (k < 0) throw Error("Internal", "class label fails to compose");
    int c = applied.quotient.pair_class[i];
    if (class_k[c] >= 0 && class_k[c] != k)
      throw Error("Internal", "class label is not constant on a quotient class");
    class_k[c] = k;
  }

  // theta: identity on objects; an arrow g : x -> y goes to the gauge
  // class of (sigma(x), [unit(y), (y | phi(g))]) with sigma the
  // unit-side section.
  auto applied_class = [&](int q, int x) {
    return applied.quotient.pair_class[pair_index.at(
        static_cast<long long>(q) * out.bibundle.n_carrier() + x)];
  };
  auto section = [&](int obj) {
    return applied_class(G.unit[obj], bib_index(obj, H.unit[e.phi.f0[obj]]));
  };
  std::unordered_map<long long, int> gauge_pair_index;
  for (int i = 0; i < static_cast<int>(gauge.pairs.size()); ++i)
    gauge_pair_index[static_cast<long long>(gauge.pairs[i].first) * classes +
                     gauge.pairs[i].second] = i;

  out.theta.dom = G;
  out.theta.cod = out.gauge;
  out.theta.f0.resize(G.n_objects());
  for (int x = 0; x < G.n_objects(); ++x) out.theta.f0[x] = x;
  for (int g = 0; g < nG; ++g) {
    int c_src = section(G.src[g]);
    int c_tgt = applied_class(G.unit[G.tgt[g]], bib_index(G.tgt[g], e.phi.f1[g]));
    auto it = gauge_pair_index.find(static_cast<long long>(c_src) * classes + c_tgt);
    if (it == gauge_pair_index.end())
      throw Error("Internal", "theta image pair is not anchor-compatible");
    out.theta.f1.push_back(gauge.pair_class[it->second]);
  }

  // canonical iso gauge -> H: [c | c'] -> comp(k(c'), inv(k(c)))
  out.gauge_iso.dom = out.gauge;
  out.gauge_iso.cod = H;
  out.gauge_iso.f0.resize(out.gauge.n_objects());
  for (int x = 0; x < out.gauge.n_objects(); ++x) out.gauge_iso.f0[x] = x;
  for (int a = 0; a < out.gauge.n_arrows(); ++a) {
    auto [c, c2] = gauge.pairs[gauge.class_rep[a]];
    int k = H.comp_at(class_k[c2], H.inv[class_k[c]]);
    if (k < 0) throw Error("Internal", "gauge label fails to compose");
    out.gauge_iso.f1.push_back(k);
  }

  bool functor_ok = validate_functor(out.gauge_iso).ok() &&
                    validate_functor(out.theta).ok();
  std::vector<char> hit(nH, 0);
  bool bijective = (out.gauge.n_arrows() == nH) && (out.gauge.n_objects() == H.n_objects());
  for (int a : out.gauge_iso.f1) {
    if (a < 0 || a >= nH || hit[a]) bijective = false;
    if (a >= 0 && a < nH) hit[a] = 1;
  }
  out.iso_valid = functor_ok && bijective;

  out.theta_matches = true;
  for (int g = 0; g < nG; ++g)
    out.theta_matches =
        out.theta_matches && (out.gauge_iso.f1[out.theta.f1[g]] == e.phi.f1[g]);
  for (int x = 0; x < G.n_objects(); ++x)
    out.theta_matches = out.theta_matches && (out.gauge_iso.f0[out.theta.f0[x]] == x);

  GroupoidExtension theta_ext{out.theta};
  out.theta_extension_report = validate_extension(theta_ext);
  return out;
}

}  // namespace ggd
