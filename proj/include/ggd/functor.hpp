#pragma once

#include <vector>

#include "ggd/core.hpp"

namespace ggd {

// A functor between finite groupoids, stored with copies of both ends
// so values stay self-contained and immutable.
struct GroupoidMap {
  FinGroupoid dom;
  FinGroupoid cod;
  std::vector<int> f0;  // dom objects -> cod objects
  std::vector<int> f1;  // dom arrows  -> cod arrows

  bool operator==(const GroupoidMap&) const = default;
};

// An arrow-surjective functor that is the identity on a shared object
// set; validate_extension enforces both conditions.
struct GroupoidExtension {
  GroupoidMap phi;

  bool operator==(const GroupoidExtension&) const = default;
};

GroupoidMap identity_functor(const FinGroupoid& g);

// g after f (throws CodomainMismatch if f.cod != g.dom).
GroupoidMap compose_functors(const GroupoidMap& g, const GroupoidMap& f);

Report validate_functor(const GroupoidMap& m);
Report validate_extension(const GroupoidExtension& e);

// --- pullback groupoid ---------------------------------------------------

struct PullbackGroupoid {
  FinGroupoid gpd;        // objects p0, arrows (p|x|q)
  GroupoidMap projection;  // gpd -> gamma, (p|x|q) -> x over J
};

// Pullback of gamma along J : p0 -> gamma.objects.  J must be surjective
// unless require_surjective is cleared (the Morita checker pulls back
// along arbitrary object maps).
PullbackGroupoid pullback_groupoid(const FinGroupoid& gamma,
                                   const std::vector<std::string>& p0,
                                   const std::vector<int>& J,
                                   bool require_surjective = true);

// --- 2-fiber product ------------------------------------------------------

// Objects (a|x|b): a in G0, b in H0, x : phi(a) -> psi(b) in K1.
// Arrows (u|x|v): u in G1, v in H1, x in K1 with src(x) = tgt(phi(u)) and
// tgt(x) = src(psi(v)); an arrow runs
//   (s(u), comp(x, phi(u)), s(v))  -->  (t(u), comp(psi(v), x), t(v)).
struct FiberProduct {
  FinGroupoid gpd;
  GroupoidMap to_left;    // gpd -> phi.dom
  GroupoidMap to_right;   // gpd -> psi.dom
  std::vector<int> object_middle;  // object -> arrow of K
  std::vector<int> object_left;    // object -> object of phi.dom
  std::vector<int> object_right;   // object -> object of psi.dom
};

FiberProduct fiber_product_groupoid(const GroupoidMap& phi, const GroupoidMap& psi);

// --- diagonal --------------------------------------------------------------

// Delta : dom -> dom x_cod dom over the extension's own leg twice.
// Objects go to (a|unit(a)|a); the arrow over g has middle component
// inv(phi1(g)), the unique filler of the commuting square with unit
// source middle.
struct DiagonalFunctor {
  FiberProduct fp;
  GroupoidMap delta;  // e.dom -> fp.gpd
};

DiagonalFunctor diagonal_functor(const GroupoidExtension& e);

}  // namespace ggd
