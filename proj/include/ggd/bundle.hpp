#pragma once

#include <optional>
#include <vector>

#include "ggd/core.hpp"
#include "ggd/iso.hpp"

namespace ggd {

// A right action of grp on a finite carrier.  act(p, h) is defined
// exactly when anchor(p) == tgt(h) and then lands over src(h).
struct RightAction {
  FinGroupoid grp;
  std::vector<std::string> carrier;
  std::vector<int> anchor;  // carrier -> grp objects
  std::vector<int> act;     // carrier x arrows; -1 where undefined

  int n_carrier() const { return static_cast<int>(carrier.size()); }
  int act_at(int p, int h) const {
    return act[static_cast<std::size_t>(p) * grp.arrows.size() + h];
  }
  int carrier_index(std::string_view id) const;

  bool operator==(const RightAction&) const = default;
};

struct PrincipalBundle {
  RightAction action;
  std::vector<std::string> base;
  std::vector<int> proj;  // carrier -> base

  int n_base() const { return static_cast<int>(base.size()); }
  bool operator==(const PrincipalBundle&) const = default;
};

Report validate_right_action(const RightAction& a);

// Action axioms, surjectivity of proj, invariance, and the principality
// bijection (p, h) -> (p, p.h) onto same-fiber pairs.
Report validate_principal(const PrincipalBundle& b);

// carrier = arrows, base = objects, proj = tgt, anchor = src, action by
// composition.
PrincipalBundle unit_bundle(const FinGroupoid& g);

// Carrier (n|p) with f(n) == proj(p); the action rides on the second leg.
PrincipalBundle pullback_bundle(const PrincipalBundle& b,
                                const std::vector<std::string>& n,
                                const std::vector<int>& f);

// Pairs of maps validated on demand; bundles carry no morphism type.
Report validate_bundle_morphism(const PrincipalBundle& a, const PrincipalBundle& b,
                                const std::vector<int>& carrier_map,
                                const std::vector<int>& base_map);

struct Trivialization {
  bool found = false;
  int obstruction = -1;              // base point with empty fiber
  std::vector<int> section;          // base -> carrier
  std::vector<int> classifying;      // base -> grp objects
  PrincipalBundle model;             // pullback of the unit bundle
  std::vector<int> carrier_iso;      // carrier -> model carrier
  Report morphism_report;
};

// Global section by fiberwise choice; when one exists the bundle is the
// pullback of the unit bundle along anchor∘section, witnessed by a
// validated bundle isomorphism.
Trivialization trivialize(const PrincipalBundle& b);

// Restriction to a subset of the base (local triviality is
// trivialize(restrict_bundle(b, {i})) over each singleton).
PrincipalBundle restrict_bundle(const PrincipalBundle& b,
                                const std::vector<int>& base_subset);

// --- gauge groupoid ---------------------------------------------------------

struct GaugeGroupoid {
  FinGroupoid gpd;                         // objects = base
  std::vector<std::pair<int, int>> pairs;  // anchor-compatible carrier pairs
  std::vector<int> pair_class;             // pair index -> arrow of gpd
  std::vector<int> class_rep;              // arrow of gpd -> pair index
};

// Arrows are classes [p|q] of same-anchor carrier pairs under the
// diagonal right action; class ids come from the smallest member.
GaugeGroupoid gauge_groupoid_detailed(const PrincipalBundle& b);
FinGroupoid gauge_groupoid(const PrincipalBundle& b);

// Carrier bijection over the identity on base and grp, commuting with
// proj, anchor and the action.
struct BundleIso {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<std::vector<int>> map;
};

BundleIso bundle_isomorphic(const PrincipalBundle& a, const PrincipalBundle& b,
                            Budget budget = {});

}  // namespace ggd
