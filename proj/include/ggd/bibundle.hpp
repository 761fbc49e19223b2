#pragma once

#include <optional>
#include <vector>

#include "ggd/bundle.hpp"
#include "ggd/core.hpp"
#include "ggd/functor.hpp"
#include "ggd/iso.hpp"

namespace ggd {

// A left-G right-H bibundle.  lact(g, p) is defined exactly when
// src(g) == lanchor(p) and lands over tgt(g); ract(p, h) is defined
// exactly when ranchor(p) == tgt(h) and lands over src(h).  The right
// action is principal over lanchor.
struct Bibundle {
  FinGroupoid left;
  FinGroupoid right;
  std::vector<std::string> carrier;
  std::vector<int> lanchor;  // carrier -> left objects
  std::vector<int> ranchor;  // carrier -> right objects
  std::vector<int> lact;     // left arrows x carrier; -1 where undefined
  std::vector<int> ract;     // carrier x right arrows; -1 where undefined

  int n_carrier() const { return static_cast<int>(carrier.size()); }
  int lact_at(int g, int p) const {
    return lact[static_cast<std::size_t>(g) * carrier.size() + p];
  }
  int ract_at(int p, int h) const {
    return ract[static_cast<std::size_t>(p) * right.arrows.size() + h];
  }
  int carrier_index(std::string_view id) const;

  bool operator==(const Bibundle&) const = default;
};

// Right side principal over lanchor, ranchor invariant under the left
// action, left action axioms, and the two actions commuting.
Report validate_bibundle(const Bibundle& b);

// <m>: carrier (u|h) with u in dom objects, h in cod arrows, tgt(h) =
// f0(u); g.(u|h) = (tgt g | comp(f1 g, h)), (u|h).k = (u | comp(h, k)).
Bibundle bibundle_from_functor(const GroupoidMap& m);

// Right H-bundle over lanchor, forgetting the left action.
PrincipalBundle right_leg_bundle(const Bibundle& b);

// The left action read as a right action of the opposite groupoid,
// projected to ranchor: the bibundle is biprincipal exactly when this
// bundle is principal.
PrincipalBundle mirror_bundle(const Bibundle& b);

struct BiprincipalCheck {
  bool biprincipal = false;
  Report detail;
};

BiprincipalCheck is_biprincipal(const Bibundle& b);

// Anchors swapped, actions transposed through inverses.  Requires a
// biprincipal input.
Bibundle invert_bibundle(const Bibundle& b);

// --- quotient constructions ---------------------------------------------------

struct QuotientData {
  std::vector<std::pair<int, int>> pairs;  // matched pairs, first-major order
  std::vector<int> pair_class;             // pair index -> class index
  std::vector<int> class_rep;              // class index -> pair index
};

struct ComposedBibundle {
  Bibundle bib;
  QuotientData quotient;
};

// (p x_{H0} q) / H1 with classes labelled by their smallest pair.
ComposedBibundle compose_bibundles_detailed(const Bibundle& p, const Bibundle& q);
Bibundle compose_bibundles(const Bibundle& p, const Bibundle& q);

struct AppliedBundle {
  PrincipalBundle bundle;
  QuotientData quotient;
};

// (Q x_{G0} P) / G1: the principal H-bundle a bibundle induces from a
// principal G-bundle.
AppliedBundle apply_bibundle_detailed(const Bibundle& p, const PrincipalBundle& b);
PrincipalBundle apply_bibundle(const Bibundle& p, const PrincipalBundle& b);

// --- isomorphism of bibundles ---------------------------------------------------

struct BibundleIso {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<std::vector<int>> map;
};

// Carrier bijection over the identity of both groupoids, commuting with
// anchors and both actions.
BibundleIso bibundle_isomorphic(const Bibundle& a, const Bibundle& b,
                                Budget budget = {});

}  // namespace ggd
