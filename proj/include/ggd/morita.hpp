#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ggd/core.hpp"
#include "ggd/functor.hpp"
#include "ggd/iso.hpp"

namespace ggd {

enum class Verdict { True, False, BudgetExceeded };

// Orbit representatives with their isotropy groups: the complete Morita
// invariant of a finite groupoid.
struct Skeleton {
  std::vector<int> orbit_reps;
  std::vector<FinGroup> isotropy;
};

Skeleton skeleton(const FinGroupoid& g);

// Decision for "dom is the pullback groupoid of cod along f0": the
// canonical comparison functor g -> (s(g) | f1(g) | t(g)) must be an
// isomorphism (full faithfulness) and the image of f0 must meet every
// orbit of cod.  Essential surjectivity (rather than object
// surjectivity) keeps one-point isotropy inclusions into transitive
// groupoids in scope; object_surjective is still reported as evidence.
struct MoritaMorphismCheck {
  Verdict verdict = Verdict::False;
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool object_surjective = false;
  std::optional<GroupoidMap> witness;  // dom -> pullback over f0
  std::string failed;                  // first failed condition, if any
};

MoritaMorphismCheck is_morita_morphism(const GroupoidMap& m);

// Skeleton matching: a bijection between orbit blocks with isomorphic
// isotropy per matched pair.
struct MoritaEquivalence {
  Verdict verdict = Verdict::False;
  std::vector<std::pair<int, int>> matching;  // (rep of a, rep of b)
};

MoritaEquivalence are_morita_equivalent(const FinGroupoid& a, const FinGroupoid& b,
                                        Budget budget = {});

// Both legs of an extension pulled back along a surjection f : m2 -> m,
// with the projection functors as Morita morphisms back to the input.
struct PulledBackExtension {
  GroupoidExtension ext;   // over m2
  GroupoidMap leg_dom;     // ext.phi.dom -> e.phi.dom
  GroupoidMap leg_cod;     // ext.phi.cod -> e.phi.cod
};

PulledBackExtension pullback_extension(const GroupoidExtension& e,
                                       const std::vector<std::string>& m2,
                                       const std::vector<int>& f);

// Certificate checking for Morita equivalence of extensions: each pair
// of legs must be a Morita morphism sharing one object map, and the
// square psi_cod . phi3 == phi_i . psi_dom must commute.
struct ExtensionWitnessCheck {
  Verdict verdict = Verdict::False;
  std::vector<std::pair<std::string, bool>> conditions;
};

ExtensionWitnessCheck verify_extension_equivalence_witness(
    const GroupoidExtension& e1, const GroupoidExtension& e2,
    const GroupoidExtension& e3, const GroupoidMap& to1_dom,
    const GroupoidMap& to1_cod, const GroupoidMap& to2_dom,
    const GroupoidMap& to2_cod);

}  // namespace ggd
