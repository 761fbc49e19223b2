#pragma once

#include <optional>
#include <vector>

#include "ggd/bibundle.hpp"
#include "ggd/bundle.hpp"
#include "ggd/core.hpp"
#include "ggd/functor.hpp"
#include "ggd/morita.hpp"

namespace ggd {

// Gerbe data of an extension: the self fiber product, its transitivity,
// and (when transitive) its isotropy group together with a Morita
// equivalence down to the corresponding one-object groupoid.  When the
// fiber product is not transitive the certificate documents the orbit
// decomposition instead of failing.
struct GerbeCertificate {
  GroupoidExtension extension;
  FiberProduct fiber_product;
  std::vector<int> object_to_cod_arrow;  // the (G x_H G)_0 <-> H_1 bijection
  bool arrows_surjective = false;
  bool transitive = false;
  std::vector<std::vector<int>> orbit_report;       // when not transitive
  std::optional<FinGroup> isotropy;                 // when transitive
  std::optional<MoritaEquivalence> morita_witness;  // fp ~ one-object(K)
  bool basepoint_independent = true;  // isotropy sampled at a second object
};

GerbeCertificate certify_gerbe(const GroupoidExtension& e, Budget budget = {});

// Reconstruction of the extension from its bibundle: the induced bundle
// of the unit bundle, its gauge groupoid, the comparison functor theta,
// and a canonical isomorphism back to the codomain under which theta
// transports to phi.
struct RoundtripReport {
  Bibundle bibundle;
  PrincipalBundle applied;
  FinGroupoid gauge;
  GroupoidMap theta;      // dom -> gauge, identity on objects
  GroupoidMap gauge_iso;  // gauge -> cod
  bool iso_valid = false;      // gauge_iso is a bijective functor
  bool theta_matches = false;  // gauge_iso . theta == phi
  Report theta_extension_report;

  bool ok() const { return iso_valid && theta_matches && theta_extension_report.ok(); }
};

RoundtripReport roundtrip_extension(const GroupoidExtension& e);

}  // namespace ggd
