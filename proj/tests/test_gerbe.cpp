#include <doctest.h>

#include "ggd/gerbe.hpp"
#include "ggd/presets.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace ggd;
using namespace ggd::testing;

TEST_CASE("gerbe certificates") {
  SUBCASE("Z/4 -> Z/2") {
    auto cert = certify_gerbe(GroupoidExtension{cyclic_quotient_map(4, 2)});
    CHECK(cert.transitive);
    CHECK(cert.arrows_surjective);
    REQUIRE(cert.isotropy.has_value());
    CHECK(cert.isotropy->n() == 8);
    REQUIRE(cert.morita_witness.has_value());
    CHECK(cert.morita_witness->verdict == Verdict::True);
    CHECK(cert.fiber_product.gpd.n_objects() == 2);
    CHECK(cert.fiber_product.gpd.n_arrows() == 32);

    auto counts = fiber_product_counts_oracle(GroupoidExtension{cyclic_quotient_map(4, 2)});
    CHECK(counts.objects == 2);
    CHECK(counts.arrows == 32);
    CHECK(counts.loops_at_unit == 8);
  }
  SUBCASE("identity extension of a one-object group") {
    auto e = GroupoidExtension{identity_functor(one_object_groupoid(cyclic_group(3)))};
    auto cert = certify_gerbe(e);
    CHECK(cert.transitive);
    REQUIRE(cert.isotropy.has_value());
    CHECK(cert.isotropy->n() == 3);  // (G x_G G) loops at a unit come from G
    auto r = group_isomorphic(*cert.isotropy, cyclic_group(3));
    CHECK(r.found());
  }
  SUBCASE("identity extension of the 2-object unit groupoid is honestly non-transitive") {
    auto e = GroupoidExtension{identity_functor(unit_groupoid({"a", "b"}))};
    auto cert = certify_gerbe(e);
    CHECK_FALSE(cert.transitive);
    CHECK(cert.orbit_report.size() == 2);
    CHECK_FALSE(cert.isotropy.has_value());
    CHECK_FALSE(cert.morita_witness.has_value());
  }
  SUBCASE("one-object extensions satisfy |K| == |G1| * |ker phi|") {
    for (auto m : {cyclic_quotient_map(4, 2), cyclic_quotient_map(8, 4),
                   sign_map(), klein_first_map()}) {
      auto e = GroupoidExtension{m};
      auto cert = certify_gerbe(e);
      REQUIRE(cert.transitive);
      long long kernel = 0;
      for (int a = 0; a < m.dom.n_arrows(); ++a)
        if (m.f1[a] == m.cod.unit[0]) ++kernel;
      CHECK(cert.isotropy->n() == m.dom.n_arrows() * kernel);
      CHECK(fiber_product_counts_oracle(e).loops_at_unit == cert.isotropy->n());
    }
  }
}

TEST_CASE("round trips") {
  SUBCASE("identity extension reconstructs the groupoid itself") {
    auto g = shift_action_groupoid(2, 2);
    auto r = roundtrip_extension(GroupoidExtension{identity_functor(g)});
    CHECK(r.ok());
    CHECK(r.gauge.n_arrows() == g.n_arrows());
  }
  SUBCASE("Z/4 -> Z/2 reconstructs Z/2 with theta matching phi") {
    auto r = roundtrip_extension(GroupoidExtension{cyclic_quotient_map(4, 2)});
    CHECK(r.iso_valid);
    CHECK(r.theta_matches);
    CHECK(r.theta_extension_report.ok());
    CHECK(r.gauge.n_arrows() == 2);
  }
  SUBCASE("the swap-action extension reconstructs the codomain action groupoid") {
    auto r = roundtrip_extension(GroupoidExtension{shift_action_quotient()});
    CHECK(r.ok());
    CHECK(r.gauge.n_objects() == 2);
    CHECK(r.gauge.n_arrows() == 4);
  }
  SUBCASE("remaining stock extensions round trip") {
    for (auto m : {cyclic_quotient_map(8, 2), sign_map(), klein_first_map()}) {
      auto r = roundtrip_extension(GroupoidExtension{m});
      CHECK(r.ok());
    }
  }
}

TEST_CASE("pulled-back extensions keep their certificates at larger sizes") {
  // act4swap -> pair2 pulled back along a 3 -> 2 base surjection: the
  // self fiber product grows to 9 objects and 324 arrows
  auto e = GroupoidExtension{shift_action_quotient()};
  auto pulled = pullback_extension(e, {"m0", "m1", "m2"}, {0, 1, 0});
  REQUIRE(validate_extension(pulled.ext).ok());
  auto fp = fiber_product_groupoid(pulled.ext.phi, pulled.ext.phi);
  CHECK(fp.gpd.n_objects() == 9);
  CHECK(fp.gpd.n_arrows() == 324);
  CHECK(validate_groupoid(fp.gpd).ok());

  auto cert = certify_gerbe(pulled.ext);
  auto base = certify_gerbe(e);
  CHECK(cert.transitive == base.transitive);
  REQUIRE((cert.isotropy && base.isotropy));
  CHECK(group_isomorphic(*cert.isotropy, *base.isotropy).found());

  auto r = roundtrip_extension(pulled.ext);
  CHECK(r.ok());
  CHECK(r.gauge.n_arrows() == pulled.ext.phi.cod.n_arrows());
}

TEST_CASE("gerbe data is Morita-invariant under base pullback") {
  std::vector<GroupoidMap> corpus{cyclic_quotient_map(4, 2), sign_map(),
                                  klein_first_map(), shift_action_quotient()};
  for (const auto& m : corpus) {
    GroupoidExtension e{m};
    auto base_cert = certify_gerbe(e);

    // identity and a 2 -> 1 collapse of the first base point
    std::vector<std::string> m_id;
    std::vector<int> f_id;
    for (int i = 0; i < m.dom.n_objects(); ++i) {
      m_id.push_back("w" + std::to_string(i));
      f_id.push_back(i);
    }
    auto m_2 = m_id;
    auto f_2 = f_id;
    m_2.push_back("wdup");
    f_2.push_back(0);

    for (int variant = 0; variant < 2; ++variant) {
      const auto& names = variant ? m_2 : m_id;
      const auto& f = variant ? f_2 : f_id;
      auto pulled = pullback_extension(e, names, f);
      auto cert = certify_gerbe(pulled.ext);
      CHECK(cert.transitive == base_cert.transitive);
      if (cert.transitive && base_cert.transitive) {
        REQUIRE(cert.isotropy.has_value());
        CHECK(group_isomorphic(*cert.isotropy, *base_cert.isotropy).found());
      }
      CHECK(are_morita_equivalent(cert.fiber_product.gpd,
                                  base_cert.fiber_product.gpd)
                .verdict == Verdict::True);
    }
  }
}
