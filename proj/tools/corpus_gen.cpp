// Regenerates the bundled example files under data/ in canonical form.
// Usage: corpus-gen [output-dir]

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ggd/bibundle.hpp"
#include "ggd/bundle.hpp"
#include "ggd/core.hpp"
#include "ggd/format.hpp"
#include "ggd/functor.hpp"
#include "ggd/presets.hpp"

using namespace ggd;

namespace {

std::filesystem::path out_dir;

void write(const std::string& name, const std::string& text) {
  std::ofstream f(out_dir / name, std::ios::binary);
  f << text;
  std::cout << "wrote " << (out_dir / name).string() << '\n';
}

// z4 -> z2 style quotient on cyclic arrow indices
GroupoidMap cyclic_quotient(const FinGroupoid& dom, const FinGroupoid& cod, int modulus) {
  GroupoidMap m{dom, cod, {0}, {}};
  for (int a = 0; a < dom.n_arrows(); ++a) m.f1.push_back(a % modulus);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  out_dir = (argc > 1) ? argv[1] : "data";
  std::filesystem::create_directories(out_dir);

  // --- groupoids -----------------------------------------------------------
  FinGroupoid empty = unit_groupoid({});
  FinGroupoid unit1 = unit_groupoid({"a"});
  FinGroupoid unit2 = unit_groupoid({"a", "b"});
  FinGroupoid unit3 = unit_groupoid({"a", "b", "c"});
  FinGroupoid z2 = one_object_groupoid(cyclic_group(2));
  FinGroupoid z3 = one_object_groupoid(cyclic_group(3));
  FinGroupoid z4 = one_object_groupoid(cyclic_group(4));
  FinGroupoid z8 = one_object_groupoid(cyclic_group(8));
  FinGroupoid v4 = one_object_groupoid(klein_four());
  FinGroupoid s3 = one_object_groupoid(symmetric3());
  FinGroupoid pair2 = shift_action_groupoid(2, 2);
  FinGroupoid pair3 = shift_action_groupoid(3, 3);
  FinGroupoid act4swap = shift_action_groupoid(4, 2);
  FinGroupoid trivact2;
  {
    std::vector<int> act{0, 1, 0, 1};  // Z/2 acting trivially on {0, 1}
    trivact2 = action_groupoid(cyclic_group(2), {"0", "1"}, act);
  }

  write("empty.ggd", render_groupoid(empty));
  write("unit1.ggd", render_groupoid(unit1));
  write("unit2.ggd", render_groupoid(unit2));
  write("unit3.ggd", render_groupoid(unit3));
  write("z2.ggd", render_groupoid(z2));
  write("z3.ggd", render_groupoid(z3));
  write("z4.ggd", render_groupoid(z4));
  write("z8.ggd", render_groupoid(z8));
  write("v4.ggd", render_groupoid(v4));
  write("s3.ggd", render_groupoid(s3));
  write("pair2.ggd", render_groupoid(pair2));
  write("pair3.ggd", render_groupoid(pair3));
  write("act4swap.ggd", render_groupoid(act4swap));
  write("trivact2.ggd", render_groupoid(trivact2));

  // --- functors ---------------------------------------------------------------
  GroupoidMap id_z4 = identity_functor(z4);
  write("id_z4.ggm", render_functor(id_z4, "z4.ggd", "z4.ggd", false));

  GroupoidMap mod2 = cyclic_quotient(z4, z2, 2);
  write("mod2.ggm", render_functor(mod2, "z4.ggd", "z2.ggd", false));

  GroupoidMap quot_z8_z4 = cyclic_quotient(z8, z4, 4);
  write("quot_z8_z4.ggm", render_functor(quot_z8_z4, "z8.ggd", "z4.ggd", false));

  GroupoidMap incl_z2_z4{z2, z4, {0}, {0, 2}};  // r1 -> r2
  write("incl_z2_z4.ggm", render_functor(incl_z2_z4, "z2.ggd", "z4.ggd", false));

  GroupoidMap const_unit2_z2{unit2, z2, {0, 0}, {0, 0}};
  write("const_unit2_z2.ggm", render_functor(const_unit2_z2, "unit2.ggd", "z2.ggd", false));

  GroupoidMap proj_pair2_z2{pair2, z2, {0, 0}, {}};
  proj_pair2_z2.f1.resize(pair2.n_arrows());
  for (int a = 0; a < pair2.n_arrows(); ++a)
    proj_pair2_z2.f1[a] = (pair2.arrows[a].substr(1, 1) == "e") ? 0 : 1;
  write("proj_pair2_z2.ggm", render_functor(proj_pair2_z2, "pair2.ggd", "z2.ggd", false));

  GroupoidMap point_unit1_pair2{unit1, pair2, {0}, {pair2.arrow_index("(e|0)")}};
  write("point_unit1_pair2.ggm",
        render_functor(point_unit1_pair2, "unit1.ggd", "pair2.ggd", false));

  GroupoidMap sign_s3_z2{s3, z2, {0}, {0, 0, 0, 1, 1, 1}};
  write("sign_s3_z2.ggm", render_functor(sign_s3_z2, "s3.ggd", "z2.ggd", false));

  GroupoidMap proj_act4_z4{act4swap, z4, {0, 0}, {}};
  proj_act4_z4.f1.resize(act4swap.n_arrows());
  for (int a = 0; a < act4swap.n_arrows(); ++a) {
    const std::string& name = act4swap.arrows[a];  // (e|x) or (rk|x)
    std::string elem = name.substr(1, name.find('|') - 1);
    proj_act4_z4.f1[a] = z4.arrow_index(elem);
  }
  write("proj_act4_z4.ggm", render_functor(proj_act4_z4, "act4swap.ggd", "z4.ggd", false));

  // --- extensions ----------------------------------------------------------------
  write("xid_z4.ggx", render_functor(id_z4, "z4.ggd", "z4.ggd", true));
  write("xmod2.ggx", render_functor(mod2, "z4.ggd", "z2.ggd", true));
  write("xidunit2.ggx", render_functor(identity_functor(unit2), "unit2.ggd", "unit2.ggd", true));

  GroupoidMap v4_first{v4, z2, {0}, {0, 1, 0, 1}};  // a -> r1, b -> e
  write("xv4_z2.ggx", render_functor(v4_first, "v4.ggd", "z2.ggd", true));

  write("xsign.ggx", render_functor(sign_s3_z2, "s3.ggd", "z2.ggd", true));

  GroupoidMap actphi{act4swap, pair2, {0, 1}, {}};
  actphi.f1.resize(act4swap.n_arrows());
  for (int a = 0; a < act4swap.n_arrows(); ++a) {
    const std::string& name = act4swap.arrows[a];
    std::string elem = name.substr(1, name.find('|') - 1);
    std::string x = name.substr(name.find('|') + 1);
    x.pop_back();
    int k = (elem == "e") ? 0 : std::stoi(elem.substr(1));
    std::string target = (k % 2 == 0) ? "e" : "r1";
    actphi.f1[a] = pair2.arrow_index("(" + target + "|" + x + ")");
  }
  write("xact.ggx", render_functor(actphi, "act4swap.ggd", "pair2.ggd", true));

  // --- bundles ----------------------------------------------------------------------
  write("bun_unit_z4.ggb", render_bundle(unit_bundle(z4), "z4.ggd"));
  write("bun_unit_pair2.ggb", render_bundle(unit_bundle(pair2), "pair2.ggd"));
  write("bun_unit_unit2.ggb", render_bundle(unit_bundle(unit2), "unit2.ggd"));
  write("bun_triv2_z2.ggb",
        render_bundle(pullback_bundle(unit_bundle(z2), {"b1", "b2"}, {0, 0}), "z2.ggd"));
  write("bun_pull_pair2.ggb",
        render_bundle(pullback_bundle(unit_bundle(pair2), {"m0", "m1"}, {1, 0}),
                      "pair2.ggd"));

  // --- bibundles ---------------------------------------------------------------------
  write("bib_id_z2.ggb",
        render_bibundle(bibundle_from_functor(identity_functor(z2)), "z2.ggd", "z2.ggd"));
  write("bib_mod2.ggb", render_bibundle(bibundle_from_functor(mod2), "z4.ggd", "z2.ggd"));
  write("bib_sign.ggb", render_bibundle(bibundle_from_functor(sign_s3_z2), "s3.ggd", "z2.ggd"));
  write("bib_point.ggb",
        render_bibundle(bibundle_from_functor(point_unit1_pair2), "unit1.ggd", "pair2.ggd"));
  write("bib_proj.ggb",
        render_bibundle(bibundle_from_functor(proj_pair2_z2), "pair2.ggd", "z2.ggd"));

  std::cout << "done\n";
  return 0;
}
