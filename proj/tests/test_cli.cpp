#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ggd/cli.hpp"
#include "ggd/format.hpp"
#include "json_schema.hpp"

using namespace ggd;
using nlohmann::json;

namespace {

const std::filesystem::path kData = GGD_DATA_DIR;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

json report_schema() {
  static json schema = json::parse(
      Workspace::read_file((std::filesystem::path(GGD_DOCS_DIR) / "report.schema.json")
                               .string()));
  return schema;
}

}  // namespace

TEST_CASE("check exits 0 on valid input and 1 on invalid input") {
  CHECK(run({"check", data("z4.ggd")}).exit_code == 0);
  CHECK(run({"check", data("bib_sign.ggb")}).exit_code == 0);

  // an invalid file: drop one composite
  auto tmp = std::filesystem::temp_directory_path() / "ggd_bad.ggd";
  {
    std::ofstream f(tmp);
    f << "OBJECTS pt\nARROWS e:pt->pt r1:pt->pt\nUNITS pt=e\nINV e=e r1=r1\n"
      << "COMP e.e=e e.r1=r1 r1.e=r1\n";  // r1.r1 missing
  }
  auto r = run({"check", tmp.string()});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("missing-composite") != std::string::npos);
}

TEST_CASE("parse errors exit 2") {
  auto tmp = std::filesystem::temp_directory_path() / "ggd_parse.ggd";
  {
    std::ofstream f(tmp);
    f << "OBJECTS a\nARROWS f:a->nowhere\nUNITS a=f\nINV f=f\nCOMP f.f=f\n";
  }
  auto r = run({"check", tmp.string()});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("DanglingId") != std::string::npos);

  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"isotropy", data("z4.ggd"), "no_such_object"}).exit_code == 2);
}

TEST_CASE("verdict exit codes") {
  CHECK(run({"morita", data("pair2.ggd"), data("z2.ggd")}).exit_code == 1);
  CHECK(run({"morita", data("pair2.ggd"), data("unit1.ggd")}).exit_code == 0);
  CHECK(run({"morita", data("s3.ggd"), data("s3.ggd"), "--budget", "0"}).exit_code == 3);
  CHECK(run({"extension-check", data("xsign.ggx")}).exit_code == 0);
  CHECK(run({"biprincipal", data("bib_mod2.ggb")}).exit_code == 1);
  CHECK(run({"biprincipal", data("bib_id_z2.ggb")}).exit_code == 0);
  CHECK(run({"gerbe", data("xidunit2.ggx")}).exit_code == 1);
  CHECK(run({"gerbe", data("xmod2.ggx")}).exit_code == 0);
  CHECK(run({"roundtrip", data("xact.ggx")}).exit_code == 0);
}

TEST_CASE("gerbe --json reports the frozen Z/4 -> Z/2 figures") {
  auto r = run({"gerbe", data("xmod2.ggx"), "--json"});
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["data"]["transitive"] == true);
  CHECK(j["data"]["isotropy_order"] == 8);
  CHECK(j["data"]["fiber_product"]["objects"] == 2);
  CHECK(j["data"]["fiber_product"]["arrows"] == 32);
  std::string why;
  bool valid = ggd::testing::schema_validate(report_schema(), j, &why);
  INFO(why);
  CHECK(valid);
}

TEST_CASE("JSON reports validate against the published schema") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"check", data("z4.ggd"), "--json"},
           {"orbits", data("trivact2.ggd"), "--json"},
           {"isotropy", data("s3.ggd"), "pt", "--json"},
           {"morita", data("unit2.ggd"), data("unit3.ggd"), "--json"},
           {"morita-morphism", data("point_unit1_pair2.ggm"), "--json"},
           {"extension-check", data("xv4_z2.ggx"), "--json"},
           {"bundle-check", data("bun_triv2_z2.ggb"), "--json"},
           {"biprincipal", data("bib_point.ggb"), "--json"},
           {"gerbe", data("xsign.ggx"), "--json"},
           {"roundtrip", data("xmod2.ggx"), "--json"},
           {"gauge", data("bun_unit_pair2.ggb"), "--json"},
           {"bibundle", data("mod2.ggm"), "--json"},
           {"pullback", data("z2.ggd"), "p1=pt", "p2=pt", "--json"},
           {"fprod", data("mod2.ggm"), data("mod2.ggm"), "--json"},
           {"compose", data("bib_id_z2.ggb"), data("bib_id_z2.ggb"), "--json"},
           {"apply", data("bib_mod2.ggb"), data("bun_unit_z4.ggb"), "--json"},
       }) {
    auto r = run(args);
    auto j = json::parse(r.out);
    std::string why;
    bool valid = ggd::testing::schema_validate(report_schema(), j, &why);
    INFO(args[0] << ": " << why);
    CHECK(valid);
    CHECK(j["exit"] == r.exit_code);
  }
}

TEST_CASE("GGD_BUDGET steers searches from the environment") {
  ::setenv("GGD_BUDGET", "1", 1);
  auto r = run({"morita", data("s3.ggd"), data("s3.ggd")});
  ::unsetenv("GGD_BUDGET");
  CHECK(r.exit_code == 3);
  CHECK(run({"morita", data("s3.ggd"), data("s3.ggd")}).exit_code == 0);
}

TEST_CASE("constructed groupoids print as parseable GGD") {
  auto r = run({"gauge", data("bun_unit_pair2.ggb")});
  REQUIRE(r.exit_code == 0);
  auto g = parse_groupoid(r.out);
  CHECK(g.n_objects() == 2);
  CHECK(g.n_arrows() == 4);
  CHECK(validate_groupoid(g).ok());
}

TEST_CASE("piped construction: bibundle output feeds bundle-check") {
  auto r = run({"bibundle", data("quot_z8_z4.ggm")});
  REQUIRE(r.exit_code == 0);
  auto tmp = std::filesystem::temp_directory_path() / "ggd_pipe";
  std::filesystem::create_directories(tmp);
  std::filesystem::copy_file(data("z8.ggd"), tmp / "z8.ggd",
                             std::filesystem::copy_options::overwrite_existing);
  std::filesystem::copy_file(data("z4.ggd"), tmp / "z4.ggd",
                             std::filesystem::copy_options::overwrite_existing);
  {
    std::ofstream f(tmp / "out.ggb");
    f << r.out;
  }
  CHECK(run({"bundle-check", (tmp / "out.ggb").string()}).exit_code == 0);
  CHECK(run({"biprincipal", (tmp / "out.ggb").string()}).exit_code == 1);
}
