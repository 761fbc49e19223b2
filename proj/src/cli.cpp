#include "ggd/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggd/bibundle.hpp"
#include "ggd/bundle.hpp"
#include "ggd/core.hpp"
#include "ggd/format.hpp"
#include "ggd/functor.hpp"
#include "ggd/gerbe.hpp"
#include "ggd/iso.hpp"
#include "ggd/morita.hpp"

namespace ggd {

namespace {

using nlohmann::json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

const char* verdict_name(int exit_code) {
  switch (exit_code) {
    case kExitTrue: return "true";
    case kExitFalse: return "false";
    case kExitBudget: return "budget-exceeded";
    default: return "error";
  }
}

struct Ctx {
  bool json_mode = false;
  long long budget = 1'000'000;
  std::string command;
  std::ostream* out;
  std::ostream* err;
};

int finish(const Ctx& ctx, int exit_code, json data, const std::string& text) {
  if (ctx.json_mode) {
    json report{{"schema", 1},
                {"command", ctx.command},
                {"verdict", verdict_name(exit_code)},
                {"exit", exit_code},
                {"data", std::move(data)}};
    (*ctx.out) << report.dump(2) << '\n';
  } else {
    (*ctx.out) << text;
  }
  return exit_code;
}

json violations_json(const Report& r) {
  json v = json::array();
  for (const auto& item : r.violations)
    v.push_back({{"rule", item.rule}, {"detail", item.detail}});
  return v;
}

int exit_of_verdict(Verdict v) {
  switch (v) {
    case Verdict::True: return kExitTrue;
    case Verdict::False: return kExitFalse;
    case Verdict::BudgetExceeded: return kExitBudget;
  }
  return kExitError;
}

ParsedFunctor load_extension_file(Workspace& ws, const std::string& path) {
  ParsedFunctor pf = ws.load_functor(path);
  if (!pf.extension)
    throw Error("ParseError", path + ": missing EXTENSION marker");
  return pf;
}

int cmd_check(Ctx& ctx, Workspace& ws, const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::string kind;
  Report report;
  json extra;
  if (ext == ".ggd") {
    kind = "groupoid";
    FinGroupoid g = ws.load_groupoid(path);
    report = validate_groupoid(g);
    extra = {{"objects", g.n_objects()}, {"arrows", g.n_arrows()}};
  } else if (ext == ".ggm" || ext == ".ggx") {
    ParsedFunctor pf = ws.load_functor(path);
    if (ext == ".ggx") {
      if (!pf.extension) throw Error("ParseError", path + ": missing EXTENSION marker");
      kind = "extension";
      report = validate_extension(GroupoidExtension{pf.map});
    } else {
      kind = "functor";
      report = validate_functor(pf.map);
    }
    extra = {{"dom", pf.dom_ref}, {"cod", pf.cod_ref}};
  } else if (ext == ".ggb") {
    ParsedGgb pg = ws.load_ggb(path);
    if (pg.bundle) {
      kind = "bundle";
      report = validate_principal(pg.bundle->bundle);
      extra = {{"carrier", pg.bundle->bundle.action.n_carrier()},
               {"base", pg.bundle->bundle.n_base()}};
    } else {
      kind = "bibundle";
      report = validate_bibundle(pg.bibundle->bib);
      extra = {{"carrier", pg.bibundle->bib.n_carrier()}};
    }
  } else {
    throw Error("UsageError", "unknown file extension '" + ext + "'");
  }
  json data{{"file", path}, {"kind", kind}, {"ok", report.ok()},
            {"violations", violations_json(report)}};
  data.update(extra);
  std::ostringstream text;
  text << path << " (" << kind << "): " << (report.ok() ? "ok" : "INVALID") << '\n';
  if (!report.ok()) text << report.summary() << '\n';
  return finish(ctx, report.ok() ? kExitTrue : kExitFalse, data, text.str());
}

int cmd_isotropy(Ctx& ctx, Workspace& ws, const std::string& path,
                 const std::string& object) {
  FinGroupoid g = ws.load_groupoid(path);
  int x = g.object_index(object);
  if (x < 0) throw Error("UnknownObject", "'" + object + "' not in " + path);
  FinGroup k = isotropy_group(g, x);
  json data{{"object", object}, {"order", k.n()}, {"elements", k.elements}};
  std::ostringstream text;
  text << "isotropy at " << object << ": order " << k.n() << '\n';
  for (const auto& e : k.elements) text << "  " << e << '\n';
  return finish(ctx, kExitTrue, data, text.str());
}

int cmd_orbits(Ctx& ctx, Workspace& ws, const std::string& path) {
  FinGroupoid g = ws.load_groupoid(path);
  auto blocks = orbits(g);
  json jb = json::array();
  std::ostringstream text;
  text << blocks.size() << " orbit(s); transitive: "
       << (is_transitive(g) ? "yes" : "no") << '\n';
  for (const auto& block : blocks) {
    json ids = json::array();
    text << " ";
    for (int x : block) {
      ids.push_back(g.objects[x]);
      text << ' ' << g.objects[x];
    }
    text << '\n';
    jb.push_back(ids);
  }
  json data{{"blocks", jb}, {"transitive", is_transitive(g)}};
  return finish(ctx, kExitTrue, data, text.str());
}

std::pair<std::vector<std::string>, std::vector<int>> parse_object_map(
    const FinGroupoid& gamma, const std::vector<std::string>& entries) {
  std::vector<std::string> names;
  std::vector<int> J;
  for (const auto& e : entries) {
    auto eq = e.find('=');
    if (eq == std::string::npos)
      throw Error("UsageError", "expected p=object, got '" + e + "'");
    std::string p = e.substr(0, eq), o = e.substr(eq + 1);
    if (!is_valid_id(p)) throw Error("UsageError", "invalid id '" + p + "'");
    int idx = gamma.object_index(o);
    if (idx < 0) throw Error("DanglingId", "object '" + o + "'");
    names.push_back(p);
    J.push_back(idx);
  }
  return {names, J};
}

int cmd_pullback(Ctx& ctx, Workspace& ws, const std::string& path,
                 const std::vector<std::string>& entries) {
  FinGroupoid gamma = ws.load_groupoid(path);
  auto [names, J] = parse_object_map(gamma, entries);
  auto pb = pullback_groupoid(gamma, names, J);
  std::string text = render_groupoid(pb.gpd);
  json data{{"objects", pb.gpd.n_objects()}, {"arrows", pb.gpd.n_arrows()},
            {"ggd", text}};
  return finish(ctx, kExitTrue, data, text);
}

int cmd_fprod(Ctx& ctx, Workspace& ws, const std::string& fpath,
              const std::string& gpath) {
  ParsedFunctor f = ws.load_functor(fpath);
  ParsedFunctor g = ws.load_functor(gpath);
  auto fp = fiber_product_groupoid(f.map, g.map);
  std::string text = render_groupoid(fp.gpd);
  json data{{"objects", fp.gpd.n_objects()}, {"arrows", fp.gpd.n_arrows()},
            {"ggd", text}};
  return finish(ctx, kExitTrue, data, text);
}

int cmd_morita(Ctx& ctx, Workspace& ws, const std::string& apath,
               const std::string& bpath) {
  FinGroupoid a = ws.load_groupoid(apath);
  FinGroupoid b = ws.load_groupoid(bpath);
  auto r = are_morita_equivalent(a, b, Budget{ctx.budget});
  json matching = json::array();
  std::ostringstream text;
  text << "morita-equivalent: " << verdict_name(exit_of_verdict(r.verdict)) << '\n';
  for (auto [ra, rb] : r.matching) {
    matching.push_back({{"a", a.objects[ra]}, {"b", b.objects[rb]}});
    text << "  " << a.objects[ra] << " ~ " << b.objects[rb] << '\n';
  }
  json data{{"equivalent", r.verdict == Verdict::True}, {"matching", matching}};
  return finish(ctx, exit_of_verdict(r.verdict), data, text.str());
}

int cmd_morita_morphism(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedFunctor f = ws.load_functor(path);
  Report fr = validate_functor(f.map);
  if (!fr.ok()) throw Error("InvalidFunctor", fr.summary());
  auto r = is_morita_morphism(f.map);
  json data{{"morita_morphism", r.verdict == Verdict::True},
            {"fully_faithful", r.fully_faithful},
            {"essentially_surjective", r.essentially_surjective},
            {"object_surjective", r.object_surjective}};
  std::ostringstream text;
  text << "morita-morphism: " << verdict_name(exit_of_verdict(r.verdict)) << '\n';
  if (!r.failed.empty()) text << "  " << r.failed << '\n';
  return finish(ctx, exit_of_verdict(r.verdict), data, text.str());
}

int cmd_extension_check(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedFunctor pf = load_extension_file(ws, path);
  Report report = validate_extension(GroupoidExtension{pf.map});
  json data{{"file", path}, {"ok", report.ok()}, {"violations", violations_json(report)}};
  std::ostringstream text;
  text << path << " (extension): " << (report.ok() ? "ok" : "INVALID") << '\n';
  if (!report.ok()) text << report.summary() << '\n';
  return finish(ctx, report.ok() ? kExitTrue : kExitFalse, data, text.str());
}

int cmd_bundle_check(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedGgb pg = ws.load_ggb(path);
  Report report = pg.bundle ? validate_principal(pg.bundle->bundle)
                            : validate_bibundle(pg.bibundle->bib);
  const char* kind = pg.bundle ? "bundle" : "bibundle";
  json data{{"file", path}, {"kind", kind}, {"ok", report.ok()},
            {"violations", violations_json(report)}};
  std::ostringstream text;
  text << path << " (" << kind << "): " << (report.ok() ? "ok" : "INVALID") << '\n';
  if (!report.ok()) text << report.summary() << '\n';
  return finish(ctx, report.ok() ? kExitTrue : kExitFalse, data, text.str());
}

int cmd_gauge(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedGgb pg = ws.load_ggb(path);
  if (!pg.bundle) throw Error("UsageError", "gauge expects a BUNDLE file");
  FinGroupoid g = gauge_groupoid(pg.bundle->bundle);
  std::string text = render_groupoid(g);
  json data{{"objects", g.n_objects()}, {"arrows", g.n_arrows()}, {"ggd", text}};
  return finish(ctx, kExitTrue, data, text);
}

int cmd_bibundle(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedFunctor f = ws.load_functor(path);
  Report fr = validate_functor(f.map);
  if (!fr.ok()) throw Error("InvalidFunctor", fr.summary());
  Bibundle b = bibundle_from_functor(f.map);
  std::string text = render_bibundle(b, f.dom_ref, f.cod_ref);
  json data{{"carrier", b.n_carrier()}, {"ggb", text}};
  return finish(ctx, kExitTrue, data, text);
}

int cmd_compose(Ctx& ctx, Workspace& ws, const std::string& ppath,
                const std::string& qpath) {
  ParsedGgb p = ws.load_ggb(ppath);
  ParsedGgb q = ws.load_ggb(qpath);
  if (!p.bibundle || !q.bibundle)
    throw Error("UsageError", "compose expects two BIBUNDLE files");
  Bibundle c = compose_bibundles(p.bibundle->bib, q.bibundle->bib);
  std::string text = render_bibundle(c, p.bibundle->left_ref, q.bibundle->right_ref);
  json data{{"carrier", c.n_carrier()}, {"ggb", text}};
  return finish(ctx, kExitTrue, data, text);
}

int cmd_apply(Ctx& ctx, Workspace& ws, const std::string& ppath,
              const std::string& bpath) {
  ParsedGgb p = ws.load_ggb(ppath);
  ParsedGgb b = ws.load_ggb(bpath);
  if (!p.bibundle) throw Error("UsageError", "apply expects a BIBUNDLE first");
  if (!b.bundle) throw Error("UsageError", "apply expects a BUNDLE second");
  PrincipalBundle r = apply_bibundle(p.bibundle->bib, b.bundle->bundle);
  std::string text = render_bundle(r, p.bibundle->right_ref);
  json data{{"carrier", r.action.n_carrier()}, {"base", r.n_base()}, {"ggb", text}};
  return finish(ctx, kExitTrue, data, text);
}

int cmd_biprincipal(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedGgb p = ws.load_ggb(path);
  if (!p.bibundle) throw Error("UsageError", "biprincipal expects a BIBUNDLE file");
  auto r = is_biprincipal(p.bibundle->bib);
  json data{{"biprincipal", r.biprincipal}, {"violations", violations_json(r.detail)}};
  std::ostringstream text;
  text << "biprincipal: " << (r.biprincipal ? "yes" : "no") << '\n';
  if (!r.biprincipal) text << r.detail.summary() << '\n';
  return finish(ctx, r.biprincipal ? kExitTrue : kExitFalse, data, text.str());
}

int cmd_gerbe(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedFunctor pf = load_extension_file(ws, path);
  GerbeCertificate cert = certify_gerbe(GroupoidExtension{pf.map}, Budget{ctx.budget});
  json data{{"transitive", cert.transitive},
            {"arrows_surjective", cert.arrows_surjective},
            {"fiber_product",
             {{"objects", cert.fiber_product.gpd.n_objects()},
              {"arrows", cert.fiber_product.gpd.n_arrows()}}}};
  std::ostringstream text;
  text << "gerbe certificate for " << path << '\n';
  text << "  fiber product: " << cert.fiber_product.gpd.n_objects() << " objects, "
       << cert.fiber_product.gpd.n_arrows() << " arrows\n";
  text << "  transitive: " << (cert.transitive ? "yes" : "no") << '\n';
  int exit_code = cert.transitive ? kExitTrue : kExitFalse;
  if (cert.transitive && cert.isotropy) {
    data["isotropy_order"] = cert.isotropy->n();
    data["basepoint_independent"] = cert.basepoint_independent;
    bool morita_ok = cert.morita_witness &&
                     cert.morita_witness->verdict == Verdict::True;
    if (cert.morita_witness && cert.morita_witness->verdict == Verdict::BudgetExceeded)
      exit_code = kExitBudget;
    data["morita_to_isotropy"] = morita_ok;
    text << "  isotropy order: " << cert.isotropy->n() << '\n';
    text << "  morita-equivalent to one-object isotropy: "
         << (morita_ok ? "yes" : "no") << '\n';
  } else {
    json blocks = json::array();
    for (const auto& block : cert.orbit_report) {
      json ids = json::array();
      for (int x : block) ids.push_back(cert.fiber_product.gpd.objects[x]);
      blocks.push_back(ids);
    }
    data["orbit_report"] = blocks;
    text << "  orbit blocks: " << cert.orbit_report.size() << '\n';
  }
  return finish(ctx, exit_code, data, text.str());
}

int cmd_roundtrip(Ctx& ctx, Workspace& ws, const std::string& path) {
  ParsedFunctor pf = load_extension_file(ws, path);
  RoundtripReport r = roundtrip_extension(GroupoidExtension{pf.map});
  json data{{"gauge_objects", r.gauge.n_objects()},
            {"gauge_arrows", r.gauge.n_arrows()},
            {"iso_valid", r.iso_valid},
            {"theta_matches", r.theta_matches},
            {"theta_extension_ok", r.theta_extension_report.ok()},
            {"ok", r.ok()}};
  std::ostringstream text;
  text << "roundtrip for " << path << '\n';
  text << "  gauge groupoid: " << r.gauge.n_objects() << " objects, "
       << r.gauge.n_arrows() << " arrows\n";
  text << "  isomorphism to codomain: " << (r.iso_valid ? "ok" : "MISSING") << '\n';
  text << "  theta transports to phi: " << (r.theta_matches ? "yes" : "NO") << '\n';
  text << "  theta is an extension: "
       << (r.theta_extension_report.ok() ? "yes" : "NO") << '\n';
  return finish(ctx, r.ok() ? kExitTrue : kExitFalse, data, text.str());
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Ctx ctx;
  ctx.out = &out;
  ctx.err = &err;
  if (const char* env = std::getenv("GGD_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) ctx.budget = v;
  }

  CLI::App app{"finite groupoid calculus"};
  app.require_subcommand(1);
  app.add_flag("--json", ctx.json_mode, "emit a structured JSON report");
  app.add_option("--budget", ctx.budget, "node budget for searches");

  std::string file1, file2, object;
  std::vector<std::string> entries;

  auto* check = app.add_subcommand("check", "validate a .ggd/.ggm/.ggx/.ggb file");
  check->add_option("file", file1)->required();
  auto* isotropy = app.add_subcommand("isotropy", "isotropy group at an object");
  isotropy->add_option("file", file1)->required();
  isotropy->add_option("object", object)->required();
  auto* orbits_cmd = app.add_subcommand("orbits", "orbit partition of a groupoid");
  orbits_cmd->add_option("file", file1)->required();
  auto* pullback = app.add_subcommand("pullback", "pullback groupoid along p=object");
  pullback->add_option("file", file1)->required();
  pullback->add_option("map", entries, "entries p=object")->required();
  auto* fprod = app.add_subcommand("fprod", "2-fiber product of two functors");
  fprod->add_option("left", file1)->required();
  fprod->add_option("right", file2)->required();
  auto* morita = app.add_subcommand("morita", "Morita equivalence of two groupoids");
  morita->add_option("a", file1)->required();
  morita->add_option("b", file2)->required();
  auto* mm = app.add_subcommand("morita-morphism", "is a functor a Morita morphism");
  mm->add_option("file", file1)->required();
  auto* extc = app.add_subcommand("extension-check", "validate an extension file");
  extc->add_option("file", file1)->required();
  auto* bunc = app.add_subcommand("bundle-check", "validate a bundle/bibundle file");
  bunc->add_option("file", file1)->required();
  auto* gauge = app.add_subcommand("gauge", "gauge groupoid of a principal bundle");
  gauge->add_option("file", file1)->required();
  auto* bib = app.add_subcommand("bibundle", "bibundle of a functor");
  bib->add_option("file", file1)->required();
  auto* compose = app.add_subcommand("compose", "compose two bibundles (p then q)");
  compose->add_option("p", file1)->required();
  compose->add_option("q", file2)->required();
  auto* apply = app.add_subcommand("apply", "apply a bibundle to a principal bundle");
  apply->add_option("p", file1)->required();
  apply->add_option("bundle", file2)->required();
  auto* bip = app.add_subcommand("biprincipal", "is a bibundle biprincipal");
  bip->add_option("file", file1)->required();
  auto* gerbe = app.add_subcommand("gerbe", "gerbe certificate of an extension");
  gerbe->add_option("file", file1)->required();
  auto* roundtrip = app.add_subcommand("roundtrip", "extension round trip via its bibundle");
  roundtrip->add_option("file", file1)->required();

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  std::vector<const char*> ptrs;
  ptrs.push_back("ggd");
  for (const auto& a : args) ptrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return kExitTrue;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitError;
  }

  Workspace ws;
  try {
    if (*check) {
      ctx.command = "check";
      return cmd_check(ctx, ws, file1);
    }
    if (*isotropy) {
      ctx.command = "isotropy";
      return cmd_isotropy(ctx, ws, file1, object);
    }
    if (*orbits_cmd) {
      ctx.command = "orbits";
      return cmd_orbits(ctx, ws, file1);
    }
    if (*pullback) {
      ctx.command = "pullback";
      return cmd_pullback(ctx, ws, file1, entries);
    }
    if (*fprod) {
      ctx.command = "fprod";
      return cmd_fprod(ctx, ws, file1, file2);
    }
    if (*morita) {
      ctx.command = "morita";
      return cmd_morita(ctx, ws, file1, file2);
    }
    if (*mm) {
      ctx.command = "morita-morphism";
      return cmd_morita_morphism(ctx, ws, file1);
    }
    if (*extc) {
      ctx.command = "extension-check";
      return cmd_extension_check(ctx, ws, file1);
    }
    if (*bunc) {
      ctx.command = "bundle-check";
      return cmd_bundle_check(ctx, ws, file1);
    }
    if (*gauge) {
      ctx.command = "gauge";
      return cmd_gauge(ctx, ws, file1);
    }
    if (*bib) {
      ctx.command = "bibundle";
      return cmd_bibundle(ctx, ws, file1);
    }
    if (*compose) {
      ctx.command = "compose";
      return cmd_compose(ctx, ws, file1, file2);
    }
    if (*apply) {
      ctx.command = "apply";
      return cmd_apply(ctx, ws, file1, file2);
    }
    if (*bip) {
      ctx.command = "biprincipal";
      return cmd_biprincipal(ctx, ws, file1);
    }
    if (*gerbe) {
      ctx.command = "gerbe";
      return cmd_gerbe(ctx, ws, file1);
    }
    if (*roundtrip) {
      ctx.command = "roundtrip";
      return cmd_roundtrip(ctx, ws, file1);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  err << "usage error: no subcommand\n";
  return kExitError;
}

}  // namespace ggd
