#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ggd/bibundle.hpp"
#include "ggd/bundle.hpp"
#include "ggd/core.hpp"
#include "ggd/functor.hpp"

namespace ggd {

// Line-oriented text formats.  Ids match [A-Za-z0-9_|()-]+, '#' starts a
// comment, sections appear in a fixed order with entries on the keyword
// line or on continuation lines.  Renderers emit the canonical form:
// one section per line, entries separated by single spaces.

bool is_valid_id(std::string_view s);

// GGD: OBJECTS / ARROWS (id:src->tgt) / UNITS (obj=arrow) / INV (f=g) /
// COMP (g.f=h, functional order).
FinGroupoid parse_groupoid(const std::string& text);
std::string render_groupoid(const FinGroupoid& g);

// Loads a referenced groupoid file, path relative to the referencing file.
using GroupoidResolver = std::function<FinGroupoid(const std::string& ref)>;

// GGM: DOM / COD (file refs) + OBJMAP / ARRMAP.  GGX is a GGM with an
// EXTENSION marker line on top.
struct ParsedFunctor {
  GroupoidMap map;
  std::string dom_ref;
  std::string cod_ref;
  bool extension = false;
};

ParsedFunctor parse_functor(const std::string& text, const GroupoidResolver& resolve);
std::string render_functor(const GroupoidMap& m, const std::string& dom_ref,
                           const std::string& cod_ref, bool extension);

// GGB, two kinds marked by the first line:
//   BUNDLE:   GRP ref / BASE / CARRIER / ANCHORS (p:base->obj) / ACTION (p.h=q)
//   BIBUNDLE: LEFT ref / RIGHT ref / CARRIER / ANCHORS (p:lobj->robj)
//             / LACT (g.p=q) / RACT (p.h=q)
struct ParsedBundle {
  PrincipalBundle bundle;
  std::string grp_ref;
};

struct ParsedBibundle {
  Bibundle bib;
  std::string left_ref;
  std::string right_ref;
};

struct ParsedGgb {
  std::optional<ParsedBundle> bundle;
  std::optional<ParsedBibundle> bibundle;
};

ParsedGgb parse_ggb(const std::string& text, const GroupoidResolver& resolve);
std::string render_bundle(const PrincipalBundle& b, const std::string& grp_ref);
std::string render_bibundle(const Bibundle& b, const std::string& left_ref,
                            const std::string& right_ref);

// Loads and caches files; refs resolve relative to the referencing
// file's directory, names stay unique through path normalisation.
class Workspace {
 public:
  FinGroupoid load_groupoid(const std::string& path);
  ParsedFunctor load_functor(const std::string& path);
  ParsedGgb load_ggb(const std::string& path);
  static std::string read_file(const std::string& path);

 private:
  std::map<std::string, FinGroupoid> groupoids_;
};

}  // namespace ggd
