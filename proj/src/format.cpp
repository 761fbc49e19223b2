#include "ggd/format.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace ggd {

bool is_valid_id(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '|' || c == '(' ||
              c == ')' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error("ParseError", "line " + std::to_string(line) + ": " + msg);
}

struct Token {
  int line;
  std::string text;
};

struct Section {
  std::string keyword;
  int line;
  std::vector<Token> entries;
};

// Splits into sections: a line whose first token is one of the expected
// keywords starts a section; other lines continue the current one.
std::vector<Section> sectionize(const std::string& text,
                                const std::vector<std::string>& keywords) {
  std::vector<Section> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tok;
    bool first = true;
    while (ls >> tok) {
      bool is_keyword =
          std::find(keywords.begin(), keywords.end(), tok) != keywords.end();
      if (first && is_keyword) {
        out.push_back({tok, line, {}});
      } else {
        if (out.empty()) fail(line, "content before the first section keyword");
        out.back().entries.push_back({line, tok});
      }
      first = false;
    }
  }
  return out;
}

void require_order(const std::vector<Section>& sections,
                   const std::vector<std::string>& expected, int text_end_line) {
  if (sections.size() != expected.size())
    fail(sections.empty() ? text_end_line : sections.back().line,
         "expected sections: " + [&] {
           std::string s;
           for (const auto& k : expected) s += (s.empty() ? "" : " ") + k;
           return s;
         }());
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (sections[i].keyword != expected[i])
      fail(sections[i].line, "expected section " + expected[i] + ", found " +
                                 sections[i].keyword);
}

std::string checked_id(const Token& t) {
  if (!is_valid_id(t.text)) fail(t.line, "invalid id '" + t.text + "'");
  return t.text;
}

// "id:src->tgt"
std::array<std::string, 3> split_arrow_decl(const Token& t) {
  auto colon = t.text.find(':');
  if (colon == std::string::npos) fail(t.line, "expected id:src->tgt in '" + t.text + "'");
  auto rest = t.text.substr(colon + 1);
  auto arrow = rest.find("->");
  if (arrow == std::string::npos) fail(t.line, "expected id:src->tgt in '" + t.text + "'");
  return {t.text.substr(0, colon), rest.substr(0, arrow), rest.substr(arrow + 2)};
}

// "lhs=rhs"
std::array<std::string, 2> split_eq(const Token& t) {
  auto eq = t.text.find('=');
  if (eq == std::string::npos) fail(t.line, "expected lhs=rhs in '" + t.text + "'");
  return {t.text.substr(0, eq), t.text.substr(eq + 1)};
}

// "a.b=c"
std::array<std::string, 3> split_dot_eq(const Token& t) {
  auto [lhs, rhs] = [&] {
    auto parts = split_eq(t);
    return std::pair{parts[0], parts[1]};
  }();
  auto dot = lhs.find('.');
  if (dot == std::string::npos) fail(t.line, "expected a.b=c in '" + t.text + "'");
  return {lhs.substr(0, dot), lhs.substr(dot + 1), rhs};
}

}  // namespace

// --- GGD -------------------------------------------------------------------

FinGroupoid parse_groupoid(const std::string& text) {
  const std::vector<std::string> keywords{"OBJECTS", "ARROWS", "UNITS", "INV", "COMP"};
  auto sections = sectionize(text, keywords);
  require_order(sections, keywords, 1);

  GroupoidBuilder b;
  std::unordered_map<std::string, int> obj, arr;
  for (const auto& t : sections[0].entries) {
    auto id = checked_id(t);
    if (obj.count(id)) throw Error("DuplicateId", "line " + std::to_string(t.line) +
                                                      ": object '" + id + "'");
    obj[id] = b.add_object(id);
  }
  for (const auto& t : sections[1].entries) {
    auto [id, s, tt] = split_arrow_decl(t);
    if (!is_valid_id(id) || !is_valid_id(s) || !is_valid_id(tt))
      fail(t.line, "invalid id in '" + t.text + "'");
    if (arr.count(id)) throw Error("DuplicateId", "line " + std::to_string(t.line) +
                                                      ": arrow '" + id + "'");
    if (!obj.count(s))
      throw Error("DanglingId", "line " + std::to_string(t.line) + ": object '" + s + "'");
    if (!obj.count(tt))
      throw Error("DanglingId", "line " + std::to_string(t.line) + ": object '" + tt + "'");
    arr[id] = b.add_arrow(id, obj.at(s), obj.at(tt));
  }
  auto need_obj = [&](const std::string& id, int line) {
    auto it = obj.find(id);
    if (it == obj.end())
      throw Error("DanglingId", "line " + std::to_string(line) + ": object '" + id + "'");
    return it->second;
  };
  auto need_arr = [&](const std::string& id, int line) {
    auto it = arr.find(id);
    if (it == arr.end())
      throw Error("DanglingId", "line " + std::to_string(line) + ": arrow '" + id + "'");
    return it->second;
  };
  std::vector<char> unit_seen(obj.size(), 0);
  for (const auto& t : sections[2].entries) {
    auto [o, a] = [&] {
      auto p = split_eq(t);
      return std::pair{p[0], p[1]};
    }();
    int oi = need_obj(o, t.line);
    if (unit_seen[oi]) fail(t.line, "duplicate unit for '" + o + "'");
    unit_seen[oi] = 1;
    b.set_unit(oi, need_arr(a, t.line));
  }
  std::vector<char> inv_seen(arr.size(), 0);
  for (const auto& t : sections[3].entries) {
    auto [f, g] = [&] {
      auto p = split_eq(t);
      return std::pair{p[0], p[1]};
    }();
    int fi = need_arr(f, t.line);
    if (inv_seen[fi]) fail(t.line, "duplicate inverse for '" + f + "'");
    inv_seen[fi] = 1;
    b.set_inv(fi, need_arr(g, t.line));
  }
  for (const auto& [id, i] : obj)
    if (!unit_seen[i]) fail(sections[2].line, "no unit for object '" + id + "'");
  for (const auto& [id, i] : arr)
    if (!inv_seen[i]) fail(sections[3].line, "no inverse for arrow '" + id + "'");
  for (const auto& t : sections[4].entries) {
    auto [g, f, h] = split_dot_eq(t);
    b.set_comp(need_arr(g, t.line), need_arr(f, t.line), need_arr(h, t.line));
  }
  return b.build();
}

std::string render_groupoid(const FinGroupoid& g) {
  std::ostringstream os;
  os << "OBJECTS";
  for (const auto& o : g.objects) os << ' ' << o;
  os << "\nARROWS";
  for (int a = 0; a < g.n_arrows(); ++a)
    os << ' ' << g.arrows[a] << ':' << g.objects[g.src[a]] << "->"
       << g.objects[g.tgt[a]];
  os << "\nUNITS";
  for (int x = 0; x < g.n_objects(); ++x)
    os << ' ' << g.objects[x] << '=' << g.arrows[g.unit[x]];
  os << "\nINV";
  for (int a = 0; a < g.n_arrows(); ++a)
    os << ' ' << g.arrows[a] << '=' << g.arrows[g.inv[a]];
  os << "\nCOMP";
  for (int x = 0; x < g.n_arrows(); ++x)
    for (int y = 0; y < g.n_arrows(); ++y)
      if (g.comp_at(x, y) >= 0)
        os << ' ' << g.arrows[x] << '.' << g.arrows[y] << '='
           << g.arrows[g.comp_at(x, y)];
  os << '\n';
  return os.str();
}

// --- GGM / GGX ----------------------------------------------------------------

namespace {

// Splits off a one-token header line (first non-blank, comment-stripped
// line).  Returns the header token and the remaining text; a first line
// with several tokens is not a header and leaves the text untouched.
std::pair<std::string, std::string> take_header(const std::string& text, int& header_line) {
  std::size_t pos = 0;
  int line = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::size_t next = (eol == std::string::npos) ? text.size() : eol + 1;
    ++line;
    std::string raw = text.substr(pos, (eol == std::string::npos ? text.size() : eol) - pos);
    std::string stripped = raw.substr(0, raw.find('#'));
    std::istringstream ls(stripped);
    std::string tok, extra;
    if (ls >> tok) {
      header_line = line;
      if (ls >> extra) return {"", text};
      return {tok, text.substr(next)};
    }
    pos = next;
  }
  header_line = line;
  return {"", text};
}

}  // namespace

ParsedFunctor parse_functor(const std::string& text, const GroupoidResolver& resolve) {
  ParsedFunctor out;
  std::string body = text;
  {
    int header_line = 1;
    auto [tok, rest] = take_header(text, header_line);
    if (tok == "EXTENSION") {
      out.extension = true;
      body = rest;
    }
  }
  const std::vector<std::string> keywords{"DOM", "COD", "OBJMAP", "ARRMAP"};
  auto sections = sectionize(body, keywords);
  require_order(sections, keywords, 1);
  if (sections[0].entries.size() != 1) fail(sections[0].line, "DOM takes one file ref");
  if (sections[1].entries.size() != 1) fail(sections[1].line, "COD takes one file ref");
  out.dom_ref = sections[0].entries[0].text;
  out.cod_ref = sections[1].entries[0].text;
  out.map.dom = resolve(out.dom_ref);
  out.map.cod = resolve(out.cod_ref);

  out.map.f0.assign(out.map.dom.n_objects(), -1);
  out.map.f1.assign(out.map.dom.n_arrows(), -1);
  for (const auto& t : sections[2].entries) {
    auto p = split_eq(t);
    int from = out.map.dom.object_index(p[0]);
    int to = out.map.cod.object_index(p[1]);
    if (from < 0)
      throw Error("DanglingId", "line " + std::to_string(t.line) + ": object '" + p[0] + "'");
    if (to < 0)
      throw Error("DanglingId", "line " + std::to_string(t.line) + ": object '" + p[1] + "'");
    if (out.map.f0[from] >= 0) fail(t.line, "duplicate OBJMAP entry for '" + p[0] + "'");
    out.map.f0[from] = to;
  }
  for (const auto& t : sections[3].entries) {
    auto p = split_eq(t);
    int from = out.map.dom.arrow_index(p[0]);
    int to = out.map.cod.arrow_index(p[1]);
    if (from < 0)
      throw Error("DanglingId", "line " + std::to_string(t.line) + ": arrow '" + p[0] + "'");
    if (to < 0)
      throw Error("DanglingId", "line " + std::to_string(t.line) + ": arrow '" + p[1] + "'");
    if (out.map.f1[from] >= 0) fail(t.line, "duplicate ARRMAP entry for '" + p[0] + "'");
    out.map.f1[from] = to;
  }
  for (int x = 0; x < out.map.dom.n_objects(); ++x)
    if (out.map.f0[x] < 0)
      fail(sections[2].line, "OBJMAP misses object '" + out.map.dom.objects[x] + "'");
  for (int a = 0; a < out.map.dom.n_arrows(); ++a)
    if (out.map.f1[a] < 0)
      fail(sections[3].line, "ARRMAP misses arrow '" + out.map.dom.arrows[a] + "'");
  return out;
}

std::string render_functor(const GroupoidMap& m, const std::string& dom_ref,
                           const std::string& cod_ref, bool extension) {
  std::ostringstream os;
  if (extension) os << "EXTENSION\n";
  os << "DOM " << dom_ref << "\nCOD " << cod_ref << "\nOBJMAP";
  for (int x = 0; x < m.dom.n_objects(); ++x)
    os << ' ' << m.dom.objects[x] << '=' << m.cod.objects[m.f0[x]];
  os << "\nARRMAP";
  for (int a = 0; a < m.dom.n_arrows(); ++a)
    os << ' ' << m.dom.arrows[a] << '=' << m.cod.arrows[m.f1[a]];
  os << '\n';
  return os.str();
}

// --- GGB --------------------------------------------------------------------------

ParsedGgb parse_ggb(const std::string& text, const GroupoidResolver& resolve) {
  ParsedGgb out;
  int line = 1;
  auto [kind, body] = take_header(text, line);

  if (kind == "BUNDLE") {
    const std::vector<std::string> keywords{"GRP", "BASE", "CARRIER", "ANCHORS", "ACTION"};
    auto sections = sectionize(body, keywords);
    require_order(sections, keywords, line);
    if (sections[0].entries.size() != 1) fail(sections[0].line, "GRP takes one file ref");
    ParsedBundle pb;
    pb.grp_ref = sections[0].entries[0].text;
    pb.bundle.action.grp = resolve(pb.grp_ref);
    std::unordered_map<std::string, int> base, carrier;
    for (const auto& t : sections[1].entries) {
      auto id = checked_id(t);
      if (base.count(id)) throw Error("DuplicateId", "base '" + id + "'");
      base[id] = static_cast<int>(pb.bundle.base.size());
      pb.bundle.base.push_back(id);
    }
    for (const auto& t : sections[2].entries) {
      auto id = checked_id(t);
      if (carrier.count(id)) throw Error("DuplicateId", "carrier '" + id + "'");
      carrier[id] = static_cast<int>(pb.bundle.action.carrier.size());
      pb.bundle.action.carrier.push_back(id);
    }
    const int P = static_cast<int>(pb.bundle.action.carrier.size());
    const int A = pb.bundle.action.grp.n_arrows();
    pb.bundle.proj.assign(P, -1);
    pb.bundle.action.anchor.assign(P, -1);
    for (const auto& t : sections[3].entries) {
      auto [p, bse, anc] = split_arrow_decl(t);
      auto it = carrier.find(p);
      if (it == carrier.end()) throw Error("DanglingId", "carrier '" + p + "'");
      auto bIt = base.find(bse);
      if (bIt == base.end()) throw Error("DanglingId", "base '" + bse + "'");
      int obj = pb.bundle.action.grp.object_index(anc);
      if (obj < 0) throw Error("DanglingId", "object '" + anc + "'");
      pb.bundle.proj[it->second] = bIt->second;
      pb.bundle.action.anchor[it->second] = obj;
    }
    for (int p = 0; p < P; ++p)
      if (pb.bundle.proj[p] < 0)
        fail(sections[3].line, "ANCHORS misses '" + pb.bundle.action.carrier[p] + "'");
    pb.bundle.action.act.assign(static_cast<std::size_t>(P) * A, -1);
    for (const auto& t : sections[4].entries) {
      auto [p, h, q] = split_dot_eq(t);
      auto pi = carrier.find(p);
      auto qi = carrier.find(q);
      if (pi == carrier.end()) throw Error("DanglingId", "carrier '" + p + "'");
      if (qi == carrier.end()) throw Error("DanglingId", "carrier '" + q + "'");
      int hi = pb.bundle.action.grp.arrow_index(h);
      if (hi < 0) throw Error("DanglingId", "arrow '" + h + "'");
      pb.bundle.action.act[static_cast<std::size_t>(pi->second) * A + hi] = qi->second;
    }
    out.bundle = std::move(pb);
    return out;
  }

  if (kind == "BIBUNDLE") {
    const std::vector<std::string> keywords{"LEFT",    "RIGHT", "CARRIER",
                                            "ANCHORS", "LACT",  "RACT"};
    auto sections = sectionize(body, keywords);
    require_order(sections, keywords, line);
    if (sections[0].entries.size() != 1) fail(sections[0].line, "LEFT takes one file ref");
    if (sections[1].entries.size() != 1) fail(sections[1].line, "RIGHT takes one file ref");
    ParsedBibundle pb;
    pb.left_ref = sections[0].entries[0].text;
    pb.right_ref = sections[1].entries[0].text;
    pb.bib.left = resolve(pb.left_ref);
    pb.bib.right = resolve(pb.right_ref);
    std::unordered_map<std::string, int> carrier;
    for (const auto& t : sections[2].entries) {
      auto id = checked_id(t);
      if (carrier.count(id)) throw Error("DuplicateId", "carrier '" + id + "'");
      carrier[id] = static_cast<int>(pb.bib.carrier.size());
      pb.bib.carrier.push_back(id);
    }
    const int P = static_cast<int>(pb.bib.carrier.size());
    pb.bib.lanchor.assign(P, -1);
    pb.bib.ranchor.assign(P, -1);
    for (const auto& t : sections[3].entries) {
      auto [p, l, r] = split_arrow_decl(t);
      auto it = carrier.find(p);
      if (it == carrier.end()) throw Error("DanglingId", "carrier '" + p + "'");
      int li = pb.bib.left.object_index(l);
      int ri = pb.bib.right.object_index(r);
      if (li < 0) throw Error("DanglingId", "object '" + l + "'");
      if (ri < 0) throw Error("DanglingId", "object '" + r + "'");
      pb.bib.lanchor[it->second] = li;
      pb.bib.ranchor[it->second] = ri;
    }
    for (int p = 0; p < P; ++p)
      if (pb.bib.lanchor[p] < 0)
        fail(sections[3].line, "ANCHORS misses '" + pb.bib.carrier[p] + "'");
    pb.bib.lact.assign(static_cast<std::size_t>(pb.bib.left.n_arrows()) * P, -1);
    pb.bib.ract.assign(static_cast<std::size_t>(P) * pb.bib.right.n_arrows(), -1);
    for (const auto& t : sections[4].entries) {
      auto [g, p, q] = split_dot_eq(t);
      int gi = pb.bib.left.arrow_index(g);
      auto pi = carrier.find(p);
      auto qi = carrier.find(q);
      if (gi < 0) throw Error("DanglingId", "arrow '" + g + "'");
      if (pi == carrier.end()) throw Error("DanglingId", "carrier '" + p + "'");
      if (qi == carrier.end()) throw Error("DanglingId", "carrier '" + q + "'");
      pb.bib.lact[static_cast<std::size_t>(gi) * P + pi->second] = qi->second;
    }
    for (const auto& t : sections[5].entries) {
      auto [p, h, q] = split_dot_eq(t);
      auto pi = carrier.find(p);
      auto qi = carrier.find(q);
      int hi = pb.bib.right.arrow_index(h);
      if (pi == carrier.end()) throw Error("DanglingId", "carrier '" + p + "'");
      if (qi == carrier.end()) throw Error("DanglingId", "carrier '" + q + "'");
      if (hi < 0) throw Error("DanglingId", "arrow '" + h + "'");
      pb.bib.ract[static_cast<std::size_t>(pi->second) * pb.bib.right.n_arrows() + hi] =
          qi->second;
    }
    out.bibundle = std::move(pb);
    return out;
  }

  fail(line == 0 ? 1 : line, "expected BUNDLE or BIBUNDLE header");
}

std::string render_bundle(const PrincipalBundle& b, const std::string& grp_ref) {
  std::ostringstream os;
  os << "BUNDLE\nGRP " << grp_ref << "\nBASE";
  for (const auto& x : b.base) os << ' ' << x;
  os << "\nCARRIER";
  for (const auto& p : b.action.carrier) os << ' ' << p;
  os << "\nANCHORS";
  for (int p = 0; p < b.action.n_carrier(); ++p)
    os << ' ' << b.action.carrier[p] << ':' << b.base[b.proj[p]] << "->"
       << b.action.grp.objects[b.action.anchor[p]];
  os << "\nACTION";
  for (int p = 0; p < b.action.n_carrier(); ++p)
    for (int h = 0; h < b.action.grp.n_arrows(); ++h)
      if (b.action.act_at(p, h) >= 0)
        os << ' ' << b.action.carrier[p] << '.' << b.action.grp.arrows[h] << '='
           << b.action.carrier[b.action.act_at(p, h)];
  os << '\n';
  return os.str();
}

std::string render_bibundle(const Bibundle& b, const std::string& left_ref,
                            const std::string& right_ref) {
  std::ostringstream os;
  os << "BIBUNDLE\nLEFT " << left_ref << "\nRIGHT " << right_ref << "\nCARRIER";
  for (const auto& p : b.carrier) os << ' ' << p;
  os << "\nANCHORS";
  for (int p = 0; p < b.n_carrier(); ++p)
    os << ' ' << b.carrier[p] << ':' << b.left.objects[b.lanchor[p]] << "->"
       << b.right.objects[b.ranchor[p]];
  os << "\nLACT";
  for (int g = 0; g < b.left.n_arrows(); ++g)
    for (int p = 0; p < b.n_carrier(); ++p)
      if (b.lact_at(g, p) >= 0)
        os << ' ' << b.left.arrows[g] << '.' << b.carrier[p] << '='
           << b.carrier[b.lact_at(g, p)];
  os << "\nRACT";
  for (int p = 0; p < b.n_carrier(); ++p)
    for (int h = 0; h < b.right.n_arrows(); ++h)
      if (b.ract_at(p, h) >= 0)
        os << ' ' << b.carrier[p] << '.' << b.right.arrows[h] << '='
           << b.carrier[b.ract_at(p, h)];
  os << '\n';
  return os.str();
}

// --- workspace -----------------------------------------------------------------------

std::string Workspace::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ParseError", "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::string normalize(const std::string& path) {
  return std::filesystem::path(path).lexically_normal().string();
}

GroupoidResolver resolver_for(Workspace& ws, const std::string& referencing_file) {
  auto dir = std::filesystem::path(referencing_file).parent_path();
  return [&ws, dir](const std::string& ref) {
    return ws.load_groupoid((dir / ref).string());
  };
}

}  // namespace

FinGroupoid Workspace::load_groupoid(const std::string& path) {
  auto key = normalize(path);
  auto it = groupoids_.find(key);
  if (it != groupoids_.end()) return it->second;
  FinGroupoid g = parse_groupoid(read_file(key));
  groupoids_.emplace(key, g);
  return g;
}

ParsedFunctor Workspace::load_functor(const std::string& path) {
  auto key = normalize(path);
  return parse_functor(read_file(key), resolver_for(*this, key));
}

ParsedGgb Workspace::load_ggb(const std::string& path) {
  auto key = normalize(path);
  return parse_ggb(read_file(key), resolver_for(*this, key));
}

}  // namespace ggd
