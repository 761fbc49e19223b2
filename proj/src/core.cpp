#include "ggd/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ggd {

bool Report::has(std::string_view rule) const {
  for (const auto& v : violations)
    if (v.rule == rule) return true;
  return false;
}

void Report::add(std::string rule, std::string detail) {
  violations.push_back({std::move(rule), std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& v : other.violations)
    violations.push_back({prefix + v.rule, v.detail});
}

std::string Report::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << '\n';
    os << violations[i].rule << ": " << violations[i].detail;
  }
  return os.str();
}

int FinGroupoid::object_index(std::string_view id) const {
  for (int i = 0; i < n_objects(); ++i)
    if (objects[i] == id) return i;
  return -1;
}

int FinGroupoid::arrow_index(std::string_view id) const {
  for (int i = 0; i < n_arrows(); ++i)
    if (arrows[i] == id) return i;
  return -1;
}

int FinGroup::element_index(std::string_view id) const {
  for (int i = 0; i < n(); ++i)
    if (elements[i] == id) return i;
  return -1;
}

// --- builder -------------------------------------------------------------

namespace {

void require_unique(const std::vector<std::string>& ids, const char* kind) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (id.empty()) throw Error("Malformed", std::string("empty ") + kind + " id");
    if (!seen.insert(id).second)
      throw Error("DuplicateId", std::string(kind) + " id '" + id + "' declared twice");
  }
}

}  // namespace

int GroupoidBuilder::add_object(std::string id) {
  g_.objects.push_back(std::move(id));
  g_.unit.push_back(-1);
  return static_cast<int>(g_.objects.size()) - 1;
}

int GroupoidBuilder::add_arrow(std::string id, int src, int tgt) {
  if (src < 0 || src >= n_objects() || tgt < 0 || tgt >= n_objects())
    throw Error("DanglingId", "arrow '" + id + "' references an unknown object");
  g_.arrows.push_back(std::move(id));
  g_.src.push_back(src);
  g_.tgt.push_back(tgt);
  g_.inv.push_back(-1);
  return static_cast<int>(g_.arrows.size()) - 1;
}

void GroupoidBuilder::set_unit(int object, int arrow) {
  if (object < 0 || object >= n_objects() || arrow < 0 || arrow >= n_arrows())
    throw Error("DanglingId", "unit entry references an unknown id");
  g_.unit[object] = arrow;
}

void GroupoidBuilder::set_inv(int arrow, int inverse) {
  if (arrow < 0 || arrow >= n_arrows() || inverse < 0 || inverse >= n_arrows())
    throw Error("DanglingId", "inv entry references an unknown id");
  g_.inv[arrow] = inverse;
}

void GroupoidBuilder::set_comp(int g, int f, int h) {
  if (g < 0 || g >= n_arrows() || f < 0 || f >= n_arrows() || h < 0 || h >= n_arrows())
    throw Error("DanglingId", "comp entry references an unknown id");
  pending_comp_.push_back({g, f, h});
}

FinGroupoid GroupoidBuilder::build() {
  if (built_) throw Error("Malformed", "builder reused after build()");
  built_ = true;
  require_unique(g_.objects, "object");
  require_unique(g_.arrows, "arrow");
  for (int x = 0; x < n_objects(); ++x)
    if (g_.unit[x] < 0)
      throw Error("Malformed", "no unit arrow for object '" + g_.objects[x] + "'");
  for (int a = 0; a < n_arrows(); ++a)
    if (g_.inv[a] < 0)
      throw Error("Malformed", "no inverse for arrow '" + g_.arrows[a] + "'");
  g_.comp.assign(static_cast<std::size_t>(n_arrows()) * n_arrows(), -1);
  for (const auto& e : pending_comp_) {
    int& slot = g_.comp[static_cast<std::size_t>(e[0]) * n_arrows() + e[1]];
    if (slot >= 0 && slot != e[2])
      throw Error("DuplicateId", "comp(" + g_.arrows[e[0]] + ", " + g_.arrows[e[1]] +
                                     ") assigned twice with different values");
    slot = e[2];
  }
  return std::move(g_);
}

// --- validation ----------------------------------------------------------

namespace {

constexpr int kMaxWitnessesPerRule = 12;

class RuleLog {
 public:
  explicit RuleLog(Report& r) : r_(r) {}
  void add(const std::string& rule, const std::string& detail) {
    int& n = counts_[rule];
    ++n;
    if (n <= kMaxWitnessesPerRule)
      r_.add(rule, detail);
    else if (n == kMaxWitnessesPerRule + 1)
      r_.add(rule, "(further witnesses suppressed)");
  }

 private:
  Report& r_;
  std::unordered_map<std::string, int> counts_;
};

}  // namespace

Report validate_groupoid(const FinGroupoid& g) {
  Report report;
  RuleLog log(report);
  const int A = g.n_arrows();

  for (int x = 0; x < g.n_objects(); ++x) {
    int u = g.unit[x];
    if (g.src[u] != x || g.tgt[u] != x)
      log.add("unit-endpoints", "unit(" + g.objects[x] + ") = " + g.arrows[u] +
                                    " is not a loop at " + g.objects[x]);
  }

  for (int a = 0; a < A; ++a) {
    int b = g.inv[a];
    if (g.src[b] != g.tgt[a] || g.tgt[b] != g.src[a])
      log.add("inv-endpoints", "inv(" + g.arrows[a] + ") = " + g.arrows[b] +
                                   " has mismatched endpoints");
    if (g.inv[b] != a)
      log.add("inv-involution", "inv(inv(" + g.arrows[a] + ")) = " + g.arrows[g.inv[b]]);
  }

  for (int x = 0; x < A; ++x) {
    for (int y = 0; y < A; ++y) {
      int c = g.comp_at(x, y);
      if (g.composable(x, y)) {
        if (c < 0) {
          log.add("missing-composite",
                  "comp(" + g.arrows[x] + ", " + g.arrows[y] + ") is undefined");
        } else if (g.src[c] != g.src[y] || g.tgt[c] != g.tgt[x]) {
          log.add("comp-endpoints", "comp(" + g.arrows[x] + ", " + g.arrows[y] + ") = " +
                                        g.arrows[c] + " has mismatched endpoints");
        }
      } else if (c >= 0) {
        log.add("comp-domain", "comp(" + g.arrows[x] + ", " + g.arrows[y] +
                                   ") defined on a non-composable pair");
      }
    }
  }

  for (int f = 0; f < A; ++f) {
    int ul = g.comp_at(g.unit[g.tgt[f]], f);
    if (ul >= 0 && ul != f)
      log.add("unit-law-left",
              "comp(unit(tgt), " + g.arrows[f] + ") = " + g.arrows[ul]);
    int ur = g.comp_at(f, g.unit[g.src[f]]);
    if (ur >= 0 && ur != f)
      log.add("unit-law-right",
              "comp(" + g.arrows[f] + ", unit(src)) = " + g.arrows[ur]);
  }

  for (int f = 0; f < A; ++f) {
    if (!g.composable(g.inv[f], f) || !g.composable(f, g.inv[f])) continue;
    int l = g.comp_at(g.inv[f], f);
    if (l >= 0 && l != g.unit[g.src[f]])
      log.add("inv-left", "comp(inv(" + g.arrows[f] + "), " + g.arrows[f] + ") = " +
                              g.arrows[l] + " != unit(src)");
    int r = g.comp_at(f, g.inv[f]);
    if (r >= 0 && r != g.unit[g.tgt[f]])
      log.add("inv-right", "comp(" + g.arrows[f] + ", inv(" + g.arrows[f] + ")) = " +
                               g.arrows[r] + " != unit(tgt)");
  }

  // Associativity over composable triples; skips pairs already reported
  // as missing so one defect does not cascade.
  const auto by_src = arrows_by_src(g);
  for (int f = 0; f < A; ++f) {
    for (int gg : by_src[g.tgt[f]]) {
      int gf = g.comp_at(gg, f);
      if (gf < 0) continue;
      for (int h : by_src[g.tgt[gg]]) {
        int hg = g.comp_at(h, gg);
        if (hg < 0) continue;
        int lhs = g.comp_at(h, gf);
        int rhs = g.comp_at(hg, f);
        if (lhs >= 0 && rhs >= 0 && lhs != rhs)
          log.add("assoc", "(" + g.arrows[h] + ", " + g.arrows[gg] + ", " + g.arrows[f] +
                               "): " + g.arrows[lhs] + " != " + g.arrows[rhs]);
      }
    }
  }

  return report;
}

Report validate_group(const FinGroup& k) {
  Report report;
  RuleLog log(report);
  const int n = k.n();
  if (n == 0) {
    report.add("empty", "a group must contain an identity element");
    return report;
  }
  for (int a = 0; a < n; ++a) {
    if (k.mul_at(k.identity, a) != a || k.mul_at(a, k.identity) != a)
      log.add("identity", k.elements[a]);
    if (k.mul_at(k.inverse[a], a) != k.identity || k.mul_at(a, k.inverse[a]) != k.identity)
      log.add("inverse", k.elements[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (k.mul_at(a, k.mul_at(b, c)) != k.mul_at(k.mul_at(a, b), c))
          log.add("assoc", "(" + k.elements[a] + ", " + k.elements[b] + ", " +
                               k.elements[c] + ")");
  return report;
}

// --- constructors ----------------------------------------------------------

FinGroupoid unit_groupoid(const std::vector<std::string>& members) {
  GroupoidBuilder b;
  for (const auto& m : members) b.add_object(m);
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    b.add_arrow(members[i], i, i);
    b.set_unit(i, i);
    b.set_inv(i, i);
    b.set_comp(i, i, i);
  }
  return b.build();
}

FinGroupoid action_groupoid(const FinGroup& k, const std::vector<std::string>& xs,
                            const std::vector<int>& act) {
  const int n = k.n();
  const int m = static_cast<int>(xs.size());
  if (static_cast<int>(act.size()) != n * m)
    throw Error("Malformed", "action table has the wrong size");
  auto at = [&](int g, int x) { return act[static_cast<std::size_t>(g) * m + x]; };
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < m; ++x)
      if (at(g, x) < 0 || at(g, x) >= m)
        throw Error("Malformed", "action value out of range");
  for (int x = 0; x < m; ++x)
    if (at(k.identity, x) != x)
      throw Error("NotAnAction", "act(id, " + xs[x] + ") != " + xs[x]);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < m; ++x)
        if (at(k.mul_at(g, h), x) != at(g, at(h, x)))
          throw Error("NotAnAction", "act(" + k.elements[g] + "*" + k.elements[h] + ", " +
                                         xs[x] + ") != act(" + k.elements[g] + ", act(" +
                                         k.elements[h] + ", " + xs[x] + "))");

  GroupoidBuilder b;
  for (const auto& x : xs) b.add_object(x);
  // Arrow (g|x): x -> g.x
  std::vector<std::vector<int>> idx(n, std::vector<int>(m));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < m; ++x)
      idx[g][x] = b.add_arrow(tuple_id({k.elements[g], xs[x]}), x, at(g, x));
  for (int x = 0; x < m; ++x) b.set_unit(x, idx[k.identity][x]);
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < m; ++x)
      b.set_inv(idx[g][x], idx[k.inverse[g]][at(g, x)]);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < m; ++x)
        b.set_comp(idx[g][at(h, x)], idx[h][x], idx[k.mul_at(g, h)][x]);
  return b.build();
}

FinGroupoid one_object_groupoid(const FinGroup& k) {
  GroupoidBuilder b;
  b.add_object("pt");
  for (int i = 0; i < k.n(); ++i) b.add_arrow(k.elements[i], 0, 0);
  b.set_unit(0, k.identity);
  for (int i = 0; i < k.n(); ++i) b.set_inv(i, k.inverse[i]);
  for (int a = 0; a < k.n(); ++a)
    for (int bb = 0; bb < k.n(); ++bb) b.set_comp(a, bb, k.mul_at(a, bb));
  return b.build();
}

FinGroupoid opposite_groupoid(const FinGroupoid& g) {
  FinGroupoid op = g;
  op.src = g.tgt;
  op.tgt = g.src;
  const int A = g.n_arrows();
  for (int a = 0; a < A; ++a)
    for (int b = 0; b < A; ++b)
      op.comp[static_cast<std::size_t>(a) * A + b] = g.comp_at(b, a);
  return op;
}

// --- structural queries ------------------------------------------------------

FinGroup isotropy_group(const FinGroupoid& g, int x) {
  if (x < 0 || x >= g.n_objects())
    throw Error("UnknownObject", "object index out of range");
  FinGroup k;
  std::vector<int> loop_of(g.n_arrows(), -1);
  std::vector<int> members;
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.src[a] == x && g.tgt[a] == x) {
      loop_of[a] = static_cast<int>(members.size());
      members.push_back(a);
      k.elements.push_back(g.arrows[a]);
      if (a == g.unit[x]) k.identity = loop_of[a];
    }
  }
  const int n = k.n();
  k.inverse.assign(n, -1);
  k.mul.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a : members) {
    k.inverse[loop_of[a]] = loop_of[g.inv[a]];
    for (int b : members) {
      int c = g.comp_at(a, b);
      k.mul[static_cast<std::size_t>(loop_of[a]) * n + loop_of[b]] =
          (c >= 0) ? loop_of[c] : -1;
    }
  }
  for (int v : k.inverse)
    if (v < 0) throw Error("Malformed", "isotropy at " + g.objects[x] + " is not closed under inv");
  for (int v : k.mul)
    if (v < 0) throw Error("Malformed", "isotropy at " + g.objects[x] + " is not closed");
  return k;
}

std::vector<std::vector<int>> orbits(const FinGroupoid& g) {
  std::vector<int> parent(g.n_objects());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int a = 0; a < g.n_arrows(); ++a) {
    int u = find(g.src[a]), v = find(g.tgt[a]);
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(g.n_objects(), -1);
  for (int x = 0; x < g.n_objects(); ++x) {
    int r = find(x);
    if (block_of[r] < 0) {
      block_of[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(x);
  }
  return blocks;
}

bool is_transitive(const FinGroupoid& g) { return orbits(g).size() <= 1; }

// --- helpers ------------------------------------------------------------------

std::vector<std::vector<int>> arrows_by_src(const FinGroupoid& g) {
  std::vector<std::vector<int>> out(g.n_objects());
  for (int a = 0; a < g.n_arrows(); ++a) out[g.src[a]].push_back(a);
  return out;
}

std::vector<std::vector<int>> arrows_by_tgt(const FinGroupoid& g) {
  std::vector<std::vector<int>> out(g.n_objects());
  for (int a = 0; a < g.n_arrows(); ++a) out[g.tgt[a]].push_back(a);
  return out;
}

std::string tuple_id(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '|';
    out += parts[i];
  }
  out += ')';
  return out;
}

}  // namespace ggd
