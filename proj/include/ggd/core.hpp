#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ggd {

// Structural errors (malformed tables, bad references, misuse of an
// operation).  Axiom failures are reported through Report instead.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct Violation {
  std::string rule;    // e.g. "assoc", "missing-composite"
  std::string detail;  // witnesses, by id
};

struct Report {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view rule) const;
  void add(std::string rule, std::string detail);
  void merge(const Report& other, const std::string& prefix = "");
  std::string summary() const;
};

// A finite groupoid presented by dense tables.  Objects and arrows are
// opaque string ids; all maps are stored over insertion-order indices,
// so equal inputs produce bit-identical outputs.
//
// comp(g, f) is "g after f" and is defined exactly when tgt(f) == src(g).
struct FinGroupoid {
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<int> src;   // arrow -> object
  std::vector<int> tgt;   // arrow -> object
  std::vector<int> unit;  // object -> arrow
  std::vector<int> inv;   // arrow -> arrow
  std::vector<int> comp;  // arrows x arrows; -1 where undefined

  int n_objects() const { return static_cast<int>(objects.size()); }
  int n_arrows() const { return static_cast<int>(arrows.size()); }
  int comp_at(int g, int f) const {
    return comp[static_cast<std::size_t>(g) * arrows.size() + f];
  }
  bool composable(int g, int f) const { return tgt[f] == src[g]; }
  int object_index(std::string_view id) const;  // -1 if absent
  int arrow_index(std::string_view id) const;

  bool operator==(const FinGroupoid&) const = default;
};

struct FinGroup {
  std::vector<std::string> elements;
  std::vector<int> mul;  // elements x elements, mul_at(a, b) = "a after b"
  int identity = 0;
  std::vector<int> inverse;

  int n() const { return static_cast<int>(elements.size()); }
  int mul_at(int a, int b) const {
    return mul[static_cast<std::size_t>(a) * elements.size() + b];
  }
  int element_index(std::string_view id) const;

  bool operator==(const FinGroup&) const = default;
};

// Incremental assembly with structural checking (duplicate ids, index
// ranges, totality of unit/inv).  Axioms are checked separately by
// validate_groupoid.
class GroupoidBuilder {
 public:
  int add_object(std::string id);
  int add_arrow(std::string id, int src, int tgt);
  void set_unit(int object, int arrow);
  void set_inv(int arrow, int inverse);
  void set_comp(int g, int f, int h);  // comp(g, f) = h
  int n_objects() const { return static_cast<int>(g_.objects.size()); }
  int n_arrows() const { return static_cast<int>(g_.arrows.size()); }
  FinGroupoid build();

 private:
  FinGroupoid g_;
  std::vector<std::vector<int>> pending_comp_;  // (g, f, h)
  bool built_ = false;
};

// --- validation ---------------------------------------------------------

Report validate_groupoid(const FinGroupoid& g);
Report validate_group(const FinGroup& k);

// --- constructors -------------------------------------------------------

// Objects = arrows = M, every structure map the identity.
FinGroupoid unit_groupoid(const std::vector<std::string>& members);

// Action groupoid of a left action act[g * |xs| + x] of k on xs.
// Arrows are pairs "(g|x)" from x to act(g, x).  Throws NotAnAction if
// the table is not a left action.
FinGroupoid action_groupoid(const FinGroup& k, const std::vector<std::string>& xs,
                            const std::vector<int>& act);

// One-object groupoid carrying a group; the object is named "*".
FinGroupoid one_object_groupoid(const FinGroup& k);

// Same arrows with src/tgt swapped and composition reversed.
FinGroupoid opposite_groupoid(const FinGroupoid& g);

// --- structural queries -------------------------------------------------

// Loops at x under comp.  Throws UnknownObject if x is out of range.
FinGroup isotropy_group(const FinGroupoid& g, int x);

// Partition of object indices; x, y share a block iff an arrow joins them.
// Blocks are ordered by smallest member, members in index order.
std::vector<std::vector<int>> orbits(const FinGroupoid& g);

// True iff orbits(g) has at most one block (empty groupoid counts as
// transitive by convention).
bool is_transitive(const FinGroupoid& g);

// --- index helpers ------------------------------------------------------

std::vector<std::vector<int>> arrows_by_src(const FinGroupoid& g);
std::vector<std::vector<int>> arrows_by_tgt(const FinGroupoid& g);

// Canonical tuple id, e.g. tuple_id({"p", "x", "q"}) == "(p|x|q)".
std::string tuple_id(const std::vector<std::string>& parts);

}  // namespace ggd
