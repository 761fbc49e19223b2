#pragma once

#include <optional>
#include <vector>

#include "ggd/core.hpp"

namespace ggd {

// Node budget for backtracking searches.  Exhausting the budget is a
// distinct outcome, never silently reported as "not isomorphic".
struct Budget {
  long long nodes = 1'000'000;
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct IsoWitness {
  std::vector<int> object_map;
  std::vector<int> arrow_map;
};

struct IsoResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<IsoWitness> witness;
  long long nodes = 0;

  bool found() const { return status == SearchStatus::Found; }
};

// Backtracking search for a pair of bijections commuting with all
// structure maps.  Degree profiles prune the object phase; hom-blocks,
// units, inverses and incremental composition checks prune the arrows.
IsoResult groupoid_isomorphic(const FinGroupoid& a, const FinGroupoid& b,
                              Budget budget = {});

// True iff the witness really is an isomorphism a -> b (used by tests
// and by callers that transport structure along the witness).
bool check_groupoid_witness(const FinGroupoid& a, const FinGroupoid& b,
                            const IsoWitness& w);

// Brute force over generator images, pruned by element order.
struct GroupIsoResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<std::vector<int>> map;
  long long nodes = 0;

  bool found() const { return status == SearchStatus::Found; }
};

GroupIsoResult group_isomorphic(const FinGroup& a, const FinGroup& b,
                                Budget budget = {});

int element_order(const FinGroup& k, int a);

}  // namespace ggd
