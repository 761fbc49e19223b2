#pragma once

#include "ggd/core.hpp"

namespace ggd {

// Small stock groups used across examples and tests.

// Z/n with elements e, r1, ..., r{n-1}.
FinGroup cyclic_group(int n);

// Z/2 x Z/2 with elements e, a, b, ab.
FinGroup klein_four();

// S3 as permutations of three points: e, r1, r2 (rotations) and
// t0, t1, t2 (transpositions); t_i fixes point i.
FinGroup symmetric3();

// Z/n acting on {x0, ..., x{m-1}} by k.x = x + k (mod m); m must divide n
// or the table is still a valid action as long as n is a multiple of the
// order of the shift, which holds whenever m divides n.
FinGroupoid shift_action_groupoid(int n, int m);

}  // namespace ggd
