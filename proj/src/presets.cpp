#include "ggd/presets.hpp"

#include <array>

namespace ggd {

FinGroup cyclic_group(int n) {
  if (n <= 0) throw Error("Malformed", "cyclic_group needs n >= 1");
  FinGroup k;
  k.elements.push_back("e");
  for (int i = 1; i < n; ++i) k.elements.push_back("r" + std::to_string(i));
  k.identity = 0;
  k.mul.resize(static_cast<std::size_t>(n) * n);
  k.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    k.inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) k.mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return k;
}

FinGroup klein_four() {
  FinGroup k;
  k.elements = {"e", "a", "b", "ab"};
  k.identity = 0;
  k.inverse = {0, 1, 2, 3};
  // xor table
  k.mul.resize(16);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) k.mul[static_cast<std::size_t>(x) * 4 + y] = x ^ y;
  return k;
}

FinGroup symmetric3() {
  // permutations stored as images of (0, 1, 2)
  const std::array<std::array<int, 3>, 6> perms = {{
      {0, 1, 2},  // e
      {1, 2, 0},  // r1
      {2, 0, 1},  // r2
      {0, 2, 1},  // t0
      {2, 1, 0},  // t1
      {1, 0, 2},  // t2
  }};
  FinGroup k;
  k.elements = {"e", "r1", "r2", "t0", "t1", "t2"};
  k.identity = 0;
  k.mul.resize(36);
  k.inverse.assign(6, -1);
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw Error("Internal", "not a permutation of three points");
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // a after b
      int ci = index_of(c);
      k.mul[static_cast<std::size_t>(a) * 6 + b] = ci;
      if (ci == 0) k.inverse[a] = b;
    }
  return k;
}

FinGroupoid shift_action_groupoid(int n, int m) {
  if (m <= 0 || n <= 0 || n % m != 0)
    throw Error("Malformed", "shift action needs m dividing n");
  FinGroup k = cyclic_group(n);
  std::vector<std::string> xs;
  for (int i = 0; i < m; ++i) xs.push_back(std::to_string(i));
  std::vector<int> act(static_cast<std::size_t>(n) * m);
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < m; ++x) act[static_cast<std::size_t>(g) * m + x] = (x + g) % m;
  return action_groupoid(k, xs, act);
}

}  // namespace ggd
