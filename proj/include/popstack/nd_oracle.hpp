#pragma once

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/machines.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

namespace detail {

// Configurations are (input position, stack contents, output length). Output
// moves that would break the increasing output prefix are pruned -- once the
// output deviates from 1,2,3,... no continuation can sort -- so the output is
// represented by its length alone.
struct NdConfig {
  int i = 0;
  int done = 0;
  std::vector<int> s1, s2;  // back = top
};

// Exact (collision-free) config identity: nibble-packed into 128 bits.
// i, done, lengths and values all fit in a nibble for n <= 15.
inline unsigned __int128 nd_key(const NdConfig& c, bool two) {
  unsigned __int128 k = (static_cast<unsigned>(c.i) << 4) | static_cast<unsigned>(c.done);
  auto mix = [&](const std::vector<int>& s) {
    k = (k << 4) | static_cast<unsigned>(s.size());
    for (int x : s) k = (k << 4) | static_cast<unsigned>(x);
  };
  if (!two) {
    mix(c.s1);
  } else {
    // the two stacks are interchangeable; canonical order halves the search
    if (c.s2 < c.s1) {
      mix(c.s2);
      mix(c.s1);
    } else {
      mix(c.s1);
      mix(c.s2);
    }
  }
  return k;
}

struct NdKeyHash {
  std::size_t operator()(unsigned __int128 k) const {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(k) ^
                                      static_cast<std::uint64_t>(k >> 64) * 0x9e3779b97f4a7c15ull);
  }
};

// A stack may be popped only if, read top to bottom, it continues the output
// exactly: done+1, done+2, ...
inline bool poppable(const std::vector<int>& s, int done) {
  if (s.empty()) return false;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[s.size() - 1 - j] != done + 1 + static_cast<int>(j)) return false;
  return true;
}

}  // namespace detail

// Breadth-first search over every legal operation order of the given machine.
// Answers: could ANY strategy sort p? Supported for the pop stack with bypass
// and the two-stack variant.
inline bool nd_sortable(MachineKind kind, const Permutation& p) {
  if (kind != MachineKind::Psb && kind != MachineKind::ParallelPsb)
    throw invalid_input("nd_sortable supports psb and parallel_psb only");
  const bool two = kind == MachineKind::ParallelPsb;
  const int n = p.size();
  if (n > 15) throw resource_limit("nd_sortable supports n <= 15");

  std::deque<detail::NdConfig> queue;
  std::unordered_set<unsigned __int128, detail::NdKeyHash> seen;
  auto visit = [&](detail::NdConfig c) {
    unsigned __int128 k = detail::nd_key(c, two);
    if (seen.insert(k).second) queue.push_back(std::move(c));
  };
  visit({});

  while (!queue.empty()) {
    detail::NdConfig c = std::move(queue.front());
    queue.pop_front();
    if (c.done == n) return true;

    if (c.i < n) {
      int x = p[c.i];
      {
        detail::NdConfig d = c;
        ++d.i;
        d.s1.push_back(x);
        visit(std::move(d));
      }
      if (two) {
        detail::NdConfig d = c;
        ++d.i;
        d.s2.push_back(x);
        visit(std::move(d));
      }
      if (x == c.done + 1) {
        detail::NdConfig d = c;
        ++d.i;
        ++d.done;
        visit(std::move(d));
      }
    }
    if (detail::poppable(c.s1, c.done)) {
      detail::NdConfig d = c;
      d.done += static_cast<int>(d.s1.size());
      d.s1.clear();
      visit(std::move(d));
    }
    if (two && detail::poppable(c.s2, c.done)) {
      detail::NdConfig d = c;
      d.done += static_cast<int>(d.s2.size());
      d.s2.clear();
      visit(std::move(d));
    }
  }
  return false;
}

}  // namespace popstack
