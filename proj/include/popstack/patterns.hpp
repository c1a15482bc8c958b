#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

namespace detail {

// Backtracking order-isomorphic subsequence search. For each pattern index,
// only the closest smaller/larger already-placed entries constrain the next
// candidate value, so the per-candidate check is O(1).
struct PatternMatcher {
  explicit PatternMatcher(const Permutation& pat) : q(pat.entries()) {
    const int k = static_cast<int>(q.size());
    lo.assign(k, -1);
    hi.assign(k, -1);
    for (int i = 0; i < k; ++i) {
      int best_lo = 0, best_hi = 0;
      for (int j = 0; j < i; ++j) {
        if (q[j] < q[i] && q[j] > best_lo) best_lo = q[j], lo[i] = j;
        if (q[j] > q[i] && (best_hi == 0 || q[j] < best_hi)) best_hi = q[j], hi[i] = j;
      }
    }
  }

  // Calls visit(match positions) for every occurrence, in lexicographic
  // position order, until visit returns true; returns whether it did.
  template <typename Visit>
  bool scan(const std::vector<int>& h, Visit&& visit) const {
    const int k = static_cast<int>(q.size());
    const int n = static_cast<int>(h.size());
    if (k == 0) return visit(std::vector<int>{});
    if (k > n) return false;
    std::vector<int> pos(k);
    return dfs(h, 0, 0, pos, visit);
  }

  std::vector<int> q;
  std::vector<int> lo, hi;  // index of tightest smaller/larger predecessor or -1

 private:
  template <typename Visit>
  bool dfs(const std::vector<int>& h, int level, int start, std::vector<int>& pos,
           Visit&& visit) const {
    const int k = static_cast<int>(q.size());
    const int n = static_cast<int>(h.size());
    for (int p = start; p <= n - (k - level); ++p) {
      int v = h[p];
      if (lo[level] >= 0 && v <= h[pos[lo[level]]]) continue;
      if (hi[level] >= 0 && v >= h[pos[hi[level]]]) continue;
      pos[level] = p;
      if (level == k - 1) {
        if (visit(pos)) return true;
      } else if (dfs(h, level + 1, p + 1, pos, visit)) {
        return true;
      }
    }
    return false;
  }
};

}  // namespace detail

// Classical containment: does host have a subsequence order-isomorphic to pattern?
inline bool contains(const Permutation& host, const Permutation& pattern) {
  detail::PatternMatcher m(pattern);
  return m.scan(host.entries(), [](const std::vector<int>&) { return true; });
}

inline bool avoids(const Permutation& host, const Permutation& pattern) {
  return !contains(host, pattern);
}

// Pattern with one or more barred entries: "3 5b 2 4 1" is 35241 with the 5
// barred. Containment is defined for exactly one bar.
struct BarredPattern {
  Permutation full;
  std::set<int> barred_positions;  // 1-based positions into full

  BarredPattern(Permutation f, std::set<int> barred)
      : full(std::move(f)), barred_positions(std::move(barred)) {
    if (barred_positions.empty()) throw invalid_input("barred pattern needs a barred entry");
    for (int b : barred_positions)
      if (b < 1 || b > full.size()) throw invalid_input("barred position out of range");
  }
};

inline std::string to_string(const BarredPattern& bp) {
  std::string out;
  for (int i = 0; i < bp.full.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(bp.full[i]);
    if (bp.barred_positions.count(i + 1)) out += 'b';
  }
  return out;
}

// Where the missing (barred) element may sit when completing an occurrence
// of the bar-erased pattern to an occurrence of the full pattern:
//   InSlot         — strictly between the occurrence entries that flank the
//                    barred position (the usual reading).
//   AnywhereEarlier — anywhere left of the occurrence entry that follows the
//                    barred position, including before the occurrence itself.
//                    For 35b241 this accepts a completion to 35241 or 53241.
enum class BarPlacement { InSlot, AnywhereEarlier };

// Host contains the barred pattern iff some occurrence of the bar-erased
// pattern cannot be completed to an occurrence of the full pattern by an
// element in an allowed position with the full pattern's relative order.
inline bool contains_barred(const Permutation& host, const BarredPattern& bp,
                            BarPlacement placement = BarPlacement::InSlot) {
  if (bp.barred_positions.size() != 1)
    throw unsupported_pattern("only single-bar patterns are supported");
  const int bar = *bp.barred_positions.begin() - 1;  // 0-based index into full
  const int L = bp.full.size();

  IntSequence erased;
  for (int i = 0; i < L; ++i)
    if (i != bar) erased.push_back(bp.full[i]);
  detail::PatternMatcher m(reduce(erased));

  const std::vector<int>& h = host.entries();
  const int n = host.size();
  // occ[j] = host position matched to full-pattern index (j < bar ? j : j+1)
  auto extendable = [&](const std::vector<int>& occ) {
    int from = (bar == 0 || placement == BarPlacement::AnywhereEarlier)
                   ? 0
                   : occ[bar - 1] + 1;
    int to = bar == L - 1 ? n - 1 : occ[bar] - 1;
    for (int q = from; q <= to; ++q) {
      bool ok = true;
      for (int j = 0; j < L - 1; ++j) {
        int full_idx = j < bar ? j : j + 1;
        if ((h[q] > h[occ[j]]) != (bp.full[bar] > bp.full[full_idx])) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };

  return m.scan(h, [&](const std::vector<int>& occ) { return !extendable(occ); });
}

inline bool avoids_barred(const Permutation& host, const BarredPattern& bp,
                          BarPlacement placement = BarPlacement::InSlot) {
  return !contains_barred(host, bp, placement);
}

using PatternItem = std::variant<Permutation, BarredPattern>;
using PatternSet = std::vector<PatternItem>;

inline bool avoids_all(const Permutation& host, const PatternSet& patterns) {
  for (const auto& item : patterns) {
    bool hit = std::visit(
        [&](const auto& pat) {
          using T = std::decay_t<decltype(pat)>;
          if constexpr (std::is_same_v<T, Permutation>)
            return contains(host, pat);
          else
            return contains_barred(host, pat);
        },
        item);
    if (hit) return false;
  }
  return true;
}

// Accepts "4213", "3 5b 2 4 1", or "35b241"; a 'b' suffix bars the entry.
inline PatternItem parse_pattern(const std::string& text) {
  std::vector<int> vals;
  std::set<int> barred;
  auto push = [&](int v, bool bar) {
    vals.push_back(v);
    if (bar) barred.insert(static_cast<int>(vals.size()));
  };
  if (text.find_first_of(" \t") == std::string::npos) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c < '1' || c > '9') throw invalid_input("bad pattern text: " + text);
      bool bar = i + 1 < text.size() && text[i + 1] == 'b';
      push(c - '0', bar);
      if (bar) ++i;
    }
  } else {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
      bool bar = tok.size() > 1 && tok.back() == 'b';
      if (bar) tok.pop_back();
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        push(v, bar);
      } catch (const std::exception&) {
        throw invalid_input("bad pattern token: " + tok);
      }
    }
  }
  Permutation full(vals);
  if (barred.empty()) return full;
  if (barred.size() > 1) throw unsupported_pattern("only single-bar patterns are supported");
  return BarredPattern(std::move(full), std::move(barred));
}

inline PatternSet parse_pattern_set(const std::string& csv) {
  PatternSet out;
  std::string item;
  std::istringstream is(csv);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(parse_pattern(item));
  }
  return out;
}

}  // namespace popstack
