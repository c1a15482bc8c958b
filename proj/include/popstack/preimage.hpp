#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/machines.hpp"
#include "popstack/numeric.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

namespace detail {

// Recursive fiber enumeration for the pop-stack-with-bypass map.
//
// Shape of any input that maps to s: write s = alpha . (v, v+1, ..., top)
// where the tail is the longest suffix of left-to-right maxima with
// consecutive values (it exists iff s ends with its maximum). The machine's
// final pop emitted some suffix (m, ..., top) of that tail, so the input looks
// like
//
//     beta . top . (interleaving of the chain top-1, top-2, ..., m with the
//                   leftover output entries)
//
// where: pushing the maximum wiped the stack, so the output produced before it
// is exactly the prefix of s up to the insertion point (hence beta ranges over
// that prefix's own fibers, computed recursively, and the insertion point must
// sit just after a left-to-right maximum for that prefix to be a fiber image);
// the chain entries must arrive in decreasing order to stack up; and every
// leftover entry bypasses correctly except when the value m-1 shows up after m
// -- which is exactly the rule that m is placed to the right of m-1.
//
// The recursion must keep the actual values of each sub-sequence: the push
// rule compares raw integers (x == top-1), so the map does not commute with
// order-isomorphism once the value set has gaps -- e.g. (3,2,1) maps to
// (1,2,3) but (4,2,1) maps to (2,1,4). It does commute with any monotone
// relabeling that preserves which sorted-adjacent values are consecutive,
// which is what the memo key exploits: gaps larger than one all behave alike.
class FiberEnumerator {
 public:
  // s: distinct integers. Returns the fiber as raw-value sequences, sorted.
  // Public semantics act by relative order, so reduce first (raw and
  // relative-order runs agree on a permutation of 1..n) and write the input's
  // values back over each result.
  std::vector<IntSequence> run(const IntSequence& s) {
    if (s.empty()) return {IntSequence{}};
    IntSequence sorted = s;
    std::sort(sorted.begin(), sorted.end());
    std::vector<IntSequence> out;
    for (const IntSequence& q : expand(reduce(s).entries())) {
      IntSequence raw(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) raw[i] = sorted[q[i] - 1];
      out.push_back(std::move(raw));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::map<IntSequence, std::vector<IntSequence>> memo_;  // canonical -> fibers

  // Fiber of s under the raw-value machine. Canonicalizes the value set
  // (smallest value 1, each sorted-adjacent gap flattened to 1 or 2) for the
  // memo lookup, then maps each result back onto the raw values.
  std::vector<IntSequence> expand(const IntSequence& s) {
    if (s.empty()) return {IntSequence{}};
    IntSequence sorted = s;
    std::sort(sorted.begin(), sorted.end());
    IntSequence canon_sorted(sorted.size());
    canon_sorted[0] = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i)
      canon_sorted[i] = canon_sorted[i - 1] + (sorted[i] == sorted[i - 1] + 1 ? 1 : 2);
    IntSequence key(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::size_t r = std::lower_bound(sorted.begin(), sorted.end(), s[i]) - sorted.begin();
      key[i] = canon_sorted[r];
    }
    const auto& canon_fibers = fibers_of(key);
    std::vector<IntSequence> out;
    out.reserve(canon_fibers.size());
    for (const auto& q : canon_fibers) {
      IntSequence raw(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) {
        std::size_t r =
            std::lower_bound(canon_sorted.begin(), canon_sorted.end(), q[i]) - canon_sorted.begin();
        raw[i] = sorted[r];
      }
      out.push_back(std::move(raw));
    }
    return out;
  }

  const std::vector<IntSequence>& fibers_of(const IntSequence& key) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<IntSequence> result = compute(key);
    return memo_.emplace(key, std::move(result)).first->second;
  }

  std::vector<IntSequence> compute(const IntSequence& t) {
    const int n = static_cast<int>(t.size());
    if (n == 0) return {{}};
    std::set<IntSequence> acc;
    const int top = *std::max_element(t.begin(), t.end());
    if (t[n - 1] != top) return {};  // outputs always end with their maximum

    // tail start: longest suffix v, v+1, ..., top of consecutive values
    int q = n - 1;
    while (q >= 1 && t[q - 1] == t[q] - 1) --q;

    for (int j = q; j < n; ++j) {
      const int m = t[j];  // the final pop emitted m, m+1, ..., top
      IntSequence prefix(t.begin(), t.begin() + j);  // every value < m

      // insertion slots for the maximum: front, or immediately after a
      // left-to-right maximum of the remaining prefix
      std::vector<int> slots{-1};
      {
        int best = 0;
        for (int pos = 0; pos < j; ++pos)
          if (prefix[pos] > best) {
            best = prefix[pos];
            slots.push_back(pos);
          }
      }

      IntSequence chain;  // top-1 down to m, arriving after the maximum in this order
      for (int v = top - 1; v >= m; --v) chain.push_back(v);

      for (int s : slots) {
        IntSequence beta(prefix.begin(), prefix.begin() + (s + 1));
        IntSequence tail(prefix.begin() + (s + 1), prefix.end());

        // position of m-1 within tail, or -1 when it sits in beta or outside
        // the value set (then there is no constraint at all)
        int guard = -1;
        for (std::size_t i = 0; i < tail.size(); ++i)
          if (tail[i] == m - 1) guard = static_cast<int>(i);

        // chain empty means the minimum of the removed block is the maximum
        // itself, and its slot is already fixed; the right-of-(m-1) rule then
        // demands that m-1 not trail behind it
        if (chain.empty() && guard >= 0) continue;

        std::vector<IntSequence> suffixes;
        for (IntSequence& w : shuffles(chain, tail)) {
          if (guard >= 0) {
            // m must land to the right of m-1
            std::size_t pos_m = 0, pos_g = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
              if (w[i] == m) pos_m = i;
              if (w[i] == m - 1) pos_g = i;
            }
            if (pos_m < pos_g) continue;
          }
          suffixes.push_back(std::move(w));
        }
        if (suffixes.empty()) continue;

        for (const IntSequence& b : expand(beta)) {
          for (const IntSequence& w : suffixes) {
            IntSequence cand;
            cand.reserve(n);
            cand.insert(cand.end(), b.begin(), b.end());
            cand.push_back(top);
            cand.insert(cand.end(), w.begin(), w.end());
            acc.insert(std::move(cand));
          }
        }
      }
    }
    return {acc.begin(), acc.end()};
  }
};

}  // namespace detail

// All inputs that the pop-stack-with-bypass map sends to s (acting on general
// integer sequences by relative order). Sorted lexicographically.
inline std::vector<IntSequence> preimages(const IntSequence& s) {
  require_distinct(s);
  if (s.size() > 15) throw resource_limit("preimages supports length <= 15");
  detail::FiberEnumerator e;
  return e.run(s);
}

inline std::vector<Permutation> preimages(const Permutation& sigma) {
  detail::FiberEnumerator e;
  std::vector<Permutation> out;
  if (sigma.size() > 15) throw resource_limit("preimages supports length <= 15");
  for (auto& v : e.run(sigma.entries())) out.push_back(Permutation::unchecked(std::move(v)));
  return out;
}

// Ground-truth fiber: apply the machine to every permutation of that size.
inline std::vector<Permutation> fiber_bruteforce(const Permutation& sigma) {
  std::vector<Permutation> out;
  for (const Permutation& p : all_permutations(sigma.size()))
    if (psb(p) == sigma) out.push_back(p);
  return out;
}

// How many outputs of each fiber size there are at size n: maps fiber size k
// to #{sigma in S_n : |psb^-1(sigma)| = k}, including k = 0.
struct FiberCensus {
  int n = 0;
  std::map<long long, long long> counts;
};

inline FiberCensus census(int n, int bound = 9) {
  if (n < 0) throw invalid_input("negative size");
  if (n > bound) throw resource_limit("census bound exceeded; raise the limit explicitly");
  std::unordered_map<std::uint64_t, long long> fiber_size;
  for (const Permutation& p : all_permutations(n)) ++fiber_size[pack_key(psb(p))];
  FiberCensus c;
  c.n = n;
  long long total = factorial(n);
  long long nonzero = 0;
  for (const auto& [key, cnt] : fiber_size) {
    ++c.counts[cnt];
    nonzero += 1;
  }
  long long zero = total - nonzero;
  if (zero > 0) c.counts[0] = zero;
  return c;
}

// Closed forms for the number of outputs with fiber size 0, 1 and 2.

inline long long c0_formula(int n) {
  if (n < 1) throw invalid_input("c0_formula needs n >= 1");
  return checked_mul(n - 1, factorial(n - 1));
}

inline long long c1_formula(int n) {
  if (n < 1) throw invalid_input("c1_formula needs n >= 1");
  if (n == 1) return 1;  // census convention
  if (n == 2) return 0;
  long long total = 0;
  for (int k = 2; 2 * k <= n + 1; ++k)
    total = checked_add(total, checked_mul(factorial(n - k), binomial(n - k - 1, k - 2)));
  return total;
}

// Two-part count.  The double sum (rational inner weight, integral total)
// covers the outputs whose first entry is not the value just below the
// maxima block.  Outputs whose first entry IS that value — and therefore
// sits positionally adjacent to the second maximum, or the whole maxima set
// would merge into a single-preimage shape — biject with the fiber-size-1
// outputs one size down (drop the first entry), adding c1_formula(n-1).
inline long long c2_formula(int n) {
  if (n < 4) throw invalid_input("c2_formula needs n >= 4");
  Rational total;
  for (int k = 3; k <= n; ++k) {
    for (int j = 1; j <= n - k; ++j) {
      Rational term(n - k - j + 1, j);
      term *= Rational(factorial(n - k));
      term *= Rational(binomial(n - j - k, k - 3));
      total += term;
    }
  }
  if (!total.is_integer()) throw consistency_error("fiber-size-2 sum is not an integer");
  return checked_add(total.as_integer(), c1_formula(n - 1));
}

// Membership predicates for the fiber-size-1 and fiber-size-2 output sets.

// Fiber size one: ends with n, left-to-right maxima form a consecutive block
// of top values, and no two of them are adjacent.
inline bool in_C1(const Permutation& p) {
  const int n = p.size();
  if (n < 3) throw invalid_input("in_C1 needs n >= 3");
  if (p[n - 1] != n) return false;
  auto ltr = ltr_maxima(p);
  const int k = static_cast<int>(ltr.size());
  for (int t = 0; t < k; ++t)
    if (ltr[t].second != n - (k - 1 - t)) return false;  // values n-k+1..n
  for (int t = 0; t + 1 < k; ++t)
    if (ltr[t + 1].first - ltr[t].first == 1) return false;
  return true;
}

// Fiber size two: ends with n; apart from the first entry the left-to-right
// maxima form a consecutive block of top values, pairwise nonadjacent (the
// first entry MAY touch the second maximum positionally), and the shape is
// not already a fiber-size-1 shape.  The last clause is what separates the
// two: when the first entry is the value just below the block AND stands
// clear of the second maximum, every maximum joins one larger block and the
// output has exactly one preimage instead of two.
inline bool in_C2(const Permutation& p) {
  const int n = p.size();
  if (n < 4) throw invalid_input("in_C2 needs n >= 4");
  if (p[n - 1] != n) return false;
  auto ltr = ltr_maxima(p);
  const int k = static_cast<int>(ltr.size());
  if (k < 2) return false;
  // ltr[0] is p_1; the rest must be n-(k-2) .. n
  for (int t = 1; t < k; ++t)
    if (ltr[t].second != n - (k - 1 - t)) return false;
  for (int t = 1; t + 1 < k; ++t)
    if (ltr[t + 1].first - ltr[t].first == 1) return false;
  return !in_C1(p);
}

}  // namespace popstack
