#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/numeric.hpp"

namespace popstack {

// A sequence of pairwise distinct integers. Several algorithms (notably the
// preimage recursion) run on raw value sequences so that intermediate steps
// never silently re-normalize values.
using IntSequence = std::vector<int>;

inline bool all_distinct(const IntSequence& s) {
  IntSequence t = s;
  std::sort(t.begin(), t.end());
  return std::adjacent_find(t.begin(), t.end()) == t.end();
}

inline void require_distinct(const IntSequence& s) {
  if (!all_distinct(s)) throw invalid_input("sequence entries must be distinct");
}

class Permutation;
class PermutationRange;

// Permutation of {1..n}, stored one-line. Positions are 0-based in code,
// 1-based in formatted output.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> entries) : v_(std::move(entries)) {
    std::vector<char> seen(v_.size(), 0);
    for (int x : v_) {
      if (x < 1 || x > static_cast<int>(v_.size()) || seen[x - 1])
        throw invalid_input("entries must be exactly 1..n");
      seen[x - 1] = 1;
    }
  }

  static Permutation identity(int n) {
    Permutation p;
    p.v_.resize(n);
    for (int i = 0; i < n; ++i) p.v_[i] = i + 1;
    return p;
  }

  // Trusted fast path for values already known to form a permutation.
  static Permutation unchecked(std::vector<int> entries) {
    Permutation p;
    p.v_ = std::move(entries);
    return p;
  }

  // In-place step to the lexicographic successor; false after the last one.
  static bool advance(Permutation& p) {
    return std::next_permutation(p.v_.begin(), p.v_.end());
  }

  int size() const { return static_cast<int>(v_.size()); }
  bool empty() const { return v_.empty(); }
  int operator[](int i) const { return v_[i]; }
  const std::vector<int>& entries() const { return v_; }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return a.v_ != b.v_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.v_ < b.v_; }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (v_[i] != i + 1) return false;
    return true;
  }

 private:
  std::vector<int> v_;
  friend class PermutationRange;
};

// Nibble-packed key for hashing/memoization; one hex digit per entry.
inline std::uint64_t pack_key(const std::vector<int>& v) {
  if (v.size() > 15) throw resource_limit("packed keys support length <= 15");
  std::uint64_t k = static_cast<std::uint64_t>(v.size());
  for (int x : v) k = (k << 4) | static_cast<std::uint64_t>(x);
  return k;
}

inline std::uint64_t pack_key(const Permutation& p) { return pack_key(p.entries()); }

// Order-isomorphic flattening: the unique permutation with the same relative
// order. reduce([5,2,9]) = 213; idempotent on permutations.
inline Permutation reduce(const IntSequence& s) {
  require_distinct(s);
  const int n = static_cast<int>(s.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s[a] < s[b]; });
  std::vector<int> out(n);
  for (int r = 0; r < n; ++r) out[idx[r]] = r + 1;
  return Permutation::unchecked(std::move(out));
}

inline Permutation inverse(const Permutation& p) {
  std::vector<int> q(p.size());
  for (int i = 0; i < p.size(); ++i) q[p[i] - 1] = i + 1;
  return Permutation::unchecked(std::move(q));
}

// Left-to-right maxima as (position, value) pairs, positions 1-based.
// ltr_maxima(1324) = {(1,1),(2,3),(4,4)}.
inline std::vector<std::pair<int, int>> ltr_maxima(const Permutation& p) {
  std::vector<std::pair<int, int>> out;
  int best = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > best) {
      best = p[i];
      out.emplace_back(i + 1, p[i]);
    }
  }
  return out;
}

// No interval of size strictly between 1 and n maps onto a contiguous value
// range; by convention the empty permutation, 1, 12 and 21 are all simple.
inline bool is_simple(const Permutation& p) {
  const int n = p.size();
  for (int i = 0; i < n; ++i) {
    int lo = p[i], hi = p[i];
    for (int j = i + 1; j < n; ++j) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
      int len = j - i + 1;
      if (len == n) break;
      if (hi - lo == j - i) return false;  // proper interval of size >= 2
    }
  }
  return true;
}

// All interleavings of two disjoint sequences, each keeping its own order.
inline std::vector<IntSequence> shuffles(const IntSequence& a, const IntSequence& b) {
  {
    IntSequence both = a;
    both.insert(both.end(), b.begin(), b.end());
    require_distinct(both);  // also covers cross-duplicates
  }
  std::vector<IntSequence> out;
  IntSequence cur;
  cur.reserve(a.size() + b.size());
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    if (i == a.size() && j == b.size()) {
      out.push_back(cur);
      return;
    }
    if (i < a.size()) {
      cur.push_back(a[i]);
      go(i + 1, j);
      cur.pop_back();
    }
    if (j < b.size()) {
      cur.push_back(b[j]);
      go(i, j + 1);
      cur.pop_back();
    }
  };
  go(0, 0);
  return out;
}

// Lazy lexicographic stream over S_n (yields the empty permutation once for n=0).
class PermutationRange {
 public:
  explicit PermutationRange(int n) : n_(n) {
    if (n < 0) throw invalid_input("negative size");
  }

  class iterator {
   public:
    iterator() : done_(true) {}
    explicit iterator(int n) : done_(false), p_(Permutation::identity(n)) {}

    const Permutation& operator*() const { return p_; }
    const Permutation* operator->() const { return &p_; }

    iterator& operator++() {
      if (!std::next_permutation(p_.v_.begin(), p_.v_.end())) done_ = true;
      return *this;
    }

    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }
    friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

   private:
    bool done_;
    Permutation p_;
  };

  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }

 private:
  int n_;
};

inline PermutationRange all_permutations(int n) { return PermutationRange(n); }

// Lexicographic rank -> permutation (factorial number system); rank 0 is the
// identity. Used to hand out disjoint chunks of S_n to workers.
inline Permutation nth_permutation(int n, long long rank) {
  if (rank < 0 || rank >= factorial(n)) throw invalid_input("rank out of range");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  std::vector<int> out;
  out.reserve(n);
  for (int i = n; i >= 1; --i) {
    long long f = factorial(i - 1);
    int d = static_cast<int>(rank / f);
    rank %= f;
    out.push_back(pool[d]);
    pool.erase(pool.begin() + d);
  }
  return Permutation::unchecked(std::move(out));
}

// --- text forms ---------------------------------------------------------
// n <= 9 permutations print as digit strings ("35241"); longer ones and
// general integer sequences print space-separated.

inline std::string to_string(const IntSequence& s) {
  bool compact = s.size() <= 9;
  for (int x : s)
    if (x < 1 || x > 9) compact = false;
  std::ostringstream os;
  if (compact) {
    for (int x : s) os << x;
  } else {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) os << ' ';
      os << s[i];
    }
  }
  return os.str();
}

inline std::string to_string(const Permutation& p) { return to_string(p.entries()); }

inline IntSequence parse_sequence(const std::string& text) {
  IntSequence out;
  if (text.find_first_of(" \t") == std::string::npos) {
    for (char c : text) {
      if (c < '1' || c > '9') throw invalid_input("expected digits 1-9 in compact form: " + text);
      out.push_back(c - '0');
    }
  } else {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::exception&) {
        throw invalid_input("bad integer token: " + tok);
      }
    }
  }
  require_distinct(out);
  return out;
}

inline Permutation parse_permutation(const std::string& text) {
  IntSequence vals = parse_sequence(text);
  if (vals.empty()) throw invalid_input("empty permutation text");
  return Permutation(vals);  // validates 1..n
}

}  // namespace popstack

template <>
struct std::hash<popstack::Permutation> {
  std::size_t operator()(const popstack::Permutation& p) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (int x : p) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
