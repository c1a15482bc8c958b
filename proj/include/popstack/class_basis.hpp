#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/machines.hpp"
#include "popstack/patterns.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

// Outcome of asking for a finite basis of the full preimage of Av(rho) under
// the pop-stack-with-bypass map: either the basis, or the determination that
// the preimage is not closed under pattern containment.
struct BasisResult {
  std::optional<std::vector<Permutation>> basis;

  bool is_class() const { return basis.has_value(); }
};

// The full preimage of Av(rho) is a pattern class exactly when rho is empty,
// a single entry, an increasing pair, starts with its maximum, or ends with
// its maximum directly preceded by the second largest entry. The basis is
// assembled over raw values, with no flattening afterward.
inline BasisResult preimage_basis(const Permutation& rho) {
  const int n = rho.size();
  auto as_class = [](std::vector<Permutation> basis) {
    std::sort(basis.begin(), basis.end(), [](const Permutation& a, const Permutation& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    BasisResult r;
    r.basis = std::move(basis);
    return r;
  };
  if (n == 0) return as_class({Permutation()});
  if (n == 1) return as_class({Permutation::identity(1)});
  if (rho == Permutation::identity(2))
    return as_class({Permutation::identity(2), Permutation({2, 1})});

  auto build = [](std::vector<int> head, const IntSequence& rest) {
    head.insert(head.end(), rest.begin(), rest.end());
    return Permutation(std::move(head));
  };

  if (rho[0] == n && n >= 2) {
    // rho = n . alpha
    IntSequence alpha(rho.entries().begin() + 1, rho.entries().end());
    std::vector<Permutation> basis;
    basis.push_back(build({n, n + 1}, alpha));
    IntSequence lifted{n + 1};
    lifted.insert(lifted.end(), alpha.begin(), alpha.end());
    for (const IntSequence& tau : shuffles({n + 1}, alpha)) {
      if (tau == lifted) continue;
      basis.push_back(build({n + 2, n}, tau));
    }
    return as_class(std::move(basis));
  }

  if (n >= 3 && rho[0] == n - 1 && rho[n - 1] == n) {
    // rho = (n-1) . alpha . n
    IntSequence alpha(rho.entries().begin() + 1, rho.entries().end() - 1);
    std::vector<Permutation> basis;
    basis.push_back(build({n - 1, n}, alpha));
    IntSequence lifted{n};
    lifted.insert(lifted.end(), alpha.begin(), alpha.end());
    for (const IntSequence& tau : shuffles({n}, alpha)) {
      if (tau == lifted) continue;
      basis.push_back(build({n + 1, n - 1}, tau));
    }
    return as_class(std::move(basis));
  }

  return BasisResult{};
}

struct ClassEqualityReport {
  Permutation rho;
  int bound = 0;
  bool pass = true;
  std::optional<Permutation> counterexample;
  std::string detail;
};

// Exhaustively compares {p : psb(p) avoids rho} with Av(basis) for all sizes
// up to bound. Precondition: preimage_basis(rho) produced a basis.
inline ClassEqualityReport verify_class_equality(const Permutation& rho, int bound) {
  BasisResult br = preimage_basis(rho);
  if (!br.is_class())
    throw invalid_input("verify_class_equality requires a class-producing pattern");
  PatternSet basis;
  for (const Permutation& b : *br.basis) basis.emplace_back(b);

  ClassEqualityReport rep;
  rep.rho = rho;
  rep.bound = bound;
  for (int m = 0; m <= bound; ++m) {
    for (const Permutation& p : all_permutations(m)) {
      bool lhs = avoids(psb(p), rho);
      bool rhs = avoids_all(p, basis);
      if (lhs != rhs) {
        rep.pass = false;
        rep.counterexample = p;
        rep.detail = "size " + std::to_string(m) + ": " + to_string(p) +
                     (lhs ? " is in the preimage but not in Av(basis)"
                          : " is in Av(basis) but not in the preimage");
        return rep;
      }
    }
  }
  return rep;
}

struct ClosureWitness {
  Permutation sigma;  // in the set
  Permutation tau;    // contained in sigma, outside the set
};

// Searches sizes 1..bound for a set member containing a pattern outside the
// set. Deterministic: smallest size first, then lexicographic sigma, then tau
// by size and lexicographic order. Returns nothing when no witness exists in
// range (consistent with the set being pattern-closed at desk scale).
inline std::optional<ClosureWitness> closure_witness(
    const std::function<bool(const Permutation&)>& in_set, int bound) {
  std::unordered_map<std::uint64_t, bool> memo;
  auto pred = [&](const Permutation& p) {
    std::uint64_t k = pack_key(p);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    bool v = in_set(p);
    memo.emplace(k, v);
    return v;
  };

  for (int m = 1; m <= bound; ++m) {
    for (const Permutation& sigma : all_permutations(m)) {
      if (!pred(sigma)) continue;
      // contained patterns, grouped by size, each group lexicographic
      std::vector<std::set<std::vector<int>>> by_size(m);
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        int sz = __builtin_popcount(mask);
        if (sz >= m) continue;
        IntSequence sub;
        for (int i = 0; i < m; ++i)
          if (mask & (1u << i)) sub.push_back(sigma[i]);
        by_size[sz].insert(reduce(sub).entries());
      }
      for (int sz = 0; sz < m; ++sz) {
        for (const auto& t : by_size[sz]) {
          Permutation tau = Permutation::unchecked(t);
          if (!pred(tau)) return ClosureWitness{sigma, tau};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace popstack
