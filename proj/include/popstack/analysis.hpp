#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "popstack/class_basis.hpp"
#include "popstack/errors.hpp"
#include "popstack/machines.hpp"
#include "popstack/motzkin.hpp"
#include "popstack/nd_oracle.hpp"
#include "popstack/numeric.hpp"
#include "popstack/parallel.hpp"
#include "popstack/patterns.hpp"
#include "popstack/preimage.hpp"

namespace popstack {

// Integer sequence indexed by a contiguous range of sizes.
struct SequenceTable {
  std::string name;
  int first_n = 0;
  std::vector<long long> terms;

  long long term(int n) const {
    int i = n - first_n;
    if (i < 0 || i >= static_cast<int>(terms.size()))
      throw invalid_input("term index outside table range");
    return terms[i];
  }
  int last_n() const { return first_n + static_cast<int>(terms.size()) - 1; }
};

// Counts, for each n in 1..bound, the permutations the machine sorts.
inline SequenceTable sortable_table(MachineKind kind, int bound, int jobs = 1) {
  SequenceTable t;
  t.name = tag(kind);
  t.first_n = 1;
  for (int n = 1; n <= bound; ++n)
    t.terms.push_back(
        count_permutations(n, jobs, [kind](const Permutation& p) { return sorts(kind, p); }));
  return t;
}

// Counts, for each n in 1..bound, the permutations avoiding every pattern.
inline SequenceTable sortable_table(const PatternSet& patterns, int bound, int jobs = 1) {
  SequenceTable t;
  t.name = "avoiders";
  t.first_n = 1;
  for (int n = 1; n <= bound; ++n)
    t.terms.push_back(count_permutations(
        n, jobs, [&patterns](const Permutation& p) { return avoids_all(p, patterns); }));
  return t;
}

// Rational generating function num/den with integer coefficients,
// normalized so den[0] = +1.
struct RationalSeries {
  std::vector<long long> num, den;

  RationalSeries(std::vector<long long> n, std::vector<long long> d)
      : num(std::move(n)), den(std::move(d)) {
    if (den.empty() || (den[0] != 1 && den[0] != -1))
      throw invalid_input("denominator must have constant term +-1");
    if (den[0] == -1)
      for (auto* v : {&num, &den})
        for (long long& x : *v) x = -x;
  }
};

// Taylor coefficients 0..order of num/den. Intermediates are widened to
// 128 bits; a coefficient that cannot narrow back to 64 bits is an error
// rather than a wraparound.
inline std::vector<long long> gf_expand(const RationalSeries& s, int order) {
  if (order < 0) throw invalid_input("negative order");
  std::vector<long long> c(order + 1, 0);
  for (int t = 0; t <= order; ++t) {
    __int128 acc = t < static_cast<int>(s.num.size()) ? s.num[t] : 0;
    for (int i = 1; i < static_cast<int>(s.den.size()) && i <= t; ++i)
      acc -= static_cast<__int128>(s.den[i]) * c[t - i];
    if (acc > std::numeric_limits<long long>::max() || acc < std::numeric_limits<long long>::min())
      throw resource_limit("series coefficient exceeds 64-bit range");
    c[t] = static_cast<long long>(acc);
  }
  return c;
}

// Size generating function for the class sorted by the two-stack machine; the
// published form describes the inverse class, which has the same size counts
// because inversion preserves length.
inline RationalSeries parallel_series() {
  return RationalSeries({1, -7, 14, -8}, {1, -8, 20, -18, 3});
}

inline long long fib(int k) {
  if (k < 1) throw invalid_input("fib needs k >= 1");
  long long a = 1, b = 1;  // F_1, F_2
  for (int i = 3; i <= k; ++i) {
    long long c = checked_add(a, b);
    a = b;
    b = c;
  }
  return k == 1 ? 1 : b;
}

// Simple permutations sorted by the two-stack machine, counted against the
// conjectured closed form. Only compared, never asserted here.
struct ConjectureRow {
  int n = 0;
  long long computed = 0;
  long long conjectured = 0;
  bool match = false;
};

inline long long conjectured_simple_count(int n) {
  if (n <= 1) return 1;
  if (n == 2) return 2;
  long long f = fib(2 * n - 5);
  return n % 2 == 1 ? f - 1 : f;
}

inline std::vector<ConjectureRow> conjecture_report(int bound, int jobs = 1) {
  std::vector<ConjectureRow> rows;
  for (int n = 0; n <= bound; ++n) {
    ConjectureRow r;
    r.n = n;
    r.computed = count_permutations(n, jobs, [](const Permutation& p) {
      return is_simple(p) && parallel_psb(p).ok();
    });
    r.conjectured = conjectured_simple_count(n);
    r.match = r.computed == r.conjectured;
    rows.push_back(r);
  }
  return rows;
}

// --- proposition registry -------------------------------------------------

struct VerifyReport {
  std::string id;
  int bound = 0;
  bool pass = true;
  std::string detail;  // counterexample or mismatch description on failure
};

namespace detail {

inline std::optional<std::string> equivalence_sweep(
    int from, int bound, int jobs, const std::function<bool(const Permutation&)>& lhs,
    const std::function<bool(const Permutation&)>& rhs, const std::string& lhs_name,
    const std::string& rhs_name) {
  for (int n = from; n <= bound; ++n) {
    auto bad = first_permutation_where(
        n, jobs, [&](const Permutation& p) { return lhs(p) != rhs(p); });
    if (bad) {
      const Permutation& p = *bad;
      return "n=" + std::to_string(n) + " " + to_string(p) + ": " +
             (lhs(p) ? lhs_name + " but not " + rhs_name : rhs_name + " but not " + lhs_name);
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> machine_vs_avoidance(int bound, int jobs,
                                                       const std::function<bool(const Permutation&)>& sorted,
                                                       const PatternSet& basis,
                                                       const std::string& what) {
  return equivalence_sweep(
      1, bound, jobs, sorted,
      [&basis](const Permutation& p) { return avoids_all(p, basis); }, what, "basis-avoiding");
}

// Per-size fiber sizes for every output, from one pass of the machine.
inline std::unordered_map<std::uint64_t, long long> fiber_sizes(int n) {
  std::unordered_map<std::uint64_t, long long> m;
  for (const Permutation& p : all_permutations(n)) ++m[pack_key(psb(p))];
  return m;
}

inline std::optional<std::string> check_fiber(int which, int bound, int /*jobs*/) {
  for (int n = 1; n <= bound; ++n) {
    FiberCensus c = census(n, bound);
    auto count_of = [&](long long k) {
      auto it = c.counts.find(k);
      return it == c.counts.end() ? 0ll : it->second;
    };
    long long expected = -1;
    switch (which) {
      case 0: expected = c0_formula(n); break;
      case 1: expected = c1_formula(n); break;
      case 2: expected = n >= 4 ? c2_formula(n) : -1; break;
    }
    if (expected >= 0 && count_of(which) != expected)
      return "n=" + std::to_string(n) + ": census has " + std::to_string(count_of(which)) +
             " outputs with fiber size " + std::to_string(which) + ", formula gives " +
             std::to_string(expected);

    // membership characterizations
    auto sizes = fiber_sizes(n);
    for (const Permutation& sigma : all_permutations(n)) {
      auto it = sizes.find(pack_key(sigma));
      long long fs = it == sizes.end() ? 0 : it->second;
      bool is_k = fs == which;
      bool characterized;
      if (which == 0) {
        characterized = sigma[n - 1] != n;
      } else if (which == 1) {
        if (n < 3) continue;
        characterized = in_C1(sigma);
      } else {
        if (n < 4) continue;
        characterized = in_C2(sigma);
      }
      if (is_k != characterized)
        return "n=" + std::to_string(n) + " " + to_string(sigma) + ": fiber size " +
               std::to_string(fs) + " disagrees with the membership test";
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_class_preimages(int bound, int /*jobs*/) {
  for (int sz = 0; sz <= 4; ++sz) {
    for (const Permutation& rho : all_permutations(sz)) {
      BasisResult br = preimage_basis(rho);
      if (br.is_class()) {
        ClassEqualityReport rep = verify_class_equality(rho, bound);
        if (!rep.pass) return "rho=" + to_string(rho) + ": " + rep.detail;
      } else {
        auto w = closure_witness(
            [&rho](const Permutation& p) { return avoids(psb(p), rho); }, bound);
        if (!w)
          return "rho=" + to_string(rho) +
                 ": no witness found that the preimage is not pattern-closed";
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct Proposition {
  std::string id;
  int default_bound;
  std::function<std::optional<std::string>(int bound, int jobs)> check;
};

// Every verifiable statement the engine knows, with its desk-scale bound.
inline const std::vector<Proposition>& propositions() {
  static const std::vector<Proposition> props = [] {
    std::vector<Proposition> v;

    v.push_back({"psb-characterization", 10, [](int bound, int jobs) {
                   PatternSet basis = parse_pattern_set("231,4213");
                   return detail::machine_vs_avoidance(
                       bound, jobs,
                       [](const Permutation& p) { return sorts(MachineKind::Psb, p); }, basis,
                       "sorted");
                 }});

    v.push_back({"motzkin-equinumerosity", 11, [](int bound, int jobs) -> std::optional<std::string> {
                   for (int n = 0; n <= bound; ++n) {
                     long long paths = count_restricted(n);
                     long long sorted = count_permutations(n, jobs, [](const Permutation& p) {
                       return sorts(MachineKind::Psb, p);
                     });
                     if (paths != sorted)
                       return "n=" + std::to_string(n) + ": " + std::to_string(paths) +
                              " restricted paths vs " + std::to_string(sorted) +
                              " sortable permutations";
                   }
                   return std::nullopt;
                 }});

    v.push_back({"fiber-0", 9, [](int b, int j) { return detail::check_fiber(0, b, j); }});
    v.push_back({"fiber-1", 9, [](int b, int j) { return detail::check_fiber(1, b, j); }});
    v.push_back({"fiber-2", 9, [](int b, int j) { return detail::check_fiber(2, b, j); }});

    v.push_back({"class-preimages", 8,
                 [](int b, int j) { return detail::check_class_preimages(b, j); }});

    auto composed = [](std::vector<MachineKind> maps) {
      return [maps](const Permutation& p) { return compose(maps, p).is_identity(); };
    };
    // The stack-after-bypass-machine class: the barred member of its basis
    // needs the relaxed placement — a blocked 3241 pattern only obstructs
    // sorting when no larger element sits anywhere to its second entry's
    // left (completion to 35241 or to 53241 both rescue it; 53241 itself is
    // sortable here, unlike under the in-slot reading).
    v.push_back({"compose-stack", 9, [composed](int bound, int jobs) {
                   PatternSet classical = parse_pattern_set("2341,25314,52314,45231,42531");
                   BarredPattern barred =
                       std::get<BarredPattern>(parse_pattern("35b241"));
                   return detail::equivalence_sweep(
                       1, bound, jobs, composed({MachineKind::Psb, MachineKind::Stacksort}),
                       [classical, barred](const Permutation& p) {
                         return avoids_all(p, classical) &&
                                avoids_barred(p, barred, BarPlacement::AnywhereEarlier);
                       },
                       "sorted", "basis-avoiding");
                 }});
    v.push_back({"compose-queue", 9, [composed](int bound, int jobs) {
                   return detail::machine_vs_avoidance(
                       bound, jobs, composed({MachineKind::Psb, MachineKind::Queuesort}),
                       parse_pattern_set("3421,53241,53214"), "sorted");
                 }});
    v.push_back({"compose-bubble", 9, [composed](int bound, int jobs) {
                   return detail::machine_vs_avoidance(
                       bound, jobs, composed({MachineKind::Psb, MachineKind::BubblePass}),
                       parse_pattern_set("2341,3421,3241,25314,52314,53214"), "sorted");
                 }});
    v.push_back({"queue-then-psb", 9, [composed](int bound, int jobs) {
                   return detail::machine_vs_avoidance(
                       bound, jobs, composed({MachineKind::Queuesort, MachineKind::Psb}),
                       parse_pattern_set("4231,2431,54213"), "sorted");
                 }});
    v.push_back({"bubble-then-psb", 9, [composed](int bound, int jobs) {
                   return detail::machine_vs_avoidance(
                       bound, jobs, composed({MachineKind::BubblePass, MachineKind::Psb}),
                       parse_pattern_set("2341,2431,3241,4231,45213,54213"), "sorted");
                 }});

    v.push_back({"parallel-basis", 9, [](int bound, int jobs) {
                   return detail::machine_vs_avoidance(
                       bound, jobs,
                       [](const Permutation& p) { return parallel_psb(p).ok(); },
                       parse_pattern_set(
                           "2341,25314,42513,42531,45213,45231,52314,642135,642153"),
                       "sorted");
                 }});

    v.push_back({"psb-optimality", 8, [](int bound, int jobs) {
                   return detail::equivalence_sweep(
                       1, bound, jobs,
                       [](const Permutation& p) { return sorts(MachineKind::Psb, p); },
                       [](const Permutation& p) { return nd_sortable(MachineKind::Psb, p); },
                       "greedily sorted", "sortable by some strategy");
                 }});
    v.push_back({"parallel-optimality", 7, [](int bound, int jobs) {
                   return detail::equivalence_sweep(
                       1, bound, jobs,
                       [](const Permutation& p) { return parallel_psb(p).ok(); },
                       [](const Permutation& p) {
                         return nd_sortable(MachineKind::ParallelPsb, p);
                       },
                       "greedily sorted", "sortable by some strategy");
                 }});

    return v;
  }();
  return props;
}

inline const Proposition* find_proposition(const std::string& id) {
  for (const auto& p : propositions())
    if (p.id == id) return &p;
  return nullptr;
}

inline VerifyReport verify_proposition(const std::string& id, int bound = -1, int jobs = 1) {
  const Proposition* prop = find_proposition(id);
  if (!prop) throw invalid_input("unknown proposition id: " + id);
  VerifyReport rep;
  rep.id = id;
  rep.bound = bound < 0 ? prop->default_bound : bound;
  auto failure = prop->check(rep.bound, jobs);
  rep.pass = !failure.has_value();
  if (failure) rep.detail = *failure;
  return rep;
}

}  // namespace popstack
