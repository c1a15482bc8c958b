#include <catch2/catch_amalgamated.hpp>

#include "popstack/patterns.hpp"

using namespace popstack;

TEST_CASE("classical containment") {
  CHECK(contains(Permutation({2, 3, 1}), Permutation({2, 3, 1})));
  CHECK(contains(Permutation({3, 5, 2, 4, 1}), Permutation({2, 3, 1})));
  CHECK(!contains(Permutation({1, 2, 3}), Permutation({2, 1})));
  CHECK(avoids(Permutation({4, 2, 1, 3}), Permutation({2, 3, 1})));
  CHECK(contains(Permutation({4, 2, 1, 3}), Permutation({4, 2, 1, 3})));
  // empty and singleton patterns
  CHECK(contains(Permutation({2, 1}), Permutation(IntSequence{})));
  CHECK(contains(Permutation({2, 1}), Permutation({1})));
  CHECK(!contains(Permutation(IntSequence{}), Permutation({1})));
  // a pattern longer than the host never occurs
  CHECK(avoids(Permutation({2, 1}), Permutation({2, 3, 1})));
}

TEST_CASE("monotone hosts") {
  Permutation host = Permutation::identity(8);
  CHECK(avoids(host, Permutation({2, 1})));
  CHECK(contains(host, Permutation({1, 2, 3, 4})));
}

TEST_CASE("containment is reflexive and respects reduction") {
  for (const Permutation& p : all_permutations(5)) {
    CHECK(contains(p, p));
    // removing the last entry leaves a contained pattern
    IntSequence prefix(p.entries().begin(), p.entries().end() - 1);
    CHECK(contains(p, reduce(prefix)));
  }
}

TEST_CASE("avoider counts match classical enumeration") {
  // |Av_n(231)| is Catalan, |Av_n(321)| likewise, |Av_n(231,312)| = 2^(n-1)
  long long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 7; ++n) {
    long long av231 = 0, av321 = 0, av231_312 = 0;
    for (const Permutation& p : all_permutations(n)) {
      av231 += avoids(p, Permutation({2, 3, 1}));
      av321 += avoids(p, Permutation({3, 2, 1}));
      av231_312 +=
          avoids(p, Permutation({2, 3, 1})) && avoids(p, Permutation({3, 1, 2}));
    }
    CHECK(av231 == catalan[n]);
    CHECK(av321 == catalan[n]);
    CHECK(av231_312 == (1ll << (n - 1)));
  }
}

TEST_CASE("barred pattern parsing and printing") {
  PatternItem item = parse_pattern("35b241");
  REQUIRE(std::holds_alternative<BarredPattern>(item));
  const auto& bp = std::get<BarredPattern>(item);
  CHECK(bp.full == Permutation({3, 5, 2, 4, 1}));
  REQUIRE(bp.barred_positions.size() == 1);
  CHECK(*bp.barred_positions.begin() == 2);
  CHECK(to_string(bp) == "3 5b 2 4 1");
  // spaced form parses to the same pattern
  PatternItem item2 = parse_pattern("3 5b 2 4 1");
  CHECK(std::get<BarredPattern>(item2).full == bp.full);
  // unbarred text yields a plain permutation
  CHECK(std::holds_alternative<Permutation>(parse_pattern("231")));
  CHECK_THROWS_AS(parse_pattern("3b5b241"), unsupported_pattern);
}

TEST_CASE("barred containment") {
  // pattern 3 5b 2 4 1: an occurrence of 3241 with no extension to 35241
  BarredPattern bp{Permutation({3, 5, 2, 4, 1}), {2}};
  // 3241 itself: the occurrence cannot be extended
  CHECK(contains_barred(Permutation({3, 2, 4, 1}), bp));
  // 35241: its only 3241 occurrences extend, so it does not contain the barred pattern
  CHECK(!contains_barred(Permutation({3, 5, 2, 4, 1}), bp));
  // hosts avoiding 3241 trivially avoid the barred pattern
  CHECK(!contains_barred(Permutation({1, 2, 3, 4, 5}), bp));
  // 43251: the occurrence 4,3,5,1 sits at adjacent first positions, so no
  // value can be interposed and the occurrence cannot extend
  CHECK(contains_barred(Permutation({4, 3, 2, 5, 1}), bp));
  // 362514: the only 3241 occurrence is 3,2,5,1 and the 6 extends it
  CHECK(!contains_barred(Permutation({3, 6, 2, 5, 1, 4}), bp));
}

TEST_CASE("barred containment with relaxed placement") {
  BarredPattern bp{Permutation({3, 5, 2, 4, 1}), {2}};
  // The two placements agree where no completion exists at all ...
  CHECK(contains_barred(Permutation({3, 2, 4, 1}), bp, BarPlacement::AnywhereEarlier));
  CHECK(contains_barred(Permutation({4, 3, 2, 5, 1}), bp, BarPlacement::AnywhereEarlier));
  // ... and where an in-slot completion exists.
  CHECK(!contains_barred(Permutation({3, 5, 2, 4, 1}), bp, BarPlacement::AnywhereEarlier));
  CHECK(!contains_barred(Permutation({3, 6, 2, 5, 1, 4}), bp, BarPlacement::AnywhereEarlier));
  // They diverge when the only large-enough element PRECEDES the occurrence:
  // in 53241 the occurrence 3,2,4,1 has nothing between its 3 and 2, but the
  // leading 5 completes it leftward (to 53241 itself).
  CHECK(contains_barred(Permutation({5, 3, 2, 4, 1}), bp));
  CHECK(!contains_barred(Permutation({5, 3, 2, 4, 1}), bp, BarPlacement::AnywhereEarlier));
  // 643251: every 3241 occurrence is slot-blocked, yet the 6 sits left of all
  // of them.
  CHECK(contains_barred(Permutation({6, 4, 3, 2, 5, 1}), bp));
  CHECK(!contains_barred(Permutation({6, 4, 3, 2, 5, 1}), bp, BarPlacement::AnywhereEarlier));
  // Relaxed containment implies in-slot containment (the relaxed window is a
  // superset), exhaustively at size 6.
  for (const Permutation& p : all_permutations(6)) {
    if (contains_barred(p, bp, BarPlacement::AnywhereEarlier)) CHECK(contains_barred(p, bp));
  }
}

TEST_CASE("barred avoidance counts are sandwiched by the classical ones") {
  // Av(35241) ⊇ Av(3 5b 2 4 1)?  No — the barred class sits between
  // Av(3241) and Av(35241) elementwise: containing 3241 minus the
  // extendable exceptions.  Check the elementwise implications.
  BarredPattern bp{Permutation({3, 5, 2, 4, 1}), {2}};
  for (const Permutation& p : all_permutations(6)) {
    bool plain = contains(p, Permutation({3, 2, 4, 1}));
    bool barred = contains_barred(p, bp);
    if (barred) CHECK(plain);          // a barred occurrence is an occurrence
    if (!plain) CHECK(!barred);        // no 3241 at all → nothing to fail extension
  }
}

TEST_CASE("pattern sets") {
  PatternSet set = parse_pattern_set("231,4213");
  REQUIRE(set.size() == 2);
  CHECK(!avoids_all(Permutation({2, 3, 1}), set));
  CHECK(!avoids_all(Permutation({4, 2, 1, 3}), set));
  CHECK(avoids_all(Permutation({1, 3, 2}), set));
  PatternSet with_barred = parse_pattern_set("2341,35b241");
  CHECK(!avoids_all(Permutation({3, 2, 4, 1}), with_barred));
  CHECK(avoids_all(Permutation({3, 5, 2, 4, 1}), with_barred));
}
