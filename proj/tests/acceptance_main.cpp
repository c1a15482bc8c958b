// Acceptance gate: one line per criterion, PASS or FAIL, exit 1 on any FAIL.
//
// Each criterion re-derives its expected values from pinned integer fixtures
// and compares exactly — tolerance is equality throughout.  Pass --full to
// extend criterion 4 to size 9 and criterion 8 to size 10 (minutes-scale).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "popstack/analysis.hpp"
#include "popstack/class_basis.hpp"
#include "popstack/machines.hpp"
#include "popstack/motzkin.hpp"
#include "popstack/nd_oracle.hpp"
#include "popstack/preimage.hpp"

using namespace popstack;

namespace {

int failures = 0;

void report(int crit, bool pass, const std::string& note) {
  std::printf("criterion %2d: %s  %s\n", crit, pass ? "PASS" : "FAIL", note.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

// 1. sortable counts for sizes 1..10, single-threaded, under two minutes
void criterion1() {
  const std::vector<long long> expected{1, 2, 5, 13, 34, 89, 233, 610, 1597, 4181};
  auto t0 = std::chrono::steady_clock::now();
  SequenceTable t = sortable_table(MachineKind::Psb, 10, /*jobs=*/1);
  double secs = seconds_since(t0);
  bool pass = t.terms == expected && secs < 120.0;
  report(1, pass,
         "sortable counts for sizes 1..10 " +
             std::string(t.terms == expected ? "match" : "MISMATCH") + " (" +
             fmt_secs(secs) + ", budget 120s)");
}

// 2. sorted exactly when avoiding {231, 4213}, sizes <= 10
void criterion2() {
  VerifyReport rep = verify_proposition("psb-characterization", 10, 1);
  report(2, rep.pass,
         rep.pass ? "sorting equivalent to {231,4213}-avoidance for sizes 1..10"
                  : rep.detail);
}

// 3. restricted-path counts: equinumerous to size 11, recurrence to 20
void criterion3() {
  VerifyReport rep = verify_proposition("motzkin-equinumerosity", 11, 1);
  bool recur = true;
  for (int n = 2; n <= 20; ++n)
    recur = recur &&
            count_restricted(n) == 3 * count_restricted(n - 1) - count_restricted(n - 2);
  report(3, rep.pass && recur,
         rep.pass
             ? (recur ? "path counts match sorted counts to size 11; recurrence holds to 20"
                      : "recurrence fails")
             : rep.detail);
}

// 4. recursive preimages equal brute-force fibers for every target
void criterion4(bool full) {
  const int bound = full ? 9 : 8;
  std::string bad;
  for (int n = 1; n <= bound && bad.empty(); ++n) {
    // one sweep buckets every input by its output; re-running the machine
    // per target would repeat the sweep n! times over
    std::map<Permutation, std::vector<Permutation>> fibers;
    for (const Permutation& p : all_permutations(n)) fibers[psb(p)].push_back(p);
    for (const Permutation& sigma : all_permutations(n)) {
      std::vector<Permutation> got = preimages(sigma);
      auto it = fibers.find(sigma);
      const std::vector<Permutation> want =
          it == fibers.end() ? std::vector<Permutation>{} : it->second;
      if (got != want) {  // both lexicographically sorted
        bad = "size " + std::to_string(n) + " target " + to_string(sigma) + ": got " +
              std::to_string(got.size()) + " preimages, brute force has " +
              std::to_string(want.size());
        break;
      }
    }
  }
  report(4, bad.empty(),
         bad.empty() ? "recursive preimages equal brute-force fibers for sizes 1.." +
                           std::to_string(bound)
                     : bad);
}

// 5. census vs the three closed forms, plus the partition identities
void criterion5() {
  std::string note = "census matches the closed forms for sizes 1..9";
  bool pass = true;
  for (const char* id : {"fiber-0", "fiber-1", "fiber-2"}) {
    VerifyReport rep = verify_proposition(id, 9, 1);
    if (!rep.pass) {
      pass = false;
      note = std::string(id) + ": " + rep.detail;
      break;
    }
  }
  if (pass) {
    const std::vector<long long> c1_expected{1, 0, 1, 2, 8, 36, 198};
    for (int n = 1; n <= 9 && pass; ++n) {
      FiberCensus c = census(n);
      long long total = 0, weighted = 0;
      for (const auto& [k, cnt] : c.counts) {
        total += cnt;
        weighted += k * cnt;
      }
      if (total != factorial(n) || weighted != factorial(n)) {
        pass = false;
        note = "partition identities fail at size " + std::to_string(n);
      }
      if (n <= 7 && c1_formula(n) != c1_expected[n - 1]) {
        pass = false;
        note = "single-preimage counter deviates from fixture at size " + std::to_string(n);
      }
    }
  }
  report(5, pass, note);
}

// 6. principal-class preimages: class cases verified to size 8, non-class
//    cases witnessed by size 8
void criterion6() {
  VerifyReport rep = verify_proposition("class-preimages", 8, 1);
  report(6, rep.pass,
         rep.pass ? "all size-<=4 targets: class equality or closure witness by size 8"
                  : rep.detail);
}

// 7. the five composition equivalences, sizes <= 9
void criterion7() {
  bool pass = true;
  std::string note = "all five composition bases verified for sizes 1..9";
  for (const char* id : {"compose-stack", "compose-queue", "compose-bubble",
                         "queue-then-psb", "bubble-then-psb"}) {
    VerifyReport rep = verify_proposition(id, 9, 1);
    if (!rep.pass) {
      pass = false;
      note = std::string(id) + ": " + rep.detail;
      break;
    }
  }
  report(7, pass, note);
}

// 8. two-stack machine: basis equivalence, counts, series coefficients
void criterion8(bool full) {
  VerifyReport rep = verify_proposition("parallel-basis", 9, 1);
  bool pass = rep.pass;
  std::string note = rep.pass ? "" : rep.detail;

  const std::vector<long long> expected{1, 2, 6, 23, 97, 418, 1800, 7717, 32969, 140558};
  if (pass) {
    SequenceTable t = sortable_table(MachineKind::ParallelPsb, 9, 1);
    for (int n = 1; n <= 9; ++n)
      if (t.term(n) != expected[n - 1]) {
        pass = false;
        note = "sortable count deviates at size " + std::to_string(n);
      }
  }
  if (pass && full) {
    long long c10 = count_permutations(10, 1, [](const Permutation& p) {
      return parallel_psb(p).ok();
    });
    if (c10 != expected[9]) {
      pass = false;
      note = "sortable count deviates at size 10";
    }
  }
  if (pass) {
    std::vector<long long> coef = gf_expand(parallel_series(), 10);
    for (int k = 1; k <= 10; ++k)
      if (coef[k] != expected[k - 1]) {
        pass = false;
        note = "series coefficient deviates at power " + std::to_string(k);
      }
  }
  if (pass)
    note = std::string("basis, counts, and series agree for sizes 1..") +
           (full ? "10" : "9 (counts; series to power 10)");
  report(8, pass, note);
}

// 9. the greedy runs are optimal: equivalence with the exhaustive-search oracle
void criterion9() {
  VerifyReport one = verify_proposition("psb-optimality", 8, 1);
  VerifyReport two = verify_proposition("parallel-optimality", 7, 1);
  report(9, one.pass && two.pass,
         one.pass && two.pass
             ? "greedy equals exhaustive-search sortability (one stack to 8, two to 7)"
             : (one.pass ? two.detail : one.detail));
}

// 10. simple-sortable counts match the closed form where proven; reported beyond
void criterion10() {
  auto rows = conjecture_report(9, 1);
  bool pass = rows.size() == 10;
  for (int n = 0; n <= 4 && pass; ++n)
    pass = rows[n].computed == rows[n].conjectured;
  pass = pass && rows[3].computed == 0 && rows[4].computed == 2;
  std::string tail;
  for (int n = 5; n < static_cast<int>(rows.size()); ++n)
    tail += std::string(rows[n].match ? " " : " !") + std::to_string(rows[n].computed);
  report(10, pass,
         pass ? "closed form holds through size 4; reported sizes 5..9:" + tail
              : "closed form deviates in the proven range");
}

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--full") == 0) full = true;

  criterion1();
  criterion2();
  criterion3();
  criterion4(full);
  criterion5();
  criterion6();
  criterion7();
  criterion8(full);
  criterion9();
  criterion10();

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
