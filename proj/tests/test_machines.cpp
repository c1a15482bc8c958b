#include <catch2/catch_amalgamated.hpp>

#include "popstack/machines.hpp"
#include "popstack/patterns.hpp"

using namespace popstack;

namespace {
std::vector<std::string> op_strings(const MachineTrace& t) {
  std::vector<std::string> out;
  for (const auto& op : t.ops) out.push_back(to_string(op));
  return out;
}
}  // namespace

TEST_CASE("bypass machine traces") {
  MachineTrace t = psb_trace(Permutation({3, 2, 1}));
  CHECK(op_strings(t) == std::vector<std::string>{"PUSH", "PUSH", "PUSH", "POP"});
  CHECK(t.output == Permutation({1, 2, 3}));

  t = psb_trace(Permutation({2, 3, 1}));
  CHECK(op_strings(t) == std::vector<std::string>{"PUSH", "POP", "PUSH", "BYPASS", "POP"});
  CHECK(t.output == Permutation({2, 1, 3}));

  // 4213: push 4; 2 and 1 ride past the stack; 3 = top-1 stacks on the 4
  t = psb_trace(Permutation({4, 2, 1, 3}));
  CHECK(op_strings(t) ==
        std::vector<std::string>{"PUSH", "BYPASS", "BYPASS", "PUSH", "POP"});
  CHECK(t.output == Permutation({2, 1, 3, 4}));

  CHECK(psb(Permutation({3, 2, 1})) == Permutation({1, 2, 3}));
  CHECK(psb(Permutation(IntSequence{})) == Permutation(IntSequence{}));
  CHECK(psb(Permutation({1})) == Permutation({1}));
}

TEST_CASE("bypass machine on value sequences") {
  CHECK(psb_sequence({9, 4, 2}) == IntSequence({2, 4, 9}));
  CHECK(psb_sequence({4, 6, 2}) == IntSequence({4, 2, 6}));
}

TEST_CASE("sorted outputs end with the maximum") {
  for (int n = 1; n <= 7; ++n)
    for (const Permutation& p : all_permutations(n)) CHECK(psb(p)[n - 1] == n);
}

TEST_CASE("every trace replays") {
  for (int n = 0; n <= 7; ++n)
    for (const Permutation& p : all_permutations(n)) {
      MachineTrace t = psb_trace(p);
      CHECK(replay(t.input, t.ops) == t.output);
      MachineTrace tc = popstack_classic_trace(p);
      CHECK(replay(tc.input, tc.ops) == tc.output);
      ParallelResult r = parallel_psb(p);
      if (r.ok()) CHECK(replay(r.trace->input, r.trace->ops) == r.trace->output);
    }
}

TEST_CASE("classic pop stack sorts exactly the {231,312}-avoiders") {
  CHECK(popstack_classic(Permutation({2, 3, 1})) != Permutation::identity(3));
  CHECK(popstack_classic(Permutation({3, 1, 2})) != Permutation::identity(3));
  PatternSet basis = parse_pattern_set("231,312");
  for (int n = 1; n <= 8; ++n)
    for (const Permutation& p : all_permutations(n))
      CHECK((popstack_classic(p).is_identity()) == avoids_all(p, basis));
}

TEST_CASE("stack sorting") {
  CHECK(stacksort(Permutation({2, 3, 1})) == Permutation({2, 1, 3}));
  CHECK(stacksort(Permutation({3, 5, 2, 4, 1})) == Permutation({3, 2, 1, 4, 5}));
  // sorts exactly the 231-avoiders
  for (int n = 1; n <= 7; ++n)
    for (const Permutation& p : all_permutations(n))
      CHECK(stacksort(p).is_identity() == avoids(p, Permutation({2, 3, 1})));
}

TEST_CASE("queue sorting") {
  CHECK(queuesort(Permutation({3, 2, 1})) == Permutation({2, 1, 3}));
  CHECK(queuesort(Permutation({3, 1, 2})) == Permutation({1, 2, 3}));
  // sorts exactly the 321-avoiders
  for (int n = 1; n <= 7; ++n)
    for (const Permutation& p : all_permutations(n))
      CHECK(queuesort(p).is_identity() == avoids(p, Permutation({3, 2, 1})));
}

TEST_CASE("bubble pass") {
  CHECK(bubble_pass(Permutation({3, 1, 4, 2})) == Permutation({1, 3, 2, 4}));
  CHECK(bubble_pass(Permutation({2, 1})) == Permutation({1, 2}));
  // one pass sorts exactly the {231,321}-avoiders
  PatternSet basis = parse_pattern_set("231,321");
  for (int n = 1; n <= 7; ++n)
    for (const Permutation& p : all_permutations(n))
      CHECK(bubble_pass(p).is_identity() == avoids_all(p, basis));
}

TEST_CASE("composition applies left to right") {
  // bypass machine first, then queue
  Permutation p({3, 4, 2, 1});
  CHECK(compose({MachineKind::Psb, MachineKind::Queuesort}, p) ==
        queuesort(psb(p)));
  CHECK(compose({MachineKind::Psb, MachineKind::Queuesort},
                Permutation({3, 2, 1})) == Permutation::identity(3));
  CHECK(compose({MachineKind::Psb, MachineKind::Queuesort},
                Permutation({3, 4, 2, 1})) != Permutation::identity(4));
  CHECK(compose({MachineKind::Psb, MachineKind::Stacksort},
                Permutation({2, 3, 4, 1})) != Permutation::identity(4));
  CHECK(compose({}, p) == p);
}

TEST_CASE("machine tags round trip") {
  for (MachineKind k :
       {MachineKind::Psb, MachineKind::PopstackClassic, MachineKind::Stacksort,
        MachineKind::Queuesort, MachineKind::BubblePass, MachineKind::ParallelPsb})
    CHECK(machine_from_tag(tag(k)) == k);
  CHECK(!machine_from_tag("nonsense").has_value());
}

TEST_CASE("two-stack machine success and failure") {
  ParallelResult ok = parallel_psb(Permutation({3, 1, 4, 2}));
  REQUIRE(ok.ok());
  CHECK(ok.trace->output == Permutation::identity(4));

  ParallelResult bad = parallel_psb(Permutation({2, 3, 4, 1}));
  CHECK(!bad.ok());
  CHECK(bad.failed_step >= 1);

  CHECK(parallel_psb(Permutation(IntSequence{})).ok());
  CHECK(parallel_psb(Permutation({1})).ok());
  // identity output whenever the machine succeeds
  for (int n = 1; n <= 7; ++n)
    for (const Permutation& p : all_permutations(n)) {
      ParallelResult r = parallel_psb(p);
      if (r.ok()) CHECK(r.trace->output.is_identity());
    }
}

TEST_CASE("two-stack ops are stamped with their stack") {
  ParallelResult r = parallel_psb(Permutation({3, 1, 4, 2}));
  REQUIRE(r.ok());
  bool saw_stack2 = false;
  for (const auto& op : r.trace->ops)
    if (op.stack == 2) saw_stack2 = true;
  CHECK(saw_stack2);
}

TEST_CASE("applying the partial machine as a total map is rejected") {
  CHECK_THROWS_AS(apply_machine(MachineKind::ParallelPsb, Permutation({2, 3, 4, 1})),
                  invalid_input);
  CHECK(sorts(MachineKind::ParallelPsb, Permutation({3, 1, 4, 2})));
  CHECK(!sorts(MachineKind::ParallelPsb, Permutation({2, 3, 4, 1})));
}
