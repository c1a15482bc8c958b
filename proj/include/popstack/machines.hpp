#pragma once

#include <optional>
#include <string>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

enum class OpKind { Push, Pop, Bypass };

// One logged machine operation; stack is 1 or 2 for the two-stack machine,
// 0 for single-stack machines.
struct MachineOp {
  OpKind kind;
  int stack = 0;

  friend bool operator==(const MachineOp& a, const MachineOp& b) {
    return a.kind == b.kind && a.stack == b.stack;
  }
};

inline std::string to_string(const MachineOp& op) {
  std::string s;
  switch (op.kind) {
    case OpKind::Push: s = "PUSH"; break;
    case OpKind::Pop: s = "POP"; break;
    case OpKind::Bypass: s = "BYPASS"; break;
  }
  if (op.stack > 0) s += "@" + std::to_string(op.stack);
  return s;
}

struct MachineTrace {
  Permutation input;
  std::vector<MachineOp> ops;
  Permutation output;
};

// Deterministic replay of an op log: Push moves the next input entry onto the
// named stack, Bypass moves it straight to the output, Pop empties a stack
// top-to-bottom into the output. Verifies the log is physically consistent.
inline Permutation replay(const Permutation& input, const std::vector<MachineOp>& ops) {
  std::vector<int> stacks[2];
  std::vector<int> out;
  int i = 0;
  for (const auto& op : ops) {
    int s = op.stack > 0 ? op.stack - 1 : 0;
    if (s > 1) throw invalid_input("bad stack id in op log");
    switch (op.kind) {
      case OpKind::Push:
        if (i >= input.size()) throw invalid_input("push past end of input");
        stacks[s].push_back(input[i++]);
        break;
      case OpKind::Bypass:
        if (i >= input.size()) throw invalid_input("bypass past end of input");
        out.push_back(input[i++]);
        break;
      case OpKind::Pop:
        while (!stacks[s].empty()) {
          out.push_back(stacks[s].back());
          stacks[s].pop_back();
        }
        break;
    }
  }
  if (i != input.size() || !stacks[0].empty() || !stacks[1].empty())
    throw invalid_input("op log does not consume the whole input");
  return Permutation::unchecked(std::move(out));
}

// Pop stack with bypass, the deterministic one-pass map. The stack always
// holds consecutive values increasing from top to bottom. Each input entry is
// pushed when it extends the stack downward (or the stack is empty), bypassed
// straight to the output when it is too small to ever join the stack's run,
// and otherwise forces a pop before its own push. A final pop drains the stack.
inline MachineTrace psb_trace(const Permutation& p) {
  MachineTrace t;
  t.input = p;
  std::vector<int> stack;  // back = top
  std::vector<int> out;
  out.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int x = p[i];
    if (stack.empty() || x == stack.back() - 1) {
      stack.push_back(x);
      t.ops.push_back({OpKind::Push});
    } else if (x < stack.back() - 1) {
      out.push_back(x);
      t.ops.push_back({OpKind::Bypass});
    } else {
      while (!stack.empty()) {
        out.push_back(stack.back());
        stack.pop_back();
      }
      t.ops.push_back({OpKind::Pop});
      stack.push_back(x);
      t.ops.push_back({OpKind::Push});
    }
  }
  if (!stack.empty()) {
    while (!stack.empty()) {
      out.push_back(stack.back());
      stack.pop_back();
    }
    t.ops.push_back({OpKind::Pop});
  }
  t.output = Permutation::unchecked(std::move(out));
  return t;
}

inline Permutation psb(const Permutation& p) { return psb_trace(p).output; }

// The same map on a sequence of distinct integers, acting by relative order.
inline IntSequence psb_sequence(const IntSequence& s) {
  Permutation red = reduce(s);
  IntSequence sorted = s;
  std::sort(sorted.begin(), sorted.end());
  Permutation img = psb(red);
  IntSequence out(s.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sorted[img[static_cast<int>(i)] - 1];
  return out;
}

// Classical pop stack sorting pass: no bypass, everything flows through the stack.
inline MachineTrace popstack_classic_trace(const Permutation& p) {
  MachineTrace t;
  t.input = p;
  std::vector<int> stack;
  std::vector<int> out;
  out.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int x = p[i];
    if (!stack.empty() && x != stack.back() - 1) {
      while (!stack.empty()) {
        out.push_back(stack.back());
        stack.pop_back();
      }
      t.ops.push_back({OpKind::Pop});
    }
    stack.push_back(x);
    t.ops.push_back({OpKind::Push});
  }
  if (!stack.empty()) {
    while (!stack.empty()) {
      out.push_back(stack.back());
      stack.pop_back();
    }
    t.ops.push_back({OpKind::Pop});
  }
  t.output = Permutation::unchecked(std::move(out));
  return t;
}

inline Permutation popstack_classic(const Permutation& p) {
  return popstack_classic_trace(p).output;
}

// Classical one-pass stack sort.
inline Permutation stacksort(const Permutation& p) {
  std::vector<int> stack;
  std::vector<int> out;
  out.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int x = p[i];
    while (!stack.empty() && stack.back() < x) {
      out.push_back(stack.back());
      stack.pop_back();
    }
    stack.push_back(x);
  }
  while (!stack.empty()) {
    out.push_back(stack.back());
    stack.pop_back();
  }
  return Permutation::unchecked(std::move(out));
}

// Queue with bypass, greedy: keep the queue increasing; when the next entry
// cannot join at the rear, release every smaller front entry and bypass it.
// Sorts exactly the 321-avoiding permutations.
inline Permutation queuesort(const Permutation& p) {
  std::vector<int> queue;  // front at index 0
  std::size_t head = 0;
  std::vector<int> out;
  out.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int x = p[i];
    if (head == queue.size() || x > queue.back()) {
      queue.push_back(x);
    } else {
      while (head < queue.size() && queue[head] < x) out.push_back(queue[head++]);
      out.push_back(x);
    }
  }
  while (head < queue.size()) out.push_back(queue[head++]);
  return Permutation::unchecked(std::move(out));
}

// One left-to-right pass of adjacent swaps.
inline Permutation bubble_pass(const Permutation& p) {
  std::vector<int> v = p.entries();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] > v[i + 1]) std::swap(v[i], v[i + 1]);
  return Permutation::unchecked(std::move(v));
}

enum class MachineKind { Psb, PopstackClassic, Stacksort, Queuesort, BubblePass, ParallelPsb };

inline const char* tag(MachineKind k) {
  switch (k) {
    case MachineKind::Psb: return "psb";
    case MachineKind::PopstackClassic: return "popstack_classic";
    case MachineKind::Stacksort: return "stacksort";
    case MachineKind::Queuesort: return "queuesort";
    case MachineKind::BubblePass: return "bubble_pass";
    case MachineKind::ParallelPsb: return "parallel_psb";
  }
  return "?";
}

inline std::optional<MachineKind> machine_from_tag(const std::string& s) {
  if (s == "psb") return MachineKind::Psb;
  if (s == "popstack_classic" || s == "popstack") return MachineKind::PopstackClassic;
  if (s == "stacksort" || s == "stack") return MachineKind::Stacksort;
  if (s == "queuesort" || s == "queue") return MachineKind::Queuesort;
  if (s == "bubble_pass" || s == "bubble") return MachineKind::BubblePass;
  if (s == "parallel_psb" || s == "parallel") return MachineKind::ParallelPsb;
  return std::nullopt;
}

// Total sorting maps only; the two-stack machine is partial and excluded.
inline Permutation apply_machine(MachineKind k, const Permutation& p) {
  switch (k) {
    case MachineKind::Psb: return psb(p);
    case MachineKind::PopstackClassic: return popstack_classic(p);
    case MachineKind::Stacksort: return stacksort(p);
    case MachineKind::Queuesort: return queuesort(p);
    case MachineKind::BubblePass: return bubble_pass(p);
    case MachineKind::ParallelPsb:
      throw invalid_input("parallel_psb is partial and has no total map");
  }
  throw invalid_input("unknown machine");
}

// Left-to-right pipeline: the first listed machine runs first.
inline Permutation compose(const std::vector<MachineKind>& maps, const Permutation& p) {
  Permutation cur = p;
  for (MachineKind k : maps) cur = apply_machine(k, cur);
  return cur;
}

// Two pop stacks with bypass, run greedily. Rule priority per input entry:
// bypass it when it is the next value needed in the output; otherwise pop a
// stack whose top is next needed (the entry stays pending); otherwise push it
// onto a stack whose top exceeds it by one; otherwise push it into an empty
// stack (stack 1 first); otherwise the machine jams. After the input is
// consumed, stacks are popped whenever a top is next needed.
struct ParallelResult {
  std::optional<MachineTrace> trace;  // engaged iff the input was sorted
  int failed_step = 0;                // 1-based input position of the jam, n+1 if draining

  bool ok() const { return trace.has_value(); }
};

inline ParallelResult parallel_psb(const Permutation& p) {
  const int n = p.size();
  std::vector<int> st[2];
  std::vector<MachineOp> ops;
  std::vector<int> out;
  out.reserve(n);
  int next = 1;

  auto pop_stack = [&](int s) {
    while (!st[s].empty()) {
      out.push_back(st[s].back());
      st[s].pop_back();
      ++next;
    }
    ops.push_back({OpKind::Pop, s + 1});
  };

  int i = 0;
  while (i < n) {
    int x = p[i];
    if (x == next) {
      out.push_back(x);
      ++next;
      ++i;
      ops.push_back({OpKind::Bypass});
    } else if (!st[0].empty() && st[0].back() == next) {
      pop_stack(0);
    } else if (!st[1].empty() && st[1].back() == next) {
      pop_stack(1);
    } else if (!st[0].empty() && st[0].back() == x + 1) {
      st[0].push_back(x);
      ++i;
      ops.push_back({OpKind::Push, 1});
    } else if (!st[1].empty() && st[1].back() == x + 1) {
      st[1].push_back(x);
      ++i;
      ops.push_back({OpKind::Push, 2});
    } else if (st[0].empty()) {
      st[0].push_back(x);
      ++i;
      ops.push_back({OpKind::Push, 1});
    } else if (st[1].empty()) {
      st[1].push_back(x);
      ++i;
      ops.push_back({OpKind::Push, 2});
    } else {
      return {std::nullopt, i + 1};
    }
  }
  while (next <= n) {
    if (!st[0].empty() && st[0].back() == next) {
      pop_stack(0);
    } else if (!st[1].empty() && st[1].back() == next) {
      pop_stack(1);
    } else {
      return {std::nullopt, n + 1};
    }
  }
  MachineTrace t;
  t.input = p;
  t.ops = std::move(ops);
  t.output = Permutation::unchecked(std::move(out));
  return {std::move(t), 0};
}

// Does the machine sort p? For the partial two-stack machine this means the
// greedy run succeeds; for total maps, that the image is the identity.
inline bool sorts(MachineKind k, const Permutation& p) {
  if (k == MachineKind::ParallelPsb) return parallel_psb(p).ok();
  return apply_machine(k, p).is_identity();
}

}  // namespace popstack
