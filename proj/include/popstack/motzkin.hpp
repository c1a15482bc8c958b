#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "popstack/errors.hpp"
#include "popstack/numeric.hpp"

namespace popstack {

enum class Step : char { Up = 'U', Horizontal = 'H', Down = 'D' };

// Lattice path over {U,H,D} that never dips below the axis and ends on it.
struct MotzkinPath {
  std::vector<Step> steps;

  friend bool operator==(const MotzkinPath& a, const MotzkinPath& b) {
    return a.steps == b.steps;
  }
};

inline std::string to_string(const MotzkinPath& p) {
  std::string s;
  s.reserve(p.steps.size());
  for (Step st : p.steps) s += static_cast<char>(st);
  return s;
}

inline MotzkinPath parse_path(const std::string& text) {
  MotzkinPath p;
  for (char c : text) {
    switch (c) {
      case 'U': p.steps.push_back(Step::Up); break;
      case 'H': p.steps.push_back(Step::Horizontal); break;
      case 'D': p.steps.push_back(Step::Down); break;
      default: throw invalid_input(std::string("bad path step: ") + c);
    }
  }
  return p;
}

inline bool is_valid_motzkin(const MotzkinPath& p) {
  int level = 0;
  for (Step s : p.steps) {
    if (s == Step::Up) ++level;
    if (s == Step::Down) --level;
    if (level < 0) return false;
  }
  return level == 0;
}

// The restriction matching the sortable permutations: no peak (U immediately
// followed by D), and every maximal run of D steps returns to the axis.
// Throws on input that is not a Motzkin path at all.
inline bool is_restricted(const MotzkinPath& p) {
  if (!is_valid_motzkin(p)) throw invalid_input("not a Motzkin path");
  int level = 0;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    Step s = p.steps[i];
    if (s == Step::Up) ++level;
    if (s == Step::Down) --level;
    if (s == Step::Up && i + 1 < p.steps.size() && p.steps[i + 1] == Step::Down) return false;
    if (s == Step::Down && level > 0 && (i + 1 == p.steps.size() || p.steps[i + 1] != Step::Down))
      return false;  // a down-run stopped above the axis
  }
  return true;
}

// All restricted paths with exactly n steps counted among U and H (D steps are
// free), emitted in lexicographic order under U < H < D.
inline std::vector<MotzkinPath> gen_restricted(int n) {
  if (n < 0) throw invalid_input("negative size");
  std::vector<MotzkinPath> out;
  std::vector<Step> cur;

  // last: 0 start-or-H, 1 U, 2 D
  auto go = [&](auto&& self, int remaining, int level, int last) -> void {
    if (remaining == 0 && level == 0) {
      out.push_back({cur});
      // a trailing D-run could continue only from level > 0
      return;
    }
    bool in_down_run = last == 2 && level > 0;
    if (remaining > 0 && !in_down_run) {
      cur.push_back(Step::Up);
      self(self, remaining - 1, level + 1, 1);
      cur.pop_back();
      cur.push_back(Step::Horizontal);
      self(self, remaining - 1, level, 0);
      cur.pop_back();
    }
    if (level > 0 && last != 1) {
      cur.push_back(Step::Down);
      self(self, remaining, level - 1, 2);
      cur.pop_back();
    }
  };
  go(go, n, 0, 0);
  return out;
}

// Counts gen_restricted(n) without materializing it; usable far past the
// enumeration range. Memoized on (remaining, level, last).
inline long long count_restricted(int n) {
  if (n < 0) throw invalid_input("negative size");
  std::map<std::tuple<int, int, int>, long long> memo;
  auto go = [&](auto&& self, int remaining, int level, int last) -> long long {
    if (remaining == 0) {
      if (level == 0) return 1;
      return last == 1 ? 0 : 1;  // forced straight descent, illegal after U
    }
    auto key = std::make_tuple(remaining, level, last);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long long r = 0;
    bool in_down_run = last == 2 && level > 0;
    if (!in_down_run) {
      r = checked_add(r, self(self, remaining - 1, level + 1, 1));
      r = checked_add(r, self(self, remaining - 1, level, 0));
    }
    if (level > 0 && last != 1) r = checked_add(r, self(self, remaining, level - 1, 2));
    memo[key] = r;
    return r;
  };
  return go(go, n, 0, 0);
}

}  // namespace popstack
