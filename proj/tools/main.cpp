// popstack: command-line frontend for the pop-stack-with-bypass engine.
//
// Subcommands: trace, count, fibers, preimage, basis, paths, series,
// conjecture, verify.  Output is TSV by default, JSON with --format json.
// Exit codes: 0 success, 1 verification failure, 2 usage/input error.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "popstack/analysis.hpp"
#include "popstack/class_basis.hpp"
#include "popstack/machines.hpp"
#include "popstack/motzkin.hpp"
#include "popstack/patterns.hpp"
#include "popstack/preimage.hpp"

namespace {

using nlohmann::json;
using namespace popstack;

struct CommonOpts {
  std::string format = "tsv";
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  int limit = 0;  // 0 = not given; otherwise raises a command's size cap
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--limit", c.limit,
                  "acknowledge a long run by raising the command's size cap to this value");
}

// Commands refuse sizes above a desk-scale default unless --limit raises it.
void enforce_cap(int n, int default_cap, const CommonOpts& c, const std::string& what) {
  int cap = std::max(default_cap, c.limit);
  if (n > cap)
    throw resource_limit(what + " " + std::to_string(n) + " exceeds the default bound " +
                         std::to_string(default_cap) + "; pass --limit " + std::to_string(n) +
                         " to acknowledge the longer run");
}

Permutation parse_perm_args(const std::vector<std::string>& parts) {
  std::string joined;
  for (const auto& p : parts) {
    if (!joined.empty()) joined += ' ';
    joined += p;
  }
  return parse_permutation(joined);
}

void emit(const CommonOpts& c, const json& j, const std::string& tsv) {
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << tsv;
}

std::string ops_line(const std::vector<MachineOp>& ops) {
  std::string s;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) s += ' ';
    s += to_string(ops[i]);
  }
  return s;
}

json ops_json(const std::vector<MachineOp>& ops) {
  json a = json::array();
  for (const auto& op : ops) a.push_back(to_string(op));
  return a;
}

int cmd_trace(const CommonOpts& c, const std::string& machine,
              const std::vector<std::string>& perm_args) {
  auto kind = machine_from_tag(machine);
  if (!kind) throw invalid_input("unknown machine tag: " + machine);
  Permutation p = parse_perm_args(perm_args);
  enforce_cap(static_cast<int>(p.size()), 64, c, "input size");

  json j;
  std::string tsv;
  j["input"] = to_string(p);
  tsv += "input\t" + to_string(p) + "\n";
  switch (*kind) {
    case MachineKind::Psb:
    case MachineKind::PopstackClassic: {
      MachineTrace t =
          *kind == MachineKind::Psb ? psb_trace(p) : popstack_classic_trace(p);
      j["ops"] = ops_json(t.ops);
      j["output"] = to_string(t.output);
      tsv += "ops\t" + ops_line(t.ops) + "\n";
      tsv += "output\t" + to_string(t.output) + "\n";
      break;
    }
    case MachineKind::ParallelPsb: {
      ParallelResult r = parallel_psb(p);
      if (r.ok()) {
        j["ops"] = ops_json(r.trace->ops);
        j["output"] = to_string(r.trace->output);
        tsv += "ops\t" + ops_line(r.trace->ops) + "\n";
        tsv += "output\t" + to_string(r.trace->output) + "\n";
      } else {
        j["failed_at"] = r.failed_step;
        tsv += "failed_at\t" + std::to_string(r.failed_step) + "\n";
      }
      break;
    }
    default: {
      // single-pass maps without a step log
      Permutation out = apply_machine(*kind, p);
      j["output"] = to_string(out);
      tsv += "output\t" + to_string(out) + "\n";
      break;
    }
  }
  emit(c, j, tsv);
  return 0;
}

int cmd_count(const CommonOpts& c, int n, const std::string& machine,
              const std::string& avoid) {
  if (machine.empty() == avoid.empty())
    throw invalid_input("pass exactly one of --machine or --avoid");
  enforce_cap(n, 11, c, "size");
  SequenceTable t;
  if (!machine.empty()) {
    auto kind = machine_from_tag(machine);
    if (!kind) throw invalid_input("unknown machine tag: " + machine);
    t = sortable_table(*kind, n, c.jobs);
  } else {
    t = sortable_table(parse_pattern_set(avoid), n, c.jobs);
  }
  json j;
  j["name"] = t.name;
  j["first_n"] = t.first_n;
  j["terms"] = t.terms;
  std::string tsv;
  for (std::size_t i = 0; i < t.terms.size(); ++i)
    tsv += std::to_string(t.first_n + static_cast<int>(i)) + "\t" +
           std::to_string(t.terms[i]) + "\n";
  emit(c, j, tsv);
  return 0;
}

int cmd_fibers(const CommonOpts& c, int n) {
  enforce_cap(n, 9, c, "size");
  FiberCensus cen = census(n, std::max(9, c.limit));
  json counts = json::object();
  std::string tsv;
  for (const auto& [k, v] : cen.counts) {
    counts[std::to_string(k)] = v;
    tsv += std::to_string(k) + "\t" + std::to_string(v) + "\n";
  }
  json j;
  j["n"] = cen.n;
  j["counts"] = counts;
  emit(c, j, tsv);
  return 0;
}

int cmd_preimage(const CommonOpts& c, const std::vector<std::string>& perm_args) {
  Permutation sigma = parse_perm_args(perm_args);
  enforce_cap(static_cast<int>(sigma.size()), 10, c, "size");
  std::vector<Permutation> pre = preimages(sigma);
  json j;
  j["sigma"] = to_string(sigma);
  json arr = json::array();
  std::string tsv;
  for (const auto& p : pre) {
    arr.push_back(to_string(p));
    tsv += to_string(p) + "\n";
  }
  j["preimages"] = arr;
  emit(c, j, tsv);
  return 0;
}

int cmd_basis(const CommonOpts& c, const std::vector<std::string>& perm_args,
              int witness_bound) {
  Permutation rho = parse_perm_args(perm_args);
  enforce_cap(static_cast<int>(rho.size()), 12, c, "size");
  BasisResult br = preimage_basis(rho);
  json j;
  j["rho"] = to_string(rho);
  std::string tsv;
  if (br.is_class()) {
    j["class"] = true;
    json arr = json::array();
    for (const auto& b : *br.basis) {
      arr.push_back(to_string(b));
      tsv += to_string(b) + "\n";
    }
    j["basis"] = arr;
  } else {
    j["class"] = false;
    tsv += "NOT_A_CLASS\n";
    if (witness_bound > 0) {
      enforce_cap(witness_bound, 8, c, "witness bound");
      auto w = closure_witness(
          [&rho](const Permutation& p) { return avoids(psb(p), rho); }, witness_bound);
      if (w) {
        j["witness"] = {{"sigma", to_string(w->sigma)}, {"tau", to_string(w->tau)}};
        tsv += "witness\t" + to_string(w->sigma) + "\t" + to_string(w->tau) + "\n";
      } else {
        j["witness"] = nullptr;
        tsv += "witness\tnone\n";
      }
    }
  }
  emit(c, j, tsv);
  return 0;
}

int cmd_paths(const CommonOpts& c, int n, bool count_only) {
  json j;
  std::string tsv;
  if (count_only) {
    enforce_cap(n, 30, c, "size");
    j["first_n"] = 0;
    json terms = json::array();
    for (int k = 0; k <= n; ++k) {
      long long v = count_restricted(k);
      terms.push_back(v);
      tsv += std::to_string(k) + "\t" + std::to_string(v) + "\n";
    }
    j["terms"] = terms;
  } else {
    enforce_cap(n, 12, c, "size");
    j["n"] = n;
    json arr = json::array();
    for (const auto& p : gen_restricted(n)) {
      arr.push_back(to_string(p));
      tsv += to_string(p) + "\n";
    }
    j["paths"] = arr;
  }
  emit(c, j, tsv);
  return 0;
}

int cmd_series(const CommonOpts& c, int order) {
  enforce_cap(order, 40, c, "order");
  RationalSeries s = parallel_series();
  std::vector<long long> coef = gf_expand(s, order);
  std::cerr << "note: coefficients count the sorted class itself; the published form "
               "describes its inverse class, and inversion preserves size\n";
  json j;
  j["numerator"] = s.num;
  j["denominator"] = s.den;
  j["coefficients"] = coef;
  std::string tsv;
  for (int k = 0; k <= order; ++k)
    tsv += std::to_string(k) + "\t" + std::to_string(coef[k]) + "\n";
  emit(c, j, tsv);
  return 0;
}

int cmd_conjecture(const CommonOpts& c, int n) {
  enforce_cap(n, 9, c, "size");
  auto rows = conjecture_report(n, c.jobs);
  json arr = json::array();
  std::string tsv;
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"computed", r.computed},
                   {"conjectured", r.conjectured},
                   {"match", r.match}});
    tsv += std::to_string(r.n) + "\t" + std::to_string(r.computed) + "\t" +
           std::to_string(r.conjectured) + "\t" + (r.match ? "match" : "MISMATCH") + "\n";
  }
  json j;
  j["rows"] = arr;
  emit(c, j, tsv);
  return 0;
}

int cmd_verify(const CommonOpts& c, std::vector<std::string> ids, int n_override) {
  if (ids.empty())
    for (const auto& p : propositions()) ids.push_back(p.id);
  for (const auto& id : ids)
    if (!find_proposition(id)) throw invalid_input("unknown proposition id: " + id);
  if (n_override > 0) enforce_cap(n_override, 11, c, "bound");

  bool all_pass = true;
  json arr = json::array();
  std::string tsv;
  for (const auto& id : ids) {
    VerifyReport rep = verify_proposition(id, n_override > 0 ? n_override : -1, c.jobs);
    all_pass = all_pass && rep.pass;
    arr.push_back({{"id", rep.id},
                   {"bound", rep.bound},
                   {"pass", rep.pass},
                   {"detail", rep.detail}});
    tsv += rep.id + "\t" + std::to_string(rep.bound) + "\t" + (rep.pass ? "PASS" : "FAIL") +
           "\t" + (rep.detail.empty() ? "-" : rep.detail) + "\n";
  }
  json j;
  j["reports"] = arr;
  emit(c, j, tsv);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pop-stack-with-bypass sorting engine"};
  app.require_subcommand(1);
  CommonOpts c;

  auto* trace = app.add_subcommand("trace", "run one permutation through a machine");
  std::string trace_machine = "psb";
  std::vector<std::string> trace_perm;
  trace->add_option("--machine", trace_machine,
                    "psb | popstack_classic | stacksort | queuesort | bubble_pass | parallel_psb");
  trace->add_option("perm", trace_perm, "permutation (compact digits or space-separated)")
      ->required();
  add_common(trace, c);

  auto* count = app.add_subcommand("count", "sortable (or avoiding) counts for sizes 1..n");
  int count_n = 0;
  std::string count_machine, count_avoid;
  count->add_option("--n", count_n, "largest size")->required()->check(CLI::PositiveNumber);
  count->add_option("--machine", count_machine, "machine whose sortable permutations to count");
  count->add_option("--avoid", count_avoid, "comma-separated patterns to avoid instead");
  add_common(count, c);

  auto* fibers = app.add_subcommand("fibers", "fiber-size census of the pop-stack-with-bypass map");
  int fibers_n = 0;
  fibers->add_option("--n", fibers_n, "size")->required()->check(CLI::PositiveNumber);
  add_common(fibers, c);

  auto* preimage = app.add_subcommand("preimage", "all inputs mapping to the given output");
  std::vector<std::string> preimage_perm;
  preimage->add_option("sigma", preimage_perm, "target permutation")->required();
  add_common(preimage, c);

  auto* basis = app.add_subcommand("basis",
                                   "basis of the sorted-into-Av(rho) class, when it is a class");
  std::vector<std::string> basis_perm;
  int basis_witness = 0;
  basis->add_option("rho", basis_perm, "pattern defining the principal class")->required();
  basis->add_option("--witness-bound", basis_witness,
                    "when not a class, search sizes up to this bound for a closure witness");
  add_common(basis, c);

  auto* paths = app.add_subcommand("paths", "restricted Motzkin paths");
  int paths_n = 0;
  bool paths_count = false;
  paths->add_option("--n", paths_n, "total up+horizontal steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  paths->add_flag("--count", paths_count, "print counts for 0..n instead of listing paths");
  add_common(paths, c);

  auto* series = app.add_subcommand("series",
                                    "coefficients of the two-stack machine's generating function");
  int series_order = 10;
  series->add_option("--order", series_order, "highest power expanded")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common(series, c);

  auto* conjecture = app.add_subcommand("conjecture",
                                        "simple sortable permutations vs the closed form");
  int conjecture_n = 6;
  conjecture->add_option("--n", conjecture_n, "largest size")->capture_default_str();
  add_common(conjecture, c);

  auto* verify = app.add_subcommand("verify", "exhaustively check registered propositions");
  std::vector<std::string> verify_ids;
  int verify_n = 0;
  verify->add_option("ids", verify_ids, "proposition ids (default: all)");
  verify->add_option("--n", verify_n, "override every requested proposition's bound");
  add_common(verify, c);

  try {
    app.parse(argc, argv);
    if (trace->parsed()) return cmd_trace(c, trace_machine, trace_perm);
    if (count->parsed()) return cmd_count(c, count_n, count_machine, count_avoid);
    if (fibers->parsed()) return cmd_fibers(c, fibers_n);
    if (preimage->parsed()) return cmd_preimage(c, preimage_perm);
    if (basis->parsed()) return cmd_basis(c, basis_perm, basis_witness);
    if (paths->parsed()) return cmd_paths(c, paths_n, paths_count);
    if (series->parsed()) return cmd_series(c, series_order);
    if (conjecture->parsed()) return cmd_conjecture(c, conjecture_n);
    if (verify->parsed()) return cmd_verify(c, verify_ids, verify_n);
    return 2;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_pattern& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_limit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
