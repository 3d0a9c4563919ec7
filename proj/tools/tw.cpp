// tw: command-line front end for the frame, symbolic, audit, separation,
// search and relalg modules.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tw/audit.hpp"
#include "tw/error.hpp"
#include "tw/formula.hpp"
#include "tw/frames.hpp"
#include "tw/relalg.hpp"
#include "tw/search.hpp"
#include "tw/separation.hpp"

#ifndef TW_DEFAULT_ALLOWLIST
#define TW_DEFAULT_ALLOWLIST "data/audit_allowlist.txt"
#endif

namespace {

using namespace tw;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Effective configuration goes to stderr so stdout stays the result alone.
void echo(const std::vector<std::pair<std::string, std::string>>& cfg) {
  for (const auto& [k, v] : cfg) std::cerr << "# " << k << '=' << v << '\n';
}

struct Common {
  std::string format = "text";
  unsigned jobs = 1;

  void add(CLI::App* app, bool with_jobs = true) {
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}))->capture_default_str();
    if (with_jobs) app->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  }
  bool records() const { return format == "records"; }
};

struct FrameCmd {
  Common common;
  std::string s = "empty";
  int lo = -2, hi = 2, index_max = 8;
  std::size_t budget = kDefaultVertexBudget;
  bool loops = false;
  std::string in;
};

struct EvalCmd {
  Common common;
  std::string s = "empty";
  std::string term;
  std::string formula;
  std::vector<std::string> at;
};

struct AuditCmd {
  Common common;
  std::string s;
  std::uint64_t seed = 0xB5;
  int samples = 200;
  std::string allowlist = TW_DEFAULT_ALLOWLIST;
};

struct DistinguishCmd {
  Common common;
  std::string s, t;
  int n_bound = 41, m_bound = 64;
};

struct SearchCmd {
  Common common;
  int k = 3;
  std::string constraints;
  std::string emit = "report";
  std::uint64_t seed = 0;
};

struct RelalgCmd {
  Common common;
  std::string in;
  std::string builtin;
  std::string s = "empty";
  std::string scheme;
  std::string x, y;
};

AtomStructure load_structure(const RelalgCmd& c) {
  if (!c.in.empty() == !c.builtin.empty()) throw UsageError("give exactly one of --in or --builtin");
  if (!c.in.empty()) return AtomStructure::parse(read_file(c.in));
  if (c.builtin == "a1") return structure_a1();
  if (c.builtin == "a2") return structure_a2();
  if (c.builtin == "a3") return structure_a3();
  if (c.builtin == "proper1") return proper_structure(1);
  if (c.builtin == "proper2") return proper_structure(2);
  if (c.builtin == "proper3") return proper_structure(3);
  throw UsageError("unknown --builtin '" + c.builtin + "' (a1, a2, a3, proper1, proper2, proper3)");
}

int run_frame(const std::string& sub, const FrameCmd& c) {
  const SParameter s = SParameter::parse(c.s);
  if (sub == "check") {
    if (c.in.empty()) throw UsageError("frame check needs --in <frame file>");
    echo({{"command", "frame check"}, {"s", s.to_string()}, {"in", c.in}, {"format", c.common.format}});
    const Frame f = read_frame_file(read_file(c.in));
    std::size_t mismatches = 0;
    std::string first;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j)
        if (f.has_edge(i, j) != rs_edge(s, f.vertex(i), f.vertex(j))) {
          if (mismatches++ == 0) first = to_string(f.vertex(i)) + "->" + to_string(f.vertex(j));
        }
    std::cout << "vertices=" << f.size() << '\n' << "edges=" << f.edge_count() << '\n';
    std::cout << "reflexive=" << (is_reflexive(f) ? "true" : "false") << '\n';
    std::cout << "total=" << (is_total(f) ? "true" : "false") << '\n';
    std::cout << "rs_mismatches=" << mismatches << '\n';
    if (mismatches) std::cout << "first_mismatch=" << first << '\n';
    return mismatches == 0 ? 0 : 1;
  }
  const TruncationSpec spec{c.lo, c.hi, c.index_max};
  echo({{"command", "frame " + sub},
        {"s", s.to_string()},
        {"levels", std::to_string(c.lo) + ".." + std::to_string(c.hi)},
        {"index_max", std::to_string(c.index_max)},
        {"budget", std::to_string(c.budget)},
        {"format", c.common.format}});
  const Frame f = build_truncation(spec, s, c.budget);
  if (sub == "dot") {
    std::cout << export_dot(f, !c.loops);
  } else if (c.common.records()) {
    std::cout << "vertices=" << f.size() << '\n' << "edges=" << f.edge_count() << '\n';
    std::cout << "reflexive=" << (is_reflexive(f) ? "true" : "false") << '\n';
    std::cout << "total=" << (is_total(f) ? "true" : "false") << '\n';
  } else {
    std::cout << write_frame_file(f);
  }
  return 0;
}

int run_eval(const EvalCmd& c) {
  if (c.term.empty() == c.formula.empty()) throw UsageError("give exactly one of --term or --formula");
  const SParamPtr s = make_sparam(SParameter::parse(c.s));
  std::vector<AlgebraHandle::Element> env;
  std::string at_list;
  for (const auto& a : c.at) {
    env.push_back(SymbolicSet::parse(s, a));
    at_list += (at_list.empty() ? "" : "; ") + a;
  }
  const AlgebraHandle alg = AlgebraHandle::symbolic(s);
  if (!c.term.empty()) {
    const Term t = parse_term(c.term);
    echo({{"command", "eval"}, {"s", s->to_string()}, {"term", c.term}, {"at", at_list}, {"format", c.common.format}});
    const std::string v = to_string(alg.eval(t, env));
    std::cout << (c.common.records() ? "value=" : "") << v << '\n';
  } else {
    const Formula f = parse_formula(c.formula);
    echo({{"command", "eval"}, {"s", s->to_string()}, {"formula", c.formula}, {"at", at_list}, {"format", c.common.format}});
    const bool v = eval_formula(f, alg, env);
    std::cout << (c.common.records() ? "value=" : "") << (v ? "true" : "false") << '\n';
  }
  return 0;
}

int run_audit_cmd(const std::string& name, const AuditCmd& c) {
  const Allowlist allow = Allowlist::load(c.allowlist);
  std::vector<SParameter> family;
  if (c.s.empty()) family = default_family();
  else family.push_back(SParameter::parse(c.s));
  std::string fam;
  for (const auto& s : family) fam += (fam.empty() ? "" : "; ") + s.to_string();
  echo({{"command", "audit " + name},
        {"s", fam},
        {"seed", std::to_string(c.seed)},
        {"samples", std::to_string(c.samples)},
        {"jobs", std::to_string(c.common.jobs)},
        {"allowlist", c.allowlist + " (" + std::to_string(allow.size()) + " entries)"},
        {"format", c.common.format}});
  AuditOptions opt;
  opt.seed = c.seed;
  opt.jobs = c.common.jobs;
  opt.samples = c.samples;
  std::size_t unexpected = 0;
  for (const auto& s : family) {
    const AuditReport r = run_audit(name, make_sparam(s), opt);
    std::cout << (c.common.records() ? r.records() : r.text());
    unexpected += unexpected_counterexamples(r, allow);
  }
  if (c.common.records()) std::cout << "unexpected_counterexamples=" << unexpected << '\n';
  else std::cout << "unexpected counterexamples: " << unexpected << '\n';
  return unexpected == 0 ? 0 : 1;
}

int run_distinguish(const DistinguishCmd& c) {
  const SParameter s = SParameter::parse(c.s);
  const SParameter t = SParameter::parse(c.t);
  echo({{"command", "distinguish"},
        {"s", s.to_string()},
        {"t", t.to_string()},
        {"n_bound", std::to_string(c.n_bound)},
        {"m_bound", std::to_string(c.m_bound)},
        {"jobs", std::to_string(c.common.jobs)},
        {"format", c.common.format}});
  const SeparationReport r = distinguish(s, t, c.n_bound, c.m_bound, c.common.jobs);
  // The key=value lines are the stable interface; text adds the readable summary.
  std::cout << r.records();
  if (!c.common.records()) std::cout << '\n' << r.text();
  return r.verdict == Verdict::Separated ? 0 : 1;
}

int run_search(const std::string& sub, const SearchCmd& c) {
  const StructureConstraints cons = StructureConstraints::parse(c.constraints);
  echo({{"command", "search " + sub},
        {"k", std::to_string(c.k)},
        {"constraints", cons.to_string()},
        {"emit", c.emit},
        {"jobs", std::to_string(c.common.jobs)},
        {"seed", std::to_string(c.seed)},
        {"format", c.common.format}});
  if (sub == "frames") {
    if (c.emit == "structures") throw UsageError("search frames emits frames or report");
    if (c.emit == "frames") {
      for (const auto& f : enumerate_total_frames(c.k, c.common.jobs)) std::cout << write_frame_file(f) << '\n';
      return 0;
    }
    const SearchReport r = search_frames(c.k, c.common.jobs);
    std::cout << r.text();
    std::cerr << "# seconds=" << r.seconds << '\n';
    return 0;
  }
  if (c.emit == "frames") throw UsageError("search structures emits structures or report");
  if (c.emit == "structures") {
    for (const auto& as : enumerate_atom_structures(c.k, cons.symmetric, c.common.jobs)) {
      if (!satisfies(check_axioms(expand(as)), cons)) continue;
      std::cout << as.to_string() << '\n';
    }
    return 0;
  }
  const SearchReport r = search_structures(c.k, cons, c.common.jobs);
  std::cout << r.text();
  std::cerr << "# seconds=" << r.seconds << '\n';
  return 0;
}

int run_relalg(const std::string& sub, const RelalgCmd& c) {
  if (sub == "compose") {
    const SParamPtr s = make_sparam(SParameter::parse(c.s));
    echo({{"command", "relalg compose"}, {"s", s->to_string()}, {"scheme", c.scheme.empty() ? "none" : c.scheme},
          {"x", c.x}, {"y", c.y}, {"format", c.common.format}});
    std::optional<CompositionScheme> scheme;
    if (!c.scheme.empty()) scheme = CompositionScheme::parse(read_file(c.scheme));
    const SymbolicSet v = rel_compose_symbolic(s, scheme, SymbolicSet::parse(s, c.x), SymbolicSet::parse(s, c.y));
    std::cout << (c.common.records() ? "value=" : "") << v.to_string() << '\n';
    return 0;
  }
  const AtomStructure as = load_structure(c);
  echo({{"command", "relalg " + sub}, {"in", c.in.empty() ? "builtin:" + c.builtin : c.in}, {"format", c.common.format}});
  const FiniteRelAlgebra a = expand(as);
  if (sub == "expand") {
    std::cout << "atoms=" << a.atom_count() << '\n' << "elements=" << a.size() << '\n'
              << "identity=" << a.show(a.identity()) << '\n' << a.table_text();
  } else if (sub == "axioms") {
    std::cout << check_axioms(a).text(a);
  } else {
    std::cout << minimal_subalgebra(a).structure().to_string();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tw: frames R_S, the algebras B_S, audits, separation and finite search"};
  app.require_subcommand(1);

  FrameCmd frame;
  auto* frame_app = app.add_subcommand("frame", "Build, render or check finite truncations of R_S");
  frame_app->require_subcommand(1);
  std::string frame_sub;
  for (const char* name : {"build", "dot", "check"}) {
    auto* sub = frame_app->add_subcommand(name, std::string(name) + " a truncation");
    frame.common.add(sub, false);
    sub->add_option("--s", frame.s, "S-parameter, e.g. \"{3,7}\", \"O\", \"empty\"")->capture_default_str();
    if (std::string(name) == "check") {
      sub->add_option("--in", frame.in, "Frame file")->required();
    } else {
      sub->add_option("--lo", frame.lo, "Lowest level")->capture_default_str();
      sub->add_option("--hi", frame.hi, "Highest level")->capture_default_str();
      sub->add_option("--index-max", frame.index_max, "Largest index")->capture_default_str();
      sub->add_option("--budget", frame.budget, "Vertex budget")->capture_default_str();
      if (std::string(name) == "dot") sub->add_flag("--loops", frame.loops, "Draw loops");
    }
    sub->callback([&frame_sub, name] { frame_sub = name; });
  }

  EvalCmd eval;
  auto* eval_app = app.add_subcommand("eval", "Evaluate a term or formula in B_S");
  eval.common.add(eval_app, false);
  eval_app->add_option("--s", eval.s, "S-parameter")->capture_default_str();
  eval_app->add_option("--term", eval.term, "Term, e.g. \"sigma\", \"f(x) & ~g(x)\"");
  eval_app->add_option("--formula", eval.formula, "Formula, e.g. \"tau3\" syntax from the README");
  eval_app->add_option("--at", eval.at, "Values of x, y, ... as set displays, e.g. \"A(0,1)\"");

  AuditCmd audit;
  auto* audit_app = app.add_subcommand("audit", "Mechanical audit of the lemmas about B_S");
  audit_app->require_subcommand(1);
  std::string audit_sub;
  for (const auto& name : audit_names()) {
    auto* sub = audit_app->add_subcommand(name, "audit " + name);
    audit.common.add(sub);
    sub->add_option("--s", audit.s, "S-parameter (default: the five-member family)");
    sub->add_option("--seed", audit.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--samples", audit.samples, "Random elements per parameter")->capture_default_str();
    sub->add_option("--allowlist", audit.allowlist, "Known printed deviations")->capture_default_str();
    sub->callback([&audit_sub, name] { audit_sub = name; });
  }

  DistinguishCmd dist;
  auto* dist_app = app.add_subcommand("distinguish", "Separate B_S and B_T by a sentence exists x tau_n(x)");
  dist.common.add(dist_app);
  dist_app->add_option("--s", dist.s, "First S-parameter")->required();
  dist_app->add_option("--t", dist.t, "Second S-parameter")->required();
  dist_app->add_option("--n-bound", dist.n_bound, "Largest n tried")->capture_default_str();
  dist_app->add_option("--m-bound", dist.m_bound, "Largest atom index searched")->capture_default_str();

  SearchCmd search;
  auto* search_app = app.add_subcommand("search", "Exhaustive search over small frames and atom structures");
  search_app->require_subcommand(1);
  std::string search_sub;
  for (const char* name : {"frames", "structures"}) {
    auto* sub = search_app->add_subcommand(name, std::string("enumerate ") + name);
    search.common.add(sub);
    sub->add_option("--k", search.k, "Number of points or atoms")->capture_default_str();
    sub->add_option("--constraints", search.constraints, "Comma list of sym, refl, subadd, sa, assoc");
    sub->add_option("--emit", search.emit, "What to print")
        ->check(CLI::IsMember({"frames", "structures", "report"}))
        ->capture_default_str();
    sub->add_option("--seed", search.seed, "Unused by the exhaustive modes")->capture_default_str();
    sub->callback([&search_sub, name] { search_sub = name; });
  }

  RelalgCmd rel;
  auto* rel_app = app.add_subcommand("relalg", "Finite relation-type algebras");
  rel_app->require_subcommand(1);
  std::string rel_sub;
  for (const char* name : {"expand", "axioms", "minsub", "compose"}) {
    auto* sub = rel_app->add_subcommand(name, std::string("relalg ") + name);
    rel.common.add(sub, false);
    if (std::string(name) == "compose") {
      sub->add_option("--s", rel.s, "S-parameter")->capture_default_str();
      sub->add_option("--scheme", rel.scheme, "Scheme file with comp:/conv: lines");
      sub->add_option("--x", rel.x, "Left argument")->required();
      sub->add_option("--y", rel.y, "Right argument")->required();
    } else {
      sub->add_option("--in", rel.in, "Atom-structure file");
      sub->add_option("--builtin", rel.builtin, "a1, a2, a3, proper1, proper2, proper3");
    }
    sub->callback([&rel_sub, name] { rel_sub = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help to list the flags\n";
    return 2;
  }

  try {
    if (frame_app->parsed()) return run_frame(frame_sub, frame);
    if (eval_app->parsed()) return run_eval(eval);
    if (audit_app->parsed()) return run_audit_cmd(audit_sub, audit);
    if (dist_app->parsed()) return run_distinguish(dist);
    if (search_app->parsed()) return run_search(search_sub, search);
    if (rel_app->parsed()) return run_relalg(rel_sub, rel);
  } catch (const tw::Error& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help to list the flags\n";
    return 2;
  }
  return 2;
}
