// spreadset: command-line front end for the target-set library.
//
//   spreadset <command> --graph FILE [options]
//
// Exit codes: 0 ok, 1 internal failure, 2 enumeration budget exceeded,
// 3 Case II conditions not met, 4 invalid input. `search` additionally
// returns 10 for an unconfirmed local optimum and 11 for a dead end.

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spreadset/report.hpp"
#include "spreadset/spreadset.hpp"

namespace {

using namespace spreadset;
using nlohmann::json;

enum ExitCode {
  kOk = 0,
  kInternal = 1,
  kBudget = 2,
  kConditionsNotMet = 3,
  kInputError = 4,
  kLocalOptimum = 10,
  kDeadEnd = 11,
};

struct Config {
  std::string command;
  std::string graph_path;
  std::string output = "json";
  std::string target;
  std::string start;
  std::string from;
  std::string cover;
  std::string k = "auto";
  std::string construction = "auto";
  std::string base;
  std::size_t m = 1;
  double c = 0.9;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> order_seed;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t walks = 10'000;
  std::size_t max_listed = 200;
  bool table = false;

  json to_json() const {
    json j = {{"command", command}, {"graph", graph_path}, {"output", output},
              {"budget", budget}};
    if (command == "hitting" || command == "mc") j["target"] = target;
    if (command == "mc") {
      j["walks"] = walks;
      j["seed"] = seed;
    }
    if (command == "solve" || command == "greedy" || command == "search") j["M"] = m;
    if (command == "greedy" && !from.empty()) j["from"] = from;
    if (command == "family" || command == "greedoid" || command == "search") {
      j["c"] = c;
      j["K"] = k;
      if (!cover.empty()) j["cover"] = cover;
    }
    if (command == "greedoid" || command == "search") {
      j["case"] = construction;
      if (!base.empty()) j["H"] = base;
    }
    if (command == "search") {
      if (!start.empty()) j["start"] = start;
      j["table"] = table;
    }
    if (order_seed) j["order_seed"] = *order_seed;
    return j;
  }
};

// Failure that maps straight to an exit code.
struct Exit {
  int code;
  std::string message;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  json result;
  std::vector<std::string> summary;
  Table table;
  int code = kOk;
};

std::string fmt(double v) {
  if (!std::isfinite(v)) return "-";
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string show(const NodeSet& s, const Labels& L) {
  std::string out = "{";
  bool first = true;
  for (Node v : s) {
    if (!first) out += ",";
    out += std::to_string(L(v));
    first = false;
  }
  return out + "}";
}

// Sets on the command line are comma-separated external labels.
NodeSet parse_set(const std::string& text, const LabeledGraph& lg) {
  std::vector<Node> nodes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::uint64_t label = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), label);
    if (ec != std::errc() || p != item.data() + item.size())
      throw Error(ErrorKind::InvalidInput, "bad node label '" + item + "'");
    nodes.push_back(lg.node_of(label));
  }
  return NodeSet(std::move(nodes));
}

LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  LabeledGraph lg = parse_labeled_graph(buf.str());
  if (is_bipartite(lg.graph))
    std::cerr << "warning: graph is bipartite, so the walk is periodic; hitting times are still finite\n";
  return lg;
}

NodeSet resolve_cover(const Config& cfg, const LabeledGraph& lg) {
  if (cfg.k == "auto") {
    if (!cfg.cover.empty()) return parse_set(cfg.cover, lg);
    return two_opt_matching(lg.graph, cfg.order_seed).vertices;
  }
  std::size_t k = 0;
  auto [p, ec] = std::from_chars(cfg.k.data(), cfg.k.data() + cfg.k.size(), k);
  if (ec != std::errc() || p != cfg.k.data() + cfg.k.size())
    throw Error(ErrorKind::InvalidInput, "--k must be 'auto' or a positive integer");
  if (cfg.cover.empty()) throw Error(ErrorKind::InvalidInput, "--k " + cfg.k + " requires --cover");
  NodeSet cover = parse_set(cfg.cover, lg);
  if (cover.size() != k)
    throw Error(ErrorKind::InvalidInput, "--cover has " + std::to_string(cover.size()) +
                                             " vertices but --k is " + cfg.k);
  return cover;
}

RankedFamily ranked_family(const Config& cfg, const LabeledGraph& lg, ObjectiveOracle& f) {
  check_threshold(cfg.c);
  auto ctx = build_context(lg.graph, f, resolve_cover(cfg, lg));
  return enumerate_family(f, ctx, cfg.c, {cfg.budget, true});
}

// Builds the family selected by --case; Case II refusals become exit 3.
FeasibleFamily feasible_family(const Config& cfg, const LabeledGraph& lg, const RankedFamily& ranked) {
  if (cfg.construction == "case1") {
    std::optional<NodeSet> h;
    if (!cfg.base.empty()) h = parse_set(cfg.base, lg);
    return build_case1(ranked, h);
  }
  if (cfg.construction == "case2") {
    auto r = build_case2(ranked);
    if (auto* fam = std::get_if<FeasibleFamily>(&r)) return std::move(*fam);
    const auto& why = std::get<ConditionsNotMet>(r);
    throw Exit{kConditionsNotMet,
               "conditions not met at level " + std::to_string(why.level) + ": " + why.reason};
  }
  return build_auto(ranked);
}

Report cmd_hitting(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  auto h = hitting_times(lg.graph, parse_set(cfg.target, lg));
  Report r{to_json(h, L), {}, {{"node", "h"}, {}}};
  for (std::size_t i = 0; i < h.sources.size(); ++i)
    r.table.rows.push_back({std::to_string(L(h.sources[i])), fmt(h.times[i])});
  r.summary.push_back("F(" + show(h.target, L) + ") = " + fmt(h.objective));
  return r;
}

Report cmd_mc(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  NodeSet a = parse_set(cfg.target, lg);
  auto est = monte_carlo_objective(lg.graph, a, cfg.walks, cfg.seed);
  const double exact = objective(lg.graph, a);
  const double z = est.standard_error > 0 ? std::abs(est.estimate - exact) / est.standard_error : 0.0;
  Report r;
  r.result = {{"target", L.set(a)},     {"estimate", est.estimate},
              {"standard_error", est.standard_error}, {"walks", est.walks},
              {"steps", est.steps},     {"exact", exact},
              {"z", z}};
  r.table = {{"estimate", "standard_error", "exact", "z"},
             {{fmt(est.estimate), fmt(est.standard_error), fmt(exact), fmt(z)}}};
  return r;
}

Report cmd_solve(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  ObjectiveOracle f(lg.graph);
  auto t0 = std::chrono::steady_clock::now();
  Optimum opt;
  try {
    opt = brute_force_optimal(f, cfg.m, {cfg.budget, std::nullopt});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    throw Exit{kBudget, std::string(e.what()) + "; try the greedy or search commands"};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Report r{to_json(opt, L), {}, {{"set", "F"}, {}}};
  r.result["seconds"] = secs;
  for (const auto& s : opt.argmin) r.table.rows.push_back({show(s, L), fmt(opt.value)});
  r.summary.push_back("optimum over |A| = " + std::to_string(cfg.m) + ": F = " + fmt(opt.value) + ", " +
                      std::to_string(opt.argmin.size()) + " minimizer(s), " +
                      std::to_string(opt.evaluated) + " sets evaluated");
  return r;
}

Report cmd_greedy(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  ObjectiveOracle f(lg.graph);
  NodeSet from = cfg.from.empty() ? NodeSet{} : parse_set(cfg.from, lg);
  auto trace = greedy_select(f, cfg.m, from);
  Report r{{{"trace", to_json(trace, L)}}, {}, {{"step", "added", "set", "F"}, {}}};
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    r.table.rows.push_back({std::to_string(i + 1), std::to_string(L(s.added)), show(s.set, L), fmt(s.value)});
  }
  r.summary.push_back("greedy set " + show(trace.final_set, L) + " with F = " + fmt(trace.final_value));
  // The bound compares greedy from the first chosen node with the best
  // M-set containing that node.
  if (!trace.final_set.empty()) {
    const Node a = from.empty() ? trace.steps.front().added : from[0];
    try {
      auto bound = greedy_bound_gap(f, a, cfg.m, cfg.budget);
      r.result["bound"] = to_json(bound, L);
      r.summary.push_back("greedy bound from node " + std::to_string(L(a)) + ": lhs " + fmt(bound.lhs) +
                          " >= rhs " + fmt(bound.rhs) + (bound.holds() ? " holds" : " VIOLATED"));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      r.result["bound"] = nullptr;
      r.summary.push_back("greedy bound skipped: " + std::string(e.what()));
    }
  }
  return r;
}

Report cmd_cover(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  const Graph& g = lg.graph;
  auto match = two_opt_matching(g, cfg.order_seed);
  const double f_cover = objective(g, match.vertices);
  const double expected = static_cast<double>(g.node_count() - match.vertices.size());
  Report r{{{"matching", to_json(match, L)},
            {"F_cover", f_cover},
            {"N_minus_K", expected},
            {"cover_attains_floor", nearly_equal(f_cover, expected)}},
           {},
           {{"u", "v"}, {}}};
  for (const auto& e : match.edges) r.table.rows.push_back({std::to_string(L(e.u)), std::to_string(L(e.v))});
  r.summary.push_back("cover " + show(match.vertices, L) + ", K = " + std::to_string(match.vertices.size()) +
                      ", F = " + fmt(f_cover) + " (N - K = " + fmt(expected) + ")");
  try {
    NodeSet opt = minimum_vertex_cover(g, cfg.budget);
    const double ratio = static_cast<double>(match.vertices.size()) / static_cast<double>(opt.size());
    r.result["minimum_cover"] = L.set(opt);
    r.result["OPT"] = opt.size();
    r.result["ratio"] = ratio;
    r.result["ratio_within_2"] = opt.size() <= match.vertices.size() && match.vertices.size() <= 2 * opt.size();
    r.summary.push_back("OPT = " + std::to_string(opt.size()) + ", ratio = " + fmt(ratio));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    r.result["OPT"] = nullptr;
    r.summary.push_back("minimum cover skipped: " + std::string(e.what()));
  }
  return r;
}

Report cmd_family(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  ObjectiveOracle f(lg.graph);
  auto ranked = ranked_family(cfg, lg, f);
  Report r{to_json(ranked, L, cfg.max_listed), {}, {{"n", "set", "F", "rho"}, {}}};
  for (std::size_t n = 1; n <= ranked.k(); ++n)
    for (const auto& e : ranked.level(n))
      r.table.rows.push_back({std::to_string(n), show(e.set, L), fmt(e.value), fmt(e.rho)});
  const auto& ctx = ranked.context();
  r.summary.push_back("K = " + std::to_string(ctx.k) + ", F_min = " + fmt(ctx.f_min) +
                      ", F_max = " + fmt(ctx.f_max) + ", m = " + std::to_string(ranked.m()) +
                      ", |L| = " + std::to_string(ranked.size()));
  return r;
}

Report cmd_greedoid(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  ObjectiveOracle f(lg.graph);
  auto ranked = ranked_family(cfg, lg, f);
  auto fam = feasible_family(cfg, lg, ranked);
  auto axioms = check_axioms(fam.sets());
  auto ladder = check_T_ladder(fam, ranked);
  Report r{{{"family", to_json(fam, L)}, {"axioms", to_json(axioms, L)}, {"ladder", to_json(ladder, L)}},
           {},
           {{"n", "set", "rule", "via", "F"}, {}}};
  for (std::size_t n = 0; n <= fam.max_level(); ++n)
    for (const auto& a : fam.level(n))
      r.table.rows.push_back({std::to_string(n), show(a.set, L), to_string(a.rule),
                              a.via ? show(*a.via, L) : "-", a.set.empty() ? "-" : fmt(f(a.set))});
  r.summary.push_back(std::string(to_string(fam.construction())) + " family: m = " + std::to_string(fam.m()) +
                      ", " + std::to_string(fam.size()) + " feasible sets, axioms " +
                      (axioms.ok() ? "ok" : "VIOLATED") + ", T1-T4 " + (ladder.ok() ? "ok" : "VIOLATED"));
  if (!axioms.ok() || !ladder.ok()) r.code = kInternal;
  return r;
}

Report cmd_search(const Config& cfg, const LabeledGraph& lg) {
  Labels L(lg.labels);
  ObjectiveOracle f(lg.graph);
  auto ranked = ranked_family(cfg, lg, f);
  auto fam = feasible_family(cfg, lg, ranked);
  if (cfg.m < std::max<std::size_t>(1, fam.m()) || cfg.m > fam.max_level())
    throw Error(ErrorKind::InvalidInput, "--m must lie in [m, K] = [" + std::to_string(fam.m()) + ", " +
                                             std::to_string(fam.max_level()) + "]");

  // Default start: the stepwise extension of the best base-level set.
  std::vector<NodeSet> bases;
  for (const auto& a : fam.level(fam.m())) bases.push_back(a.set);
  NodeSet start;
  if (!cfg.start.empty()) {
    start = parse_set(cfg.start, lg);
  } else {
    auto rows = extension_table(fam, f, bases, cfg.m);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : rows)
      if (row.trace.status == SearchStatus::Reached && strictly_less(row.trace.best_value, best)) {
        best = row.trace.best_value;
        start = row.trace.final_set();
      }
    if (start.empty()) start = bases.front();
  }
  auto trace = local_search(fam, f, start, cfg.m);

  Report r{{{"case", to_string(fam.construction())}, {"m", fam.m()}, {"trace", to_json(trace, L)}},
           {},
           {{"step", "move", "set", "F"}, {}}};
  r.table.rows.push_back({"0", "start", show(trace.start, L), fmt(trace.start_value)});
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    const auto& mv = trace.moves[i];
    r.table.rows.push_back({std::to_string(i + 1), to_string(mv.kind), show(mv.set, L), fmt(mv.value)});
  }

  if (trace.status == SearchStatus::DeadEnd) {
    r.code = kDeadEnd;
    r.result["verdict"] = "dead_end";
    r.summary.push_back("dead end at " + show(*trace.stuck, L));
  } else {
    std::optional<double> opt;
    try {
      opt = brute_force_optimal(f, cfg.m, {cfg.budget, std::nullopt}).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
    const bool confirmed = opt && !strictly_less(*opt, trace.best_value);
    r.code = confirmed ? kOk : kLocalOptimum;
    r.result["oracle_F"] = opt ? json(*opt) : json(nullptr);
    r.result["verdict"] = confirmed ? "optimal" : "local_optimum";
    r.summary.push_back("best " + show(*trace.best, L) + " with F = " + fmt(trace.best_value) +
                        (confirmed ? " (optimal)"
                                   : opt ? " (local optimum; oracle F = " + fmt(*opt) + ")"
                                         : " (local optimum; oracle over budget)"));
  }

  if (cfg.table) {
    auto rows = extension_table(fam, f, bases, cfg.m);
    Table ext{{"base", "F"}, {}};
    for (std::size_t n = fam.m() + 1; n <= cfg.m; ++n) {
      ext.header.push_back("set" + std::to_string(n));
      ext.header.push_back("F" + std::to_string(n));
    }
    json jt = json::array();
    for (const auto& row : rows) {
      std::vector<std::string> cells{show(row.base, L), fmt(detail::value_of(f, row.base))};
      for (const auto& mv : row.trace.moves) {
        cells.push_back(show(mv.set, L));
        cells.push_back(fmt(mv.value));
      }
      cells.resize(ext.header.size(), "-");
      ext.rows.push_back(std::move(cells));
      jt.push_back({{"base", L.set(row.base)}, {"trace", to_json(row.trace, L)}});
    }
    r.result["table"] = jt;
    r.table = std::move(ext);
  }
  return r;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void print_table(std::ostream& os, const Table& t) {
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? "  " : "");
      if (i + 1 < cells.size()) os << std::left << std::setw(static_cast<int>(width[i]));
      os << cells[i];
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

void emit(const Config& cfg, const Report& r) {
  if (cfg.output == "json") {
    json out = {{"schema", kReportSchema}, {"config", cfg.to_json()}, {"result", r.result}};
    std::cout << out.dump(2) << '\n';
  } else if (cfg.output == "csv") {
    for (std::size_t i = 0; i < r.table.header.size(); ++i)
      std::cout << (i ? "," : "") << csv_cell(r.table.header[i]);
    std::cout << '\n';
    for (const auto& row : r.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_cell(row[i]);
      std::cout << '\n';
    }
  } else {
    print_table(std::cout, r.table);
    for (const auto& s : r.summary) std::cout << s << '\n';
  }
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded: return kBudget;
    case ErrorKind::SolverFailure: return kInternal;
    default: return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk target sets: hitting times, baselines, near-optimal families and greedoid search"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", cfg.graph_path, "Edge-list file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", cfg.output, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    sub->add_option("--budget", cfg.budget, "Cap on sets enumerated by exact methods")->capture_default_str();
  };
  auto ranking = [&](CLI::App* sub) {
    sub->add_option("-c,--c", cfg.c, "Rank threshold in (0, 1]")->capture_default_str();
    sub->add_option("-k,--k", cfg.k, "Cover size, or 'auto' for the Two-Opt cover")->capture_default_str();
    sub->add_option("--cover", cfg.cover, "Vertex cover as comma-separated labels");
    sub->add_option("--order-seed", cfg.order_seed, "Shuffle the Two-Opt edge scan with this seed");
  };
  auto construction = [&](CLI::App* sub) {
    sub->add_option("--case", cfg.construction, "Greedoid construction")
        ->check(CLI::IsMember({"case1", "case2", "auto"}))
        ->capture_default_str();
    sub->add_option("--base", cfg.base, "Case I base set H (default: first member of G_m)");
  };

  auto* hitting = app.add_subcommand("hitting", "Exact hitting times and F for a target set");
  common(hitting);
  hitting->add_option("-t,--target", cfg.target, "Target set")->required();

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of F next to the exact value");
  common(mc);
  mc->add_option("-t,--target", cfg.target, "Target set")->required();
  mc->add_option("--walks", cfg.walks, "Walks per start node")->capture_default_str();
  mc->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Exact minimum of F over sets of size M");
  common(solve);
  solve->add_option("-m,--m", cfg.m, "Target cardinality")->required();

  auto* greedy = app.add_subcommand("greedy", "Greedy selection with the (1 - 1/e) bound check");
  common(greedy);
  greedy->add_option("-m,--m", cfg.m, "Target cardinality")->required();
  greedy->add_option("--from", cfg.from, "Initial set to extend");

  auto* cover = app.add_subcommand("cover", "Two-Opt maximal matching cover");
  common(cover);
  cover->add_option("--order-seed", cfg.order_seed, "Shuffle the edge scan with this seed");

  auto* family = app.add_subcommand("family", "Enumerate the near-optimal family L_{c,K}");
  common(family);
  ranking(family);
  family->add_option("--max-listed", cfg.max_listed, "Sets listed in JSON output")->capture_default_str();

  auto* greedoid = app.add_subcommand("greedoid", "Build and verify the greedoid of feasible sets");
  common(greedoid);
  ranking(greedoid);
  construction(greedoid);

  auto* search = app.add_subcommand("search", "Local search over the greedoid for a size-M set");
  common(search);
  ranking(search);
  construction(search);
  search->add_option("-m,--m", cfg.m, "Target cardinality")->required();
  search->add_option("--start", cfg.start, "Feasible start set (default: best stepwise extension)");
  search->add_flag("--table", cfg.table, "Emit the stepwise extension table of the base sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    LabeledGraph lg = load_graph(cfg.graph_path);
    Report report;
    if (cfg.command == "hitting") report = cmd_hitting(cfg, lg);
    else if (cfg.command == "mc") report = cmd_mc(cfg, lg);
    else if (cfg.command == "solve") report = cmd_solve(cfg, lg);
    else if (cfg.command == "greedy") report = cmd_greedy(cfg, lg);
    else if (cfg.command == "cover") report = cmd_cover(cfg, lg);
    else if (cfg.command == "family") report = cmd_family(cfg, lg);
    else if (cfg.command == "greedoid") report = cmd_greedoid(cfg, lg);
    else report = cmd_search(cfg, lg);
    emit(cfg, report);
    return report.code;
  } catch (const Exit& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
