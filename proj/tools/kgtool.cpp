// kgtool: command-line front end for the kgraph library.
//
// Exit codes: 0 completed, 1 usage or parse error, 2 invalid graph,
// 3 internal invariant breach.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kgraph/kgraph.hpp"

namespace {

using namespace kgraph;

constexpr int kOk = 0;
constexpr int kUsage = static_cast<int>(ExitCode::Usage);

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

KgDocument read_doc(const std::string& path) {
  try {
    return parse(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

/// "3" fills every colour; "1,2" gives each coordinate.
Degree parse_degree(const std::string& text, std::size_t rank) {
  std::vector<std::uint32_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad degree '" + text + "'");
    parts.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (parts.size() == 1) return Degree::filled(rank, parts[0]);
  if (parts.size() != rank)
    throw UsageError("degree '" + text + "' has " + std::to_string(parts.size()) + " coordinates, rank is " +
                     std::to_string(rank));
  Degree d(rank);
  for (std::size_t c = 0; c < rank; ++c) d[c] = parts[c];
  return d;
}

KGraph require_convex_graph(const std::string& path) {
  KGraph g = validate(read_doc(path).spec);
  if (!g.locally_convex()) {
    const auto& w = *g.convexity_witness();
    throw NotLocallyConvex(path + ": not locally convex at " + g.name(w.lower) + ", " + g.name(w.upper));
  }
  return g;
}

void write_json(const std::string& target, const nlohmann::ordered_json& j) {
  const std::string text = j.dump(2) + "\n";
  if (target == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw UsageError("cannot write " + target);
  out << text;
}

std::string lp_text(const KGraph& g, const LpCandidate& c) {
  return g.name(c.vertex) + " m=" + c.m.to_string() + " n=" + c.n.to_string();
}

std::string verdict_line(const KGraph& g, const std::string& name, const Verdict& v) {
  std::string s = name + ": " + to_string(v.status);
  s += v.exact ? " (exact)" : " (depth " + std::to_string(v.depth) + ")";
  if (v.witness) s += "\n  witness: " + to_string(g, *v.witness);
  return s;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  KGraph g = validate(read_doc(path).spec);
  std::cout << "valid: rank " << g.rank() << ", " << g.num_vertices() << " vertices, " << g.num_edges()
            << " edges, " << g.spec().squares.size() << " squares\n";
  if (g.locally_convex()) {
    std::cout << "locally convex: yes\n";
  } else {
    const auto& w = *g.convexity_witness();
    std::cout << "locally convex: no (" << g.name(w.lower) << ", " << g.name(w.upper) << ")\n";
  }
  return kOk;
}

int cmd_paths(const std::string& path, const std::string& from, const std::string& degree,
              const std::string& le) {
  if (degree.empty() == le.empty()) throw UsageError("paths needs exactly one of --degree, --le");
  KGraph g = validate(read_doc(path).spec);
  VertexId v = g.vertex(from);
  std::vector<Path> out;
  if (!degree.empty())
    out = paths_from(g, v, parse_degree(degree, g.rank()));
  else
    out = paths_le(g, v, parse_degree(le, g.rank()));
  for (const auto& p : out)
    std::cout << to_string(g, p) << "  degree " << p.degree.to_string() << "  source " << g.name(p.source)
              << "\n";
  std::cout << out.size() << " path(s)\n";
  return kOk;
}

int cmd_boundary(const std::string& path, const std::string& from, std::uint32_t depth) {
  KGraph g = require_convex_graph(path);
  const auto frags = fragments_from(g, g.vertex(from), depth);
  for (const auto& f : frags) std::cout << to_string(g, f) << "\n";
  std::cout << frags.size() << " fragment(s)\n";
  return kOk;
}

int cmd_desource(const std::string& path, const std::string& pmax, bool dot) {
  KGraph g = require_convex_graph(path);
  const Region r = materialize(g, parse_degree(pmax, g.rank()));
  if (dot)
    std::cout << export_dot(r.graph, "desourced");
  else
    std::cout << print(r.graph);
  return kOk;
}

int cmd_check(const std::string& path, const std::string& what, const std::string& box_text,
              std::uint32_t depth, const std::string& json) {
  KGraph g = require_convex_graph(path);
  const Degree M = parse_degree(box_text, g.rank());
  std::vector<NamedVerdict> verdicts;
  ReportParameters params;
  if (what == "cofinal") {
    Verdict v = is_cofinal(g);
    std::cout << verdict_line(g, "cofinal", v) << "\n";
    verdicts.push_back({"cofinal", v, ""});
  } else if (what == "lp") {
    params.M = M;
    params.B = depth;
    auto lp = find_lp(g, M, depth);
    Verdict v = lp.empty() ? Verdict{Status::Holds, false, depth, std::nullopt}
                           : Verdict{Status::Violated, false, depth, lp_witness(lp.front())};
    for (const auto& c : lp) std::cout << "lp " << lp_text(g, c) << "\n";
    std::cout << verdict_line(g, "no_local_periodicity", v) << "\n";
    verdicts.push_back({"no_local_periodicity", v, ""});
  } else {
    params.M = M;
    params.B = depth;
    auto r = simplicity_verdict(g, M, depth);
    std::cout << verdict_line(g, "cofinal", r.cofinal) << "\n";
    std::cout << verdict_line(g, "no_local_periodicity", r.no_local_periodicity) << "\n";
    std::cout << (r.simple ? "Simple" : "NotSimple") << "\n";
    Verdict s;
    s.status = r.simple ? Status::Holds : Status::Violated;
    s.exact = false;
    s.depth = depth;
    if (!r.cofinal.holds())
      s.witness = r.cofinal.witness;
    else if (!r.lp_candidates.empty())
      s.witness = r.no_local_periodicity.witness;
    verdicts.push_back({"cofinal", r.cofinal, ""});
    verdicts.push_back({"no_local_periodicity", r.no_local_periodicity, ""});
    verdicts.push_back({"simple", s, ""});
  }
  if (!json.empty()) write_json(json, report_json(g, "check " + what, params, verdicts));
  return kOk;
}

int cmd_ideals(const std::string& path, bool quotients, bool gauge, const std::string& box_text,
               std::uint32_t depth) {
  KGraph g = require_convex_graph(path);
  const auto lattice = enumerate_sat_hered(g);
  std::cout << lattice.size() << " saturated hereditary set(s)\n";
  for (const auto& H : lattice) {
    std::cout << "  " << to_string(g, H);
    if (quotients && !H.is_full()) {
      KGraph q = quotient(g, H);
      std::cout << "  quotient: " << q.num_vertices() << " vertices, " << q.num_edges() << " edges, "
                << (q.locally_convex() ? "locally convex" : "not locally convex");
    }
    std::cout << "\n";
  }
  if (gauge) {
    auto rep = gauge_invariance_criterion(g, parse_degree(box_text, g.rank()), depth);
    std::cout << verdict_line(g, "cofinal", rep.cofinal) << "\n";
    for (const auto& e : rep.entries) {
      std::cout << "  H=" << to_string(g, e.H) << ": ";
      if (e.lp.empty())
        std::cout << "no surviving LP (depth " << depth << ")\n";
      else
        std::cout << "LP " << lp_text(e.quotient, e.lp.front()) << "\n";
    }
    if (rep.all_gauge_invariant)
      std::cout << "AllGaugeInvariant (depth " << depth << ")\n";
    else
      std::cout << "fails at H=" << to_string(g, rep.entries[*rep.first_failure].H) << "\n";
  }
  return kOk;
}

int cmd_fixtures_list() {
  for (const auto& e : fixtures::catalogue())
    std::cout << e.name << (e.args.empty() ? "" : " " + e.args) << "  " << e.summary << "\n";
  return kOk;
}

int cmd_fixtures_emit(const std::string& name, const std::vector<std::uint32_t>& args) {
  Fixture f = fixtures::make(name, args);
  std::string tag = name;
  for (auto a : args) tag += "_" + std::to_string(a);
  for (auto& c : tag)
    if (c == '-') c = '_';
  KgDocument doc{f.spec, tag, {}};
  if (!f.truncation_frontier.empty()) doc.sets.push_back({"frontier", f.truncation_frontier});
  std::cout << print(doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgtool: k-graph presentations, boundary paths and simplicity checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string file, from, degree, le, pmax = "3", box = "3", json, what, fname;
  std::uint32_t depth = 6;
  bool dot = false, quotients = false, gauge = false;
  std::vector<std::uint32_t> fargs;

  auto* validate_cmd = app.add_subcommand("validate", "check a presentation");
  validate_cmd->add_option("file", file)->required();

  auto* paths_cmd = app.add_subcommand("paths", "list paths from a vertex");
  paths_cmd->add_option("file", file)->required();
  paths_cmd->add_option("--from", from, "range vertex")->required();
  auto* deg_opt = paths_cmd->add_option("--degree", degree, "exact degree");
  auto* le_opt = paths_cmd->add_option("--le", le, "paths in Lambda^{<=n}");
  deg_opt->excludes(le_opt);

  auto* boundary_cmd = app.add_subcommand("boundary", "boundary fragments from a vertex");
  boundary_cmd->add_option("file", file)->required();
  boundary_cmd->add_option("--from", from)->required();
  boundary_cmd->add_option("--depth", depth)->required();

  auto* desource_cmd = app.add_subcommand("desource", "materialise the desourcified region");
  desource_cmd->add_option("file", file)->required();
  desource_cmd->add_option("--pmax", pmax, "overshoot bound")->required();
  desource_cmd->add_flag("--dot", dot, "emit DOT instead of .kg");

  auto* check_cmd = app.add_subcommand("check", "simplicity, cofinality or periodicity");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("what", what)->required()->check(CLI::IsMember({"simplicity", "cofinal", "lp"}));
  check_cmd->add_option("--box", box, "search box M");
  check_cmd->add_option("--depth", depth, "fragment depth B");
  check_cmd->add_option("--json", json, "write a JSON report ('-' for stdout)");

  auto* ideals_cmd = app.add_subcommand("ideals", "saturated hereditary sets");
  ideals_cmd->add_option("file", file)->required();
  ideals_cmd->add_flag("--quotients", quotients);
  ideals_cmd->add_flag("--gauge", gauge);
  ideals_cmd->add_option("--box", box);
  ideals_cmd->add_option("--depth", depth);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "built-in example graphs");
  fixtures_cmd->require_subcommand(1);
  auto* list_cmd = fixtures_cmd->add_subcommand("list", "list fixtures");
  auto* emit_cmd = fixtures_cmd->add_subcommand("emit", "print a fixture as .kg");
  emit_cmd->add_option("name", fname)->required();
  emit_cmd->add_option("args", fargs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(file);
    if (*paths_cmd) return cmd_paths(file, from, degree, le);
    if (*boundary_cmd) return cmd_boundary(file, from, depth);
    if (*desource_cmd) return cmd_desource(file, pmax, dot);
    if (*check_cmd) return cmd_check(file, what, box, depth, json);
    if (*ideals_cmd) return cmd_ideals(file, quotients, gauge, box, depth);
    if (*list_cmd) return cmd_fixtures_list();
    if (*emit_cmd) return cmd_fixtures_emit(fname, fargs);
  } catch (const std::exception& e) {
    const ExitCode code = exit_code_for(e);
    std::cerr << (code == ExitCode::InvariantBreach ? "internal error: " : "error: ") << e.what() << "\n";
    return static_cast<int>(code);
  }
  return kUsage;
}
