#pragma once

// The .kg text format, DOT export and JSON verdict reports.
//
//   kgraph rank=<k>
//   fixture <name>
//   vertex <id>
//   edge <id> : <source> -> <range> @ <colour>
//   square <f>.<g2> = <g>.<f2>
//   set <name> = <id> <id> ...
//   # comment
//
// Colours are 1-based in text. A square relates two composites; the left
// factor of each is applied after the right one.

#include <cctype>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kgraph/analysis.hpp"
#include "kgraph/graph.hpp"

namespace kgraph {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ParseErrorKind { SyntaxError, UnknownId, DuplicateId, BadColor };

inline const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::SyntaxError: return "SyntaxError";
    case ParseErrorKind::UnknownId: return "UnknownId";
    case ParseErrorKind::DuplicateId: return "DuplicateId";
    case ParseErrorKind::BadColor: return "BadColor";
  }
  return "?";
}

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, std::string detail,
             std::vector<std::string> expected = {})
      : Error(format(kind, line, column, detail, expected)),
        kind_(kind),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(ParseErrorKind kind, std::size_t line, std::size_t column,
                            const std::string& detail, const std::vector<std::string>& expected) {
    std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + to_string(kind) +
                    ": " + detail;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? " or " : "") + expected[i];
      s += ")";
    }
    return s;
  }

  ParseErrorKind kind_;
  std::size_t line_, column_;
  std::vector<std::string> expected_;
};

struct NamedSet {
  std::string name;
  std::vector<std::string> members;

  friend bool operator==(const NamedSet&, const NamedSet&) = default;
};

struct KgDocument {
  SkeletonSpec spec;
  std::optional<std::string> fixture;
  std::vector<NamedSet> sets;
};

inline bool is_id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '\'' ||
         c == '+' || c == '^';
}

namespace detail {

class LineLexer {
 public:
  LineLexer(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  std::size_t column() const { return pos_ + 1; }
  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  std::string ident(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_id_char(s_[pos_])) ++pos_;
    if (start == pos_) fail_expected({what});
    return std::string(s_.substr(start, pos_ - start));
  }
  void expect(std::string_view tok) {
    skip_space();
    if (s_.substr(pos_, tok.size()) != tok) fail_expected({"'" + std::string(tok) + "'"});
    pos_ += tok.size();
  }
  /// Unsigned integer; returns (value, column).
  std::pair<unsigned long, std::size_t> number(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail_expected({what});
    if (pos_ - start > 6) throw ParseError(ParseErrorKind::BadColor, line_, start + 1, "number too large");
    return {std::stoul(std::string(s_.substr(start, pos_ - start))), start + 1};
  }
  void finish() {
    if (!at_end()) fail_expected({"end of line"});
  }
  [[noreturn]] void fail_expected(std::vector<std::string> expected) {
    skip_space();
    std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of line";
    throw ParseError(ParseErrorKind::SyntaxError, line_, column(), "unexpected " + found,
                     std::move(expected));
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline KgDocument parse(std::string_view text) {
  KgDocument doc;
  bool have_rank = false;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    detail::LineLexer lx(line, line_no);
    if (lx.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t kw_col = lx.column();
    std::string kw = lx.ident("keyword");
    if (!have_rank) {
      if (kw != "kgraph")
        throw ParseError(ParseErrorKind::SyntaxError, line_no, kw_col, "document must start with a header",
                         {"'kgraph'"});
      lx.expect("rank");
      lx.expect("=");
      auto [k, col] = lx.number("rank");
      if (k == 0 || k > kMaxRank)
        throw ParseError(ParseErrorKind::BadColor, line_no, col,
                         "rank must be in 1.." + std::to_string(kMaxRank));
      doc.spec.rank = k;
      lx.finish();
      have_rank = true;
      continue;
    }
    auto vertex_ref = [&](const char* what) {
      const std::size_t col = (lx.skip_space(), lx.column());
      std::string id = lx.ident(what);
      auto v = doc.spec.find_vertex(id);
      if (!v) throw ParseError(ParseErrorKind::UnknownId, line_no, col, "unknown vertex '" + id + "'");
      return *v;
    };
    auto edge_ref = [&](const char* what) {
      const std::size_t col = (lx.skip_space(), lx.column());
      std::string id = lx.ident(what);
      auto e = doc.spec.find_edge(id);
      if (!e) throw ParseError(ParseErrorKind::UnknownId, line_no, col, "unknown edge '" + id + "'");
      return *e;
    };
    if (kw == "vertex") {
      const std::size_t col = (lx.skip_space(), lx.column());
      std::string id = lx.ident("vertex id");
      if (doc.spec.find_vertex(id))
        throw ParseError(ParseErrorKind::DuplicateId, line_no, col, "vertex '" + id + "' declared twice");
      lx.finish();
      doc.spec.add_vertex(std::move(id));
    } else if (kw == "edge") {
      const std::size_t col = (lx.skip_space(), lx.column());
      std::string id = lx.ident("edge id");
      if (doc.spec.find_edge(id))
        throw ParseError(ParseErrorKind::DuplicateId, line_no, col, "edge '" + id + "' declared twice");
      lx.expect(":");
      VertexId src = vertex_ref("source vertex");
      lx.expect("->");
      VertexId rng = vertex_ref("range vertex");
      lx.expect("@");
      auto [c, ccol] = lx.number("colour");
      if (c == 0 || c > doc.spec.rank)
        throw ParseError(ParseErrorKind::BadColor, line_no, ccol,
                         "colour " + std::to_string(c) + " outside 1.." + std::to_string(doc.spec.rank));
      lx.finish();
      doc.spec.add_edge(std::move(id), src, rng, c - 1);
    } else if (kw == "square") {
      EdgeId a = edge_ref("edge id");
      lx.expect(".");
      EdgeId b = edge_ref("edge id");
      lx.expect("=");
      EdgeId c = edge_ref("edge id");
      lx.expect(".");
      EdgeId d = edge_ref("edge id");
      lx.finish();
      doc.spec.add_square(a, b, c, d);
    } else if (kw == "set") {
      NamedSet s;
      s.name = lx.ident("set name");
      lx.expect("=");
      while (!lx.at_end()) s.members.push_back(doc.spec.vertices[idx(vertex_ref("vertex id"))]);
      doc.sets.push_back(std::move(s));
    } else if (kw == "fixture") {
      doc.fixture = lx.ident("fixture name");
      lx.finish();
    } else {
      throw ParseError(ParseErrorKind::SyntaxError, line_no, kw_col, "unknown keyword '" + kw + "'",
                       {"'vertex'", "'edge'", "'square'", "'set'", "'fixture'"});
    }
    if (end == text.size()) break;
  }
  if (!have_rank)
    throw ParseError(ParseErrorKind::SyntaxError, line_no == 0 ? 1 : line_no, 1, "empty document",
                     {"'kgraph'"});
  return doc;
}

/// Normalised text: header, fixture tag, vertices, edges, squares written
/// with the ascending composite on the left, then sets.
inline std::string print(const KgDocument& doc) {
  const auto& s = doc.spec;
  std::ostringstream os;
  os << "kgraph rank=" << s.rank << '\n';
  if (doc.fixture) os << "fixture " << *doc.fixture << '\n';
  for (const auto& v : s.vertices) os << "vertex " << v << '\n';
  for (const auto& e : s.edges)
    os << "edge " << e.name << " : " << s.vertices[idx(e.source)] << " -> " << s.vertices[idx(e.range)]
       << " @ " << e.color + 1 << '\n';
  auto name = [&](EdgeId e) -> const std::string& { return s.edges[idx(e)].name; };
  for (const auto& q : s.squares) {
    const bool ascending = s.edges[idx(q.left_outer)].color < s.edges[idx(q.left_inner)].color;
    if (ascending)
      os << "square " << name(q.left_outer) << '.' << name(q.left_inner) << " = " << name(q.right_outer)
         << '.' << name(q.right_inner) << '\n';
    else
      os << "square " << name(q.right_outer) << '.' << name(q.right_inner) << " = " << name(q.left_outer)
         << '.' << name(q.left_inner) << '\n';
  }
  for (const auto& set : doc.sets) {
    os << "set " << set.name << " =";
    for (const auto& m : set.members) os << ' ' << m;
    os << '\n';
  }
  return os.str();
}

inline std::string print(const KGraph& g) { return print(KgDocument{g.spec(), std::nullopt, {}}); }

/// Parses and validates.
inline KGraph load(std::string_view text) { return validate(parse(text).spec); }

/// FNV-1a (64-bit) of the normalised text, as 16 hex digits.
inline std::string graph_hash(const KGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : print(g)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
inline const char* dot_style(std::size_t colour) {
  static const char* styles[] = {"solid", "dashed", "dotted", "bold"};
  return styles[colour < 4 ? colour : 3];
}
}  // namespace detail

/// Edges drawn from source to range; colour 1 solid, 2 dashed, 3 dotted.
inline std::string export_dot(const KGraph& g, const std::string& name = "kgraph") {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(name) << " {\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    os << "  " << detail::dot_quote(g.name(VertexId(static_cast<std::uint32_t>(v)))) << ";\n";
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    EdgeId e{static_cast<std::uint32_t>(i)};
    os << "  " << detail::dot_quote(g.name(g.source(e))) << " -> " << detail::dot_quote(g.name(g.range(e)))
       << " [label=" << detail::dot_quote(g.name(e)) << ", style=" << detail::dot_style(g.color(e))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON reports

struct NamedVerdict {
  std::string name;
  Verdict verdict;
  std::string witness_text;  // empty: derived from verdict.witness
};

struct ReportParameters {
  std::optional<Degree> M;
  std::optional<std::uint32_t> B;
  std::optional<Degree> p_max;
};

inline nlohmann::ordered_json degree_json(const Degree& d) {
  auto a = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < d.rank(); ++c) a.push_back(d[c]);
  return a;
}

inline nlohmann::ordered_json report_json(const KGraph& g, const std::string& command,
                                          const ReportParameters& params,
                                          const std::vector<NamedVerdict>& verdicts) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["graph_hash"] = graph_hash(g);
  j["command"] = command;
  nlohmann::ordered_json p;
  p["M"] = params.M ? degree_json(*params.M) : nlohmann::ordered_json(nullptr);
  p["B"] = params.B ? nlohmann::ordered_json(*params.B) : nlohmann::ordered_json(nullptr);
  p["p_max"] = params.p_max ? degree_json(*params.p_max) : nlohmann::ordered_json(nullptr);
  j["parameters"] = p;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& nv : verdicts) {
    nlohmann::ordered_json v;
    v["name"] = nv.name;
    v["status"] = to_string(nv.verdict.status);
    v["depth"] = nv.verdict.exact ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(nv.verdict.depth);
    if (!nv.witness_text.empty())
      v["witness"] = nv.witness_text;
    else if (nv.verdict.witness)
      v["witness"] = to_string(g, *nv.verdict.witness);
    else
      v["witness"] = nullptr;
    arr.push_back(v);
  }
  j["verdicts"] = arr;
  return j;
}

// ---------------------------------------------------------------------------
// CLI exit codes

enum class ExitCode { Ok = 0, Usage = 1, InvalidGraph = 2, InvariantBreach = 3 };

/// Maps a failure to the CLI exit code.
inline ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvariantBreach*>(&e)) return ExitCode::InvariantBreach;
  if (dynamic_cast<const InvalidGraph*>(&e) || dynamic_cast<const NotLocallyConvex*>(&e))
    return ExitCode::InvalidGraph;
  if (dynamic_cast<const Error*>(&e)) return ExitCode::Usage;
  return ExitCode::InvariantBreach;
}

}  // namespace kgraph
