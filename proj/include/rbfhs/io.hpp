#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rbfhs/dpi.hpp"
#include "rbfhs/logic/formula.hpp"

namespace rbfhs {

// DPI text format, line based, '#' starts a comment.
//
//   reasoner instances          abstract instances
//   [K]   id: formula           [COMPONENTS]  n
//   [B]   formula               [CONFLICTS]   space-separated ids per line
//   [P]   formula               [PR]          id: value
//   [N]   formula
//   [PR]  id: value
//
// "[PR ADJUSTED]" in place of "[PR]" declares the values cost-adjusted
// already (each below 0.5); they are then used without rescaling.
struct LoadedDpi {
  Dpi dpi;
  std::optional<FaultProbabilities> pr;
};

class LoadError : public Error {
 public:
  LoadError(const std::string& source, int line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  std::string tmp(s);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return !tmp.empty() && end == tmp.c_str() + tmp.size();
}

inline bool parse_uint(std::string_view s, std::size_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

inline bool valid_id(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == ',' || c == '#') return false;
  }
  return true;
}

}  // namespace detail

inline LoadedDpi parse_dpi(std::string_view text, const std::string& source = "<input>") {
  enum class Section { none, k, b, p, n, pr, components, conflicts };
  Section section = Section::none;
  bool reasoner_seen = false, abstract_seen = false;

  std::vector<std::string> ids;
  std::vector<Formula> k, b, p, n;
  std::optional<std::size_t> components;
  std::vector<std::pair<int, std::vector<std::string>>> conflict_lines;
  std::vector<std::tuple<int, std::string, double>> pr_entries;
  bool pr_seen = false;
  bool pr_adjusted = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void { throw LoadError(source, line_no, msg); };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t lead = line.find_first_not_of(" \t");
    line = detail::trim(line);
    if (line.empty()) continue;
    const int column = static_cast<int>(lead == std::string_view::npos ? 0 : lead) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      std::string name(line.substr(1, line.size() - 2));
      if (name == "K") section = Section::k, reasoner_seen = true;
      else if (name == "B") section = Section::b, reasoner_seen = true;
      else if (name == "P") section = Section::p, reasoner_seen = true;
      else if (name == "N") section = Section::n, reasoner_seen = true;
      else if (name == "PR" || name == "PR ADJUSTED") {
        if (pr_seen) fail("probabilities given twice");
        section = Section::pr, pr_seen = true, pr_adjusted = name != "PR";
      } else if (name == "COMPONENTS") section = Section::components, abstract_seen = true;
      else if (name == "CONFLICTS") section = Section::conflicts, abstract_seen = true;
      else fail("unknown section [" + name + "]");
      if (reasoner_seen && abstract_seen) fail("abstract and propositional sections cannot be mixed");
      continue;
    }

    auto parse_sentence = [&](std::string_view body, int col) {
      try {
        return logic::parse_formula(body, line_no, col);
      } catch (const logic::ParseError& e) {
        throw LoadError(source, e.line(), std::to_string(e.column()) + ": " + e.message());
      }
    };

    switch (section) {
      case Section::none: fail("content before the first section"); break;
      case Section::k: {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) fail("expected 'id: formula'");
        std::string id(detail::trim(line.substr(0, colon)));
        if (!detail::valid_id(id)) fail("invalid axiom id '" + id + "'");
        for (const auto& existing : ids) {
          if (existing == id) fail("duplicate axiom id '" + id + "'");
        }
        std::string_view body = line.substr(colon + 1);
        int body_col = column + static_cast<int>(colon) + 1;
        ids.push_back(id);
        k.push_back(parse_sentence(body, body_col));
        break;
      }
      case Section::b: b.push_back(parse_sentence(line, column)); break;
      case Section::p: p.push_back(parse_sentence(line, column)); break;
      case Section::n: n.push_back(parse_sentence(line, column)); break;
      case Section::pr: {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) fail("expected 'id: probability'");
        std::string id(detail::trim(line.substr(0, colon)));
        double value = 0.0;
        if (!detail::parse_double(detail::trim(line.substr(colon + 1)), value)) fail("malformed probability");
        if (!(value > 0.0 && value < 1.0)) fail("probability for '" + id + "' outside (0,1)");
        if (pr_adjusted && !(value < 0.5)) fail("adjusted probability for '" + id + "' not below 0.5");
        pr_entries.emplace_back(line_no, id, value);
        break;
      }
      case Section::components: {
        if (components) fail("component count given twice");
        std::size_t count = 0;
        if (!detail::parse_uint(line, count) || count == 0) fail("expected a positive component count");
        components = count;
        break;
      }
      case Section::conflicts: {
        std::istringstream words{std::string(line)};
        std::vector<std::string> members;
        for (std::string w; words >> w;) members.push_back(w);
        conflict_lines.emplace_back(line_no, std::move(members));
        break;
      }
    }
  }

  std::optional<Dpi> dpi;
  if (abstract_seen) {
    line_no = 0;
    if (!components) fail("missing [COMPONENTS]");
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= *components; ++i) names.push_back(std::to_string(i));
    std::vector<IdSet> family;
    for (const auto& [where, members] : conflict_lines) {
      std::vector<AxiomIndex> idx;
      for (const auto& m : members) {
        std::size_t v = 0;
        if (!detail::parse_uint(m, v) || v == 0 || v > *components) {
          throw LoadError(source, where, "unknown component '" + m + "'");
        }
        idx.push_back(static_cast<AxiomIndex>(v - 1));
      }
      family.emplace_back(std::move(idx));
    }
    try {
      dpi = Dpi::abstract(std::move(names), std::move(family));
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      throw LoadError(source, 0, e.what());
    }
  } else {
    if (ids.empty() && !reasoner_seen) {
      line_no = 0;
      fail("no [K] or [COMPONENTS] section");
    }
    dpi = Dpi::reasoner(std::move(ids), std::move(k), std::move(b), std::move(p), std::move(n));
  }

  LoadedDpi out{std::move(*dpi), std::nullopt};
  if (pr_seen) {
    FaultProbabilities pr;
    pr.values.assign(out.dpi.size(), 0.0);
    std::vector<bool> set(out.dpi.size(), false);
    for (const auto& [where, id, value] : pr_entries) {
      AxiomIndex i;
      try {
        i = out.dpi.index_of(id);
      } catch (const Error&) {
        throw LoadError(source, where, "probability for unknown id '" + id + "'");
      }
      if (set[i]) throw LoadError(source, where, "duplicate probability for '" + id + "'");
      set[i] = true;
      pr.values[i] = value;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (!set[i]) throw LoadError(source, 0, "missing probability for '" + out.dpi.id(static_cast<AxiomIndex>(i)) + "'");
    }
    pr.cost_adjusted = pr_adjusted;
    out.pr = std::move(pr);
  }
  return out;
}

inline LoadedDpi load_dpi_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dpi(buf.str(), path);
}

inline std::string format_dpi(const Dpi& dpi, const std::optional<FaultProbabilities>& pr = std::nullopt) {
  std::ostringstream out;
  out.precision(17);
  if (dpi.backend() == Backend::abstract) {
    out << "[COMPONENTS]\n" << dpi.size() << "\n[CONFLICTS]\n";
    for (const IdSet& c : dpi.conflict_family()) {
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << dpi.id(c[i]);
      out << "\n";
    }
  } else {
    out << "[K]\n";
    for (std::size_t i = 0; i < dpi.size(); ++i) {
      out << dpi.id(static_cast<AxiomIndex>(i)) << ": " << logic::to_string(dpi.sentences()[i]) << "\n";
    }
    auto section = [&](const char* name, const std::vector<Formula>& fs) {
      if (fs.empty()) return;
      out << "[" << name << "]\n";
      for (const auto& f : fs) out << logic::to_string(f) << "\n";
    };
    section("B", dpi.background());
    section("P", dpi.positive());
    section("N", dpi.negative());
  }
  if (pr) {
    out << (pr->cost_adjusted ? "[PR ADJUSTED]\n" : "[PR]\n");
    for (std::size_t i = 0; i < dpi.size(); ++i) out << dpi.id(static_cast<AxiomIndex>(i)) << ": " << pr->values[i] << "\n";
  }
  return out.str();
}

}  // namespace rbfhs
