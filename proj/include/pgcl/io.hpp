// Line-oriented text format for presentations.
//
//   # comment to end of line
//   p 5
//   n 3
//   names a b c          (optional)
//   pow 1 : g3^1
//   comm 2 1 : g3^4
//
// Words are `1` or whitespace-separated g<k>^<e> factors; omitted
// relations are trivial.  Numbers are base 10.  Emission is canonical, so
// equal presentations produce byte-identical files.
#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pgcl/presentation.hpp"

namespace pgcl {

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
};

class PresentationParseError : public std::runtime_error {
 public:
  explicit PresentationParseError(const ParseError& err)
      : std::runtime_error("parse error at line " + std::to_string(err.line) + ", column " +
                           std::to_string(err.column) + ": " + err.message),
        detail(err) {}
  ParseError detail;
};

namespace detail {

struct Tok {
  std::string text;
  int column = 0;
};

inline std::vector<Tok> tokenize_line(const std::string& line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), int(start) + 1});
  }
  return out;
}

inline long long parse_ll(const Tok& t, int line, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw PresentationParseError({line, t.column, std::string("expected ") + what});
  }
}

inline Word parse_word(const std::vector<Tok>& toks, std::size_t from, int line) {
  Word w;
  if (from < toks.size() && toks[from].text == "1" && from + 1 == toks.size()) return w;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const Tok& t = toks[i];
    if (t.text.size() < 2 || t.text[0] != 'g')
      throw PresentationParseError({line, t.column, "expected factor g<k>^<e>"});
    std::size_t caret = t.text.find('^');
    std::string gen_str = t.text.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    long long gen = 0, exp = 1;
    try {
      gen = std::stoll(gen_str);
      if (caret != std::string::npos) exp = std::stoll(t.text.substr(caret + 1));
    } catch (...) {
      throw PresentationParseError({line, t.column, "malformed factor '" + t.text + "'"});
    }
    w.push_back({int(gen), exp});
  }
  return w;
}

}  // namespace detail

// Syntax-only parse; consistency is the caller's concern.
inline PcData parse_pc_data(const std::string& text) {
  PcData data;
  bool saw_p = false, saw_n = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;
    if (head == "p") {
      if (toks.size() != 2)
        throw PresentationParseError({lineno, toks[0].column, "usage: p <prime>"});
      data.p = int(detail::parse_ll(toks[1], lineno, "prime"));
      saw_p = true;
    } else if (head == "n") {
      if (toks.size() != 2)
        throw PresentationParseError({lineno, toks[0].column, "usage: n <count>"});
      data.n = int(detail::parse_ll(toks[1], lineno, "generator count"));
      if (data.n < 0 || data.n > kMaxGenerators)
        throw PresentationParseError({lineno, toks[1].column, "generator count out of range"});
      data.resize_relations();
      saw_n = true;
    } else if (head == "names") {
      if (!saw_n)
        throw PresentationParseError({lineno, toks[0].column, "names before n"});
      if (int(toks.size()) != data.n + 1)
        throw PresentationParseError({lineno, toks[0].column, "expected one name per generator"});
      data.names.clear();
      for (int i = 1; i <= data.n; ++i) data.names.push_back(toks[std::size_t(i)].text);
    } else if (head == "pow") {
      if (!saw_n || !saw_p)
        throw PresentationParseError({lineno, toks[0].column, "pow before p/n header"});
      if (toks.size() < 4 || toks[2].text != ":")
        throw PresentationParseError({lineno, toks[0].column, "usage: pow <i> : <word>"});
      int i = int(detail::parse_ll(toks[1], lineno, "generator index"));
      if (i < 1 || i > data.n)
        throw PresentationParseError({lineno, toks[1].column, "generator index out of range"});
      data.set_power(i, detail::parse_word(toks, 3, lineno));
    } else if (head == "comm") {
      if (!saw_n || !saw_p)
        throw PresentationParseError({lineno, toks[0].column, "comm before p/n header"});
      if (toks.size() < 5 || toks[3].text != ":")
        throw PresentationParseError({lineno, toks[0].column, "usage: comm <j> <i> : <word>"});
      int j = int(detail::parse_ll(toks[1], lineno, "generator index"));
      int i = int(detail::parse_ll(toks[2], lineno, "generator index"));
      if (j < 2 || j > data.n || i < 1 || i >= j)
        throw PresentationParseError({lineno, toks[1].column, "need n >= j > i >= 1"});
      data.set_comm(j, i, detail::parse_word(toks, 4, lineno));
    } else {
      throw PresentationParseError({lineno, toks[0].column, "unknown directive '" + head + "'"});
    }
  }
  if (!saw_p || !saw_n) throw PresentationParseError({lineno, 1, "missing p or n header"});
  return data;
}

// Parse and validate; throws on syntax errors and on inconsistent
// presentations (with the offending overlap in the message).
inline PcGroup parse_presentation(const std::string& text) {
  return PcPresentation::create(parse_pc_data(text));
}

inline std::string emit_word(const Element& a) {
  if (a.is_identity()) return "1";
  std::string out;
  for (int i = 1; i <= a.n; ++i)
    if (a.exp_at(i) != 0) {
      if (!out.empty()) out += ' ';
      out += 'g' + std::to_string(i) + '^' + std::to_string(a.exp_at(i));
    }
  return out;
}

inline std::string emit_presentation(const PcPresentation& G) {
  std::ostringstream out;
  out << "p " << G.p() << "\n";
  out << "n " << G.n() << "\n";
  if (!G.names().empty()) {
    out << "names";
    for (const auto& s : G.names()) out << ' ' << s;
    out << "\n";
  }
  for (int i = 1; i <= G.n(); ++i)
    if (!G.power_relation(i).is_identity())
      out << "pow " << i << " : " << emit_word(G.power_relation(i)) << "\n";
  for (int j = 2; j <= G.n(); ++j)
    for (int i = 1; i < j; ++i)
      if (!G.comm_relation(j, i).is_identity())
        out << "comm " << j << ' ' << i << " : " << emit_word(G.comm_relation(j, i)) << "\n";
  return out.str();
}

inline std::string emit_presentation(const PcGroup& G) { return emit_presentation(*G); }

// FNV-1a 64 over the canonical text; integrity tag for certificates.
inline std::string presentation_digest(const PcGroup& G) {
  std::string text = emit_presentation(G);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pgcl
