#pragma once

// Text forms of polynomials, rings and problem files.
//
// Polynomial grammar (whitespace-insensitive, explicit '*' required):
//
//   sum     := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := ('+' | '-') factor | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER ('/' INTEGER)? | NAME | '(' sum ')'
//
// A literal p/q is a single rational coefficient, so "3/4*x" is (3/4)*x.
//
// Problem files (line oriented, '#' starts a comment):
//
//   format: 1
//   ring grevlex: x, y, z          # lex | grevlex | block: a, b | c, d
//   weights: x=1, y=1, z=0         # optional, every variable listed
//   ideal I:
//     x^2 - y
//     x^3 - z

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unproj/groebner.hpp"

namespace unproj {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

class PolyParser {
 public:
  template <CoefficientField F>
  using Poly = Polynomial<F>;

  PolyParser(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), col0_(column_offset) {}

  template <CoefficientField F>
  Poly<F> parse(const RingPtr<F>& ring) {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    auto p = sum(ring);
    skip_ws();
    if (!at_end()) unexpected();
    return p;
  }

 private:
  template <CoefficientField F>
  Poly<F> sum(const RingPtr<F>& ring) {
    Poly<F> acc = term(ring);
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += term(ring);
      } else if (peek() == '-') {
        ++pos_;
        acc -= term(ring);
      } else {
        return acc;
      }
    }
  }

  template <CoefficientField F>
  Poly<F> term(const RingPtr<F>& ring) {
    Poly<F> acc = factor(ring);
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor(ring);
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
        fail("implicit multiplication; write '*' between factors");
      } else if (c == '/') {
        fail("division is only allowed inside a rational literal p/q");
      } else {
        return acc;
      }
    }
  }

  template <CoefficientField F>
  Poly<F> factor(const RingPtr<F>& ring) {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -factor(ring);
    }
    if (peek() == '+') {
      ++pos_;
      return factor(ring);
    }
    Poly<F> base = primary(ring);
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    if (peek() == '-') fail("negative exponent");
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a nonnegative integer");
    std::size_t start = pos_;
    Integer e = integer();
    if (e > 65535) fail_at(start, "exponent too large");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  template <CoefficientField F>
  Poly<F> primary(const RingPtr<F>& ring) {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      Integer n = integer();
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed rational literal");
        Integer d = integer();
        if (d == 0) fail_at(start, "rational literal with zero denominator");
        try {
          return Poly<F>::constant(ring, ring->field().from_rational(Rational::normalize(n, d)));
        } catch (const ArithmeticError& e) {
          fail_at(start, e.what());
        }
      }
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
        fail("implicit multiplication; write '*' between factors");
      return Poly<F>::constant(ring, ring->field().from_integer(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring->find(name);
      if (!idx) fail_at(start, "unknown variable '" + name + "'");
      return Poly<F>::variable(ring, *idx);
    }
    if (c == '(') {
      ++pos_;
      Poly<F> inner = sum(ring);
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (at_end()) fail("unexpected end of input");
    unexpected();
  }

  Integer integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void unexpected() { fail(std::string("unexpected character '") + peek() + "'"); }
  [[noreturn]] void fail(const std::string& msg) { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) {
    // columns are 1-based
    throw ParseError(line_, col0_ + pos + 1, msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

/// Parses one polynomial; `line` and `column_offset` position error messages.
template <CoefficientField F>
Polynomial<F> parse_polynomial(std::string_view text, const RingPtr<F>& ring, std::size_t line = 1,
                               std::size_t column_offset = 0) {
  return detail::PolyParser(text, line, column_offset).parse(ring);
}

inline std::string print_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

/// Canonical text: terms in descending order, signs folded into the
/// separators, unit coefficients suppressed.
template <CoefficientField F>
std::string print_polynomial(const Polynomial<F>& f) {
  if (f.is_zero()) return "0";
  const auto& names = f.ring()->variables();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    bool neg = t.coeff.is_negative();
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    std::string mono = print_monomial(t.monomial, names);
    std::string coeff = t.coeff.abs_string();
    if (mono.empty()) out += coeff;
    else if (coeff == "1") out += mono;
    else out += coeff + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rings in text form

inline std::string print_order_header(const MonomialOrder& order, const std::vector<std::string>& names) {
  auto list = [&](std::size_t b, std::size_t e) {
    std::string s;
    for (std::size_t i = b; i < e; ++i) s += (i > b ? ", " : "") + names[i];
    return s;
  };
  const auto& blocks = order.blocks();
  if (blocks.size() <= 1) {
    auto kind = blocks.empty() ? OrderKind::grevlex : blocks[0].kind;
    return "ring " + to_string(kind) + ": " + list(0, names.size());
  }
  // uniform block orders print as "block" or "block(lex)"; mixed inner kinds
  // get a "lex " prefix on each lex block
  bool uniform = std::all_of(blocks.begin(), blocks.end(), [&](const auto& b) { return b.kind == blocks[0].kind; });
  std::string s = "ring block";
  if (uniform && blocks[0].kind == OrderKind::lex) s += "(lex)";
  s += ": ";
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k) s += " | ";
    if (!uniform && blocks[k].kind == OrderKind::lex) s += "lex ";
    s += list(blocks[k].begin, blocks[k].end);
  }
  return s;
}

template <CoefficientField F>
std::string print_ring(const Ring<F>& ring) {
  std::string s = print_order_header(ring.order(), ring.variables());
  if (ring.grading()) {
    s += "\nweights: ";
    for (std::size_t i = 0; i < ring.size(); ++i)
      s += (i ? ", " : "") + ring.name(i) + "=" + std::to_string((*ring.grading())[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Problem files

template <CoefficientField F>
struct ProblemFile {
  RingPtr<F> ring;
  std::vector<std::pair<std::string, Ideal<F>>> ideals;

  const Ideal<F>* find(const std::string& name) const {
    for (const auto& [n, ideal] : ideals)
      if (n == name) return &ideal;
    return nullptr;
  }
  const Ideal<F>& at(const std::string& name) const {
    if (auto* p = find(name)) return *p;
    throw std::out_of_range("no ideal named '" + name + "'");
  }
};

namespace detail {

struct RingHeader {
  std::vector<std::string> names;
  MonomialOrder order;
};

inline RingHeader parse_ring_header(const std::string& body, std::size_t line) {
  auto colon = body.find(':');
  if (colon == std::string::npos) throw ParseError(line, 1, "ring line needs 'ring ORDER: variables'");
  std::string kind = trim(body.substr(0, colon));
  std::string rest = body.substr(colon + 1);
  RingHeader h;
  auto add_names = [&](const std::string& list) {
    std::size_t before = h.names.size();
    for (auto& v : split(list, ',')) {
      if (v.empty()) throw ParseError(line, 1, "empty variable name in ring declaration");
      if (!is_identifier(v)) throw ParseError(line, 1, "malformed variable name '" + v + "'");
      h.names.push_back(v);
    }
    return h.names.size() - before;
  };
  if (kind == "lex" || kind == "grevlex") {
    if (trim(rest).empty()) {
      h.order = MonomialOrder::simple(kind == "lex" ? OrderKind::lex : OrderKind::grevlex, 0);
      return h;
    }
    add_names(rest);
    h.order = MonomialOrder::simple(kind == "lex" ? OrderKind::lex : OrderKind::grevlex, h.names.size());
    return h;
  }
  if (kind == "block" || kind == "block(lex)" || kind == "block(grevlex)") {
    OrderKind inner = kind == "block(lex)" ? OrderKind::lex : OrderKind::grevlex;
    std::vector<std::pair<std::size_t, OrderKind>> sizes;
    for (auto& part : split(rest, '|')) {
      OrderKind k = inner;
      std::string list = part;
      if (list.rfind("lex ", 0) == 0) {
        k = OrderKind::lex;
        list = list.substr(4);
      } else if (list.rfind("grevlex ", 0) == 0) {
        k = OrderKind::grevlex;
        list = list.substr(8);
      }
      sizes.emplace_back(add_names(list), k);
    }
    h.order = MonomialOrder::block(sizes);
    return h;
  }
  throw ParseError(line, 6, "unknown monomial order '" + kind + "'");
}

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace detail

template <CoefficientField F>
ProblemFile<F> parse_problem_file(std::string_view text, const F& field = F{}) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool seen_format = false;
  std::optional<detail::RingHeader> header;
  std::optional<Grading> weights;
  ProblemFile<F> file;
  // ideal name -> (line number, comment-stripped line text)
  std::vector<std::pair<std::string, std::vector<std::pair<std::size_t, std::string>>>> blocks;

  auto ensure_ring = [&](std::size_t line) {
    if (file.ring) return;
    if (!header) throw ParseError(line, 1, "ideal before the ring declaration");
    try {
      file.ring = make_ring(field, header->names, header->order, weights);
    } catch (const RingError& e) {
      throw ParseError(line, 1, e.what());
    }
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string content = detail::strip_comment(raw);
    std::string line = detail::trim(content);
    if (line.empty()) continue;

    if (line.rfind("format:", 0) == 0) {
      if (seen_format || header || !blocks.empty()) throw ParseError(lineno, 1, "format line must come first");
      if (detail::trim(line.substr(7)) != "1") throw ParseError(lineno, 8, "unsupported format version");
      seen_format = true;
      continue;
    }
    if (line.rfind("ring ", 0) == 0 || line.rfind("ring\t", 0) == 0) {
      if (header) throw ParseError(lineno, 1, "duplicate ring declaration");
      header = detail::parse_ring_header(line.substr(5), lineno);
      continue;
    }
    if (line.rfind("ring:", 0) == 0) throw ParseError(lineno, 5, "ring line needs an order, e.g. 'ring grevlex: x, y'");
    if (line.rfind("weights:", 0) == 0) {
      if (!header) throw ParseError(lineno, 1, "weights before the ring declaration");
      if (weights || !blocks.empty()) throw ParseError(lineno, 1, "weights must directly follow the ring line");
      Grading w(header->names.size(), 0);
      std::vector<bool> seen(w.size(), false);
      for (auto& item : detail::split(line.substr(8), ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, 1, "weights entries look like name=weight");
        std::string name = detail::trim(item.substr(0, eq));
        std::string value = detail::trim(item.substr(eq + 1));
        auto it = std::find(header->names.begin(), header->names.end(), name);
        if (it == header->names.end()) throw ParseError(lineno, 1, "weight for unknown variable '" + name + "'");
        if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(c); }))
          throw ParseError(lineno, 1, "weight of '" + name + "' must be a nonnegative integer");
        auto i = static_cast<std::size_t>(it - header->names.begin());
        if (seen[i]) throw ParseError(lineno, 1, "duplicate weight for '" + name + "'");
        seen[i] = true;
        w[i] = static_cast<unsigned>(std::stoul(value));
      }
      for (std::size_t i = 0; i < w.size(); ++i)
        if (!seen[i]) throw ParseError(lineno, 1, "no weight given for '" + header->names[i] + "'");
      weights = std::move(w);
      continue;
    }
    if (line.rfind("ideal ", 0) == 0 || line.rfind("ideal\t", 0) == 0) {
      if (line.back() != ':') throw ParseError(lineno, line.size(), "ideal header must end with ':'");
      std::string name = detail::trim(line.substr(6, line.size() - 7));
      if (!is_identifier(name)) throw ParseError(lineno, 7, "malformed ideal name '" + name + "'");
      for (const auto& b : blocks)
        if (b.first == name) throw ParseError(lineno, 7, "duplicate ideal name '" + name + "'");
      ensure_ring(lineno);
      blocks.push_back({name, {}});
      continue;
    }
    if (blocks.empty()) throw ParseError(lineno, 1, "polynomial outside an ideal block");
    blocks.back().second.emplace_back(lineno, content);
  }
  if (!header) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing ring declaration");
  ensure_ring(lineno);

  for (auto& [name, lines] : blocks) {
    std::vector<Polynomial<F>> gens;
    for (auto& [ln, text] : lines) gens.push_back(parse_polynomial<F>(text, file.ring, ln));
    file.ideals.emplace_back(name, Ideal<F>(file.ring, gens));
  }
  return file;
}

/// Canonical problem-file text.  Zero generators are omitted.
template <CoefficientField F>
std::string print_problem_file(const Ring<F>& ring,
                               const std::vector<std::pair<std::string, std::vector<Polynomial<F>>>>& ideals) {
  std::string out = "format: 1\n" + print_ring(ring) + "\n";
  for (const auto& [name, gens] : ideals) {
    out += "ideal " + name + ":\n";
    for (const auto& g : gens) out += "  " + print_polynomial(g) + "\n";
  }
  return out;
}

}  // namespace unproj
