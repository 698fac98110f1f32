#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetplane/grassmann.hpp"

namespace jetplane {

// Diagnostic for malformed serialized input, carrying the 1-based line number
// and (when it applies) the 1-based field number within that line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int field, const std::string& what)
      : std::runtime_error(compose(line, field, what)),
        line_(line),
        field_(field) {}

  int line() const { return line_; }
  int field() const { return field_; }  // 0 when the whole line is at fault

 private:
  static std::string compose(int line, int field, const std::string& what) {
    std::string s = "line " + std::to_string(line);
    if (field > 0) s += ", field " + std::to_string(field);
    return s + ": " + what;
  }
  int line_;
  int field_;
};

// Strict rational token: -?digits or -?digits/digits, canonicalized on read.
inline Rational parse_rational_token(const std::string& tok, int line,
                                     int field) {
  const auto bad = [&](const std::string& why) -> ParseError {
    return ParseError(line, field, why + " in rational '" + tok + "'");
  };
  size_t i = 0;
  if (i < tok.size() && tok[i] == '-') ++i;
  const size_t num_start = i;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
    ++i;
  if (i == num_start) throw bad("expected digits");
  std::string num = tok.substr(0, i);
  std::string den = "1";
  if (i < tok.size()) {
    if (tok[i] != '/') throw bad("unexpected character");
    const size_t den_start = ++i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
      ++i;
    if (i == den_start || i != tok.size()) throw bad("malformed denominator");
    den = tok.substr(den_start);
  }
  mpz_class d(den);
  if (d == 0) throw bad("zero denominator");
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

inline long parse_int_token(const std::string& tok, int line, int field,
                            long lo, long hi, const std::string& what) {
  size_t i = 0;
  if (i < tok.size() && tok[i] == '-') ++i;
  const size_t start = i;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
    ++i;
  if (i == start || i != tok.size() || tok.size() > 12)
    throw ParseError(line, field, "expected integer " + what + ", got '" +
                                      tok + "'");
  const long v = std::stol(tok);
  if (v < lo || v > hi)
    throw ParseError(line, field, what + " out of range [" +
                                      std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]: " + tok);
  return v;
}

namespace detail {

// Reads the next content line (blank lines and '#' comments skipped), keeping
// an accurate line counter for diagnostics.
inline bool next_content_line(std::istream& in, std::string& out, int& line) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    size_t p = raw.find_first_not_of(" \t");
    if (p == std::string::npos) continue;
    if (raw[p] == '#') continue;
    out = raw;
    return true;
  }
  return false;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(std::move(t));
  return out;
}

}  // namespace detail

// Text format for a subspace of the Cartan plane:
//   jetplane-subspace v1
//   context <n> <m> <k>
//   vectors <count>
//   <count> lines of cartan_dim(ctx) rationals each
// Blank lines and '#' comments are ignored on read; the writer never emits
// them, so write -> read -> write is byte-stable.
inline CartanSubspace read_subspace(std::istream& in) {
  int line = 0;
  std::string content;

  if (!detail::next_content_line(in, content, line))
    throw ParseError(line + 1, 0, "missing header 'jetplane-subspace v1'");
  if (content != "jetplane-subspace v1")
    throw ParseError(line, 0,
                     "expected header 'jetplane-subspace v1', got '" +
                         content + "'");

  if (!detail::next_content_line(in, content, line))
    throw ParseError(line + 1, 0, "missing 'context <n> <m> <k>' line");
  auto toks = detail::tokens_of(content);
  if (toks.size() != 4 || toks[0] != "context")
    throw ParseError(line, 0, "expected 'context <n> <m> <k>'");
  const int n = static_cast<int>(parse_int_token(toks[1], line, 2, 1, 16, "n"));
  const int m = static_cast<int>(parse_int_token(toks[2], line, 3, 1, 16, "m"));
  const int k = static_cast<int>(parse_int_token(toks[3], line, 4, 1, 16, "k"));
  const Context ctx(n, m, k);
  const long dim = cartan_dim(ctx);

  if (!detail::next_content_line(in, content, line))
    throw ParseError(line + 1, 0, "missing 'vectors <count>' line");
  toks = detail::tokens_of(content);
  if (toks.size() != 2 || toks[0] != "vectors")
    throw ParseError(line, 0, "expected 'vectors <count>'");
  const long count =
      parse_int_token(toks[1], line, 2, 0, 4096, "vector count");

  std::vector<std::vector<Rational>> cols;
  for (long v = 0; v < count; ++v) {
    if (!detail::next_content_line(in, content, line))
      throw ParseError(line + 1, 0,
                       "missing vector line " + std::to_string(v + 1) +
                           " of " + std::to_string(count));
    toks = detail::tokens_of(content);
    if (static_cast<long>(toks.size()) != dim)
      throw ParseError(line, 0,
                       "expected " + std::to_string(dim) +
                           " coordinates, got " + std::to_string(toks.size()));
    std::vector<Rational> col(dim);
    for (long f = 0; f < dim; ++f)
      col[f] = parse_rational_token(toks[f], line, static_cast<int>(f + 1));
    cols.push_back(std::move(col));
  }

  if (detail::next_content_line(in, content, line))
    throw ParseError(line, 0, "unexpected trailing input: '" + content + "'");

  return CartanSubspace(
      ctx, Subspace::span(RatMatrix::from_cols(static_cast<int>(dim), cols)));
}

inline CartanSubspace read_subspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return read_subspace(in);
}

inline void write_subspace(std::ostream& out, const CartanSubspace& cs) {
  const Context& ctx = cs.context();
  out << "jetplane-subspace v1\n";
  out << "context " << ctx.n << " " << ctx.m << " " << ctx.k << "\n";
  const RatMatrix& b = cs.space().basis();
  out << "vectors " << b.cols() << "\n";
  for (int j = 0; j < b.cols(); ++j) {
    const auto col = b.col(j);
    for (size_t i = 0; i < col.size(); ++i)
      out << (i ? " " : "") << to_string(col[i]);
    out << "\n";
  }
}

inline std::string write_subspace_string(const CartanSubspace& cs) {
  std::ostringstream os;
  write_subspace(os, cs);
  return os.str();
}

}  // namespace jetplane
