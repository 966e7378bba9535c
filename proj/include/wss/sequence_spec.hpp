#pragma once

// Textual sequence descriptors used by the family generators:
//
//   3            2^r          0.5^r        2^-r
//   r+1          (r+1)^2      (r+2)^-3     4*(r+1)^2*0.25^r
//   1/(r+1)^2    unit | linear | quadratic | cubic | geometric | inv_geometric
//
// An optional '|' suffix lists finite overrides, e.g. "2^r | 0=5, 1=3".

#include <cctype>
#include <cmath>
#include <map>
#include <string>

#include "wss/error.hpp"
#include "wss/format.hpp"
#include "wss/sequence.hpp"

namespace wss {

struct SeqSpec {
  ClosedForm form;
  std::map<long, double> overrides;
  std::string text;

  double operator()(long r) const {
    auto it = overrides.find(r);
    return it != overrides.end() ? it->second : form(r);
  }

  /// First index from which the closed form applies unmodified.
  long prefix_length() const { return overrides.empty() ? 0 : overrides.rbegin()->first + 1; }

  /// r -> a(r + k), dropping overrides that move below zero.
  SeqSpec shifted(long k) const {
    SeqSpec out;
    out.form = form.shifted(k);
    for (const auto& [r, v] : overrides) {
      if (r - k >= 0) out.overrides[r - k] = v;
    }
    out.text = text + (k ? " shifted by " + std::to_string(k) : "");
    return out;
  }

  bool constant() const {
    if (form.rho != 1.0) return false;
    for (const auto& f : form.factors) {
      if (f.power != 0.0) return false;
    }
    return true;
  }

  /// Throws ArgumentError unless every value is finite and > 0.
  void validate(const std::string& what) const {
    form.validate(prefix_length(), what);
    for (long r = 0; r < prefix_length(); ++r) {
      const double v = (*this)(r);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ArgumentError(what + ": value at r=" + std::to_string(r) + " must be finite and > 0");
      }
    }
  }
};

namespace detail {

class SeqParser {
 public:
  explicit SeqParser(std::string s) : s_(std::move(s)) {}

  ClosedForm parse() {
    ClosedForm f = factor();
    while (pos_ < s_.size()) {
      const char op = s_[pos_];
      if (op != '*' && op != '/') fail("expected '*' or '/'");
      ++pos_;
      ClosedForm g = factor();
      if (op == '/') g = invert(g);
      f = f * g;
    }
    return f;
  }

 private:
  static ClosedForm invert(ClosedForm g) {
    g.scale = 1.0 / g.scale;
    g.rho = 1.0 / g.rho;
    for (auto& pf : g.factors) pf.power = -pf.power;
    return g;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("sequence '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double number() {
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            s_[pos_] == 'e' || s_[pos_] == 'E' ||
            ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > start &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    try {
      return std::stod(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("bad number");
    }
  }

  /// Exponent after '^': a number, possibly parenthesized.
  double exponent() {
    if (eat('(')) {
      const double e = number();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    return number();
  }

  /// r, r+s, (r+s), optionally followed by ^p.
  ClosedForm linear_factor(bool parenthesized) {
    if (!eat('r')) fail("expected 'r'");
    double shift = 0.0;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) shift = number();
    if (parenthesized && !eat(')')) fail("expected ')'");
    double p = 1.0;
    if (eat('^')) p = exponent();
    ClosedForm f;
    f.factors.push_back({shift, p});
    return f;
  }

  ClosedForm factor() {
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == 'r') return linear_factor(false);
    if (eat('(')) {
      if (pos_ < s_.size() && s_[pos_] == 'r') return linear_factor(true);
      return parse_until_paren();
    }
    const double base = number();
    ClosedForm f;
    if (eat('^')) {
      const bool neg = eat('-');
      if (eat('r')) {
        f.rho = neg ? 1.0 / base : base;
        return f;
      }
      if (neg) --pos_;
      f.scale = std::pow(base, exponent());
      return f;
    }
    f.scale = base;
    return f;
  }

  ClosedForm parse_until_paren() {
    const std::size_t close = s_.find(')', pos_);
    if (close == std::string::npos) fail("expected ')'");
    SeqParser inner(s_.substr(pos_, close - pos_));
    ClosedForm f = inner.parse();
    pos_ = close + 1;
    if (eat('^')) {
      const bool neg = eat('-');
      if (eat('r')) {
        if (!f.factors.empty() || f.rho != 1.0) fail("only constants may be raised to the power r");
        f.rho = neg ? 1.0 / f.scale : f.scale;
        f.scale = 1.0;
        return f;
      }
      if (neg) --pos_;
      const double e = exponent();
      f.scale = std::pow(f.scale, e);
      f.rho = std::pow(f.rho, e);
      for (auto& pf : f.factors) pf.power *= e;
    }
    return f;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace detail

inline SeqSpec parse_sequence(const std::string& text) {
  static const std::map<std::string, std::string> aliases = {
      {"unit", "1"},           {"linear", "(r+1)"},   {"quadratic", "(r+1)^2"},
      {"cubic", "(r+1)^3"},    {"geometric", "2^r"},  {"inv_geometric", "2^-r"}};
  SeqSpec spec;
  spec.text = text;
  std::string body = text, over;
  if (const auto bar = text.find('|'); bar != std::string::npos) {
    body = text.substr(0, bar);
    over = text.substr(bar + 1);
  }
  body = detail::strip_spaces(body);
  if (auto it = aliases.find(body); it != aliases.end()) body = it->second;
  if (body.empty()) throw ArgumentError("empty sequence descriptor");
  spec.form = detail::SeqParser(body).parse();
  over = detail::strip_spaces(over);
  std::size_t start = 0;
  while (start < over.size()) {
    std::size_t comma = over.find(',', start);
    if (comma == std::string::npos) comma = over.size();
    const std::string item = over.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ArgumentError("override '" + item + "' must read r=value");
    try {
      const long r = std::stol(item.substr(0, eq));
      if (r < 0) throw ArgumentError("negative override index");
      spec.overrides[r] = std::stod(item.substr(eq + 1));
    } catch (const ArgumentError&) {
      throw;
    } catch (const std::exception&) {
      throw ArgumentError("bad override '" + item + "'");
    }
    start = comma + 1;
  }
  return spec;
}

inline SeqSpec constant_sequence(double c) {
  SeqSpec s;
  s.form.scale = c;
  s.text = format_real(c);
  return s;
}

}  // namespace wss
