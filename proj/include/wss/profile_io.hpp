#pragma once

// Radial profile text format:
//
//   [prefix]
//   boundary = 1 2 4          # dB(r), r < r0
//   measure  = 1 0.5 0.25     # m(S_r)
//   killing  = 0 0 0          # c(S_r), defaults to zeros
//   size     = 1 1 1          # |S_r|, defaults to ones
//   [tail]
//   boundary = C=8 rho=2                  # C * rho^r * prod (r + shift_i)^{p_i}
//   measure  = C=1 p=-3 shift=1
//   killing  = zero                       # default
//   size     = custom convergent=unknown  # default
//
// Lists in p= and shift= are comma separated; shift defaults to zeros.
// Custom tails take convergent=yes|no|unknown (for the boundary the flag
// refers to sum 1/dB).

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wss/error.hpp"
#include "wss/format.hpp"
#include "wss/graph_io.hpp"
#include "wss/series.hpp"

namespace wss {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline std::optional<Sequence> sequence_from_key(const std::string& key) {
  for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Killing, Sequence::Size}) {
    if (key == to_string(s)) return s;
  }
  return std::nullopt;
}

inline TailModel parse_tail(const std::string& text, int line) {
  std::istringstream in(text);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  if (words.empty()) throw ParseError("empty tail description", line);
  if (words.size() == 1 && words[0] == "zero") return ZeroTail{};
  if (words[0] == "custom") {
    CustomTail t;
    for (std::size_t i = 1; i < words.size(); ++i) {
      if (words[i] == "convergent=yes") t.convergent = Convergence::Yes;
      else if (words[i] == "convergent=no") t.convergent = Convergence::No;
      else if (words[i] == "convergent=unknown") t.convergent = Convergence::Unknown;
      else throw ParseError("unknown custom tail option '" + words[i] + "'", line);
    }
    return t;
  }
  ClosedForm f;
  std::vector<double> powers, shifts;
  for (const auto& w : words) {
    const auto eq = w.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + w + "'", line);
    const std::string key = w.substr(0, eq), val = w.substr(eq + 1);
    if (key == "C") {
      f.scale = parse_real(val, line, "C");
    } else if (key == "rho") {
      f.rho = parse_real(val, line, "rho");
    } else if (key == "p" || key == "shift") {
      auto& dst = key == "p" ? powers : shifts;
      for (const auto& part : split(val, ',')) dst.push_back(parse_real(part, line, key.c_str()));
    } else {
      throw ParseError("unknown tail parameter '" + key + "'", line);
    }
  }
  if (shifts.empty()) shifts.assign(powers.size(), 0.0);
  if (shifts.size() != powers.size()) throw ParseError("p= and shift= lists differ in length", line);
  for (std::size_t i = 0; i < powers.size(); ++i) f.factors.push_back({shifts[i], powers[i]});
  return f;
}

inline std::string describe_tail(const TailModel& t) {
  if (std::holds_alternative<ZeroTail>(t)) return "zero";
  if (const auto* c = std::get_if<CustomTail>(&t)) {
    const char* flag = c->convergent == Convergence::Yes  ? "yes"
                       : c->convergent == Convergence::No ? "no"
                                                          : "unknown";
    return std::string("custom convergent=") + flag;
  }
  const auto& f = std::get<ClosedForm>(t);
  std::string s = "C=" + format_real(f.scale);
  if (!f.factors.empty()) {
    std::string p, sh;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      p += (i ? "," : "") + format_real(f.factors[i].power);
      sh += (i ? "," : "") + format_real(f.factors[i].shift);
    }
    s += " p=" + p + " shift=" + sh;
  }
  if (f.rho != 1.0) s += " rho=" + format_real(f.rho);
  return s;
}

}  // namespace detail

inline RadialProfile read_profile(std::istream& in) {
  RadialProfile p;
  std::map<Sequence, std::vector<double>> prefix;
  std::map<Sequence, TailModel> tails;
  std::string section, raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[prefix]" && line != "[tail]") throw ParseError("unknown section " + line, lineno);
      section = line;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const auto seq = detail::sequence_from_key(key);
    if (!seq) throw ParseError("unknown sequence '" + key + "'", lineno);
    if (section == "[prefix]") {
      if (prefix.count(*seq)) throw ParseError("duplicate prefix for " + key, lineno);
      std::istringstream vs(value);
      std::vector<double> vals;
      for (std::string tok; vs >> tok;) vals.push_back(detail::parse_real(tok, lineno, key.c_str()));
      prefix[*seq] = std::move(vals);
    } else if (section == "[tail]") {
      if (tails.count(*seq)) throw ParseError("duplicate tail for " + key, lineno);
      tails[*seq] = detail::parse_tail(value, lineno);
    } else {
      throw ParseError("entry outside of a [prefix] or [tail] section", lineno);
    }
  }
  p.boundary = prefix[Sequence::Boundary];
  p.measure = prefix[Sequence::Measure];
  const std::size_t r0 = p.boundary.size();
  p.killing = prefix.count(Sequence::Killing) ? prefix[Sequence::Killing] : std::vector<double>(r0, 0.0);
  p.size = prefix.count(Sequence::Size) ? prefix[Sequence::Size] : std::vector<double>(r0, 1.0);
  for (Sequence s : {Sequence::Boundary, Sequence::Measure}) {
    if (!tails.count(s)) throw ParseError(std::string("missing tail for ") + to_string(s), 0);
  }
  p.boundary_tail = tails[Sequence::Boundary];
  p.measure_tail = tails[Sequence::Measure];
  if (tails.count(Sequence::Killing)) p.killing_tail = tails[Sequence::Killing];
  if (tails.count(Sequence::Size)) p.size_tail = tails[Sequence::Size];
  try {
    p.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), 0);
  }
  return p;
}

inline void write_profile(std::ostream& out, const RadialProfile& p) {
  out << "[prefix]\n";
  for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Killing, Sequence::Size}) {
    out << to_string(s) << " =";
    for (double v : p.prefix(s)) out << ' ' << format_real(v);
    out << '\n';
  }
  out << "[tail]\n";
  for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Killing, Sequence::Size}) {
    out << to_string(s) << " = " << detail::describe_tail(p.tail(s)) << '\n';
  }
}

}  // namespace wss
