#pragma once

#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gb/errors.hpp"
#include "gb/model.hpp"
#include "gb/rng.hpp"
#include "gb/version.hpp"

namespace gb {

// Text formats. Boards: a "m n" header, then m lines of n characters.
// Cubes: a "n" header, then n layer blocks (k ascending) separated by one
// blank line; each block has n lines (rows i) of n characters (columns j).
// '+' is on, '-' is off; '1'/'0' are accepted as aliases on input.

inline constexpr const char* kGeneratorName = "mt19937_64";

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(pos));
      break;
    }
    lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (std::string& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline int sign_of_char(char c) {
  if (c == '+' || c == '1') return 1;
  if (c == '-' || c == '0') return -1;
  return 0;
}

inline void parse_row(const std::string& line, int expected, int line_no,
                      const std::function<void(int, Sign)>& put) {
  if (static_cast<int>(line.size()) != expected)
    throw ParseError("expected " + std::to_string(expected) + " characters, got " +
                         std::to_string(line.size()),
                     line_no, static_cast<int>(line.size()) + 1);
  for (int j = 0; j < expected; ++j) {
    const int s = sign_of_char(line[j]);
    if (s == 0) throw ParseError("illegal character, expected '+' or '-'", line_no, j + 1);
    put(j, static_cast<Sign>(s));
  }
}

}  // namespace detail

inline SignMatrix parse_board(std::string_view text) {
  const std::vector<std::string> lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty input", 1, 0);

  std::istringstream hdr(lines[0]);
  long long m = 0, n = 0;
  std::string extra;
  if (!(hdr >> m >> n) || (hdr >> extra))
    throw ParseError("header must be \"m n\"", 1, 0);
  if (m < 1 || n < 1 || m > 4096 || n > 4096)
    throw ParseError("board dimensions out of range", 1, 0);

  SignMatrix a(static_cast<int>(m), static_cast<int>(n));
  for (int i = 0; i < m; ++i) {
    const int line_no = i + 2;
    if (static_cast<std::size_t>(i + 1) >= lines.size())
      throw ParseError("missing board row", line_no, 0);
    detail::parse_row(lines[i + 1], static_cast<int>(n), line_no,
                      [&](int j, Sign s) { a.at(i, j) = s; });
  }
  for (std::size_t t = static_cast<std::size_t>(m) + 1; t < lines.size(); ++t)
    if (!lines[t].empty())
      throw ParseError("unexpected trailing content", static_cast<int>(t) + 1, 1);
  return a;
}

inline std::string serialize_board(const SignMatrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out += a.at(i, j) > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

inline SignCube parse_cube(std::string_view text) {
  const std::vector<std::string> lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty input", 1, 0);

  std::istringstream hdr(lines[0]);
  long long n = 0;
  std::string extra;
  if (!(hdr >> n) || (hdr >> extra)) throw ParseError("header must be \"n\"", 1, 0);
  if (n < 1 || n > 64) throw ParseError("cube side out of range", 1, 0);

  SignCube c(static_cast<int>(n));
  std::size_t cursor = 1;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      if (cursor >= lines.size() || !lines[cursor].empty())
        throw ParseError("expected one blank line between layers",
                         static_cast<int>(cursor) + 1, 1);
      ++cursor;
    }
    for (int i = 0; i < n; ++i, ++cursor) {
      const int line_no = static_cast<int>(cursor) + 1;
      if (cursor >= lines.size()) throw ParseError("missing cube row", line_no, 0);
      detail::parse_row(lines[cursor], static_cast<int>(n), line_no,
                        [&](int j, Sign s) { c.at(i, j, k) = s; });
    }
  }
  for (std::size_t t = cursor; t < lines.size(); ++t)
    if (!lines[t].empty())
      throw ParseError("unexpected trailing content", static_cast<int>(t) + 1, 1);
  return c;
}

inline std::string serialize_cube(const SignCube& c) {
  const int n = c.side();
  std::string out = std::to_string(n) + "\n";
  for (int k = 0; k < n; ++k) {
    if (k > 0) out += '\n';
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out += c.at(i, j, k) > 0 ? '+' : '-';
      out += '\n';
    }
  }
  return out;
}

// Seeded generation. Identical (dims, seed) gives identical output on every
// platform: mt19937_64 is specified bit-for-bit and one output word feeds
// exactly one entry. Boards fill row-major; cubes fill layer by layer (k),
// then row (i), then column (j).
inline SignMatrix random_board(int m, int n, std::uint64_t seed) {
  SignMatrix a(m, n);
  auto eng = seeded_engine(seed, Stream::board);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = draw_sign(eng);
  return a;
}

inline SignCube random_cube(int n, std::uint64_t seed) {
  SignCube c(n);
  auto eng = seeded_engine(seed, Stream::cube);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c.at(i, j, k) = draw_sign(eng);
  return c;
}

// Machine-readable result carrier. Field names are part of the CLI contract.
struct ResultDocument {
  std::string version = kVersion;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<std::vector<int>> x;
  std::optional<std::vector<int>> y;
  std::optional<std::vector<int>> sx;
  std::optional<std::vector<int>> sy;
  std::optional<std::vector<int>> sz;
  std::optional<long long> signed_sum;
  std::optional<long long> imbalance;
  std::optional<long long> oracle_min;
  std::optional<std::uint64_t> states_examined;
  std::optional<std::string> generator;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline std::vector<int> to_ints(const std::vector<Sign>& v) {
  return std::vector<int>(v.begin(), v.end());
}

inline std::vector<Sign> to_signs(const std::vector<int>& v) {
  std::vector<Sign> out;
  out.reserve(v.size());
  for (int e : v) out.push_back(check_sign(e));
  return out;
}

inline std::string serialize_result(const ResultDocument& d) {
  nlohmann::json j;
  j["version"] = d.version;
  if (d.m) j["m"] = *d.m;
  if (d.n) j["n"] = *d.n;
  if (d.x) j["x"] = *d.x;
  if (d.y) j["y"] = *d.y;
  if (d.sx) j["sx"] = *d.sx;
  if (d.sy) j["sy"] = *d.sy;
  if (d.sz) j["sz"] = *d.sz;
  if (d.signed_sum) j["signed_sum"] = *d.signed_sum;
  if (d.imbalance) j["imbalance"] = *d.imbalance;
  if (d.oracle_min) j["oracle_min"] = *d.oracle_min;
  if (d.states_examined) j["states_examined"] = *d.states_examined;
  if (d.generator) j["generator"] = *d.generator;
  return j.dump() + "\n";
}

inline ResultDocument parse_result(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("invalid result document", 0, 0);
  ResultDocument d;
  try {
    d.version = j.at("version").get<std::string>();
    auto get_signs = [&](const char* key, std::optional<std::vector<int>>& dst) {
      if (!j.contains(key)) return;
      std::vector<int> v = j.at(key).get<std::vector<int>>();
      for (int e : v)
        if (e != 1 && e != -1) throw ParseError("switch entries must be +1 or -1", 0, 0);
      dst = std::move(v);
    };
    if (j.contains("m")) d.m = j.at("m").get<int>();
    if (j.contains("n")) d.n = j.at("n").get<int>();
    get_signs("x", d.x);
    get_signs("y", d.y);
    get_signs("sx", d.sx);
    get_signs("sy", d.sy);
    get_signs("sz", d.sz);
    if (j.contains("signed_sum")) d.signed_sum = j.at("signed_sum").get<long long>();
    if (j.contains("imbalance")) d.imbalance = j.at("imbalance").get<long long>();
    if (j.contains("oracle_min")) d.oracle_min = j.at("oracle_min").get<long long>();
    if (j.contains("states_examined"))
      d.states_examined = j.at("states_examined").get<std::uint64_t>();
    if (j.contains("generator")) d.generator = j.at("generator").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid result document: ") + e.what(), 0, 0);
  }
  if (d.signed_sum && d.imbalance && *d.imbalance != std::llabs(*d.signed_sum))
    throw ParseError("imbalance does not match signed sum", 0, 0);
  return d;
}

}  // namespace gb
