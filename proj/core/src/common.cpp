// Copyright 2026 The Synthweb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <openssl/evp.h>

#include <array>
#include <cctype>
#include <limits>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "synthweb/dates.hpp"
#include "synthweb/digest.hpp"
#include "synthweb/error.hpp"
#include "synthweb/jsonio.hpp"
#include "synthweb/rng.hpp"
#include "synthweb/text.hpp"

namespace synthweb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kExpired: return "expired";
    case ErrorCode::kGeneration: return "generation_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kUnavailable: return "unavailable";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

// ---------------------------------------------------------------- rng

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  return mix64(base ^ mix64(fnv1a64(tag)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw invalid_argument("Rng::below requires n > 0");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw invalid_argument("Rng::between requires lo <= hi");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::bernoulli(double p) { return uniform() < p; }

double Rng::normal(double mean, double stddev) {
  // Box-Muller without caching the second variate, so the stream position
  // depends only on the number of calls.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::size_t Rng::weighted_index(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (weights.empty() || !(total > 0.0)) {
    throw invalid_argument("weighted_index requires a positive total weight");
  }
  double x = uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  for (std::size_t i = weights.size(); i > 0; --i) {
    if (weights[i - 1] > 0.0) return i - 1;
  }
  return weights.size() - 1;
}

// ---------------------------------------------------------------- digest

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::string digest128_hex(std::string_view bytes) { return sha256_hex(bytes).substr(0, 32); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// ---------------------------------------------------------------- dates

namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  if (s.empty()) throw invalid_argument("empty number in " + std::string(what));
  for (char c : s) {
    if (c < '0' || c > '9') throw invalid_argument("bad number in " + std::string(what));
    v = v * 10 + (c - '0');
  }
  return v;
}

Date make_date(int y, int m, int d, std::string_view src) {
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw invalid_argument("invalid date: " + std::string(src));
  return sys_days{ymd};
}

}  // namespace

std::string format_date(Date d) {
  using namespace std::chrono;
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    throw invalid_argument("expected YYYY-MM-DD, got '" + std::string(s) + "'");
  }
  return make_date(parse_int(s.substr(0, 4), s), parse_int(s.substr(5, 2), s),
                   parse_int(s.substr(8, 2), s), s);
}

std::string format_datetime(DateTime t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02ld:%02ld:%02ldZ", format_date(day).c_str(),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

DateTime parse_datetime(std::string_view s) {
  if (s.size() != 20 || s[10] != 'T' || s[19] != 'Z' || s[13] != ':' || s[16] != ':') {
    throw invalid_argument("expected YYYY-MM-DDTHH:MM:SSZ, got '" + std::string(s) + "'");
  }
  using namespace std::chrono;
  const Date d = parse_date(s.substr(0, 10));
  const int hh = parse_int(s.substr(11, 2), s);
  const int mm = parse_int(s.substr(14, 2), s);
  const int ss = parse_int(s.substr(17, 2), s);
  if (hh > 23 || mm > 59 || ss > 59) throw invalid_argument("invalid time: " + std::string(s));
  return DateTime{d} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_long_date(Date d) {
  using namespace std::chrono;
  const year_month_day ymd{d};
  return std::string(kMonths[static_cast<unsigned>(ymd.month()) - 1]) + " " +
         std::to_string(static_cast<unsigned>(ymd.day())) + ", " +
         std::to_string(static_cast<int>(ymd.year()));
}

Date parse_long_date(std::string_view s) {
  const auto sp = s.find(' ');
  const auto comma = s.find(", ");
  if (sp == std::string_view::npos || comma == std::string_view::npos || comma < sp) {
    throw invalid_argument("expected 'Month D, YYYY', got '" + std::string(s) + "'");
  }
  const std::string month = text::to_lower(s.substr(0, sp));
  int m = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (text::to_lower(kMonths[i]) == month) m = static_cast<int>(i) + 1;
  }
  if (m == 0) throw invalid_argument("unknown month in '" + std::string(s) + "'");
  return make_date(parse_int(s.substr(comma + 2), s), m,
                   parse_int(s.substr(sp + 1, comma - sp - 1), s), s);
}

std::string utc_now_iso() {
  using namespace std::chrono;
  return format_datetime(floor<seconds>(system_clock::now()));
}

// ---------------------------------------------------------------- json io

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  write_file_atomic(path, value.dump(2) + "\n");
}

std::vector<json> read_jsonl_file(const std::filesystem::path& path) {
  std::vector<json> rows;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kSchema,
                  path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

void write_jsonl_file(const std::filesystem::path& path, const std::vector<json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

void require_schema(const json& doc, std::string_view expected, std::string_view what) {
  if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
    throw Error(ErrorCode::kSchema, std::string(what) + ": missing schema tag");
  }
  const auto got = doc["schema"].get<std::string>();
  if (got != expected) {
    throw Error(ErrorCode::kSchema, std::string(what) + ": schema '" + got +
                                        "' does not match expected '" + std::string(expected) +
                                        "'");
  }
}

// ---------------------------------------------------------------- text

namespace text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

namespace {
bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }
bool is_punct_byte(unsigned char c) { return c < 0x80 && !is_ascii_alnum(static_cast<char>(c)); }
}  // namespace

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : s) {
    if (is_space(c)) {
      flush();
    } else if (is_punct_byte(static_cast<unsigned char>(c))) {
      continue;
    } else if (c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

std::size_t token_count(std::string_view s) { return tokenize(s).size(); }

double type_token_ratio(std::string_view s) {
  const auto tokens = tokenize(s);
  if (tokens.empty()) return 0.0;
  std::unordered_set<std::string> uniq(tokens.begin(), tokens.end());
  return static_cast<double>(uniq.size()) / static_cast<double>(tokens.size());
}

std::vector<Span> sentence_spans(std::string_view s) {
  std::vector<Span> spans;
  std::size_t start = 0;
  while (start < s.size() && is_space(s[start])) ++start;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '.' && c != '!' && c != '?') continue;
    const bool at_end = i + 1 == s.size();
    if (!at_end && !is_space(s[i + 1]) && s[i + 1] != '"') continue;
    if (c == '.' && i > 0 && !at_end && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
        std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      continue;
    }
    std::size_t end = i + 1;
    if (!at_end && s[i + 1] == '"') ++end;
    spans.push_back({start, end});
    start = end;
    while (start < s.size() && is_space(s[start])) ++start;
    i = start - 1;
  }
  if (start < s.size()) {
    std::size_t end = s.size();
    while (end > start && is_space(s[end - 1])) --end;
    if (end > start) spans.push_back({start, end});
  }
  return spans;
}

std::string snippet(std::string_view body, std::size_t max_chars) {
  const auto spans = sentence_spans(body);
  if (!spans.empty() && spans.front().end <= max_chars) {
    return std::string(body.substr(spans.front().begin, spans.front().size()));
  }
  if (body.size() <= max_chars) return trim(body);
  std::size_t cut = max_chars;
  while (cut > 0 && !is_space(body[cut])) --cut;
  if (cut == 0) {
    cut = max_chars;
    // Never split a UTF-8 sequence.
    while (cut > 0 && (static_cast<unsigned char>(body[cut]) & 0xC0) == 0x80) --cut;
  }
  return trim(body.substr(0, cut));
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

std::string with_thousands(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  const auto dot = s.find('.');
  std::string int_part = s.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : s.substr(dot);
  bool neg = !int_part.empty() && int_part[0] == '-';
  if (neg) int_part.erase(0, 1);
  std::string grouped;
  for (std::size_t i = 0; i < int_part.size(); ++i) {
    if (i > 0 && (int_part.size() - i) % 3 == 0) grouped.push_back(',');
    grouped.push_back(int_part[i]);
  }
  return (neg ? "-" : "") + grouped + frac;
}

}  // namespace text
}  // namespace synthweb
