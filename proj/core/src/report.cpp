// SPDX-License-Identifier: Apache-2.0
#include "opalg/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opalg/errors.hpp"

namespace opalg {

int SuiteReport::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

int SuiteReport::failed() const { return int(checks.size()) - passed(); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = fnv1a64(bytes);
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // Bare integers would round-trip as JSON integers; keep the double type.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_check(std::string& out, const CheckRecord& c) {
  out += "{\"name\": \"" + json_escape(c.name) + "\", \"anchor\": \"" +
         json_escape(c.anchor) + "\", \"inputs_digest\": \"" +
         json_escape(c.inputs_digest) + "\", \"tolerance\": " +
         format_double(c.tolerance) + ", \"pass\": " +
         (c.pass ? "true" : "false") + ", \"measured\": {";
  bool first = true;
  for (const auto& [key, value] : c.measured) {
    if (!first) out += ", ";
    first = false;
    out += "\"" + json_escape(key) + "\": " + format_double(value);
  }
  out += "}}";
}

}  // namespace

std::string reports_to_json(std::vector<SuiteReport> reports, bool include_timing) {
  std::sort(reports.begin(), reports.end(),
            [](const SuiteReport& a, const SuiteReport& b) { return a.suite < b.suite; });
  int total = 0, failed = 0;
  for (const auto& r : reports) {
    total += int(r.checks.size());
    failed += r.failed();
  }
  std::string out = "{\n";
  out += "  \"summary\": {\"checks\": " + std::to_string(total) +
         ", \"failed\": " + std::to_string(failed) + ", \"all_pass\": " +
         (failed == 0 ? "true" : "false") + "},\n";
  out += "  \"suites\": [\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const SuiteReport& r = reports[i];
    out += "    {\n";
    out += "      \"suite\": \"" + json_escape(r.suite) + "\",\n";
    out += "      \"seed\": " + std::to_string(r.seed) + ",\n";
    out += "      \"rng_algorithm\": \"" + json_escape(r.rng_algorithm) + "\",\n";
    if (include_timing)
      out += "      \"wall_ms\": " + format_double(r.wall_ms) + ",\n";
    out += "      \"passed\": " + std::to_string(r.passed()) +
           ", \"failed\": " + std::to_string(r.failed()) + ",\n";
    out += "      \"checks\": [\n";
    for (std::size_t j = 0; j < r.checks.size(); ++j) {
      out += "        ";
      append_check(out, r.checks[j]);
      out += (j + 1 < r.checks.size()) ? ",\n" : "\n";
    }
    out += "      ]\n";
    out += (i + 1 < reports.size()) ? "    },\n" : "    }\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string csv_to_string(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ",";
    out += table.header[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << content;
  f.flush();
  if (!f) throw ConfigError("write failed: " + path);
}

}  // namespace opalg
