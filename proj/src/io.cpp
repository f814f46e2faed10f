#include "stablereg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stablereg/error.hpp"
#include "stablereg/format.hpp"

namespace stablereg {

namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    fn(line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "line " << line_no << ": " << what;
  throw Error(ErrorKind::ParseError, os.str());
}

}  // namespace

std::vector<double> parse_sample_text(std::string_view text) {
  std::vector<double> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto v = parse_double(line);
    if (!v) parse_fail(line_no, "not a number: '" + std::string(line) + "'");
    if (!std::isfinite(*v)) parse_fail(line_no, "value is not finite");
    out.push_back(*v);
  });
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidParameter, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorKind::InvalidParameter, "write failed for " + path.string());
}

std::vector<double> read_sample_file(const std::filesystem::path& path) {
  return parse_sample_text(read_text_file(path));
}

std::string format_sample_text(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::map<std::string, std::string> parse_key_value_text(std::string_view text) {
  std::map<std::string, std::string> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) parse_fail(line_no, "empty key");
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  });
  return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace stablereg
