#include "spreadkit/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "spreadkit/error.hpp"

namespace spreadkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
    if (text.empty()) break;
  }
  return out;
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& name,
                          const std::string& what) {
  throw InputError(name, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::optional<std::size_t> degree_line(std::string_view line, std::string_view source,
                                       std::size_t number) {
  if (line.substr(0, 6) != "degree") return std::nullopt;
  std::string_view rest = trim(line.substr(6));
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size())
    fail_at(source, number, "parse_error", "malformed degree line");
  if (value == 0 || value > kMaxDegree)
    fail_at(source, number, "degree_out_of_range", "degree must be in 1..255");
  return value;
}

void parse_body(std::span<const Line> lines, PermutationFile& out, std::string_view source) {
  for (const Line& l : lines) {
    try {
      out.perms.push_back(parse_permutation(l.text, out.degree));
    } catch (const InputError& e) {
      fail_at(source, l.number, e.name(), e.what());
    }
    out.lines.push_back(l.number);
  }
}

}  // namespace

PermutationFile parse_generator_text(std::string_view text, std::string_view source) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw InputError("parse_error", std::string(source) + ": missing degree line");
  PermutationFile out;
  const auto d = degree_line(lines.front().text, source, lines.front().number);
  if (!d) fail_at(source, lines.front().number, "parse_error", "expected \"degree N\"");
  out.degree = *d;
  parse_body(std::span(lines).subspan(1), out, source);
  return out;
}

PermutationFile parse_permutation_list(std::string_view text, std::size_t degree,
                                       std::string_view source) {
  auto lines = content_lines(text);
  PermutationFile out;
  out.degree = degree;
  std::span<const Line> body(lines);
  if (!lines.empty()) {
    if (const auto d = degree_line(lines.front().text, source, lines.front().number)) {
      if (*d != degree)
        fail_at(source, lines.front().number, "degree_mismatch",
                "file degree " + std::to_string(*d) + " differs from group degree " +
                    std::to_string(degree));
      body = body.subspan(1);
    }
  }
  parse_body(body, out, source);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("file_not_found", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PermutationFile read_generator_file(const std::filesystem::path& path) {
  return parse_generator_text(read_text_file(path), path.string());
}

PermutationFile read_permutation_list(const std::filesystem::path& path, std::size_t degree) {
  return parse_permutation_list(read_text_file(path), degree, path.string());
}

std::string write_permutation_list(std::size_t degree, const std::vector<Permutation>& perms,
                                   std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  out += "degree " + std::to_string(degree) + "\n";
  for (const auto& p : perms) out += format_cycles(p) + "\n";
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

}  // namespace spreadkit
