#include "spreadkit/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>
#include <string>

#include "spreadkit/error.hpp"

namespace spreadkit {

namespace {

void require_same_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw InputError("degree_mismatch", "degree mismatch: " + std::to_string(a.degree()) +
                                            " vs " + std::to_string(b.degree()));
}

std::size_t padded_for(std::size_t degree) {
  return std::max(kernels::kBlock, (degree + kernels::kBlock - 1) / kernels::kBlock * kernels::kBlock);
}

}  // namespace

void Permutation::init_padding(std::size_t degree) {
  degree_ = static_cast<std::uint16_t>(degree);
  heap_.clear();
  if (padded_for(degree) > kernels::kBlock) heap_.resize(padded_for(degree));
  Point* d = mutable_data();
  for (std::size_t i = 0; i < padded_size(); ++i) d[i] = static_cast<Point>(i);
}

Permutation Permutation::identity(std::size_t degree) {
  if (degree > kMaxDegree)
    throw InputError("degree_out_of_range", "degree " + std::to_string(degree) + " exceeds 255");
  Permutation p;
  p.init_padding(degree);
  return p;
}

Permutation Permutation::from_images(std::span<const int> images) {
  if (images.size() > kMaxDegree)
    throw InputError("degree_out_of_range",
                     "degree " + std::to_string(images.size()) + " exceeds 255");
  Permutation p = identity(images.size());
  std::vector<bool> seen(images.size(), false);
  Point* d = p.mutable_data();
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int v = images[i];
    if (v < 0 || static_cast<std::size_t>(v) >= images.size())
      throw InputError("point_out_of_range", "image " + std::to_string(v) + " out of range");
    if (seen[static_cast<std::size_t>(v)])
      throw InputError("not_a_bijection", "image " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v)] = true;
    d[i] = static_cast<Point>(v);
  }
  return p;
}

Permutation Permutation::from_images(std::span<const Point> images) {
  std::vector<int> wide(images.begin(), images.end());
  return from_images(std::span<const int>(wide));
}

bool Permutation::is_identity() const noexcept {
  return kernels::active().is_identity(data(), padded_size());
}

bool operator==(const Permutation& a, const Permutation& b) noexcept {
  return a.degree_ == b.degree_ && std::memcmp(a.data(), b.data(), a.degree_) == 0;
}

std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) noexcept {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  const int c = std::memcmp(a.data(), b.data(), a.degree_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Permutation::hash() const noexcept {
  // FNV-1a over the images.
  std::uint64_t h = 1469598103934665603ull ^ degree_;
  const Point* d = data();
  for (std::size_t i = 0; i < degree_; ++i) {
    h ^= d[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void compose_into(const Permutation& p, const Permutation& q, Permutation& out) {
  kernels::active().compose(p.data(), q.data(), out.mutable_data(), p.padded_size());
}

void compose3_into(const Permutation& p, const Permutation& r, const Permutation& q,
                   Permutation& out) {
  kernels::active().compose3(p.data(), r.data(), q.data(), out.mutable_data(),
                             p.padded_size());
}

Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p, q);
  Permutation out = Permutation::identity(p.degree());
  compose_into(p, q, out);
  return out;
}

void inverse_into(const Permutation& p, Permutation& out) {
  // Scatter; no SIMD variant.
  const Point* src = p.data();
  Point* dst = out.mutable_data();
  for (std::size_t i = 0; i < p.padded_size(); ++i) dst[src[i]] = static_cast<Point>(i);
}

Permutation inverse(const Permutation& p) {
  Permutation out = Permutation::identity(p.degree());
  inverse_into(p, out);
  return out;
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  require_same_degree(p, g);
  Permutation out = Permutation::identity(p.degree());
  compose3_into(inverse(g), p, g, out);
  return out;
}

Permutation power(const Permutation& p, long long k) {
  Permutation base = k < 0 ? inverse(p) : p;
  unsigned long long e = k < 0 ? 0ull - static_cast<unsigned long long>(k)
                               : static_cast<unsigned long long>(k);
  const std::uint64_t ord = element_order(p);
  e %= ord;
  Permutation result = Permutation::identity(p.degree());
  Permutation tmp = result;
  while (e != 0) {
    if (e & 1u) {
      compose_into(result, base, tmp);
      std::swap(result, tmp);
    }
    compose_into(base, base, tmp);
    std::swap(base, tmp);
    e >>= 1u;
  }
  return result;
}

std::vector<std::vector<Point>> cycles(const Permutation& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> cyc;
    for (std::size_t i = start; !seen[i]; i = p[i]) {
      seen[i] = true;
      cyc.push_back(static_cast<Point>(i));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

CycleType cycle_type(const Permutation& p) {
  CycleType ct;
  for (const auto& c : cycles(p)) ct.lengths.push_back(c.size());
  std::sort(ct.lengths.begin(), ct.lengths.end(), std::greater<>());
  return ct;
}

std::uint64_t element_order(const Permutation& p) {
  std::uint64_t ord = 1;
  std::array<bool, 256> seen{};
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    for (std::size_t i = start; !seen[i]; i = p[i]) {
      seen[i] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  for (const auto& c : cycles(p)) {
    if (c.size() < 2) continue;
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_blanks() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() { ++pos_; }
  std::size_t column() const { return pos_ + 1; }

  bool number(long& out) {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (begin == pos_) return false;
    if (pos_ - begin > 6) {
      out = 1'000'000;
      return true;
    }
    out = std::stol(std::string(text_.substr(begin, pos_ - begin)));
    return true;
  }

  [[noreturn]] void fail(const std::string& name, const std::string& msg) const {
    throw InputError(name, msg + " at column " + std::to_string(column()));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation p = Permutation::identity(degree);
  Point* d = p.mutable_data();
  std::vector<bool> used(degree, false);
  Scanner s(text);
  s.skip_blanks();
  if (s.done()) s.fail("malformed_cycles", "empty permutation text");
  while (true) {
    s.skip_blanks();
    if (s.done()) break;
    if (s.peek() != '(') s.fail("malformed_cycles", "expected '('");
    s.advance();
    std::vector<Point> cyc;
    while (true) {
      s.skip_blanks();
      if (s.done()) s.fail("malformed_cycles", "unterminated cycle");
      if (s.peek() == ')') {
        s.advance();
        break;
      }
      if (!cyc.empty()) {
        if (s.peek() == ',') {
          s.advance();
          s.skip_blanks();
        }
      }
      long v = 0;
      if (!s.number(v)) s.fail("malformed_cycles", "expected a point number");
      if (v < 1 || static_cast<std::size_t>(v) > degree)
        s.fail("point_out_of_range",
               "point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      const auto pt = static_cast<std::size_t>(v - 1);
      if (used[pt]) s.fail("repeated_point", "repeated point " + std::to_string(v));
      used[pt] = true;
      cyc.push_back(static_cast<Point>(pt));
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) d[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  return p;
}

std::string format_images(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(p[i]);
  }
  return out + "]";
}

Permutation parse_images(std::string_view text) {
  Scanner s(text);
  s.skip_blanks();
  if (s.done() || s.peek() != '[') s.fail("malformed_images", "expected '['");
  s.advance();
  std::vector<int> images;
  s.skip_blanks();
  if (!s.done() && s.peek() == ']') {
    s.advance();
  } else {
    while (true) {
      s.skip_blanks();
      long v = 0;
      if (!s.number(v)) s.fail("malformed_images", "expected an image");
      if (v > static_cast<long>(kMaxDegree)) s.fail("point_out_of_range", "image too large");
      images.push_back(static_cast<int>(v));
      s.skip_blanks();
      if (s.done()) s.fail("malformed_images", "unterminated image list");
      if (s.peek() == ']') {
        s.advance();
        break;
      }
      if (s.peek() != ',') s.fail("malformed_images", "expected ',' or ']'");
      s.advance();
    }
  }
  s.skip_blanks();
  if (!s.done()) s.fail("malformed_images", "trailing characters");
  return Permutation::from_images(std::span<const int>(images));
}

Permutation parse_permutation(std::string_view text, std::size_t degree) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    Permutation p = parse_images(text);
    if (p.degree() != degree)
      throw InputError("degree_mismatch", "image list has " + std::to_string(p.degree()) +
                                              " entries, expected " + std::to_string(degree));
    return p;
  }
  return parse_cycles(text, degree);
}

Permutation cyclic_subgroup_key(const Permutation& p) {
  const std::uint64_t ord = element_order(p);
  Permutation best = p;
  Permutation cur = p;
  Permutation next = p;
  for (std::uint64_t k = 2; k < ord; ++k) {
    compose_into(cur, p, next);
    std::swap(cur, next);
    if (std::gcd(k, ord) == 1 && cur < best) best = cur;
  }
  return best;
}

}  // namespace spreadkit
