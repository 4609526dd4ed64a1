#pragma once

// Text files of permutations.
//
// Generator files: a "degree N" line, then one permutation per line in cycle
// notation "(1,2)(3,4,5)" or image-list notation "[1,0,2]". '#' starts a comment;
// blank lines are ignored. Challenge-set files use the same format; the degree
// line is optional there and must agree with the group when present.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spreadkit/perm.hpp"

namespace spreadkit {

struct PermutationFile {
  std::size_t degree = 0;
  std::vector<Permutation> perms;
  std::vector<std::size_t> lines;  // 1-based source line of each permutation
};

/// Parse errors are InputError("parse_error" or the permutation error) with the line number.
PermutationFile parse_generator_text(std::string_view text, std::string_view source = "<input>");
PermutationFile read_generator_file(const std::filesystem::path& path);

PermutationFile parse_permutation_list(std::string_view text, std::size_t degree,
                                       std::string_view source = "<input>");
PermutationFile read_permutation_list(const std::filesystem::path& path, std::size_t degree);

std::string write_permutation_list(std::size_t degree, const std::vector<Permutation>& perms,
                                   std::string_view comment = {});

std::string read_text_file(const std::filesystem::path& path);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

}  // namespace spreadkit
