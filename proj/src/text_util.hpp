#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "omlkit/error.hpp"

namespace omlkit::detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (end == text.size() && line.empty() && !out.empty()) break;
    out.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

/// Whitespace-separated tokens; `#` starts a comment.
inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '#') ++j;
    out.push_back(Token{std::string(line.substr(i, j - i)), i + 1});
    i = j;
  }
  return out;
}

inline Error parse_error(std::size_t line, std::size_t column, const std::string& what) {
  return Error(Errc::ParseError,
               "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what,
               {line, column});
}

}  // namespace omlkit::detail
