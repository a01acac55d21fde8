#pragma once

// Line-oriented tokenizing shared by the text readers.

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aqubo/errors.hpp"

namespace aqubo::detail {

class LineReader {
 public:
  /// Lines whose first token starts with comment_prefix are skipped.
  explicit LineReader(std::istream& in, std::string comment_prefix = {})
      : in_(in), comment_(std::move(comment_prefix)) {}

  /// Next non-blank, non-comment line split on whitespace.
  std::optional<std::vector<std::string>> next_content() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      std::istringstream tokens(text);
      std::vector<std::string> fields;
      for (std::string tok; tokens >> tok;) fields.push_back(std::move(tok));
      if (fields.empty()) continue;
      if (!comment_.empty() && fields.front().starts_with(comment_)) continue;
      return fields;
    }
    return std::nullopt;
  }

  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  std::string comment_;
  std::size_t line_ = 0;
};

template <typename T>
T parse_int(const std::string& s, std::size_t line, std::size_t field) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, field, "expected an integer, got '" + s + "'");
  }
  return value;
}

}  // namespace aqubo::detail
