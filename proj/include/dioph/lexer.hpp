/*
 * Copyright 2026 The dioph Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DIOPH_LEXER_HPP_
#define DIOPH_LEXER_HPP_

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/numeric.hpp"

namespace dioph {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + message),
        position_(position),
        detail_(message) {}

  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

enum class TokenKind {
  kIdent,
  kInteger,
  kPlus,
  kMinus,
  kStar,
  kCaret,
  kLParen,
  kRParen,
  kEq,
  kNeq,
  kBang,
  kAmp,
  kPipe,
  kDot,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::int64_t value = 0;
  std::size_t pos = 0;
};

inline const char* token_name(TokenKind k) {
  switch (k) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kInteger: return "integer";
    case TokenKind::kPlus: return "'+'";
    case TokenKind::kMinus: return "'-'";
    case TokenKind::kStar: return "'*'";
    case TokenKind::kCaret: return "'^'";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kEq: return "'='";
    case TokenKind::kNeq: return "'!='";
    case TokenKind::kBang: return "'!'";
    case TokenKind::kAmp: return "'&'";
    case TokenKind::kPipe: return "'|'";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kEnd: return "end of input";
  }
  return "?";
}

/// Splits formula/polynomial text into tokens. `#` starts a comment that runs
/// to the end of the line.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto single = [&](TokenKind k) {
    out.push_back({k, std::string(1, text[i]), 0, i});
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      std::int64_t v = 0;
      try {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = checked_add(checked_mul(v, 10), text[i] - '0');
          ++i;
        }
      } catch (const std::overflow_error&) {
        throw ParseError(start, "integer literal out of range");
      }
      out.push_back({TokenKind::kInteger, std::string(text.substr(start, i - start)), v, start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out.push_back({TokenKind::kIdent, std::string(text.substr(start, i - start)), 0, start});
    } else if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({TokenKind::kNeq, "!=", 0, i});
      i += 2;
    } else {
      switch (c) {
        case '+': single(TokenKind::kPlus); break;
        case '-': single(TokenKind::kMinus); break;
        case '*': single(TokenKind::kStar); break;
        case '^': single(TokenKind::kCaret); break;
        case '(': single(TokenKind::kLParen); break;
        case ')': single(TokenKind::kRParen); break;
        case '=': single(TokenKind::kEq); break;
        case '!': single(TokenKind::kBang); break;
        case '&': single(TokenKind::kAmp); break;
        case '|': single(TokenKind::kPipe); break;
        case '.': single(TokenKind::kDot); break;
        default:
          throw ParseError(i, std::string("unexpected character '") + c + "'");
      }
    }
  }
  out.push_back({TokenKind::kEnd, "", 0, text.size()});
  return out;
}

}  // namespace dioph

#endif  // DIOPH_LEXER_HPP_
