#ifndef VOXSYNC_TEXT_PARSE_ERROR_H_
#define VOXSYNC_TEXT_PARSE_ERROR_H_

#include <cstddef>
#include <string>

#include "voxsync/common/error.h"

namespace voxsync::text {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidPhoneme : public ParseError {
 public:
  InvalidPhoneme(std::size_t line, std::string symbol)
      : ParseError(line, "invalid phoneme \"" + symbol + "\""),
        symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

}  // namespace voxsync::text

#endif  // VOXSYNC_TEXT_PARSE_ERROR_H_
