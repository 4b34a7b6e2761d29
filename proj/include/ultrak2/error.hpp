// error types shared by every module; `code()` is the structured name
// surfaced by the command line tool
#pragma once
#include <stdexcept>
#include <string>

namespace ultrak2 {

class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what.empty() ? code : code + ": " + what),
        code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// malformed text input; `offset` is the byte position of the problem
class ParseError : public Error {
public:
  ParseError(std::string code, std::size_t offset, const std::string& what)
      : Error(std::move(code), what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what = {}) {
  throw Error(std::move(code), what);
}

}  // namespace ultrak2
