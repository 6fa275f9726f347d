#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace streamline::frontend {

struct Position {
  int line = 0;
  int column = 0;
};

enum class ErrorKind { Syntax, UnsupportedConstruct, Binding, Type };

const char* to_string(ErrorKind kind);

// Base of every diagnostic raised while reading or lowering MiniJ.
class FrontendError : public std::runtime_error {
 public:
  FrontendError(ErrorKind kind, Position pos, const std::string& message);

  ErrorKind kind() const { return kind_; }
  Position position() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  Position pos_;
  std::string detail_;
};

class SyntaxError : public FrontendError {
 public:
  SyntaxError(Position pos, const std::string& found,
              std::vector<std::string> expected);

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class UnsupportedConstruct : public FrontendError {
 public:
  UnsupportedConstruct(Position pos, const std::string& what)
      : FrontendError(ErrorKind::UnsupportedConstruct, pos, what) {}
};

class BindingError : public FrontendError {
 public:
  BindingError(Position pos, const std::string& what)
      : FrontendError(ErrorKind::Binding, pos, what) {}
};

class TypeError : public FrontendError {
 public:
  TypeError(Position pos, const std::string& what)
      : FrontendError(ErrorKind::Type, pos, what) {}
};

}  // namespace streamline::frontend
