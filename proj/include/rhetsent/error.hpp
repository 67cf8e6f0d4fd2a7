#ifndef RHETSENT_ERROR_HPP
#define RHETSENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rhetsent {

// Input that cannot be parsed (tree files, manifests, lexicons, model files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line_(line),
        col_(col) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg), line_(0), col_(0) {}

  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_;
  int col_;
};

// Well-formed input that violates a contract (missing files, bad labels,
// single-class training sets, id mismatches).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite loss or parameters during training.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rhetsent

#endif  // RHETSENT_ERROR_HPP
