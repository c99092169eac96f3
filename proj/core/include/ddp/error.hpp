#pragma once

#include <stdexcept>
#include <string>

namespace ddp {

// Raised for malformed or inconsistent input data. `line()` is 0 when the
// error is not tied to a position in a file.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    std::string out = what + " at line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out;
  }

  int line_;
  int column_;
};

}  // namespace ddp
