#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsift {

/// Dimension mismatch between two operands; carries both shapes.
class ShapeError : public std::invalid_argument {
 public:
  ShapeError(const std::string& op, std::size_t lhs_rows, std::size_t lhs_cols,
             std::size_t rhs_rows, std::size_t rhs_cols)
      : std::invalid_argument(op + ": incompatible shapes (" +
                              std::to_string(lhs_rows) + "x" + std::to_string(lhs_cols) +
                              ") vs (" + std::to_string(rhs_rows) + "x" +
                              std::to_string(rhs_cols) + ")"),
        lhs_rows_(lhs_rows), lhs_cols_(lhs_cols), rhs_rows_(rhs_rows), rhs_cols_(rhs_cols) {}

  std::size_t lhs_rows() const noexcept { return lhs_rows_; }
  std::size_t lhs_cols() const noexcept { return lhs_cols_; }
  std::size_t rhs_rows() const noexcept { return rhs_rows_; }
  std::size_t rhs_cols() const noexcept { return rhs_cols_; }

 private:
  std::size_t lhs_rows_, lhs_cols_, rhs_rows_, rhs_cols_;
};

/// Malformed text input. line() is 1-based; 0 means the whole file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration value; names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& msg)
      : std::invalid_argument("config field '" + field + "': " + msg),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Consistency violation in persisted or assembled data (duplicate ids,
/// broken graph invariants, corrupt checkpoint files).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gsift
