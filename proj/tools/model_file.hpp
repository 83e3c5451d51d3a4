#pragma once

// JSON chain-model file loading for the CLI.
//
// Schema: {"masses":[...], "stiffnesses":[...], "dampers":[...],
//          "force_dof":1, "active_dofs":[1,3]}
// force_dof defaults to 1 and active_dofs to {force_dof}; unknown and
// duplicate keys are rejected.

#include <stdexcept>
#include <string>
#include <vector>

namespace fracred::tools {

struct ModelFile {
  std::vector<double> masses;
  std::vector<double> stiffnesses;
  std::vector<double> dampers;
  int force_dof = 1;
  std::vector<int> active_dofs;
};

/// Malformed JSON (syntax, duplicate keys); carries 1-based line/column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// Well-formed JSON that violates the schema; carries the field name.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& message, std::string field)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelFile parse_model_text(const std::string& text);
ModelFile load_model_file(const std::string& path);  // throws ios on I/O

}  // namespace fracred::tools
