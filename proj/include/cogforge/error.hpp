#pragma once

#include <stdexcept>
#include <string>

namespace cogforge {

enum class ErrorKind {
  io,
  empty_dataset,
  unparseable_setting,
  degenerate_input,
  layout,
  unsupported_relation,
  ungroundable_chain,
  inconsistency,
  composition,
  range,
  unanswerable,
  ambiguity,
  schema,
  invalid_cogmap,
  unparseable_question,
  template_error,
  empty_run,
  duplicate_id,
  fixture_corruption,
};

const char* error_kind_name(ErrorKind kind);

/// All pipeline failures are reported as Error with a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cogforge
