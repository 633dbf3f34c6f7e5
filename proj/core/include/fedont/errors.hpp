#pragma once

#include <stdexcept>
#include <string>

namespace fedont {

/// Raised when an operation is invoked outside its contract: unknown feature
/// names, unsatisfiable models passed to core_features, duplicate tool ids,
/// exceeded counting budgets, and the like.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by workspace persistence. Carries the offending path so callers can
/// report positioned errors.
class WorkspaceError : public std::runtime_error {
 public:
  WorkspaceError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace fedont
