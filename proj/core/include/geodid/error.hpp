#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geodid {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define GEODID_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

GEODID_DEFINE_ERROR(InvalidArgument);
GEODID_DEFINE_ERROR(SpaceMismatch);
GEODID_DEFINE_ERROR(GridMismatch);
GEODID_DEFINE_ERROR(DegenerateTransport);
GEODID_DEFINE_ERROR(DegenerateTangent);
GEODID_DEFINE_ERROR(NonConvergence);
GEODID_DEFINE_ERROR(EmptyGroup);
GEODID_DEFINE_ERROR(InadmissibleCell);
GEODID_DEFINE_ERROR(MissingOutcome);

#undef GEODID_DEFINE_ERROR

/// A named data rule was broken. Unit and period are filled in when the
/// violation is attributable to one panel cell.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string rule, const std::string& message,
                     std::optional<std::string> unit = std::nullopt,
                     std::optional<int> period = std::nullopt)
      : Error("InvariantViolation", message),
        rule_(std::move(rule)),
        unit_(std::move(unit)),
        period_(period) {}

  const std::string& rule() const noexcept { return rule_; }
  const std::optional<std::string>& unit() const noexcept { return unit_; }
  std::optional<int> period() const noexcept { return period_; }

 private:
  std::string rule_;
  std::optional<std::string> unit_;
  std::optional<int> period_;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int column, const std::string& message)
      : Error("ParseError", file + ":" + std::to_string(line) + ":" +
                                std::to_string(column) + ": " + message),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string file_;
  int line_;
  int column_;
};

/// The comparison cohort of a group-time cell is empty at `period`.
class EmptyCohort : public Error {
 public:
  EmptyCohort(int period, const std::string& message)
      : Error("EmptyCohort", message), period_(period) {}

  int period() const noexcept { return period_; }

 private:
  int period_;
};

enum class WarningKind { OrthantExit, KindViolation };

struct Warning {
  WarningKind kind;
  std::string detail;
};

using WarningLog = std::vector<Warning>;

inline const char* to_string(WarningKind k) {
  switch (k) {
    case WarningKind::OrthantExit:
      return "OrthantExit";
    case WarningKind::KindViolation:
      return "KindViolation";
  }
  return "Unknown";
}

}  // namespace geodid
