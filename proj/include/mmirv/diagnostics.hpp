#pragma once

#include <string>
#include <vector>

namespace mmirv {

/// 1-based source position.
struct Loc {
  int line = 1;
  int col = 1;
};

/// Sentinel for "no source location known".
inline constexpr Loc kNoLoc{0, 0};
inline bool has_loc(const Loc& l) { return l.line > 0; }

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;
  Loc location;

  std::string to_string() const {
    std::string sev = severity == Severity::Error ? "error" : "warning";
    return std::to_string(location.line) + ":" + std::to_string(location.col) + ": " + sev +
           ": " + message;
  }
};

struct SourceFile {
  std::string path;
  std::string text;
};

}  // namespace mmirv
