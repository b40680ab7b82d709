#pragma once

#include <stdexcept>
#include <string>

namespace opjhcpp {

// Error taxonomy shared by the library and the CLI. The CLI maps kinds to
// process exit codes: Config/Parse/Geo/Connectivity/Degenerate -> 1,
// Capacity -> 2, Io -> 3.
enum class ErrorKind {
  Config,
  Parse,
  Geo,
  Connectivity,
  Capacity,
  Io,
  Degenerate,
};

// Short lowercase tag used in CLI diagnostics, e.g. "error[config]: ...".
constexpr const char* error_kind_tag(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return "config";
    case ErrorKind::Parse:
      return "parse";
    case ErrorKind::Geo:
      return "geo";
    case ErrorKind::Connectivity:
      return "connectivity";
    case ErrorKind::Capacity:
      return "capacity";
    case ErrorKind::Io:
      return "io";
    case ErrorKind::Degenerate:
      return "degenerate";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorKind::Config, m) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorKind::Parse, m) {}
};

struct GeoError : Error {
  explicit GeoError(const std::string& m) : Error(ErrorKind::Geo, m) {}
};

struct ConnectivityError : Error {
  explicit ConnectivityError(const std::string& m)
      : Error(ErrorKind::Connectivity, m) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& m)
      : Error(ErrorKind::Capacity, m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorKind::Io, m) {}
};

struct DegenerateError : Error {
  explicit DegenerateError(const std::string& m)
      : Error(ErrorKind::Degenerate, m) {}
};

}  // namespace opjhcpp
