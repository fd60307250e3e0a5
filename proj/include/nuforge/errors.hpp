#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nuforge {

// Every failure is classified so the CLI can map it to an exit status:
// Input -> 1, Internal -> 2, ResourceCap -> 3.
enum class ErrorKind { Input, Internal, ResourceCap };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message),
        kind_(kind),
        stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

[[noreturn]] inline void throw_input(const std::string& stage,
                                     const std::string& msg) {
  throw Error(ErrorKind::Input, stage, msg);
}

[[noreturn]] inline void throw_internal(const std::string& stage,
                                        const std::string& msg) {
  throw Error(ErrorKind::Internal, stage, msg);
}

[[noreturn]] inline void throw_cap(const std::string& stage,
                                   const std::string& msg) {
  throw Error(ErrorKind::ResourceCap, stage, msg);
}

}  // namespace nuforge
