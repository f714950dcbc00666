#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adgraph {

enum class ErrorCode {
  kIo,
  kParse,
  kInvalidScenario,
  kUnknownObject,
  kUnknownEdge,
  kUnknownAttack,
  kUnknownDefense,
  kUnknownTarget,
  kEmptyEntryGrants,
  kEmptyTargets,
  kInvalidChain,
  kInvalidConfig,
  kEmptyInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adgraph
