#pragma once

#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include "lambdalab/workspace.hpp"

namespace lambdalab {

inline constexpr int kProtocolVersion = 1;

/// JSON request/response dispatcher shared by the HTTP and stdio
/// transports. Requests on one server are serialized.
class ProtocolServer {
 public:
  /// `config` applies to sessions opened without their own configuration.
  explicit ProtocolServer(SyntaxConfig config = {}) : config_(std::move(config)) {}

  /// Handles one request document and returns the response document. Never
  /// throws; malformed input becomes a warning response.
  std::string handle(std::string_view request);

  std::size_t session_count() const;

 private:
  SyntaxConfig config_;
  mutable std::mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::size_t next_session_ = 1;
};

}  // namespace lambdalab
