#pragma once

#include <cassert>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "lambdalab/term.hpp"

namespace lambdalab {

/// Free variables that a rewrite would bind, and the rule site (the redex or
/// reference being rewritten) where it happens.
struct CaptureReport {
  std::set<std::string> captured_names;
  TermPath site;

  friend bool operator==(const CaptureReport&, const CaptureReport&) = default;
};

enum class ErrorCode {
  InvalidPath,
  NotARedex,
  NotAnAbstraction,
  NotARef,
  UndefinedRef,
  InvalidName,
  WouldBindFree,
  WouldShadow,
  Capture,
};

/// Refusal of a rule application. The input term is never modified.
struct RuleError {
  ErrorCode code;
  std::string name;  // offending identifier, when there is one
  CaptureReport capture;  // populated for ErrorCode::Capture

  static RuleError captured(CaptureReport report) {
    return RuleError{ErrorCode::Capture, {}, std::move(report)};
  }

  friend bool operator==(const RuleError&, const RuleError&) = default;
};

/// Stable machine identifier, e.g. "would_bind_free".
std::string_view code_id(ErrorCode code);
std::string describe(const RuleError& error);

/// Value-or-error outcome used by every fallible operation.
template <typename T, typename E = RuleError>
class Result {
 public:
  Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : v_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const noexcept { return v_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<0>(v_);
  }
  T&& value() && {
    assert(ok());
    return std::get<0>(std::move(v_));
  }
  const E& error() const& {
    assert(!ok());
    return std::get<1>(v_);
  }

  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, E> v_;
};

}  // namespace lambdalab
