#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace utp2 {

enum class ErrorCode {
    Malformed,
    IncompleteBinding,
    SyntaxError,
    NoSuchChild,
    AtRoot,
    NoSibling,
    UnifyFail,
    OccursCheck,
    TypeError,
    UnknownTheory,
    UnknownRow,
    DuplicateName,
    FormatError,
    IoError,
    UnknownLaw,
    NoMatch,
    SideConditionViolated,
    UnknownConjecture,
    StrategyInapplicable,
    ProofAlreadyComplete,
    NothingToUndo,
    NotComplete,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `position` carries a human-readable
/// location when one exists: `line:col` for syntax errors, an `@path` for type
/// errors, `file:line` for stack files.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::string> position = std::nullopt)
        : std::runtime_error(message)
        , code_(code)
        , position_(std::move(position)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::optional<std::string>& position() const noexcept { return position_; }

private:
    ErrorCode code_;
    std::optional<std::string> position_;
};

} // namespace utp2
