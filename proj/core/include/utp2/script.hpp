#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "utp2/matcher.hpp"
#include "utp2/proof.hpp"
#include "utp2/theory.hpp"

namespace utp2 {

struct ScriptStep {
    std::string law;
    Direction direction = Direction::LtoR;
    /// As written: ReduceBoth paths start with the side index.
    FocusPath path;
    std::vector<std::pair<std::string, std::string>> instantiation;
    std::size_t line = 0;
};

/// A goal line copied from a transcript; replay checks it.
struct ScriptGoal {
    std::string text;
    /// Number of steps applied before this goal is shown.
    std::size_t after_steps = 0;
    std::size_t line = 0;
};

/// Proof script. Header lines `theory: T`, `conjecture: C`, `strategy: S`,
/// then one step per line:
///
///     <law> (<L-to-R|R-to-L>) @<path> [with <var>=<term>, ...]
///
/// A transcript is itself a script: its `Complete Proof for 'T$C`, `Goal :`
/// and `Strategy:` lines are understood, ` ===   " ... "` lines are steps,
/// and indented goal lines are checked during replay.
struct Script {
    std::string theory;
    std::string conjecture;
    Strategy strategy = Strategy::Reduce;
    std::vector<ScriptStep> steps;
    std::vector<ScriptGoal> goals;
};

/// Throws SyntaxError with the offending line.
Script parse_script(std::string_view text);

/// Parses `<law> (<dir>) @<path> [with ...]`. Throws SyntaxError.
ScriptStep parse_step_line(std::string_view line);

struct ReplayResult {
    bool ok = false;
    std::string transcript;
    /// 1-based index of the failing step; 0 when the failure is not a step.
    std::size_t failed_step = 0;
    std::string diagnostic;
    std::optional<ProofState> state;
};

/// Runs the script against the stack. Never throws for proof failures; they
/// are reported in the result.
ReplayResult replay(const TheoryStack& stack, const Script& script);

/// Applies one scripted step to a proof in progress: focuses the path,
/// matches the named law (nearest visible one), instantiates open variables
/// from the script or with defaults. Throws on failure.
ProofState apply_script_step(const TheoryStack& stack, const ProofState& state,
                             const ScriptStep& step);

} // namespace utp2
