#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "utp2/focus.hpp"
#include "utp2/matcher.hpp"
#include "utp2/theory.hpp"

namespace utp2 {

enum class Strategy { Reduce, LeftToRight, ReduceBoth };

/// `Reduce`, `LeftToRight`, `ReduceBoth`.
std::string_view to_string(Strategy s);
/// Header phrase: `Reduce to TRUE`, `LHS to RHS`, `Reduce both sides`.
std::string_view strategy_phrase(Strategy s);
/// Accepts names and phrases. Throws SyntaxError.
Strategy parse_strategy(std::string_view text);

struct ConjectureRef {
    std::string theory;
    std::string name;
    Term schema;
    SideCondition side_condition;

    friend bool operator==(const ConjectureRef&, const ConjectureRef&) = default;
};

struct Step {
    std::string law_name;
    Direction direction = Direction::LtoR;
    /// Relative to the side the step rewrote.
    FocusPath path;
    /// Values chosen for the law's open variables.
    Binding instantiation;
    Term goal_before;
    Term goal_after;
    /// 0 unless the strategy is ReduceBoth.
    std::size_t side = 0;

    friend bool operator==(const Step&, const Step&) = default;
};

/// One proof in progress. Reduce and LeftToRight work on one term;
/// ReduceBoth keeps both sides of the conjecture and rewrites the active one.
class ProofState {
public:
    ProofState(ConjectureRef conjecture, Strategy strategy);

    const ConjectureRef& conjecture() const { return conjecture_; }
    Strategy strategy() const { return strategy_; }
    /// TRUE for Reduce, the right-hand side for LeftToRight, none for
    /// ReduceBoth.
    const std::optional<Term>& target() const { return target_; }
    std::string target_description() const;

    std::size_t side_count() const { return sides_.size(); }
    const Term& side(std::size_t i) const { return sides_.at(i); }
    std::size_t active_side() const { return active_; }
    const Term& current() const { return sides_[active_]; }
    /// What the transcript shows as the goal: the current term, or for
    /// ReduceBoth both sides joined by the conjecture's top operator.
    Term display_goal() const;

    const Focused& focus() const { return focus_; }
    const std::vector<Step>& steps() const { return steps_; }
    bool complete() const { return complete_; }

    /// Paths as shown in transcripts: ReduceBoth prefixes the side (1 or 2).
    FocusPath display_path(const Step& s) const;
    FocusPath display_focus_path() const;

    friend bool operator==(const ProofState&, const ProofState&) = default;

private:
    friend ProofState start_proof(const TheoryStack&, std::string_view, std::string_view, Strategy);
    friend ProofState step(const ProofState&, const MatchResult&, const Binding&);
    friend ProofState undo(const ProofState&);
    friend ProofState set_focus(const ProofState&, const FocusPath&);
    friend ProofState move_focus(const ProofState&, Move);
    friend ProofState switch_side(const ProofState&, std::size_t);

    bool completion() const;

    ConjectureRef conjecture_;
    Strategy strategy_;
    std::optional<Term> target_;
    std::vector<Term> sides_;
    std::size_t active_ = 0;
    Focused focus_;
    std::vector<Step> steps_;
    bool complete_ = false;
};

/// Throws UnknownTheory, UnknownConjecture, StrategyInapplicable.
ProofState start_proof(const TheoryStack& stack, std::string_view theory,
                       std::string_view conjecture, Strategy strategy);

/// Applies `m` (computed at the current focus) with `inst` for its open
/// variables. The focus stays at the rewrite site while that path exists.
/// Throws ProofAlreadyComplete and whatever `apply_law` throws.
ProofState step(const ProofState& state, const MatchResult& m, const Binding& inst);

/// Throws NothingToUndo.
ProofState undo(const ProofState& state);

/// Path relative to the active side. Throws NoSuchChild.
ProofState set_focus(const ProofState& state, const FocusPath& path);
/// Throws AtRoot, NoSuchChild, NoSibling for blocked moves.
ProofState move_focus(const ProofState& state, Move m);
/// ReduceBoth only; throws StrategyInapplicable otherwise, NoSuchChild for a
/// side other than 0 or 1.
ProofState switch_side(const ProofState& state, std::size_t side);

/// Completed proof with its transcript.
struct Proof {
    ProofState state;
    std::string transcript;
};

/// Throws NotComplete.
Proof finish_proof(const ProofState& state);

/// Transcript text, one `\n`-terminated line per row. Throws NotComplete.
std::string render_proof(const ProofState& state);

ProofRecord proof_record(const Proof& proof);

/// Moves the conjecture to the theorems table. Throws NotComplete,
/// UnknownConjecture.
TheoryStack promote(const TheoryStack& stack, const Proof& proof);

} // namespace utp2
