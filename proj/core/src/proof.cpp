#include "utp2/proof.hpp"

#include "utp2/error.hpp"
#include "utp2/syntax.hpp"

namespace utp2 {

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::Reduce: return "Reduce";
    case Strategy::LeftToRight: return "LeftToRight";
    case Strategy::ReduceBoth: return "ReduceBoth";
    }
    return "?";
}

std::string_view strategy_phrase(Strategy s) {
    switch (s) {
    case Strategy::Reduce: return "Reduce to TRUE";
    case Strategy::LeftToRight: return "LHS to RHS";
    case Strategy::ReduceBoth: return "Reduce both sides";
    }
    return "?";
}

Strategy parse_strategy(std::string_view text) {
    for (Strategy s : {Strategy::Reduce, Strategy::LeftToRight, Strategy::ReduceBoth}) {
        if (text == to_string(s) || text == strategy_phrase(s))
            return s;
    }
    if (text == "left-to-right")
        return Strategy::LeftToRight;
    if (text == "reduce-both")
        return Strategy::ReduceBoth;
    if (text == "reduce")
        return Strategy::Reduce;
    throw Error(ErrorCode::SyntaxError, "unknown strategy '" + std::string(text) + "'");
}

namespace {

bool is_equational(const Term& t) {
    if (t.is(TermKind::Connective))
        return t.connective_op() == ConnectiveOp::Equiv;
    return t.is(TermKind::App) && t.name() == ops::Equals && t.arity() == 2;
}

} // namespace

ProofState::ProofState(ConjectureRef conjecture, Strategy strategy)
    : conjecture_(std::move(conjecture))
    , strategy_(strategy)
    , focus_(conjecture_.schema) {
    const Term& schema = conjecture_.schema;
    switch (strategy_) {
    case Strategy::Reduce:
        target_ = Term::truth();
        sides_ = {schema};
        break;
    case Strategy::LeftToRight:
        if (!is_equational(schema))
            throw Error(ErrorCode::StrategyInapplicable,
                        "LHS to RHS needs an equation or equivalence");
        target_ = schema.child(1);
        sides_ = {schema.child(0)};
        break;
    case Strategy::ReduceBoth:
        if (!is_equational(schema))
            throw Error(ErrorCode::StrategyInapplicable,
                        "Reduce both sides needs an equation or equivalence");
        sides_ = {schema.child(0), schema.child(1)};
        break;
    }
    focus_ = Focused(sides_[0]);
    complete_ = completion();
}

std::string ProofState::target_description() const {
    switch (strategy_) {
    case Strategy::Reduce: return "TRUE";
    case Strategy::LeftToRight: return render_term(*target_);
    case Strategy::ReduceBoth: return "both sides equal";
    }
    return {};
}

Term ProofState::display_goal() const {
    if (strategy_ != Strategy::ReduceBoth)
        return sides_[0];
    return conjecture_.schema.with_child(0, sides_[0]).with_child(1, sides_[1]);
}

FocusPath ProofState::display_path(const Step& s) const {
    if (strategy_ != Strategy::ReduceBoth)
        return s.path;
    std::vector<std::size_t> segs{s.side + 1};
    segs.insert(segs.end(), s.path.segments().begin(), s.path.segments().end());
    return FocusPath(std::move(segs));
}

FocusPath ProofState::display_focus_path() const {
    if (strategy_ != Strategy::ReduceBoth)
        return focus_.path();
    std::vector<std::size_t> segs{active_ + 1};
    segs.insert(segs.end(), focus_.path().segments().begin(), focus_.path().segments().end());
    return FocusPath(std::move(segs));
}

bool ProofState::completion() const {
    switch (strategy_) {
    case Strategy::Reduce:
    case Strategy::LeftToRight:
        return alpha_equal(sides_[0], *target_);
    case Strategy::ReduceBoth:
        return alpha_equal(sides_[0], sides_[1]);
    }
    return false;
}

ProofState start_proof(const TheoryStack& stack, std::string_view theory,
                       std::string_view conjecture, Strategy strategy) {
    const Theory& th = stack.theory(theory);
    const Conjecture* c = th.find_conjecture(conjecture);
    if (!c)
        throw Error(ErrorCode::UnknownConjecture,
                    "no conjecture '" + std::string(conjecture) + "' in " + th.name);
    return ProofState(ConjectureRef{th.name, c->name, c->schema, c->side_condition}, strategy);
}

ProofState step(const ProofState& state, const MatchResult& m, const Binding& inst) {
    if (state.complete_)
        throw Error(ErrorCode::ProofAlreadyComplete, "the proof is already complete");
    Term after = apply_law(state.focus_, m, inst);

    ProofState next = state;
    Binding recorded;
    for (const auto& u : m.unbound) {
        if (u.kind == UnboundVar::Kind::Binder) {
            if (auto it = inst.binders.find(u.name); it != inst.binders.end())
                recorded.binders.insert(*it);
        } else if (auto it = inst.terms.find(u.name); it != inst.terms.end()) {
            recorded.terms.insert(*it);
        }
    }
    next.steps_.push_back(Step{m.law.name, m.direction, state.focus_.path(), std::move(recorded),
                               state.current(), after, state.active_});
    next.sides_[state.active_] = after;
    next.focus_ = is_valid_path(after, state.focus_.path()) ? Focused(after, state.focus_.path())
                                                            : Focused(after);
    next.complete_ = next.completion();
    return next;
}

ProofState undo(const ProofState& state) {
    if (state.steps_.empty())
        throw Error(ErrorCode::NothingToUndo, "no steps to undo");
    ProofState prev = state;
    const Step last = prev.steps_.back();
    prev.steps_.pop_back();
    prev.sides_[last.side] = last.goal_before;
    prev.active_ = last.side;
    prev.focus_ = Focused(last.goal_before, last.path);
    prev.complete_ = prev.completion();
    return prev;
}

ProofState set_focus(const ProofState& state, const FocusPath& path) {
    ProofState next = state;
    next.focus_ = Focused(state.current(), path);
    return next;
}

ProofState move_focus(const ProofState& state, Move m) {
    ProofState next = state;
    next.focus_ = move(state.focus_, m);
    return next;
}

ProofState switch_side(const ProofState& state, std::size_t side) {
    if (state.strategy_ != Strategy::ReduceBoth)
        throw Error(ErrorCode::StrategyInapplicable, "only Reduce both sides has two sides");
    if (side >= state.sides_.size())
        throw Error(ErrorCode::NoSuchChild, "no side " + std::to_string(side + 1));
    ProofState next = state;
    next.active_ = side;
    next.focus_ = Focused(next.sides_[side]);
    return next;
}

std::string render_proof(const ProofState& state) {
    if (!state.complete())
        throw Error(ErrorCode::NotComplete, "the proof is not complete");
    const auto& c = state.conjecture();
    std::string out;
    out += "Complete Proof for '" + c.theory + "$" + c.name + "\n";
    out += "Goal : " + render_term(c.schema) + "\n";
    out += "Strategy: " + std::string(strategy_phrase(state.strategy())) + "\n";
    out += "\n";

    // Replay the display goal forwards from the initial sides.
    ProofState view(c, state.strategy());
    std::vector<Term> sides;
    for (std::size_t i = 0; i < view.side_count(); ++i)
        sides.push_back(view.side(i));
    auto display = [&]() {
        if (state.strategy() != Strategy::ReduceBoth)
            return sides[0];
        return c.schema.with_child(0, sides[0]).with_child(1, sides[1]);
    };
    out += "     " + render_term(display()) + "\n";
    for (const Step& s : state.steps()) {
        out += " ===   \" " + s.law_name + " (" + std::string(to_string(s.direction)) + ") "
             + render_path(state.display_path(s)) + " \"\n";
        sides[s.side] = s.goal_after;
        out += "     " + render_term(display()) + "\n";
    }
    return out;
}

Proof finish_proof(const ProofState& state) {
    return Proof{state, render_proof(state)};
}

ProofRecord proof_record(const Proof& proof) {
    ProofRecord rec;
    rec.strategy = std::string(to_string(proof.state.strategy()));
    rec.transcript = proof.transcript;
    for (const Step& s : proof.state.steps()) {
        ProofRecord::Step r;
        r.law = s.law_name;
        r.direction = std::string(to_string(s.direction));
        r.path = render_path(proof.state.display_path(s));
        for (const auto& [k, v] : s.instantiation.binders)
            r.instantiation.emplace(k, v);
        for (const auto& [k, v] : s.instantiation.terms)
            r.instantiation.emplace(k, render_term(v));
        r.before = render_term(s.goal_before);
        r.after = render_term(s.goal_after);
        rec.steps.push_back(std::move(r));
    }
    return rec;
}

TheoryStack promote(const TheoryStack& stack, const Proof& proof) {
    if (!proof.state.complete())
        throw Error(ErrorCode::NotComplete, "only complete proofs can be promoted");
    const auto& c = proof.state.conjecture();
    return promote_conjecture(stack, c.theory, c.name, proof_record(proof));
}

} // namespace utp2
