#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "utp2/focus.hpp"
#include "utp2/kernel.hpp"
#include "utp2/theory.hpp"
#include "utp2/types.hpp"

namespace utp2 {

/// For a schema `L == R`: LtoR matches L and writes R, RtoL the reverse.
enum class Direction { LtoR, RtoL };

/// `L-to-R` / `R-to-L`.
std::string_view to_string(Direction d);
/// Throws SyntaxError.
Direction parse_direction(std::string_view text);

const Term& pattern_side(const Law& law, Direction d);
const Term& replacement_side(const Law& law, Direction d);

/// A variable of the replacement side that matching leaves open.
struct UnboundVar {
    enum class Kind { Binder, Expr, Pred };
    std::string name;
    Kind kind = Kind::Expr;

    friend bool operator==(const UnboundVar&, const UnboundVar&) = default;
};

struct MatchScore {
    std::size_t unbound = 0;
    std::size_t preview_size = 0;
    std::size_t pattern_size = 0;
    std::size_t theory_distance = 0;
};

struct MatchResult {
    Law law;
    Direction direction = Direction::LtoR;
    FocusPath path;
    Binding binding;
    std::vector<UnboundVar> unbound;
    /// Default instantiation of `unbound`.
    Binding defaults;
    /// Whole goal after applying with `defaults`.
    Term preview;
    MatchScore score;
};

/// Menu ordering heuristics.
enum class Ranking {
    /// Fewest unbound variables, then smallest preview, then most specific
    /// pattern, then nearest theory, then law name and direction.
    Default,
    Alphabetical,
    NearestTheory,
    SmallestPreview,
};

std::string_view to_string(Ranking r);
Ranking parse_ranking(std::string_view text);

/// First-order matching modulo bound-variable names. Expression schematics
/// match variables and operator applications only; predicate schematics match
/// anything (types decide the rest). Repeated schematics must bind
/// alpha-equal terms, and law binders bind subject binders positionally.
std::optional<Binding> match_pattern(const Term& pattern, const Term& subject);

/// Matches one law in one direction at the focus and checks types. Side
/// conditions are not checked here; `apply_law` enforces them.
std::optional<MatchResult> match_law(const Focused& goal, const Law& law, Direction d,
                                     std::size_t theory_distance = 0);

/// Ranked menu of legal rewrites at the focus, at most `limit` entries.
std::vector<MatchResult> applicable_laws(const Focused& goal, const TheoryStack& stack,
                                         std::string_view from, std::size_t limit = 20,
                                         Ranking ranking = Ranking::Default);

/// Binders and expression variables get fresh variables named after them
/// (primed if the name is already in use); predicate variables get TRUE.
Binding default_instantiation(const MatchResult& m, const TypeAssignment& goal_env);

/// Rewrites the focus. `inst` must cover `m.unbound`. Throws
/// IncompleteBinding, SideConditionViolated, TypeError, Malformed.
Term apply_law(const Focused& goal, const MatchResult& m, const Binding& inst);

/// Builds an instantiation from `name=text` pairs: binder names take a single
/// identifier, other variables a term. Throws Malformed, SyntaxError.
Binding parse_instantiation(const MatchResult& m,
                            const std::vector<std::pair<std::string, std::string>>& items);

/// `name=text` form of an instantiation, in unbound-variable order.
std::vector<std::pair<std::string, std::string>> render_instantiation(const MatchResult& m,
                                                                      const Binding& inst);

} // namespace utp2
