#include "utp2/matcher.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "utp2/error.hpp"
#include "utp2/syntax.hpp"

namespace utp2 {

std::string_view to_string(Direction d) {
    return d == Direction::LtoR ? "L-to-R" : "R-to-L";
}

Direction parse_direction(std::string_view text) {
    if (text == "L-to-R" || text == "LtoR")
        return Direction::LtoR;
    if (text == "R-to-L" || text == "RtoL")
        return Direction::RtoL;
    throw Error(ErrorCode::SyntaxError, "unknown direction '" + std::string(text) + "'");
}

const Term& pattern_side(const Law& law, Direction d) {
    return d == Direction::LtoR ? law.lhs() : law.rhs();
}

const Term& replacement_side(const Law& law, Direction d) {
    return d == Direction::LtoR ? law.rhs() : law.lhs();
}

std::string_view to_string(Ranking r) {
    switch (r) {
    case Ranking::Default: return "default";
    case Ranking::Alphabetical: return "alphabetical";
    case Ranking::NearestTheory: return "nearest-theory";
    case Ranking::SmallestPreview: return "smallest-preview";
    }
    return "?";
}

Ranking parse_ranking(std::string_view text) {
    if (text == "default") return Ranking::Default;
    if (text == "alphabetical") return Ranking::Alphabetical;
    if (text == "nearest-theory") return Ranking::NearestTheory;
    if (text == "smallest-preview") return Ranking::SmallestPreview;
    throw Error(ErrorCode::Malformed, "unknown ranking '" + std::string(text) + "'");
}

namespace {

using Scope = std::vector<VarName>;

long depth_in(const Scope& scope, const VarName& v) {
    for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == v)
            return static_cast<long>(scope.size() - i);
    }
    return -1;
}

/// `t` with free occurrences of `from` renamed to `to`; none if that would
/// capture.
std::optional<Term> rename_free(const Term& t, const VarName& from, const VarName& to) {
    switch (t.kind()) {
    case TermKind::Var:
        return t.name() == from ? Term::var(to) : t;
    case TermKind::Quantifier: {
        const auto& bs = t.binders();
        if (std::find(bs.begin(), bs.end(), from) != bs.end())
            return t;
        if (std::find(bs.begin(), bs.end(), to) != bs.end() && free_vars(t.body()).count(from))
            return std::nullopt;
        break;
    }
    default:
        break;
    }
    Term out = t;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        auto c = rename_free(t.child(i), from, to);
        if (!c)
            return std::nullopt;
        out = out.with_child(i, std::move(*c));
    }
    return out;
}

class Matcher {
public:
    explicit Matcher(std::map<VarName, VarName> seed) { binding_.binders = std::move(seed); }

    bool run(const Term& p, const Term& s) {
        switch (p.kind()) {
        case TermKind::Schematic: {
            if (p.var_class() == VarClass::Expr && is_predicate_form(s))
                return false;
            auto it = binding_.terms.find(p.name());
            if (it != binding_.terms.end())
                return alpha_equal(it->second, s);
            binding_.terms.emplace(p.name(), s);
            return true;
        }
        case TermKind::PredConst:
            return s.is(TermKind::PredConst) && s.value() == p.value();
        case TermKind::Var: {
            if (!s.is(TermKind::Var))
                return false;
            const long pd = depth_in(pattern_scope_, p.name());
            const long sd = depth_in(subject_scope_, s.name());
            if (pd != sd)
                return false;
            return pd >= 0 || p.name() == s.name();
        }
        case TermKind::Quantifier: {
            if (!s.is(TermKind::Quantifier) || s.quant_kind() != p.quant_kind()
                || s.binders().size() != p.binders().size())
                return false;
            // A law binder used by several quantifiers must stand for one
            // name; later subject quantifiers are alpha-renamed to it.
            std::vector<VarName> names = s.binders();
            Term body = s.body();
            for (std::size_t i = 0; i < p.binders().size(); ++i) {
                auto [it, fresh] = binding_.binders.emplace(p.binders()[i], names[i]);
                if (fresh || it->second == names[i])
                    continue;
                const VarName& target = it->second;
                std::optional<Term> renamed;
                if (std::find(names.begin(), names.end(), target) == names.end()
                    && !free_vars(body).count(target))
                    renamed = rename_free(body, names[i], target);
                if (!renamed) {
                    conflict_ = p.binders()[i];
                    return false;
                }
                body = std::move(*renamed);
                names[i] = target;
            }
            const auto pm = pattern_scope_.size();
            const auto sm = subject_scope_.size();
            pattern_scope_.insert(pattern_scope_.end(), p.binders().begin(), p.binders().end());
            subject_scope_.insert(subject_scope_.end(), names.begin(), names.end());
            const bool ok = run(p.body(), body);
            pattern_scope_.resize(pm);
            subject_scope_.resize(sm);
            return ok;
        }
        case TermKind::Connective:
            if (!s.is(TermKind::Connective) || s.connective_op() != p.connective_op())
                return false;
            break;
        case TermKind::App:
            if (!s.is(TermKind::App) || s.name() != p.name() || s.arity() != p.arity())
                return false;
            break;
        }
        for (std::size_t i = 0; i < p.arity(); ++i) {
            if (!run(p.child(i), s.child(i)))
                return false;
        }
        return true;
    }

    Binding take() { return std::move(binding_); }
    const std::optional<VarName>& conflict() const { return conflict_; }
    const std::map<VarName, VarName>& binder_map() const { return binding_.binders; }

private:
    Binding binding_;
    std::optional<VarName> conflict_;
    Scope pattern_scope_;
    Scope subject_scope_;
};

void replacement_vars(const Term& t, const Binding& b, std::vector<UnboundVar>& out) {
    auto seen = [&](const std::string& n) {
        return std::any_of(out.begin(), out.end(), [&](const UnboundVar& u) { return u.name == n; });
    };
    if (t.is(TermKind::Quantifier)) {
        for (const auto& x : t.binders()) {
            if (!b.binders.count(x) && !seen(x))
                out.push_back({x, UnboundVar::Kind::Binder});
        }
    }
    if (t.is(TermKind::Schematic) && !b.terms.count(t.name()) && !seen(t.name())) {
        out.push_back({t.name(), t.var_class() == VarClass::Pred ? UnboundVar::Kind::Pred
                                                                 : UnboundVar::Kind::Expr});
    }
    for (const auto& c : t.children())
        replacement_vars(c, b, out);
}

auto rank_key(const MatchResult& m, Ranking r) {
    const auto& s = m.score;
    const std::size_t inv_pattern = static_cast<std::size_t>(-1) - s.pattern_size;
    switch (r) {
    case Ranking::Alphabetical:
        return std::make_tuple(std::size_t{0}, std::size_t{0}, std::size_t{0}, std::size_t{0},
                               m.law.name, m.direction);
    case Ranking::NearestTheory:
        return std::make_tuple(s.theory_distance, s.unbound, std::size_t{0}, std::size_t{0},
                               m.law.name, m.direction);
    case Ranking::SmallestPreview:
        return std::make_tuple(s.preview_size, std::size_t{0}, std::size_t{0}, std::size_t{0},
                               m.law.name, m.direction);
    case Ranking::Default:
        break;
    }
    return std::make_tuple(s.unbound, s.preview_size, inv_pattern, s.theory_distance, m.law.name,
                           m.direction);
}

std::set<VarName> names_in_use(const MatchResult& m, const TypeAssignment& goal_env) {
    std::set<VarName> taken;
    for (const auto& [name, type] : goal_env.var_types)
        taken.insert(name);
    for (const auto& [name, term] : m.binding.terms) {
        auto fv = free_vars(term);
        taken.insert(fv.begin(), fv.end());
    }
    for (const auto& [law_name, goal_name] : m.binding.binders)
        taken.insert(goal_name);
    return taken;
}

} // namespace

std::optional<Binding> match_pattern(const Term& pattern, const Term& subject) {
    // A binder whose subject names cannot be unified by renaming is retried
    // with a name fresh for the whole subject; each binder at most once.
    std::map<VarName, VarName> seed;
    for (;;) {
        Matcher m(seed);
        if (m.run(pattern, subject))
            return m.take();
        const auto& x = m.conflict();
        if (!x || seed.count(*x))
            return std::nullopt;
        std::set<VarName> taken = free_vars(subject);
        const auto bound = bound_names(subject);
        taken.insert(bound.begin(), bound.end());
        for (const auto& [from, to] : seed)
            taken.insert(to);
        seed.emplace(*x, fresh_name(m.binder_map().at(*x), taken));
    }
}

Binding default_instantiation(const MatchResult& m, const TypeAssignment& goal_env) {
    Binding out;
    if (m.unbound.empty())
        return out;
    std::set<VarName> taken = names_in_use(m, goal_env);
    for (const auto& u : m.unbound) {
        switch (u.kind) {
        case UnboundVar::Kind::Binder: {
            VarName v = fresh_name(u.name, taken);
            taken.insert(v);
            out.binders.emplace(u.name, std::move(v));
            break;
        }
        case UnboundVar::Kind::Expr: {
            VarName v = fresh_name(u.name, taken);
            taken.insert(v);
            out.terms.emplace(u.name, Term::var(std::move(v)));
            break;
        }
        case UnboundVar::Kind::Pred:
            out.terms.emplace(u.name, Term::truth());
            break;
        }
    }
    return out;
}

std::optional<MatchResult> match_law(const Focused& goal, const Law& law, Direction d,
                                     std::size_t theory_distance) {
    if (!law.rewritable())
        return std::nullopt;
    const Term& pattern = pattern_side(law, d);
    auto binding = match_pattern(pattern, goal.focus());
    if (!binding)
        return std::nullopt;
    const TypeAssignment law_env = infer(law.schema);
    const TypeAssignment goal_env = infer_at(goal.root(), goal.path());
    if (!types_compatible(*binding, law_env, goal_env))
        return std::nullopt;

    MatchResult m{law, d, goal.path(), std::move(*binding), {}, {}, goal.root(), {}};
    replacement_vars(replacement_side(law, d), m.binding, m.unbound);
    m.defaults = default_instantiation(m, goal_env);
    m.preview = goal.replace_focus(
        substitute(replacement_side(law, d), m.binding.merged(m.defaults)));
    m.score = MatchScore{m.unbound.size(), m.preview.size(), pattern.size(), theory_distance};
    return m;
}

std::vector<MatchResult> applicable_laws(const Focused& goal, const TheoryStack& stack,
                                         std::string_view from, std::size_t limit,
                                         Ranking ranking) {
    const std::size_t top = stack.index_of(from);
    std::vector<MatchResult> out;
    for (const Law& law : visible_laws(stack, from)) {
        const std::size_t distance = top - stack.index_of(law.owner);
        for (Direction d : {Direction::LtoR, Direction::RtoL}) {
            auto m = match_law(goal, law, d, distance);
            if (!m)
                continue;
            try {
                if (!check_side_condition(law.side_condition, m->binding.merged(m->defaults)))
                    continue;
                infer(m->preview);
            } catch (const Error&) {
                continue;
            }
            out.push_back(std::move(*m));
        }
    }
    std::stable_sort(out.begin(), out.end(), [&](const MatchResult& a, const MatchResult& b) {
        return rank_key(a, ranking) < rank_key(b, ranking);
    });
    if (out.size() > limit)
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(limit), out.end());
    return out;
}

Term apply_law(const Focused& goal, const MatchResult& m, const Binding& inst) {
    if (!(goal.path() == m.path))
        throw Error(ErrorCode::Malformed, "match was computed at " + render_path(m.path)
                                              + " but the focus is " + render_path(goal.path()));
    for (const auto& [name, term] : inst.terms) {
        const bool known = std::any_of(m.unbound.begin(), m.unbound.end(), [&](const UnboundVar& u) {
            return u.name == name && u.kind != UnboundVar::Kind::Binder;
        });
        if (!known)
            throw Error(ErrorCode::Malformed, "'" + name + "' is not an open variable of " + m.law.name);
        if (contains_schematic(term))
            throw Error(ErrorCode::Malformed, "instantiation of '" + name + "' contains schematic variables");
    }
    for (const auto& [name, target] : inst.binders) {
        const bool known = std::any_of(m.unbound.begin(), m.unbound.end(), [&](const UnboundVar& u) {
            return u.name == name && u.kind == UnboundVar::Kind::Binder;
        });
        if (!known)
            throw Error(ErrorCode::Malformed, "'" + name + "' is not an open binder of " + m.law.name);
    }
    const Binding full = m.binding.merged(inst);
    for (const auto& u : m.unbound) {
        const bool bound = u.kind == UnboundVar::Kind::Binder ? full.binders.count(u.name) > 0
                                                              : full.terms.count(u.name) > 0;
        if (!bound)
            throw Error(ErrorCode::IncompleteBinding, "'" + u.name + "' needs an instance");
    }
    if (!check_side_condition(m.law.side_condition, full))
        throw Error(ErrorCode::SideConditionViolated,
                    "side condition of " + m.law.name + " violated: "
                        + render_side_condition(m.law.side_condition));
    const TypeAssignment law_env = infer(m.law.schema);
    const TypeAssignment goal_env = infer_at(goal.root(), goal.path());
    if (!types_compatible(full, law_env, goal_env))
        throw Error(ErrorCode::TypeError, "instantiation of " + m.law.name + " is ill-typed",
                    render_path(goal.path()));
    Term result = goal.replace_focus(substitute(replacement_side(m.law, m.direction), full));
    infer(result);
    return result;
}

Binding parse_instantiation(const MatchResult& m,
                            const std::vector<std::pair<std::string, std::string>>& items) {
    Binding out;
    for (const auto& [name, text] : items) {
        auto it = std::find_if(m.unbound.begin(), m.unbound.end(),
                               [&](const UnboundVar& u) { return u.name == name; });
        if (it == m.unbound.end())
            throw Error(ErrorCode::Malformed, "'" + name + "' is not an open variable of " + m.law.name);
        Term value = parse_term(text);
        if (it->kind == UnboundVar::Kind::Binder) {
            if (!value.is(TermKind::Var))
                throw Error(ErrorCode::Malformed, "binder '" + name + "' needs a variable name");
            out.binders.insert_or_assign(name, value.name());
        } else {
            out.terms.insert_or_assign(name, std::move(value));
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> render_instantiation(const MatchResult& m,
                                                                      const Binding& inst) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& u : m.unbound) {
        if (u.kind == UnboundVar::Kind::Binder) {
            if (auto it = inst.binders.find(u.name); it != inst.binders.end())
                out.emplace_back(u.name, it->second);
        } else if (auto it = inst.terms.find(u.name); it != inst.terms.end()) {
            out.emplace_back(u.name, render_term(it->second));
        }
    }
    return out;
}

} // namespace utp2
