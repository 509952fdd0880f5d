#pragma once

// Random term generators and reference oracles shared by the test suites.

#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "utp2/focus.hpp"
#include "utp2/kernel.hpp"
#include "utp2/term.hpp"

namespace gen {

using utp2::Term;

class Gen {
public:
    explicit Gen(std::uint32_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

    /// Element variables are x, y, z, w; set variables s1..s3.
    Term elem() { return Term::var(pick(elem_names)); }

    Term set_expr(int depth) {
        if (depth <= 0 || coin(0.4))
            return Term::var(pick(set_names));
        return Term::binary(coin() ? "intsct" : "union", set_expr(depth - 1), set_expr(depth - 1));
    }

    Term pred(int depth) {
        if (depth <= 0) {
            switch (below(4)) {
            case 0: return Term::constant(coin());
            case 1: return Term::binary("in", elem(), set_expr(1));
            case 2: return Term::binary("=", set_expr(1), set_expr(1));
            default: return Term::binary("=", elem(), elem());
            }
        }
        switch (below(10)) {
        case 0: return Term::negation(pred(depth - 1));
        case 1: return Term::conj(pred(depth - 1), pred(depth - 1));
        case 2: return Term::disj(pred(depth - 1), pred(depth - 1));
        case 3: return Term::implies(pred(depth - 1), pred(depth - 1));
        case 4: return Term::equiv(pred(depth - 1), pred(depth - 1));
        case 5: return Term::forall(binders(), pred(depth - 1));
        case 6: return Term::exists(binders(), pred(depth - 1));
        case 7: return Term::binary("in", elem(), set_expr(depth - 1));
        case 8: return Term::binary("=", set_expr(depth - 1), set_expr(depth - 1));
        default: return pred(0);
        }
    }

    std::vector<std::string> binders() {
        std::vector<std::string> out{pick(elem_names)};
        if (coin(0.2)) {
            const std::string second = pick(elem_names);
            if (second != out[0])
                out.push_back(second);
        }
        return out;
    }

    /// Law-like pattern: predicate schematics P, Q; expression schematics
    /// S, T (sets) and e (element); binders drawn from x, y.
    Term pattern(int depth) {
        if (depth <= 0) {
            switch (below(4)) {
            case 0: return Term::schematic(pick(pred_schematics), utp2::VarClass::Pred);
            case 1: return Term::binary("in", elem_pattern(), set_pattern(1));
            case 2: return Term::binary("=", set_pattern(1), set_pattern(1));
            default: return Term::truth();
            }
        }
        switch (below(8)) {
        case 0: return Term::negation(pattern(depth - 1));
        case 1: return Term::conj(pattern(depth - 1), pattern(depth - 1));
        case 2: return Term::disj(pattern(depth - 1), pattern(depth - 1));
        case 3: return Term::equiv(pattern(depth - 1), pattern(depth - 1));
        case 4: return Term::forall({coin() ? "x" : "y"}, pattern(depth - 1));
        case 5: return Term::binary("in", elem_pattern(), set_pattern(depth - 1));
        case 6: return Term::binary("=", set_pattern(depth - 1), set_pattern(depth - 1));
        default: return pattern(0);
        }
    }

    Term set_pattern(int depth) {
        if (depth <= 0 || coin(0.5))
            return Term::schematic(pick(set_schematics), utp2::VarClass::Expr);
        return Term::binary(coin() ? "intsct" : "union", set_pattern(depth - 1), set_pattern(depth - 1));
    }

    Term elem_pattern() {
        return coin(0.6) ? Term::schematic("e", utp2::VarClass::Expr) : Term::var(coin() ? "x" : "y");
    }

    /// Instantiation for every schematic of `pattern`, respecting classes.
    utp2::Binding binding_for(const Term& pattern, int depth) {
        utp2::Binding b;
        for (const auto& [name, cls] : utp2::schematic_vars(pattern)) {
            if (cls == utp2::VarClass::Pred)
                b.terms.emplace(name, pred(depth));
            else if (name == "e")
                b.terms.emplace(name, elem());
            else
                b.terms.emplace(name, set_expr(depth));
        }
        return b;
    }

    std::mt19937& engine() { return rng_; }

    std::vector<std::string> elem_names{"x", "y", "z", "w"};
    std::vector<std::string> set_names{"s1", "s2", "s3"};
    std::vector<std::string> pred_schematics{"P", "Q"};
    std::vector<std::string> set_schematics{"S", "T"};

private:
    std::mt19937 rng_;
};

/// Every valid path of `t`, root first, pre-order.
inline void all_paths(const Term& t, const utp2::FocusPath& at, std::vector<utp2::FocusPath>& out) {
    out.push_back(at);
    for (std::size_t i = 0; i < t.arity(); ++i)
        all_paths(t.child(i), at.child(i + 1), out);
}

inline std::vector<utp2::FocusPath> all_paths(const Term& t) {
    std::vector<utp2::FocusPath> out;
    all_paths(t, {}, out);
    return out;
}

// Reference implementations, written against the term interface only.

inline std::string op_tag(const Term& t) {
    switch (t.kind()) {
    case utp2::TermKind::PredConst: return t.value() ? "TRUE" : "FALSE";
    case utp2::TermKind::Connective: return "c" + std::to_string(static_cast<int>(t.connective_op()));
    case utp2::TermKind::Quantifier:
        return "q" + std::to_string(static_cast<int>(t.quant_kind())) + "/" + std::to_string(t.binders().size());
    case utp2::TermKind::App: return "a:" + t.name();
    case utp2::TermKind::Var: return "v:" + t.name();
    case utp2::TermKind::Schematic: return "?" + t.name();
    }
    return "";
}

/// Locally nameless text: bound occurrences become `#k` (distance to the
/// binding occurrence counting every binder), free names stay.
inline std::string nameless(const Term& t, std::vector<std::string>& scope,
                            const std::function<std::string(const Term&)>& on_schematic = {}) {
    if (t.is(utp2::TermKind::Var)) {
        for (std::size_t i = scope.size(); i-- > 0;) {
            if (scope[i] == t.name())
                return "#" + std::to_string(scope.size() - 1 - i);
        }
        return t.name();
    }
    if (t.is(utp2::TermKind::Schematic) && on_schematic)
        return on_schematic(t);
    std::string out = op_tag(t);
    if (t.is(utp2::TermKind::Quantifier)) {
        for (const auto& b : t.binders())
            scope.push_back(b);
        out += "(" + nameless(t.body(), scope, on_schematic) + ")";
        scope.resize(scope.size() - t.binders().size());
        return out;
    }
    if (t.arity() > 0) {
        out += "(";
        for (std::size_t i = 0; i < t.arity(); ++i)
            out += (i ? "," : "") + nameless(t.child(i), scope, on_schematic);
        out += ")";
    }
    return out;
}

inline std::string nameless(const Term& t) {
    std::vector<std::string> scope;
    return nameless(t, scope);
}

/// Nameless form of `t` with schematics replaced by `b`; capture cannot
/// happen here because bound occurrences are indices.
inline std::string nameless_subst(const Term& t, const utp2::Binding& b) {
    std::vector<std::string> scope;
    return nameless(t, scope, [&b](const Term& s) { return nameless(b.terms.at(s.name())); });
}

inline void oracle_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    if (t.is(utp2::TermKind::Var)) {
        if (!bound.count(t.name()))
            out.insert(t.name());
        return;
    }
    if (t.is(utp2::TermKind::Quantifier)) {
        std::set<std::string> inner = bound;
        inner.insert(t.binders().begin(), t.binders().end());
        oracle_free(t.body(), inner, out);
        return;
    }
    for (const auto& c : t.children())
        oracle_free(c, bound, out);
}

inline std::set<std::string> oracle_free_vars(const Term& t) {
    std::set<std::string> bound, out;
    oracle_free(t, bound, out);
    return out;
}

/// Rebuilds `t` with the subterm at `path` replaced, by plain recursion.
inline Term oracle_replace(const Term& t, const std::vector<std::size_t>& path, std::size_t i,
                           const Term& replacement) {
    if (i == path.size())
        return replacement;
    const std::size_t k = path[i] - 1;
    return t.with_child(k, oracle_replace(t.child(k), path, i + 1, replacement));
}

inline Term oracle_at(const Term& t, const std::vector<std::size_t>& path) {
    const Term* cur = &t;
    for (std::size_t seg : path)
        cur = &cur->child(seg - 1);
    return *cur;
}

/// Renames bound variables apart (`b0`, `b1`, ...) consistently.
inline Term rename_bound(const Term& t, std::map<std::string, std::string>& env, int& counter) {
    switch (t.kind()) {
    case utp2::TermKind::Var: {
        auto it = env.find(t.name());
        return it == env.end() ? t : Term::var(it->second);
    }
    case utp2::TermKind::Quantifier: {
        auto saved = env;
        std::vector<std::string> fresh;
        for (const auto& b : t.binders()) {
            fresh.push_back("b" + std::to_string(counter++));
            env[b] = fresh.back();
        }
        Term body = rename_bound(t.body(), env, counter);
        env = saved;
        return Term::quantifier(t.quant_kind(), fresh, body);
    }
    default: {
        Term out = t;
        for (std::size_t i = 0; i < t.arity(); ++i)
            out = out.with_child(i, rename_bound(t.child(i), env, counter));
        return out;
    }
    }
}

inline Term rename_bound(const Term& t, int start = 0) {
    std::map<std::string, std::string> env;
    int counter = start;
    return rename_bound(t, env, counter);
}

} // namespace gen
