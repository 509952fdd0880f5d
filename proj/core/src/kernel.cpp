#include "utp2/kernel.hpp"

#include <algorithm>
#include <utility>

#include "utp2/error.hpp"

namespace utp2 {

Binding Binding::merged(const Binding& other) const {
    Binding out = *this;
    for (const auto& [k, v] : other.terms)
        out.terms.insert_or_assign(k, v);
    for (const auto& [k, v] : other.binders)
        out.binders.insert_or_assign(k, v);
    return out;
}

namespace {

void collect_free(const Term& t, std::vector<VarName>& bound, std::set<VarName>& out) {
    switch (t.kind()) {
    case TermKind::Var:
        if (std::find(bound.begin(), bound.end(), t.name()) == bound.end())
            out.insert(t.name());
        return;
    case TermKind::Quantifier: {
        const auto mark = bound.size();
        bound.insert(bound.end(), t.binders().begin(), t.binders().end());
        collect_free(t.body(), bound, out);
        bound.resize(mark);
        return;
    }
    default:
        for (const auto& c : t.children())
            collect_free(c, bound, out);
    }
}

void collect_schematics(const Term& t, std::map<std::string, VarClass>& out) {
    if (t.is(TermKind::Schematic)) {
        out.emplace(t.name(), t.var_class());
        return;
    }
    for (const auto& c : t.children())
        collect_schematics(c, out);
}

void collect_bound(const Term& t, std::set<VarName>& out) {
    if (t.is(TermKind::Quantifier))
        out.insert(t.binders().begin(), t.binders().end());
    for (const auto& c : t.children())
        collect_bound(c, out);
}

using Renaming = std::map<VarName, VarName>;

VarName renamed(const Renaming& ren, const VarName& v) {
    auto it = ren.find(v);
    return it == ren.end() ? v : it->second;
}

/// Names that would occur free directly under a quantifier with these
/// binders once the body has been substituted.
std::set<VarName> exposed_names(const Term& q, const Binding& b, const Renaming& ren) {
    std::set<VarName> out;
    std::set<VarName> body_free = free_vars(q.body());
    for (const auto& v : body_free) {
        if (std::find(q.binders().begin(), q.binders().end(), v) == q.binders().end())
            out.insert(renamed(ren, v));
    }
    for (const auto& [name, cls] : schematic_vars(q.body())) {
        auto it = b.terms.find(name);
        if (it == b.terms.end())
            throw Error(ErrorCode::IncompleteBinding,
                        "schematic variable '" + name + "' is not bound");
        auto fv = free_vars(it->second);
        out.insert(fv.begin(), fv.end());
    }
    return out;
}

Term subst(const Term& t, const Binding& b, const Renaming& ren) {
    switch (t.kind()) {
    case TermKind::PredConst:
        return t;
    case TermKind::Var: {
        auto it = ren.find(t.name());
        return it == ren.end() ? t : Term::var(it->second);
    }
    case TermKind::Schematic: {
        auto it = b.terms.find(t.name());
        if (it == b.terms.end())
            throw Error(ErrorCode::IncompleteBinding,
                        "schematic variable '" + t.name() + "' is not bound");
        return it->second;
    }
    case TermKind::Quantifier: {
        const auto exposed = exposed_names(t, b, ren);
        Renaming inner = ren;
        std::vector<VarName> binders;
        std::set<VarName> chosen;
        for (const auto& x : t.binders()) {
            VarName target;
            if (auto it = b.binders.find(x); it != b.binders.end()) {
                target = it->second;
            } else {
                target = x;
                if (exposed.count(target) || chosen.count(target)) {
                    std::set<VarName> avoid = exposed;
                    avoid.insert(chosen.begin(), chosen.end());
                    target = fresh_name(x, avoid, 1);
                }
            }
            inner[x] = target;
            chosen.insert(target);
            binders.push_back(std::move(target));
        }
        return Term::quantifier(t.quant_kind(), std::move(binders),
                                subst(t.body(), b, inner));
    }
    case TermKind::Connective:
    case TermKind::App: {
        std::vector<Term> args;
        args.reserve(t.arity());
        for (const auto& c : t.children())
            args.push_back(subst(c, b, ren));
        if (t.is(TermKind::Connective))
            return Term::connective(t.connective_op(), std::move(args));
        return Term::app(t.name(), std::move(args));
    }
    }
    return t;
}

using Scope = std::vector<VarName>;

/// Innermost binding depth of `v`, or -1 if free.
long depth_of(const Scope& scope, const VarName& v) {
    for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == v)
            return static_cast<long>(scope.size() - i);
    }
    return -1;
}

bool alpha(const Term& a, const Term& b, Scope& sa, Scope& sb) {
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case TermKind::PredConst:
        return a.value() == b.value();
    case TermKind::Var: {
        const long da = depth_of(sa, a.name());
        const long db = depth_of(sb, b.name());
        if (da != db)
            return false;
        return da >= 0 || a.name() == b.name();
    }
    case TermKind::Schematic:
        return a.name() == b.name() && a.var_class() == b.var_class();
    case TermKind::Quantifier: {
        if (a.quant_kind() != b.quant_kind() || a.binders().size() != b.binders().size())
            return false;
        const auto ma = sa.size();
        const auto mb = sb.size();
        sa.insert(sa.end(), a.binders().begin(), a.binders().end());
        sb.insert(sb.end(), b.binders().begin(), b.binders().end());
        const bool ok = alpha(a.body(), b.body(), sa, sb);
        sa.resize(ma);
        sb.resize(mb);
        return ok;
    }
    case TermKind::Connective:
        if (a.connective_op() != b.connective_op())
            return false;
        break;
    case TermKind::App:
        if (a.name() != b.name() || a.arity() != b.arity())
            return false;
        break;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!alpha(a.child(i), b.child(i), sa, sb))
            return false;
    }
    return true;
}

void find_operands(const Term& t, std::set<VarName>& expr_names) {
    if (t.is(TermKind::App)) {
        for (const auto& c : t.children()) {
            if (c.is(TermKind::Var) || c.is(TermKind::Schematic))
                expr_names.insert(c.name());
        }
    }
    for (const auto& c : t.children())
        find_operands(c, expr_names);
}

Term schematize_rec(const Term& t, Scope& scope, const std::set<VarName>& expr_names) {
    switch (t.kind()) {
    case TermKind::Var:
        if (depth_of(scope, t.name()) >= 0)
            return t;
        [[fallthrough]];
    case TermKind::Schematic:
        return Term::schematic(t.name(), expr_names.count(t.name()) ? VarClass::Expr
                                                                    : VarClass::Pred);
    case TermKind::PredConst:
        return t;
    case TermKind::Quantifier: {
        const auto mark = scope.size();
        scope.insert(scope.end(), t.binders().begin(), t.binders().end());
        Term body = schematize_rec(t.body(), scope, expr_names);
        scope.resize(mark);
        return Term::quantifier(t.quant_kind(), t.binders(), std::move(body));
    }
    case TermKind::Connective:
    case TermKind::App: {
        std::vector<Term> args;
        for (const auto& c : t.children())
            args.push_back(schematize_rec(c, scope, expr_names));
        if (t.is(TermKind::Connective))
            return Term::connective(t.connective_op(), std::move(args));
        return Term::app(t.name(), std::move(args));
    }
    }
    return t;
}

} // namespace

std::set<VarName> free_vars(const Term& t) {
    std::set<VarName> out;
    std::vector<VarName> bound;
    collect_free(t, bound, out);
    return out;
}

std::map<std::string, VarClass> schematic_vars(const Term& t) {
    std::map<std::string, VarClass> out;
    collect_schematics(t, out);
    return out;
}

std::set<VarName> bound_names(const Term& t) {
    std::set<VarName> out;
    collect_bound(t, out);
    return out;
}

bool contains_schematic(const Term& t) {
    if (t.is(TermKind::Schematic))
        return true;
    return std::any_of(t.children().begin(), t.children().end(),
                       [](const Term& c) { return contains_schematic(c); });
}

Term substitute(const Term& t, const Binding& b) {
    return subst(t, b, {});
}

bool alpha_equal(const Term& a, const Term& b) {
    Scope sa;
    Scope sb;
    return alpha(a, b, sa, sb);
}

bool check_side_condition(const SideCondition& sc, const Binding& b) {
    for (const auto& c : sc.conjuncts) {
        auto target = b.terms.find(c.target);
        if (target == b.terms.end())
            throw Error(ErrorCode::IncompleteBinding,
                        "side condition refers to unbound '" + c.target + "'");
        VarName v = c.var;
        if (auto it = b.binders.find(c.var); it != b.binders.end()) {
            v = it->second;
        } else if (auto t = b.terms.find(c.var);
                   t != b.terms.end() && t->second.is(TermKind::Var)) {
            v = t->second.name();
        }
        if (free_vars(target->second).count(v))
            return false;
    }
    return true;
}

Term schematize(const Term& t) {
    std::set<VarName> expr_names;
    find_operands(t, expr_names);
    Scope scope;
    return schematize_rec(t, scope, expr_names);
}

VarName fresh_name(const VarName& base, const std::set<VarName>& taken, int min_primes) {
    VarName candidate = base + std::string(static_cast<std::size_t>(min_primes), '\'');
    while (taken.count(candidate))
        candidate += '\'';
    return candidate;
}

} // namespace utp2
