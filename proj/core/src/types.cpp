#include "utp2/types.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "utp2/error.hpp"
#include "utp2/focus.hpp"
#include "utp2/syntax.hpp"

namespace utp2 {

struct Type::Node {
    Kind kind = Kind::Bool;
    std::optional<Type> element;
    std::string name;
};

Type Type::boolean() {
    static const Type b(std::make_shared<Node>());
    return b;
}

Type Type::set_of(Type element) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Set;
    node->element = std::move(element);
    return Type(std::move(node));
}

Type Type::variable(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->name = std::move(name);
    return Type(std::move(node));
}

Type::Kind Type::kind() const { return node_->kind; }

const Type& Type::element() const {
    assert(kind() == Kind::Set);
    return *node_->element;
}

const std::string& Type::name() const { return node_->name; }

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Type::Kind::Bool: return true;
    case Type::Kind::Set: return a.element() == b.element();
    case Type::Kind::Var: return a.name() == b.name();
    }
    return false;
}

std::string render_type(const Type& t) {
    switch (t.kind()) {
    case Type::Kind::Bool: return "B";
    case Type::Kind::Set: return "Set(" + render_type(t.element()) + ")";
    case Type::Kind::Var: return t.name();
    }
    return "?";
}

std::string_view to_string(TermClass c) {
    return c == TermClass::Expr ? "EXPR" : "PRED";
}

Type apply_type(const TypeSubstitution& s, const Type& t) {
    switch (t.kind()) {
    case Type::Kind::Bool:
        return t;
    case Type::Kind::Set:
        return Type::set_of(apply_type(s, t.element()));
    case Type::Kind::Var: {
        auto it = s.find(t.name());
        return it == s.end() ? t : apply_type(s, it->second);
    }
    }
    return t;
}

namespace {

bool occurs(const std::string& var, const Type& t) {
    switch (t.kind()) {
    case Type::Kind::Bool: return false;
    case Type::Kind::Set: return occurs(var, t.element());
    case Type::Kind::Var: return t.name() == var;
    }
    return false;
}

/// Extends `s` so that `a` and `b` become equal. Bindings in `s` may chain;
/// `apply` resolves them.
void unify_into(TypeSubstitution& s, const Type& a0, const Type& b0) {
    const Type a = apply_type(s, a0);
    const Type b = apply_type(s, b0);
    if (a.is(Type::Kind::Var) && b.is(Type::Kind::Var) && a.name() == b.name())
        return;
    if (a.is(Type::Kind::Var) || b.is(Type::Kind::Var)) {
        const Type& var = a.is(Type::Kind::Var) ? a : b;
        const Type& other = a.is(Type::Kind::Var) ? b : a;
        if (occurs(var.name(), other))
            throw Error(ErrorCode::OccursCheck,
                        "type variable " + var.name() + " occurs in " + render_type(other));
        s.insert_or_assign(var.name(), other);
        return;
    }
    if (a.kind() != b.kind())
        throw Error(ErrorCode::UnifyFail,
                    "cannot unify " + render_type(a) + " with " + render_type(b));
    if (a.is(Type::Kind::Set))
        unify_into(s, a.element(), b.element());
}

struct Signature {
    std::vector<Type> params;
    Type result;
};

class Inferencer {
public:
    explicit Inferencer(std::string prefix = "_")
        : prefix_(std::move(prefix)) {}

    Type fresh() { return Type::variable(prefix_ + std::to_string(++counter_)); }

    void seed(const std::map<VarName, Type>& free) {
        for (const auto& [name, type] : free)
            free_.insert_or_assign(name, type);
    }

    Type walk(const Term& t, const FocusPath& path) {
        Type result = walk_node(t, path);
        if (target_ && path == *target_) {
            focus_type_ = result;
            focus_scope_ = scope_;
        }
        return result;
    }

    void unify_at(const Type& a, const Type& b, const FocusPath& at) {
        try {
            unify_into(subst_, a, b);
        } catch (const Error& e) {
            throw Error(ErrorCode::TypeError,
                        "type error at " + render_path(at) + ": " + e.what(), render_path(at));
        }
    }

    void unify(const Type& a, const Type& b) { unify_into(subst_, a, b); }

    Type resolve(const Type& t) const { return apply_type(subst_, t); }

    void set_target(const FocusPath& p) { target_ = p; }

    const std::map<VarName, Type>& free_types() const { return free_; }
    const std::map<std::string, Type>& meta_types() const { return metas_; }
    const std::vector<std::pair<VarName, Type>>& focus_scope() const { return focus_scope_; }
    const std::optional<Type>& focus_type() const { return focus_type_; }

private:
    Signature signature(const std::string& op) {
        if (op == ops::In) {
            Type a = fresh();
            return {{a, Type::set_of(a)}, Type::boolean()};
        }
        if (op == ops::Intsct || op == ops::Union) {
            Type s = Type::set_of(fresh());
            return {{s, s}, s};
        }
        if (op == ops::Equals) {
            Type a = fresh();
            return {{a, a}, Type::boolean()};
        }
        return {{}, fresh()};
    }

    Type walk_node(const Term& t, const FocusPath& path) {
        switch (t.kind()) {
        case TermKind::PredConst:
            return Type::boolean();
        case TermKind::Var: {
            for (std::size_t i = scope_.size(); i-- > 0;) {
                if (scope_[i].first == t.name())
                    return scope_[i].second;
            }
            auto it = free_.find(t.name());
            if (it == free_.end())
                it = free_.emplace(t.name(), fresh()).first;
            return it->second;
        }
        case TermKind::Schematic: {
            auto it = metas_.find(t.name());
            if (it == metas_.end())
                it = metas_.emplace(t.name(), fresh()).first;
            return it->second;
        }
        case TermKind::Connective:
            for (std::size_t i = 0; i < t.arity(); ++i) {
                const FocusPath at = path.child(i + 1);
                unify_at(walk(t.child(i), at), Type::boolean(), at);
            }
            return Type::boolean();
        case TermKind::Quantifier: {
            const auto mark = scope_.size();
            for (const auto& b : t.binders())
                scope_.emplace_back(b, fresh());
            const FocusPath at = path.child(1);
            unify_at(walk(t.body(), at), Type::boolean(), at);
            scope_.erase(scope_.begin() + static_cast<std::ptrdiff_t>(mark), scope_.end());
            return Type::boolean();
        }
        case TermKind::App: {
            Signature sig = signature(t.name());
            if (!sig.params.empty() && sig.params.size() != t.arity())
                throw Error(ErrorCode::TypeError,
                            "operator '" + t.name() + "' expects " + std::to_string(sig.params.size())
                                + " arguments at " + render_path(path),
                            render_path(path));
            for (std::size_t i = 0; i < t.arity(); ++i) {
                const FocusPath at = path.child(i + 1);
                Type arg = walk(t.child(i), at);
                if (!sig.params.empty())
                    unify_at(arg, sig.params[i], at);
            }
            return sig.result;
        }
        }
        return Type::boolean();
    }

    std::string prefix_;
    int counter_ = 0;
    TypeSubstitution subst_;
    std::vector<std::pair<VarName, Type>> scope_;
    std::map<VarName, Type> free_;
    std::map<std::string, Type> metas_;
    std::optional<FocusPath> target_;
    std::optional<Type> focus_type_;
    std::vector<std::pair<VarName, Type>> focus_scope_;
};

void collect_vars(const Type& t, std::vector<std::string>& order) {
    switch (t.kind()) {
    case Type::Kind::Bool:
        return;
    case Type::Kind::Set:
        collect_vars(t.element(), order);
        return;
    case Type::Kind::Var:
        if (std::find(order.begin(), order.end(), t.name()) == order.end())
            order.push_back(t.name());
        return;
    }
}

void occurrence_order(const Term& t, std::vector<std::string>& names) {
    if (t.is(TermKind::Var) || t.is(TermKind::Schematic)) {
        if (std::find(names.begin(), names.end(), t.name()) == names.end())
            names.push_back(t.name());
    }
    if (t.is(TermKind::Quantifier)) {
        for (const auto& b : t.binders()) {
            if (std::find(names.begin(), names.end(), b) == names.end())
                names.push_back(b);
        }
    }
    for (const auto& c : t.children())
        occurrence_order(c, names);
}

TypeAssignment run_inference(const Term& root, const FocusPath& path) {
    if (!is_valid_path(root, path))
        throw Error(ErrorCode::NoSuchChild, "no subterm at " + render_path(path));
    Inferencer inf;
    inf.set_target(path);
    const Type top = inf.walk(root, FocusPath{});
    if (is_predicate_form(root))
        inf.unify_at(top, Type::boolean(), FocusPath{});

    TypeAssignment out;
    for (const auto& [name, type] : inf.free_types())
        out.var_types.insert_or_assign(name, inf.resolve(type));
    for (const auto& [name, type] : inf.meta_types())
        out.var_types.insert_or_assign(name, inf.resolve(type));
    for (const auto& [name, type] : inf.focus_scope())
        out.var_types.insert_or_assign(name, inf.resolve(type));
    const Term focus = subterm_at(root, path);
    out.focus_class = is_predicate_form(focus) ? TermClass::Pred : TermClass::Expr;
    out.focus_type = inf.focus_type() ? inf.resolve(*inf.focus_type()) : Type::boolean();

    // Display names t1, t2, ... in order of first use.
    std::vector<std::string> names;
    occurrence_order(root, names);
    std::vector<std::string> vars;
    for (const auto& n : names) {
        if (auto it = out.var_types.find(n); it != out.var_types.end())
            collect_vars(it->second, vars);
    }
    collect_vars(out.focus_type, vars);
    TypeSubstitution display;
    for (std::size_t i = 0; i < vars.size(); ++i)
        display.emplace(vars[i], Type::variable("t" + std::to_string(i + 1)));
    for (auto& [name, type] : out.var_types)
        type = apply_type(display, type);
    out.focus_type = apply_type(display, out.focus_type);
    return out;
}

Type prefixed(const Type& t, const std::string& prefix) {
    switch (t.kind()) {
    case Type::Kind::Bool: return t;
    case Type::Kind::Set: return Type::set_of(prefixed(t.element(), prefix));
    case Type::Kind::Var: return Type::variable(prefix + t.name());
    }
    return t;
}

} // namespace

TypeSubstitution unify(const Type& a, const Type& b) {
    TypeSubstitution s;
    unify_into(s, a, b);
    // Present the unifier in solved form.
    TypeSubstitution solved;
    for (const auto& [name, type] : s)
        solved.emplace(name, apply_type(s, type));
    return solved;
}

TypeAssignment infer(const Term& t) { return run_inference(t, FocusPath{}); }

TypeAssignment infer_at(const Term& root, const FocusPath& path) {
    return run_inference(root, path);
}

bool types_compatible(const Binding& binding, const TypeAssignment& law_env,
                      const TypeAssignment& goal_env) {
    if (binding.terms.empty())
        return true;
    Inferencer inf("_c");
    std::map<VarName, Type> goal_types;
    for (const auto& [name, type] : goal_env.var_types)
        goal_types.emplace(name, prefixed(type, "G."));
    inf.seed(goal_types);
    try {
        for (const auto& [name, term] : binding.terms) {
            const Type actual = inf.walk(term, FocusPath{});
            if (is_predicate_form(term))
                inf.unify(actual, Type::boolean());
            auto law = law_env.var_types.find(name);
            if (law == law_env.var_types.end())
                continue;
            inf.unify(prefixed(law->second, "L."), actual);
        }
    } catch (const Error&) {
        return false;
    }
    return true;
}

} // namespace utp2
