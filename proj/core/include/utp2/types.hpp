#pragma once

#include <map>
#include <memory>
#include <string>

#include "utp2/kernel.hpp"
#include "utp2/path.hpp"
#include "utp2/term.hpp"

namespace utp2 {

/// `B`, `Set(t)`, or a type variable.
class Type {
public:
    enum class Kind { Bool, Set, Var };

    static Type boolean();
    static Type set_of(Type element);
    static Type variable(std::string name);

    Kind kind() const;
    bool is(Kind k) const { return kind() == k; }
    /// Set only.
    const Type& element() const;
    /// Var only.
    const std::string& name() const;

    friend bool operator==(const Type& a, const Type& b);

private:
    struct Node;
    explicit Type(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

std::string render_type(const Type& t);

using TypeSubstitution = std::map<std::string, Type>;

Type apply_type(const TypeSubstitution& s, const Type& t);

/// Most general unifier. Throws UnifyFail or OccursCheck.
TypeSubstitution unify(const Type& a, const Type& b);

enum class TermClass { Expr, Pred };

std::string_view to_string(TermClass c);

struct TypeAssignment {
    /// Free variables of the analysed term, plus the bound variables in scope
    /// at the focus, plus schematic variables.
    std::map<VarName, Type> var_types;
    TermClass focus_class = TermClass::Pred;
    /// Meaningful for expressions; predicates report `B`.
    Type focus_type = Type::boolean();
};

/// Monomorphic inference over a whole term. Type variables are named
/// `t1, t2, ...` in order of first use. Throws TypeError with the `@path` of
/// the offending subterm.
TypeAssignment infer(const Term& t);

/// As `infer(root)`, but the focus fields and the in-scope bound variables
/// describe the subterm at `path`.
TypeAssignment infer_at(const Term& root, const FocusPath& path);

/// Whether every schematic's law-side type unifies with the inferred type of
/// the term bound to it (in the goal environment), under one substitution.
bool types_compatible(const Binding& binding, const TypeAssignment& law_env,
                      const TypeAssignment& goal_env);

} // namespace utp2
