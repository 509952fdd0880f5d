#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace utp2 {

using VarName = std::string;

enum class TermKind { PredConst, Connective, Quantifier, App, Var, Schematic };

enum class ConnectiveOp { And, Or, Not, Implies, Equiv };

enum class QuantKind { Forall, Exists };

/// Syntactic class of a schematic variable: `Expr` ones stand for
/// expressions, `Pred` ones for predicates.
enum class VarClass { Expr, Pred };

/// Operator names for App nodes.
namespace ops {
inline constexpr const char* In = "in";
inline constexpr const char* Intsct = "intsct";
inline constexpr const char* Union = "union";
inline constexpr const char* Equals = "=";
} // namespace ops

/// Immutable predicate/expression tree. Copies share structure, so passing
/// terms by value is cheap and terms may be shared freely across threads.
///
/// Navigable children are the arguments of connectives and applications, and
/// the body of a quantifier (its only child). Binders are not children.
class Term {
public:
    static Term constant(bool value);
    static Term truth() { return constant(true); }
    static Term falsity() { return constant(false); }
    static Term connective(ConnectiveOp op, std::vector<Term> args);
    static Term quantifier(QuantKind kind, std::vector<VarName> binders, Term body);
    static Term app(std::string op, std::vector<Term> args);
    static Term var(VarName name);
    static Term schematic(std::string name, VarClass cls);

    static Term conj(Term a, Term b) { return connective(ConnectiveOp::And, {std::move(a), std::move(b)}); }
    static Term disj(Term a, Term b) { return connective(ConnectiveOp::Or, {std::move(a), std::move(b)}); }
    static Term negation(Term a) { return connective(ConnectiveOp::Not, {std::move(a)}); }
    static Term implies(Term a, Term b) { return connective(ConnectiveOp::Implies, {std::move(a), std::move(b)}); }
    static Term equiv(Term a, Term b) { return connective(ConnectiveOp::Equiv, {std::move(a), std::move(b)}); }
    static Term forall(std::vector<VarName> binders, Term body) { return quantifier(QuantKind::Forall, std::move(binders), std::move(body)); }
    static Term exists(std::vector<VarName> binders, Term body) { return quantifier(QuantKind::Exists, std::move(binders), std::move(body)); }
    static Term binary(std::string op, Term a, Term b) { return app(std::move(op), {std::move(a), std::move(b)}); }

    TermKind kind() const;
    bool is(TermKind k) const { return kind() == k; }

    /// PredConst only.
    bool value() const;
    /// Connective only.
    ConnectiveOp connective_op() const;
    /// Quantifier only.
    QuantKind quant_kind() const;
    const std::vector<VarName>& binders() const;
    const Term& body() const;
    /// Variable name, schematic name, or App operator.
    const std::string& name() const;
    /// Schematic only.
    VarClass var_class() const;

    std::span<const Term> children() const;
    std::size_t arity() const { return children().size(); }
    /// 0-based child access; the body of a quantifier is child 0.
    const Term& child(std::size_t index) const;
    /// Copy of this node with one child replaced.
    Term with_child(std::size_t index, Term replacement) const;

    /// Number of nodes.
    std::size_t size() const;

    /// Structural equality (binder names included).
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

std::string_view to_string(ConnectiveOp op);

/// Does this term denote a predicate form (constant, connective, quantifier)?
bool is_predicate_form(const Term& t);

} // namespace utp2
