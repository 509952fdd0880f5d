#include "utp2/term.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "utp2/error.hpp"

namespace utp2 {

struct Term::Node {
    TermKind kind = TermKind::PredConst;
    bool value = false;
    ConnectiveOp op = ConnectiveOp::And;
    QuantKind quant = QuantKind::Forall;
    VarClass cls = VarClass::Expr;
    std::string name;
    std::vector<VarName> binders;
    std::vector<Term> children;
    std::size_t size = 1;
};

namespace {

std::size_t node_count(const std::vector<Term>& children) {
    std::size_t n = 1;
    for (const auto& c : children)
        n += c.size();
    return n;
}

std::size_t expected_arity(ConnectiveOp op) {
    return op == ConnectiveOp::Not ? 1 : 2;
}

} // namespace

Term Term::constant(bool value) {
    auto node = std::make_shared<Node>();
    node->kind = TermKind::PredConst;
    node->value = value;
    return Term(std::move(node));
}

Term Term::connective(ConnectiveOp op, std::vector<Term> args) {
    if (args.size() != expected_arity(op))
        throw Error(ErrorCode::Malformed,
                    "connective " + std::string(to_string(op)) + " expects "
                        + std::to_string(expected_arity(op)) + " argument(s)");
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Connective;
    node->op = op;
    node->size = node_count(args);
    node->children = std::move(args);
    return Term(std::move(node));
}

Term Term::quantifier(QuantKind kind, std::vector<VarName> binders, Term body) {
    if (binders.empty())
        throw Error(ErrorCode::Malformed, "quantifier without binders");
    std::set<VarName> seen;
    for (const auto& b : binders) {
        if (b.empty())
            throw Error(ErrorCode::Malformed, "empty binder name");
        if (!seen.insert(b).second)
            throw Error(ErrorCode::Malformed, "duplicate binder '" + b + "'");
    }
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Quantifier;
    node->quant = kind;
    node->binders = std::move(binders);
    node->children.push_back(std::move(body));
    node->size = node_count(node->children);
    return Term(std::move(node));
}

Term Term::app(std::string op, std::vector<Term> args) {
    if (op.empty())
        throw Error(ErrorCode::Malformed, "application without operator");
    auto node = std::make_shared<Node>();
    node->kind = TermKind::App;
    node->name = std::move(op);
    node->size = node_count(args);
    node->children = std::move(args);
    return Term(std::move(node));
}

Term Term::var(VarName name) {
    if (name.empty())
        throw Error(ErrorCode::Malformed, "empty variable name");
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Var;
    node->name = std::move(name);
    return Term(std::move(node));
}

Term Term::schematic(std::string name, VarClass cls) {
    if (name.empty())
        throw Error(ErrorCode::Malformed, "empty schematic variable name");
    auto node = std::make_shared<Node>();
    node->kind = TermKind::Schematic;
    node->name = std::move(name);
    node->cls = cls;
    return Term(std::move(node));
}

TermKind Term::kind() const { return node_->kind; }

bool Term::value() const {
    assert(kind() == TermKind::PredConst);
    return node_->value;
}

ConnectiveOp Term::connective_op() const {
    assert(kind() == TermKind::Connective);
    return node_->op;
}

QuantKind Term::quant_kind() const {
    assert(kind() == TermKind::Quantifier);
    return node_->quant;
}

const std::vector<VarName>& Term::binders() const { return node_->binders; }

const Term& Term::body() const {
    assert(kind() == TermKind::Quantifier);
    return node_->children.front();
}

const std::string& Term::name() const { return node_->name; }

VarClass Term::var_class() const {
    assert(kind() == TermKind::Schematic);
    return node_->cls;
}

std::span<const Term> Term::children() const { return node_->children; }

const Term& Term::child(std::size_t index) const {
    if (index >= node_->children.size())
        throw Error(ErrorCode::NoSuchChild, "no child " + std::to_string(index + 1));
    return node_->children[index];
}

Term Term::with_child(std::size_t index, Term replacement) const {
    if (index >= node_->children.size())
        throw Error(ErrorCode::NoSuchChild, "no child " + std::to_string(index + 1));
    auto node = std::make_shared<Node>(*node_);
    node->children[index] = std::move(replacement);
    node->size = node_count(node->children);
    return Term(std::move(node));
}

std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.size != y.size)
        return false;
    switch (x.kind) {
    case TermKind::PredConst:
        return x.value == y.value;
    case TermKind::Connective:
        if (x.op != y.op)
            return false;
        break;
    case TermKind::Quantifier:
        if (x.quant != y.quant || x.binders != y.binders)
            return false;
        break;
    case TermKind::App:
    case TermKind::Var:
        if (x.name != y.name)
            return false;
        break;
    case TermKind::Schematic:
        return x.name == y.name && x.cls == y.cls;
    }
    return std::equal(x.children.begin(), x.children.end(), y.children.begin(),
                      y.children.end());
}

std::string_view to_string(ConnectiveOp op) {
    switch (op) {
    case ConnectiveOp::And: return "/\\";
    case ConnectiveOp::Or: return "\\/";
    case ConnectiveOp::Not: return "~";
    case ConnectiveOp::Implies: return "=>";
    case ConnectiveOp::Equiv: return "==";
    }
    return "?";
}

bool is_predicate_form(const Term& t) {
    switch (t.kind()) {
    case TermKind::PredConst:
    case TermKind::Connective:
    case TermKind::Quantifier:
        return true;
    case TermKind::Schematic:
        return t.var_class() == VarClass::Pred;
    default:
        return false;
    }
}

} // namespace utp2
