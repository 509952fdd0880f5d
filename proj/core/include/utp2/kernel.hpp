#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "utp2/term.hpp"

namespace utp2 {

/// `var` must not occur free in whatever the schematic `target` is bound to.
struct NotFreeIn {
    VarName var;
    std::string target;

    friend bool operator==(const NotFreeIn&, const NotFreeIn&) = default;
};

/// Conjunction of freeness constraints; empty means trivially true.
struct SideCondition {
    std::vector<NotFreeIn> conjuncts;

    bool trivial() const { return conjuncts.empty(); }
    friend bool operator==(const SideCondition&, const SideCondition&) = default;
};

/// Instantiation of a law: schematic variables to terms, and law binders to
/// the variable names they stand for.
struct Binding {
    std::map<std::string, Term> terms;
    std::map<VarName, VarName> binders;

    bool empty() const { return terms.empty() && binders.empty(); }
    /// Entries of `other` override entries of this binding.
    Binding merged(const Binding& other) const;

    friend bool operator==(const Binding&, const Binding&) = default;
};

std::set<VarName> free_vars(const Term& t);

/// Schematic variable names occurring in `t`, with their classes.
std::map<std::string, VarClass> schematic_vars(const Term& t);

/// Every name bound by some quantifier in `t`.
std::set<VarName> bound_names(const Term& t);

bool contains_schematic(const Term& t);

/// Simultaneous, capture-avoiding replacement of schematic variables.
///
/// Quantifier binders listed in `b.binders` are renamed literally. Binders the
/// binding does not mention keep their name unless a substituted term would be
/// captured, in which case they get the first free primed variant (`x'`,
/// `x''`, ...). Throws IncompleteBinding for an unmapped schematic.
Term substitute(const Term& t, const Binding& b);

/// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Term& a, const Term& b);

/// Each NotFreeIn(v, M) holds when v (after the binding's binder renaming)
/// is not free in b(M). Throws IncompleteBinding if M is unmapped.
bool check_side_condition(const SideCondition& sc, const Binding& b);

/// Turns the free variables of `t` into schematic variables. A name that
/// appears as an operator argument anywhere becomes an expression schematic,
/// every other name a predicate schematic. Bound variables are untouched.
Term schematize(const Term& t);

/// `base` followed by the fewest apostrophes (at least `min_primes`) that
/// avoid every name in `taken`.
VarName fresh_name(const VarName& base, const std::set<VarName>& taken,
                   int min_primes = 0);

} // namespace utp2
