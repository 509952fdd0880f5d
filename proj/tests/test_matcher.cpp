#include <algorithm>

#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "utp2/error.hpp"
#include "utp2/matcher.hpp"
#include "utp2/syntax.hpp"
#include "utp2/theory.hpp"
#include "utp2/types.hpp"

using namespace utp2;

namespace {

const Law& seed_law(const TheoryStack& s, const std::string& name) {
    for (const auto& t : s.theories()) {
        if (const Law* l = t.find_law(name))
            return *l;
    }
    throw std::runtime_error("no law " + name);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::Malformed;
}

const MatchResult* find_entry(const std::vector<MatchResult>& menu, const std::string& law, Direction d) {
    auto it = std::find_if(menu.begin(), menu.end(),
                           [&](const MatchResult& m) { return m.law.name == law && m.direction == d; });
    return it == menu.end() ? nullptr : &*it;
}

/// Replaces a random subterm of `t` with a fresh random predicate or set.
Term mutate(gen::Gen& g, const Term& t) {
    const auto paths = gen::all_paths(t);
    const FocusPath p = paths[g.below(paths.size())];
    const Term old = subterm_at(t, p);
    const Term repl = is_predicate_form(old) ? g.pred(1) : g.set_expr(1);
    return Focused(t, p).replace_focus(repl);
}

} // namespace

TEST(MatchPattern, ExpressionSchematicsRejectPredicates) {
    const Term pattern = parse_law("x in S");
    EXPECT_TRUE(match_pattern(pattern, parse_term("x in (a intsct b)")));
    EXPECT_FALSE(match_pattern(pattern, parse_term("x in TRUE")));
    EXPECT_FALSE(match_pattern(parse_law("forall x @ x in S"), parse_term("forall x @ x in (a /\\ b)")));
}

TEST(MatchPattern, RepeatedSchematicsMustAgreeUpToAlpha) {
    const Term pattern = parse_law("P == P");
    EXPECT_TRUE(match_pattern(pattern, parse_term("(forall x @ x in s) == (forall y @ y in s)")));
    EXPECT_FALSE(match_pattern(pattern, parse_term("(x in s) == (x in t)")));
}

TEST(MatchPattern, BindersMatchPositionally) {
    const auto b = match_pattern(parse_law("forall x @ P"), parse_term("forall y @ y in s"));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->binders.at("x"), "y");
    EXPECT_EQ(render_term(b->terms.at("P")), "y in s");
    EXPECT_FALSE(match_pattern(parse_law("forall x @ P"), parse_term("forall y, z @ y = z")));
    EXPECT_FALSE(match_pattern(parse_law("forall x @ P"), parse_term("exists y @ y in s")));
}

TEST(MatchLaw, SetExtensionalityAtTheRoot) {
    const TheoryStack s = seed_stack();
    const Focused goal(parse_term("e1 intsct e2 = e2 intsct e1"));
    const auto m = match_law(goal, seed_law(s, "set-extensionality"), Direction::LtoR);
    ASSERT_TRUE(m);
    ASSERT_EQ(m->unbound.size(), 1u);
    EXPECT_EQ(m->unbound[0].name, "x");
    EXPECT_EQ(m->unbound[0].kind, UnboundVar::Kind::Binder);
    EXPECT_EQ(m->defaults.binders.at("x"), "x");
    EXPECT_EQ(render_term(m->preview), "forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))");
}

TEST(MatchLaw, DefaultsAvoidNamesInUse) {
    const TheoryStack s = seed_stack();
    const Focused goal(parse_term("x intsct e2 = e2 intsct x"));
    const auto m = match_law(goal, seed_law(s, "set-extensionality"), Direction::LtoR);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->defaults.binders.at("x"), "x'");
    EXPECT_EQ(render_term(m->preview), "forall x' @ (x' in (x intsct e2)) == (x' in (e2 intsct x))");
}

TEST(MatchLaw, TypeMismatchIsNotAMatch) {
    const TheoryStack s = seed_stack();
    // =-refl wants `e = e`; in-intersect wants a set on the right of `in`.
    EXPECT_TRUE(match_law(Focused(parse_term("a = a")), seed_law(s, "=-refl"), Direction::LtoR));
    EXPECT_FALSE(match_law(Focused(parse_term("a = b")), seed_law(s, "=-refl"), Direction::LtoR));
    EXPECT_FALSE(match_law(Focused(parse_term("TRUE /\\ a")), seed_law(s, "=-refl"), Direction::LtoR));
}

TEST(Menu, InitialGoalIncludesSetExtensionality) {
    const TheoryStack s = seed_stack();
    const auto menu = applicable_laws(Focused(parse_term("e1 intsct e2 = e2 intsct e1")), s, "Sets");
    EXPECT_LE(menu.size(), 20u);
    const MatchResult* ext = find_entry(menu, "set-extensionality", Direction::LtoR);
    ASSERT_NE(ext, nullptr);
    EXPECT_EQ(render_term(ext->preview), "forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))");
}

TEST(Menu, SecondGoalAtMembershipIncludesInIntersect) {
    const TheoryStack s = seed_stack();
    const Term goal = parse_term("forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))");
    const auto menu = applicable_laws(Focused(goal, parse_path("@1.1")), s, "Sets");
    const MatchResult* m = find_entry(menu, "in-intersect", Direction::LtoR);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(render_term(m->preview), "forall x @ (x in e1) /\\ (x in e2) == (x in (e2 intsct e1))");
}

TEST(Menu, SideConditionFiltersEntries) {
    const TheoryStack s = seed_stack();
    const auto bad = applicable_laws(Focused(parse_term("forall x @ x in s")), s, "Sets");
    EXPECT_EQ(find_entry(bad, "forall-vac", Direction::LtoR), nullptr);
    const auto good = applicable_laws(Focused(parse_term("forall x @ TRUE")), s, "Sets");
    EXPECT_NE(find_entry(good, "forall-vac", Direction::LtoR), nullptr);
}

TEST(Menu, RespectsLimitAndRankings) {
    const TheoryStack s = seed_stack();
    const Focused goal(parse_term("e1 intsct e2 = e2 intsct e1"));
    EXPECT_EQ(applicable_laws(goal, s, "Sets", 1).size(), 1u);
    const auto alpha = applicable_laws(goal, s, "Sets", 20, Ranking::Alphabetical);
    EXPECT_TRUE(std::is_sorted(alpha.begin(), alpha.end(), [](const MatchResult& a, const MatchResult& b) {
        return a.law.name < b.law.name;
    }));
    const auto near = applicable_laws(goal, s, "Sets", 20, Ranking::NearestTheory);
    EXPECT_TRUE(std::is_sorted(near.begin(), near.end(), [](const MatchResult& a, const MatchResult& b) {
        return a.score.theory_distance < b.score.theory_distance;
    }));
    const auto small = applicable_laws(goal, s, "Sets", 20, Ranking::SmallestPreview);
    EXPECT_TRUE(std::is_sorted(small.begin(), small.end(), [](const MatchResult& a, const MatchResult& b) {
        return a.score.preview_size < b.score.preview_size;
    }));
    const auto dflt = applicable_laws(goal, s, "Sets");
    EXPECT_TRUE(std::is_sorted(dflt.begin(), dflt.end(), [](const MatchResult& a, const MatchResult& b) {
        return a.score.unbound < b.score.unbound;
    }));
    EXPECT_EQ(parse_ranking(to_string(Ranking::NearestTheory)), Ranking::NearestTheory);
    EXPECT_THROW(parse_ranking("best"), Error);
}

TEST(MenuProperty, EntriesAreLegalAndDeterministic) {
    const TheoryStack s = seed_stack();
    gen::Gen g(51);
    std::size_t entries = 0;
    for (int i = 0; i < 150; ++i) {
        const Term t = g.pred(3);
        const auto paths = gen::all_paths(t);
        const Focused f(t, paths[g.below(paths.size())]);
        const auto menu = applicable_laws(f, s, "Sets", 20);
        ASSERT_LE(menu.size(), 20u);
        for (const auto& m : menu) {
            ++entries;
            EXPECT_NO_THROW(infer(m.preview)) << render_term(m.preview);
            EXPECT_EQ(apply_law(f, m, m.defaults), m.preview) << m.law.name;
        }
        const auto again = applicable_laws(f, s, "Sets", 20);
        ASSERT_EQ(again.size(), menu.size());
        for (std::size_t k = 0; k < menu.size(); ++k) {
            EXPECT_EQ(again[k].law.name, menu[k].law.name);
            EXPECT_EQ(again[k].direction, menu[k].direction);
        }
    }
    EXPECT_GT(entries, 100u);
}

TEST(ApplyLaw, EnforcesSideConditions) {
    const TheoryStack s = seed_stack();
    const Law& vac = seed_law(s, "forall-vac");
    const Focused bad(parse_term("forall x @ x in s"));
    const auto m = match_law(bad, vac, Direction::LtoR);
    ASSERT_TRUE(m);
    EXPECT_EQ(code_of([&] { apply_law(bad, *m, m->defaults); }), ErrorCode::SideConditionViolated);

    const Focused good(parse_term("forall x @ TRUE"));
    const auto ok = match_law(good, vac, Direction::LtoR);
    ASSERT_TRUE(ok);
    EXPECT_EQ(render_term(apply_law(good, *ok, ok->defaults)), "TRUE");
}

TEST(ApplyLaw, ValidatesInstantiations) {
    const TheoryStack s = seed_stack();
    const Focused goal(parse_term("e1 intsct e2 = e2 intsct e1"));
    const auto m = match_law(goal, seed_law(s, "set-extensionality"), Direction::LtoR);
    ASSERT_TRUE(m);
    EXPECT_EQ(code_of([&] { apply_law(goal, *m, Binding{}); }), ErrorCode::IncompleteBinding);
    Binding extra = m->defaults;
    extra.terms.emplace("Q", Term::truth());
    EXPECT_EQ(code_of([&] { apply_law(goal, *m, extra); }), ErrorCode::Malformed);
    // Choosing y for the binder.
    const Binding y = parse_instantiation(*m, {{"x", "y"}});
    EXPECT_EQ(render_term(apply_law(goal, *m, y)), "forall y @ (y in (e1 intsct e2)) == (y in (e2 intsct e1))");
    // Choosing e1 captures it: the side condition refuses.
    const Binding e1 = parse_instantiation(*m, {{"x", "e1"}});
    EXPECT_EQ(code_of([&] { apply_law(goal, *m, e1); }), ErrorCode::SideConditionViolated);
    EXPECT_EQ(code_of([&] { parse_instantiation(*m, {{"x", "a /\\ b"}}); }), ErrorCode::Malformed);
    EXPECT_EQ(code_of([&] { parse_instantiation(*m, {{"zz", "a"}}); }), ErrorCode::Malformed);
    EXPECT_EQ(render_instantiation(*m, y), (std::vector<std::pair<std::string, std::string>>{{"x", "y"}}));
}

TEST(ApplyLaw, PredicateInstancesAreTypeChecked) {
    const TheoryStack s = seed_stack();
    // or-absorb R-to-L introduces B.
    const Focused goal(parse_term("p"));
    const auto m = match_law(goal, seed_law(s, "or-absorb"), Direction::RtoL);
    ASSERT_TRUE(m);
    EXPECT_EQ(render_term(apply_law(goal, *m, m->defaults)), "p \\/ p /\\ TRUE");
    Binding set_for_b;
    set_for_b.terms.emplace("B", parse_term("a intsct b"));
    EXPECT_EQ(code_of([&] { apply_law(goal, *m, set_for_b); }), ErrorCode::TypeError);
}

// 500 round-trip cases: matching a pattern against its own instance recovers
// the instantiation.
TEST(MatcherProperty, MatchAfterSubstituteRecoversBinding) {
    gen::Gen g(52);
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        const Term pattern = g.pattern(3);
        const Binding b = g.binding_for(pattern, 2);
        const Term subject = substitute(pattern, b);
        const auto got = match_pattern(pattern, subject);
        if (!got) {
            ++failures;
            ADD_FAILURE() << render_term(pattern, {true}) << " vs " << render_term(subject);
            continue;
        }
        for (const auto& [name, term] : b.terms) {
            if (!alpha_equal(got->terms.at(name), term)) {
                ++failures;
                ADD_FAILURE() << name << ": " << render_term(got->terms.at(name)) << " vs " << render_term(term);
            }
        }
    }
    EXPECT_EQ(failures, 0);
}

// 500 soundness cases: whenever a match succeeds, instantiating the pattern
// with it reproduces the subject up to alpha.
TEST(MatcherProperty, SubstituteAfterMatchReproducesSubject) {
    gen::Gen g(53);
    int sound = 0, attempts = 0;
    while (sound < 500) {
        ASSERT_LT(++attempts, 20000);
        const Term pattern = g.pattern(3);
        Term subject = substitute(pattern, g.binding_for(pattern, 2));
        if (g.coin(0.4))
            subject = mutate(g, subject);
        if (g.coin(0.1))
            subject = g.pred(3);
        const auto got = match_pattern(pattern, subject);
        if (!got)
            continue;
        ++sound;
        ASSERT_TRUE(alpha_equal(substitute(pattern, *got), subject))
            << render_term(pattern, {true}) << " / " << render_term(subject);
    }
}

TEST(MatchPattern, ReusedLawBinderUnifiesSubjectNames) {
    const Term law = parse_law("(forall x @ P) /\\ (forall x @ Q)");
    const auto b = match_pattern(law, parse_term("(forall a @ a in s) /\\ (forall b @ b in t)"));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->binders.at("x"), "a");
    EXPECT_EQ(render_term(b->terms.at("Q")), "a in t");
    // The second body mentions a free `a`, so both are renamed apart.
    const Term subject = parse_term("(forall a @ a in s) /\\ (forall b @ b in a)");
    const auto c = match_pattern(law, subject);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->binders.at("x"), "a'");
    EXPECT_TRUE(alpha_equal(substitute(law, *c), subject));
    EXPECT_EQ(render_term(substitute(parse_law("forall x @ P /\\ Q"), *c)), "forall a' @ (a' in s) /\\ (a' in a)");
}
