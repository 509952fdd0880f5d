#include <algorithm>

#include <gtest/gtest.h>

#include "support/tempdir.hpp"
#include "utp2/error.hpp"
#include "utp2/syntax.hpp"
#include "utp2/theory.hpp"

using namespace utp2;
using testing_support::TempDir;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::Malformed;
}

bool has_law(const std::vector<Law>& laws, const std::string& name) {
    return std::any_of(laws.begin(), laws.end(), [&](const Law& l) { return l.name == name; });
}

TableRow row(std::string name, std::string schema = "") {
    TableRow r;
    r.name = std::move(name);
    r.schema = std::move(schema);
    return r;
}

} // namespace

TEST(TheoryStack, SeedOrderAndVersions) {
    const TheoryStack s = seed_stack();
    std::vector<std::string> names;
    for (const auto& t : s.theories()) {
        names.push_back(t.name);
        EXPECT_EQ(t.version, 0u);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"_ROOT", "Logic", "Equality", "Sets"}));
    EXPECT_EQ(s.theory("Sets").display_name(), "Sets$0");
    EXPECT_NE(s.theory("Sets").find_conjecture("intsct-comm"), nullptr);
    EXPECT_EQ(code_of([&] { s.theory("Nope"); }), ErrorCode::UnknownTheory);
}

TEST(TheoryStack, RootMustBeAtTheBottom) {
    Theory a{"A"};
    EXPECT_EQ(code_of([&] { TheoryStack(std::vector<Theory>{a}); }), ErrorCode::FormatError);
    EXPECT_EQ(code_of([&] { TheoryStack(std::vector<Theory>{Theory{"_ROOT"}, a, a}); }), ErrorCode::FormatError);
    TheoryStack s;
    s.push(a);
    EXPECT_EQ(code_of([&] { s.push(a); }), ErrorCode::DuplicateName);
}

TEST(TheoryStack, VisibleLawsNearestFirst) {
    const TheoryStack s = seed_stack();
    const auto sets = visible_laws(s, "Sets");
    EXPECT_TRUE(has_law(sets, "in-intersect"));
    EXPECT_TRUE(has_law(sets, "Ax-==-id"));
    EXPECT_TRUE(has_law(sets, "forall-vac"));
    EXPECT_EQ(sets.front().owner, "Sets");
    EXPECT_EQ(sets.back().owner, "_ROOT");

    const auto root = visible_laws(s, "_ROOT");
    ASSERT_EQ(root.size(), s.theory("_ROOT").laws.size());
    EXPECT_EQ(code_of([&] { visible_laws(s, "Nope"); }), ErrorCode::UnknownTheory);
}

TEST(TheoryStack, VisibilityIsMonotone) {
    const TheoryStack s = seed_stack();
    for (std::size_t i = 0; i + 1 < s.theories().size(); ++i) {
        const auto lower = visible_laws(s, s.theories()[i].name);
        const auto upper = visible_laws(s, s.theories()[i + 1].name);
        for (const auto& l : lower)
            EXPECT_TRUE(has_law(upper, l.name)) << l.name;
    }
}

TEST(EditTable, AddedLawsDefaultToAsserted) {
    const TheoryStack s = edit_table(seed_stack(), "Sets", Table::Laws, EditAction::Add,
                                     row("union-idem", "(S union S) = S"));
    const Law* l = s.theory("Sets").find_law("union-idem");
    ASSERT_NE(l, nullptr);
    EXPECT_EQ(l->provenance, Provenance::Asserted);
    EXPECT_TRUE(l->schema.child(1).is(TermKind::Schematic));
    EXPECT_TRUE(has_law(visible_laws(s, "Sets"), "union-idem"));
}

TEST(EditTable, ReAddedConjectureReadsBack) {
    TheoryStack s = edit_table(seed_stack(), "Sets", Table::Conjectures, EditAction::Delete, row("union-comm"));
    EXPECT_EQ(s.theory("Sets").find_conjecture("union-comm"), nullptr);
    s = edit_table(s, "Sets", Table::Conjectures, EditAction::Add, row("union-comm", "e1 union e2 = e2 union e1"));
    const Conjecture* c = s.theory("Sets").find_conjecture("union-comm");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(render_term(c->schema), "e1 union e2 = e2 union e1");
}

TEST(EditTable, Errors) {
    const TheoryStack s = seed_stack();
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Laws, EditAction::Delete, row("no-such")); }),
              ErrorCode::UnknownRow);
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Laws, EditAction::Update, row("no-such", "P == P")); }),
              ErrorCode::UnknownRow);
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Laws, EditAction::Add, row("in-intersect", "P == P")); }),
              ErrorCode::DuplicateName);
    EXPECT_EQ(code_of([&] {
                  edit_table(s, "Sets", Table::Conjectures, EditAction::Add, row("intsct-comm", "TRUE"));
              }),
              ErrorCode::DuplicateName);
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Laws, EditAction::Add, row("bad", "P == (")); }),
              ErrorCode::SyntaxError);
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Laws, EditAction::Add, row("bad", "(S intsct T) == P")); }),
              ErrorCode::TypeError);
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Theorems, EditAction::Add, row("t", "TRUE")); }),
              ErrorCode::Malformed);
    EXPECT_EQ(code_of([&] { edit_table(s, "Nope", Table::Laws, EditAction::Add, row("t", "TRUE == TRUE")); }),
              ErrorCode::UnknownTheory);
    TableRow proven = row("p", "P == P");
    proven.provenance = Provenance::Proven;
    EXPECT_EQ(code_of([&] { edit_table(s, "Sets", Table::Laws, EditAction::Add, proven); }), ErrorCode::Malformed);
    EXPECT_EQ(code_of([] { parse_table("lemmas"); }), ErrorCode::UnknownRow);
}

TEST(EditTable, ConstantStackIsUntouched) {
    const TheoryStack s = seed_stack();
    const TheoryStack edited = edit_table(s, "Logic", Table::Laws, EditAction::Delete, row("or-absorb"));
    EXPECT_NE(s.theory("Logic").find_law("or-absorb"), nullptr);
    EXPECT_EQ(edited.theory("Logic").find_law("or-absorb"), nullptr);
}

TEST(Promotion, MovesConjectureToTheorems) {
    ProofRecord rec;
    rec.strategy = "Reduce";
    rec.transcript = "transcript\n";
    const TheoryStack s = promote_conjecture(seed_stack(), "Sets", "intsct-comm", rec);
    const Theory& sets = s.theory("Sets");
    EXPECT_EQ(sets.find_conjecture("intsct-comm"), nullptr);
    const Theorem* t = sets.find_theorem("intsct-comm");
    ASSERT_NE(t, nullptr);
    EXPECT_EQ(render_term(t->schema), "e1 intsct e2 = e2 intsct e1");
    ASSERT_TRUE(t->proof);
    EXPECT_EQ(t->proof->transcript, "transcript\n");

    const auto laws = visible_laws(s, "Sets");
    auto it = std::find_if(laws.begin(), laws.end(), [](const Law& l) { return l.name == "intsct-comm"; });
    ASSERT_NE(it, laws.end());
    EXPECT_EQ(it->provenance, Provenance::Proven);
    EXPECT_TRUE(it->proof);

    EXPECT_EQ(code_of([&] { promote_conjecture(s, "Sets", "intsct-comm", rec); }), ErrorCode::UnknownConjecture);
}

TEST(Persistence, RoundTripIsByteStable) {
    TempDir dir;
    TheoryStack s = seed_stack();
    save_stack(s, dir.file("a.stack"));
    const TheoryStack loaded = load_stack(dir.file("a.stack"));
    EXPECT_EQ(loaded, s);
    TheoryStack again = loaded;
    save_stack(again, dir.file("b.stack"));
    EXPECT_EQ(testing_support::slurp(dir.file("a.stack")), testing_support::slurp(dir.file("b.stack")));
    for (const auto& t : again.theories())
        EXPECT_EQ(t.version, 0u) << t.name;
}

TEST(Persistence, VersionBumpsOnlyForChangedTheories) {
    TempDir dir;
    TheoryStack s = seed_stack();
    save_stack(s, dir.file("s.stack"));
    s = edit_table(s, "Sets", Table::Conjectures, EditAction::Add, row("c1", "a union b = b union a"));
    save_stack(s, dir.file("s.stack"));
    EXPECT_EQ(s.theory("Sets").version, 1u);
    EXPECT_EQ(s.theory("Logic").version, 0u);
    save_stack(s, dir.file("s.stack"));
    EXPECT_EQ(s.theory("Sets").version, 1u);
    const TheoryStack loaded = load_stack(dir.file("s.stack"));
    EXPECT_EQ(loaded.theory("Sets").version, 1u);
    EXPECT_EQ(loaded.theory("Sets").display_name(), "Sets$1");
}

TEST(Persistence, TheoremsKeepTheirProofs) {
    TempDir dir;
    ProofRecord rec;
    rec.strategy = "Reduce";
    rec.transcript = "line\n";
    rec.steps.push_back({"set-extensionality", "L-to-R", "@", {{"x", "x"}}, "a", "b"});
    TheoryStack s = promote_conjecture(seed_stack(), "Sets", "intsct-comm", rec);
    save_stack(s, dir.file("p.stack"));
    const TheoryStack loaded = load_stack(dir.file("p.stack"));
    EXPECT_EQ(loaded, s);
    EXPECT_EQ(*loaded.theory("Sets").find_theorem("intsct-comm")->proof, rec);
}

TEST(Persistence, FormatErrorsNameTheLine) {
    EXPECT_EQ(code_of([] { parse_stack("{\"theories\": [{\"name\": \"Logic\", \"version\": 0}]}"); }),
              ErrorCode::FormatError);
    try {
        parse_stack("{\n  \"theories\": [\n    oops\n  ]\n}\n", "bad.stack");
        FAIL() << "expected FormatError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FormatError);
        EXPECT_NE(std::string(e.what()).find("bad.stack:3"), std::string::npos) << e.what();
    }
    EXPECT_EQ(code_of([] { load_stack("/nonexistent/dir/x.stack"); }), ErrorCode::IoError);
}

TEST(Persistence, ShippedSeedFileMatchesBuiltInSeed) {
    const TheoryStack shipped = load_stack(std::string(UTP2_DATA_DIR) + "/seed.stack");
    EXPECT_EQ(shipped, seed_stack());
    EXPECT_EQ(serialize_stack(shipped), testing_support::slurp(std::string(UTP2_DATA_DIR) + "/seed.stack"));
}
