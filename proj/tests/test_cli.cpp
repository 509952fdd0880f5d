#include <gtest/gtest.h>

#include "support/run.hpp"
#include "support/tempdir.hpp"

using testing_support::quote;
using testing_support::run;
using testing_support::slurp;
using testing_support::spit;

namespace {

const std::string cli = UTP2_CLI;
std::string data(const std::string& name) { return std::string(UTP2_DATA_DIR) + "/" + name; }
const std::string stack = data("seed.stack");

} // namespace

TEST(Cli, ReplayEmitsTheGoldenTranscript) {
    const auto r = run(quote(cli) + " replay " + quote(stack) + " " + quote(data("intsct-comm.script")));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, slurp(data("intsct-comm.golden.txt")));
}

TEST(Cli, ReplayWithFlagsAndOutputFile) {
    testing_support::TempDir dir;
    const auto r = run(quote(cli) + " replay --stack " + quote(stack) + " --script " + quote(data("intsct-comm.script"))
                       + " --out " + quote(dir.file("t.txt").string()));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(dir.file("t.txt")), slurp(data("intsct-comm.golden.txt")));
}

TEST(Cli, WrongPathNamesTheStep) {
    testing_support::TempDir dir;
    std::string script = slurp(data("intsct-comm.script"));
    script.replace(script.find("@1.1"), 4, "@2.1");
    spit(dir.file("bad.script"), script);
    const auto r = run(quote(cli) + " replay " + quote(stack) + " " + quote(dir.file("bad.script").string()) + " 2>&1");
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.out.find("step 2"), std::string::npos) << r.out;
}

TEST(Cli, SideConditionDiagnostic) {
    testing_support::TempDir dir;
    spit(dir.file("vac.script"), "theory: Sets\nconjecture: intsct-comm\nstrategy: Reduce\n"
                                 "set-extensionality (L-to-R) @\nforall-vac (L-to-R) @\n");
    const auto r = run(quote(cli) + " replay " + quote(stack) + " " + quote(dir.file("vac.script").string()) + " 2>&1");
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.out.find("SideConditionViolated"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run(quote(cli) + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run(quote(cli) + " replay " + quote(stack) + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run(quote(cli) + " replay /nonexistent.stack " + quote(data("intsct-comm.script")) + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run(quote(cli) + " frobnicate 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run(quote(cli) + " --help >/dev/null").exit_code, 0);
}

TEST(Cli, MenuPrintsRankedEntries) {
    const auto r = run(quote(cli) + " menu --stack " + quote(stack) + " --theory Sets --goal 'e1 intsct e2 = e2 intsct e1'");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("set-extensionality (L-to-R) with ?x=x\n"
                         "    forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))\n"),
              std::string::npos)
        << r.out;
    EXPECT_EQ(r.out.rfind("1. ", 0), 0u);

    const auto at = run(quote(cli) + " menu --stack " + quote(stack)
                        + " --theory Sets --goal 'forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))' --path @1.1");
    EXPECT_NE(at.out.find("in-intersect (L-to-R)"), std::string::npos) << at.out;

    const auto bad = run(quote(cli) + " menu --stack " + quote(stack) + " --theory Sets --goal TRUE --path @3 2>&1");
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_NE(bad.out.find("NoSuchChild"), std::string::npos);
}

TEST(Cli, SeedWritesTheShippedStack) {
    const auto r = run(quote(cli) + " seed");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, slurp(stack));
}
