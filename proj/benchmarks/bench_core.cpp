#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "utp2/matcher.hpp"
#include "utp2/script.hpp"
#include "utp2/syntax.hpp"
#include "utp2/theory.hpp"
#include "utp2/types.hpp"

using namespace utp2;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Conjunction of `n` membership atoms; each atom has 7 nodes.
Term wide_goal(int n) {
    std::string text;
    for (int i = 0; i < n; ++i) {
        if (i)
            text += " /\\ ";
        text += "(x" + std::to_string(i % 7) + " in (s" + std::to_string(i % 5) + " intsct t))";
    }
    return parse_term(text);
}

void BM_Infer(benchmark::State& state) {
    const Term t = wide_goal(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(infer(t));
    state.SetLabel(std::to_string(t.size()) + " nodes");
}
BENCHMARK(BM_Infer)->Arg(8)->Arg(64)->Arg(72)->Arg(84);

void BM_ApplicableLaws(benchmark::State& state) {
    const TheoryStack s = seed_stack();
    const Focused goal(parse_term("forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))"),
                       parse_path("@1.1"));
    for (auto _ : state)
        benchmark::DoNotOptimize(applicable_laws(goal, s, "Sets"));
}
BENCHMARK(BM_ApplicableLaws);

void BM_Parse(benchmark::State& state) {
    const std::string text = render_term(wide_goal(72));
    for (auto _ : state)
        benchmark::DoNotOptimize(parse_term(text));
}
BENCHMARK(BM_Parse);

void BM_ReplayWalkthrough(benchmark::State& state) {
    const TheoryStack s = seed_stack();
    const Script script = parse_script(slurp(std::string(UTP2_DATA_DIR) + "/intsct-comm.script"));
    for (auto _ : state)
        benchmark::DoNotOptimize(replay(s, script));
}
BENCHMARK(BM_ReplayWalkthrough);

void BM_SerializeStack(benchmark::State& state) {
    const TheoryStack s = seed_stack();
    for (auto _ : state)
        benchmark::DoNotOptimize(parse_stack(serialize_stack(s)));
}
BENCHMARK(BM_SerializeStack);

} // namespace

BENCHMARK_MAIN();
