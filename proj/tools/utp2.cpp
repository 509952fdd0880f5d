// Headless driver: replay scripts, print match menus, run the JSON service.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "utp2/error.hpp"
#include "utp2/focus.hpp"
#include "utp2/matcher.hpp"
#include "utp2/script.hpp"
#include "utp2/service.hpp"
#include "utp2/syntax.hpp"
#include "utp2/theory.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kProofFailure = 1;
constexpr int kUsage = 2;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw utp2::Error(utp2::ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw utp2::Error(utp2::ErrorCode::IoError, "cannot write " + path.string());
}

int run_replay(const std::string& stack_file, const std::string& script_file,
               const std::string& out_file) {
    utp2::TheoryStack stack;
    utp2::Script script;
    try {
        stack = utp2::load_stack(stack_file);
        script = utp2::parse_script(read_file(script_file));
    } catch (const utp2::Error& e) {
        std::cerr << "error: " << utp2::to_string(e.code()) << ": " << e.what() << "\n";
        return kUsage;
    }
    const utp2::ReplayResult result = utp2::replay(stack, script);
    if (!result.ok) {
        std::cerr << "replay failed: " << result.diagnostic << "\n";
        return kProofFailure;
    }
    if (out_file.empty()) {
        std::cout << result.transcript << std::flush;
        return kOk;
    }
    try {
        write_file(out_file, result.transcript);
    } catch (const utp2::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

int run_menu(const std::string& stack_file, const std::string& theory, const std::string& goal,
             const std::string& path, const std::string& ranking, std::size_t limit) {
    try {
        const utp2::TheoryStack stack = utp2::load_stack(stack_file);
        const utp2::Term term = utp2::parse_term(goal);
        const utp2::Focused focus(term, utp2::parse_path(path));
        const auto menu =
            utp2::applicable_laws(focus, stack, theory, limit, utp2::parse_ranking(ranking));
        std::size_t rank = 0;
        for (const auto& m : menu) {
            std::cout << ++rank << ". " << m.law.name << " (" << utp2::to_string(m.direction) << ")";
            const auto defaults = utp2::render_instantiation(m, m.defaults);
            if (!defaults.empty()) {
                std::cout << " with ";
                for (std::size_t i = 0; i < defaults.size(); ++i)
                    std::cout << (i ? ", " : "") << "?" << defaults[i].first << "=" << defaults[i].second;
            }
            std::cout << "\n    " << utp2::render_term(m.preview) << "\n";
        }
        if (menu.empty())
            std::cout << "no applicable laws\n";
        return kOk;
    } catch (const utp2::Error& e) {
        std::cerr << "error: " << utp2::to_string(e.code()) << ": " << e.what() << "\n";
        return kUsage;
    }
}

int run_serve(const std::string& stack_file, const std::string& host, int port,
              const std::string& autosave, const std::string& ranking) {
    try {
        utp2::ServiceOptions options;
        if (!autosave.empty())
            options.autosave_path = autosave;
        options.ranking = utp2::parse_ranking(ranking);
        utp2::TheoryStack stack = stack_file.empty() ? utp2::seed_stack() : utp2::load_stack(stack_file);
        utp2::ProofService service(std::move(stack), options);
        std::cerr << "listening on " << host << ":" << port << "\n";
        if (!utp2::serve(service, host, port)) {
            std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
            return kUsage;
        }
        return kOk;
    } catch (const utp2::Error& e) {
        std::cerr << "error: " << utp2::to_string(e.code()) << ": " << e.what() << "\n";
        return kUsage;
    }
}

int run_seed(const std::string& out_file) {
    try {
        utp2::TheoryStack stack = utp2::seed_stack();
        if (out_file.empty())
            std::cout << utp2::serialize_stack(stack);
        else
            write_file(out_file, utp2::serialize_stack(stack));
        return kOk;
    } catch (const utp2::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"utp2: equational proof assistant driver"};
    app.require_subcommand(1);

    std::string stack_file, script_file, out_file;
    auto* replay = app.add_subcommand("replay", "Replay a proof script and print its transcript");
    replay->add_option("stack_file", stack_file, "Theory stack file");
    replay->add_option("script_file", script_file, "Proof script");
    replay->add_option("--stack", stack_file, "Theory stack file");
    replay->add_option("--script", script_file, "Proof script");
    replay->add_option("--out", out_file, "Write the transcript here instead of stdout");

    std::string theory, goal, path = "@", ranking = "default";
    std::size_t limit = 20;
    auto* menu = app.add_subcommand("menu", "Print the ranked laws applicable at a focus");
    menu->add_option("--stack", stack_file, "Theory stack file")->required();
    menu->add_option("--theory", theory, "Theory whose laws are visible")->required();
    menu->add_option("--goal", goal, "Goal term")->required();
    menu->add_option("--path", path, "Focus path, e.g. @1.2");
    menu->add_option("--ranking", ranking, "default | alphabetical | nearest-theory | smallest-preview");
    menu->add_option("--limit", limit, "Maximum entries")->check(CLI::Range(1, 1000));

    std::string host = "127.0.0.1", autosave;
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Run the JSON service over HTTP");
    serve->add_option("--stack", stack_file, "Theory stack file (seed stack if omitted)");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
    serve->add_option("--autosave", autosave, "Save the stack here after every change");
    serve->add_option("--ranking", ranking, "Menu ranking");

    auto* seed = app.add_subcommand("seed", "Write the built-in seed stack");
    seed->add_option("--out", out_file, "Output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (*replay) {
        if (stack_file.empty() || script_file.empty()) {
            std::cerr << "replay needs a stack file and a script file\n";
            return kUsage;
        }
        return run_replay(stack_file, script_file, out_file);
    }
    if (*menu)
        return run_menu(stack_file, theory, goal, path, ranking, limit);
    if (*serve)
        return run_serve(stack_file, host, port, autosave, ranking);
    return run_seed(out_file);
}
