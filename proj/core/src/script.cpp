#include "utp2/script.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "utp2/error.hpp"
#include "utp2/syntax.hpp"

namespace utp2 {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
    const auto where = "line " + std::to_string(line);
    throw Error(ErrorCode::SyntaxError, where + ": " + msg, where);
}

std::optional<std::string_view> header_value(std::string_view line, std::string_view key) {
    if (line.size() <= key.size() || line[key.size()] != ':')
        return std::nullopt;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(line[i])) != key[i])
            return std::nullopt;
    }
    return trim(line.substr(key.size() + 1));
}

} // namespace

ScriptStep parse_step_line(std::string_view text) {
    ScriptStep step;
    std::string_view line = trim(text);
    std::string_view with;
    if (auto pos = line.find(" with "); pos != std::string_view::npos) {
        with = trim(line.substr(pos + 6));
        line = trim(line.substr(0, pos));
    }
    // <law> (<dir>) @<path>
    const auto at = line.rfind(" @");
    const auto open = line.rfind(" (");
    if (at == std::string_view::npos || open == std::string_view::npos || open > at)
        throw Error(ErrorCode::SyntaxError,
                    "expected '<law> (<direction>) @<path>' but got '" + std::string(text) + "'");
    const auto dir = line.substr(open + 2, at - open - 2);
    if (dir.empty() || dir.back() != ')')
        throw Error(ErrorCode::SyntaxError, "missing ')' after direction in '" + std::string(text) + "'");
    step.law = std::string(trim(line.substr(0, open)));
    if (step.law.empty())
        throw Error(ErrorCode::SyntaxError, "missing law name in '" + std::string(text) + "'");
    step.direction = parse_direction(dir.substr(0, dir.size() - 1));
    step.path = parse_path(trim(line.substr(at + 1)));
    while (!with.empty()) {
        const auto comma = std::min(with.find(','), with.size());
        const auto item = trim(with.substr(0, comma));
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw Error(ErrorCode::SyntaxError, "expected <var>=<term> in '" + std::string(item) + "'");
        step.instantiation.emplace_back(std::string(trim(item.substr(0, eq))),
                                        std::string(trim(item.substr(eq + 1))));
        with = comma < with.size() ? trim(with.substr(comma + 1)) : std::string_view{};
    }
    return step;
}

Script parse_script(std::string_view text) {
    Script script;
    bool have_strategy = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        try {
            if (auto v = header_value(line, "theory")) {
                script.theory = std::string(*v);
            } else if (auto v = header_value(line, "conjecture")) {
                script.conjecture = std::string(*v);
            } else if (auto v = header_value(line, "strategy")) {
                script.strategy = parse_strategy(*v);
                have_strategy = true;
            } else if (starts_with(line, "Complete Proof for '")) {
                const auto name = line.substr(20);
                const auto dollar = name.find('$');
                if (dollar == std::string_view::npos)
                    fail_line(lineno, "expected '<theory>$<conjecture>'");
                script.theory = std::string(name.substr(0, dollar));
                script.conjecture = std::string(name.substr(dollar + 1));
            } else if (starts_with(line, "Goal :")) {
                continue;
            } else if (starts_with(line, "===")) {
                auto body = trim(line.substr(3));
                if (body.size() < 2 || body.front() != '"' || body.back() != '"')
                    fail_line(lineno, "justification must be quoted");
                ScriptStep step = parse_step_line(body.substr(1, body.size() - 2));
                step.line = lineno;
                script.steps.push_back(std::move(step));
            } else if (std::isspace(static_cast<unsigned char>(raw.front()))) {
                script.goals.push_back({std::string(line), script.steps.size(), lineno});
            } else {
                ScriptStep step = parse_step_line(line);
                step.line = lineno;
                script.steps.push_back(std::move(step));
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SyntaxError && e.position()
                && starts_with(*e.position(), "line "))
                throw;
            fail_line(lineno, e.what());
        }
    }
    if (script.theory.empty())
        throw Error(ErrorCode::SyntaxError, "script names no theory");
    if (script.conjecture.empty())
        throw Error(ErrorCode::SyntaxError, "script names no conjecture");
    (void)have_strategy;
    return script;
}

ProofState apply_script_step(const TheoryStack& stack, const ProofState& state,
                             const ScriptStep& s) {
    ProofState cur = state;
    FocusPath path = s.path;
    if (cur.strategy() == Strategy::ReduceBoth) {
        if (path.is_root())
            throw Error(ErrorCode::NoSuchChild, "Reduce both sides steps must name a side");
        cur = switch_side(cur, path.segments().front() - 1);
        path = FocusPath(std::vector<std::size_t>(path.segments().begin() + 1, path.segments().end()));
    }
    cur = set_focus(cur, path);

    const std::string& theory = cur.conjecture().theory;
    const std::size_t top = stack.index_of(theory);
    std::optional<Law> law;
    for (const Law& l : visible_laws(stack, theory)) {
        if (l.name == s.law) {
            law = l;
            break;
        }
    }
    if (!law)
        throw Error(ErrorCode::UnknownLaw, "no visible law named '" + s.law + "'");
    auto m = match_law(cur.focus(), *law, s.direction, top - stack.index_of(law->owner));
    if (!m)
        throw Error(ErrorCode::NoMatch, s.law + " (" + std::string(to_string(s.direction))
                                            + ") does not match the focus "
                                            + render_term(cur.focus().focus()));
    Binding inst = m->defaults.merged(parse_instantiation(*m, s.instantiation));
    return step(cur, *m, inst);
}

ReplayResult replay(const TheoryStack& stack, const Script& script) {
    ReplayResult result;
    std::optional<ProofState> state;
    try {
        state = start_proof(stack, script.theory, script.conjecture, script.strategy);
    } catch (const Error& e) {
        result.diagnostic = std::string(to_string(e.code())) + ": " + e.what();
        return result;
    }

    auto check_goals = [&](std::size_t applied) -> bool {
        for (const auto& g : script.goals) {
            if (g.after_steps != applied)
                continue;
            const std::string actual = render_term(state->display_goal());
            if (actual != g.text) {
                result.failed_step = applied;
                result.diagnostic = "line " + std::to_string(g.line) + ": goal after step "
                                  + std::to_string(applied) + " is '" + actual + "', script expects '"
                                  + g.text + "'";
                return false;
            }
        }
        return true;
    };

    if (!check_goals(0)) {
        result.state = state;
        return result;
    }
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const ScriptStep& s = script.steps[i];
        try {
            state = apply_script_step(stack, *state, s);
        } catch (const Error& e) {
            result.failed_step = i + 1;
            result.diagnostic = "step " + std::to_string(i + 1) + " (line " + std::to_string(s.line)
                              + "): " + std::string(to_string(e.code())) + ": " + e.what();
            result.state = state;
            return result;
        }
        if (!check_goals(i + 1)) {
            result.state = state;
            return result;
        }
    }
    result.state = state;
    if (!state->complete()) {
        result.diagnostic = "NotComplete: proof incomplete after " + std::to_string(script.steps.size())
                          + " step(s); goal is " + render_term(state->display_goal());
        return result;
    }
    result.transcript = render_proof(*state);
    result.ok = true;
    return result;
}

} // namespace utp2
