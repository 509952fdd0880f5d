#include "utp2/service.hpp"

#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "utp2/error.hpp"
#include "utp2/syntax.hpp"
#include "utp2/types.hpp"

namespace utp2 {

using json = nlohmann::ordered_json;

struct ProofService::Session {
    std::mutex mutex;
    std::string id;
    std::shared_ptr<const TheoryStack> stack;
    ProofState state;

    Session(std::string id_, std::shared_ptr<const TheoryStack> stack_, ProofState state_)
        : id(std::move(id_))
        , stack(std::move(stack_))
        , state(std::move(state_)) {}
};

namespace {

struct HttpError {
    int status;
    std::string code;
    std::string message;
    std::optional<std::string> position;
};

int status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownTheory:
    case ErrorCode::UnknownConjecture:
    case ErrorCode::UnknownRow:
    case ErrorCode::UnknownLaw:
        return 404;
    case ErrorCode::ProofAlreadyComplete:
    case ErrorCode::DuplicateName:
    case ErrorCode::NotComplete:
        return 409;
    case ErrorCode::SyntaxError:
    case ErrorCode::Malformed:
    case ErrorCode::FormatError:
        return 400;
    case ErrorCode::IoError:
        return 500;
    default:
        return 422;
    }
}

ApiResponse json_response(int status, const json& body) {
    return ApiResponse{status, "application/json", body.dump()};
}

ApiResponse error_response(const HttpError& e) {
    json body{{"code", e.code}, {"message", e.message}};
    if (e.position)
        body["position"] = *e.position;
    return json_response(e.status, body);
}

[[noreturn]] void bad_request(const std::string& msg) {
    throw HttpError{400, "BadRequest", msg, std::nullopt};
}

json parse_body(std::string_view body) {
    if (body.empty())
        return json::object();
    try {
        json j = json::parse(body);
        if (!j.is_object())
            bad_request("request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        bad_request(std::string("malformed JSON: ") + e.what());
    }
}

std::string required_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        bad_request(std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    if (auto q = path.find('?'); q != std::string_view::npos)
        path = path.substr(0, q);
    std::size_t pos = 0;
    while (pos < path.size()) {
        auto next = path.find('/', pos);
        if (next == std::string_view::npos)
            next = path.size();
        if (next > pos)
            parts.push_back(httplib::detail::decode_url(std::string(path.substr(pos, next - pos)), false));
        pos = next + 1;
    }
    return parts;
}

json span_tree(const std::vector<NodeSpan>& spans, std::size_t& i) {
    const NodeSpan& node = spans[i++];
    json j{{"path", render_path(node.path)}, {"start", node.begin}, {"end", node.end}};
    json children = json::array();
    while (i < spans.size() && node.path.is_prefix_of(spans[i].path)
           && spans[i].path.depth() == node.path.depth() + 1)
        children.push_back(span_tree(spans, i));
    j["children"] = children;
    return j;
}

json term_json(const Term& t) {
    const RenderedTerm r = render_with_spans(t);
    std::size_t i = 0;
    return json{{"text", r.text}, {"tree", span_tree(r.spans, i)}};
}

json side_conditions_json(const SideCondition& sc) {
    json arr = json::array();
    for (const auto& c : sc.conjuncts)
        arr.push_back(json{{"notFreeIn", json::array({c.var, c.target})}});
    return arr;
}

std::string_view kind_name(UnboundVar::Kind k) {
    switch (k) {
    case UnboundVar::Kind::Binder: return "binder";
    case UnboundVar::Kind::Expr: return "expr";
    case UnboundVar::Kind::Pred: return "pred";
    }
    return "?";
}

json unbound_json(const MatchResult& m) {
    json unbound = json::array();
    const auto defaults = render_instantiation(m, m.defaults);
    for (const auto& u : m.unbound) {
        json entry{{"name", u.name}, {"display", "?" + u.name}, {"kind", std::string(kind_name(u.kind))}};
        for (const auto& [n, text] : defaults) {
            if (n == u.name)
                entry["default"] = text;
        }
        unbound.push_back(entry);
    }
    return unbound;
}

/// Whole display goal with the active side replaced, for ReduceBoth previews.
Term display_preview(const ProofState& state, const Term& side_preview) {
    if (state.strategy() != Strategy::ReduceBoth)
        return side_preview;
    return state.conjecture()
        .schema.with_child(0, state.active_side() == 0 ? side_preview : state.side(0))
        .with_child(1, state.active_side() == 1 ? side_preview : state.side(1));
}

json proof_view(const std::string& id, const ProofState& state) {
    const Term goal = state.display_goal();
    const FocusPath focus_path = state.display_focus_path();
    json view;
    view["id"] = id;
    view["theory"] = state.conjecture().theory;
    view["conjecture"] = state.conjecture().name;
    view["schema"] = render_term(state.conjecture().schema);
    view["sideConditions"] = side_conditions_json(state.conjecture().side_condition);
    view["strategy"] = std::string(to_string(state.strategy()));
    view["strategyPhrase"] = std::string(strategy_phrase(state.strategy()));
    view["target"] = state.target_description();
    view["goal"] = term_json(goal);
    if (state.strategy() == Strategy::ReduceBoth)
        view["activeSide"] = state.active_side() == 0 ? "left" : "right";

    json focus{{"path", render_path(focus_path)}, {"text", render_term(state.focus().focus())}};
    json types = json::object();
    try {
        const TypeAssignment env = infer_at(goal, focus_path);
        focus["class"] = std::string(to_string(env.focus_class));
        focus["type"] = render_type(env.focus_type);
        focus["status"] = std::string(to_string(env.focus_class)) + " : " + render_type(env.focus_type);
        for (const auto& [name, type] : env.var_types)
            types[name] = render_type(type);
    } catch (const Error& e) {
        focus["typeError"] = e.what();
    }
    view["focus"] = focus;
    json fv = json::array();
    for (const auto& v : free_vars(goal))
        fv.push_back(v);
    view["freeVariables"] = fv;
    view["types"] = types;

    json steps = json::array();
    for (const Step& s : state.steps()) {
        steps.push_back(json{{"lawName", s.law_name},
                             {"direction", std::string(to_string(s.direction))},
                             {"path", render_path(state.display_path(s))},
                             {"before", render_term(s.goal_before)},
                             {"after", render_term(s.goal_after)}});
    }
    view["steps"] = steps;
    view["complete"] = state.complete();
    return view;
}

json law_row(const Law& l) {
    return json{{"name", l.name},
                {"provenance", std::string(to_string(l.provenance))},
                {"sideCondition", render_side_condition(l.side_condition)},
                {"sideConditions", side_conditions_json(l.side_condition)},
                {"schema", render_term(l.schema)}};
}

json table_json(const Theory& th, Table table) {
    json rows = json::array();
    switch (table) {
    case Table::Laws:
        for (const auto& l : th.laws)
            rows.push_back(law_row(l));
        break;
    case Table::Conjectures:
        for (const auto& c : th.conjectures) {
            rows.push_back(json{{"name", c.name},
                                {"sideCondition", render_side_condition(c.side_condition)},
                                {"sideConditions", side_conditions_json(c.side_condition)},
                                {"schema", render_term(c.schema)}});
        }
        break;
    case Table::Theorems:
        for (const auto& t : th.theorems) {
            rows.push_back(json{{"name", t.name},
                                {"provenance", "proven"},
                                {"sideCondition", render_side_condition(t.side_condition)},
                                {"sideConditions", side_conditions_json(t.side_condition)},
                                {"schema", render_term(t.schema)},
                                {"transcript", t.proof ? t.proof->transcript : ""}});
        }
        break;
    }
    return json{{"theory", th.name},
                {"version", th.version},
                {"table", std::string(to_string(table))},
                {"rows", rows}};
}

SideCondition side_conditions_from(const json& row) {
    SideCondition sc;
    if (!row.contains("sideConditions"))
        return sc;
    if (!row["sideConditions"].is_array())
        bad_request("sideConditions must be an array");
    for (const auto& c : row["sideConditions"]) {
        if (!c.is_object() || !c.contains("notFreeIn") || !c["notFreeIn"].is_array()
            || c["notFreeIn"].size() != 2 || !c["notFreeIn"][0].is_string()
            || !c["notFreeIn"][1].is_string())
            bad_request("side conditions are {\"notFreeIn\": [var, target]}");
        sc.conjuncts.push_back({c["notFreeIn"][0].get<std::string>(),
                                c["notFreeIn"][1].get<std::string>()});
    }
    return sc;
}

Move parse_move(const std::string& text) {
    if (text == "up") return Move::Up;
    if (text == "down") return Move::Down;
    if (text == "left") return Move::Left;
    if (text == "right") return Move::Right;
    bad_request("move must be up, down, left or right");
}

ProofState focus_display_path(const ProofState& state, const FocusPath& path) {
    if (state.strategy() != Strategy::ReduceBoth)
        return set_focus(state, path);
    if (path.is_root())
        throw Error(ErrorCode::NoSuchChild, "choose a side: paths start with 1 or 2");
    ProofState s = switch_side(state, path.segments().front() - 1);
    return set_focus(s, FocusPath(std::vector<std::size_t>(path.segments().begin() + 1,
                                                           path.segments().end())));
}

std::optional<Law> find_visible_law(const TheoryStack& stack, const std::string& theory,
                                    const std::string& name) {
    for (const Law& l : visible_laws(stack, theory)) {
        if (l.name == name)
            return l;
    }
    return std::nullopt;
}

} // namespace

ProofService::ProofService(TheoryStack stack, ServiceOptions options)
    : options_(std::move(options))
    , stack_(std::move(stack)) {}

ProofService::~ProofService() = default;

TheoryStack ProofService::stack() const {
    std::shared_lock lock(stack_mutex_);
    return stack_;
}

void ProofService::commit_stack(TheoryStack next) {
    // Caller holds the unique lock.
    if (options_.autosave_path)
        save_stack(next, *options_.autosave_path);
    stack_ = std::move(next);
}

std::shared_ptr<ProofService::Session> ProofService::session(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw HttpError{404, "UnknownSession", "no proof session '" + id + "'", std::nullopt};
    return it->second;
}

ApiResponse ProofService::handle(std::string_view method, std::string_view path,
                                 std::string_view body) {
    try {
        return dispatch(method, path, body);
    } catch (const HttpError& e) {
        return error_response(e);
    } catch (const Error& e) {
        return error_response(
            HttpError{status_for(e.code()), std::string(to_string(e.code())), e.what(), e.position()});
    } catch (const std::exception& e) {
        return error_response(HttpError{500, "Internal", e.what(), std::nullopt});
    }
}

ApiResponse ProofService::dispatch(std::string_view method, std::string_view path,
                                   std::string_view body) {
    const auto parts = split_path(path);
    const bool get = method == "GET";
    const bool post = method == "POST";
    if (parts.empty())
        throw HttpError{404, "NotFound", "no such endpoint", std::nullopt};

    if (parts[0] == "theories") {
        if (parts.size() == 1 && get) {
            std::shared_lock lock(stack_mutex_);
            json list = json::array();
            for (const auto& t : stack_.theories()) {
                list.push_back(json{{"name", t.name},
                                    {"version", t.version},
                                    {"display", t.display_name()},
                                    {"laws", t.laws.size()},
                                    {"conjectures", t.conjectures.size()},
                                    {"theorems", t.theorems.size()}});
            }
            return json_response(200, json{{"theories", list}});
        }
        if (parts.size() == 3 && get) {
            std::shared_lock lock(stack_mutex_);
            return json_response(200, table_json(stack_.theory(parts[1]), parse_table(parts[2])));
        }
        if (parts.size() == 3 && post) {
            const json req = parse_body(body);
            const EditAction action = parse_edit_action(required_string(req, "action"));
            if (!req.contains("row") || !req["row"].is_object())
                bad_request("missing object field 'row'");
            const json& rj = req["row"];
            TableRow row;
            row.name = required_string(rj, "name");
            if (action != EditAction::Delete)
                row.schema = required_string(rj, "schema");
            if (rj.contains("provenance"))
                row.provenance = parse_provenance(required_string(rj, "provenance"));
            row.side_condition = side_conditions_from(rj);
            const Table table = parse_table(parts[2]);
            std::unique_lock lock(stack_mutex_);
            TheoryStack next = edit_table(stack_, parts[1], table, action, row);
            commit_stack(std::move(next));
            return json_response(200, table_json(stack_.theory(parts[1]), table));
        }
    }

    if (parts[0] == "proofs") {
        if (parts.size() == 1 && post) {
            const json req = parse_body(body);
            const Strategy strategy = parse_strategy(
                req.contains("strategy") ? required_string(req, "strategy") : std::string("Reduce"));
            std::shared_ptr<const TheoryStack> snapshot;
            {
                std::shared_lock lock(stack_mutex_);
                snapshot = std::make_shared<const TheoryStack>(stack_);
            }
            ProofState state = start_proof(*snapshot, required_string(req, "theory"),
                                           required_string(req, "conjecture"), strategy);
            std::shared_ptr<Session> s;
            {
                std::lock_guard lock(sessions_mutex_);
                const std::string id = "s" + std::to_string(next_session_++);
                s = std::make_shared<Session>(id, snapshot, std::move(state));
                sessions_.emplace(id, s);
            }
            std::lock_guard lock(s->mutex);
            return json_response(201, proof_view(s->id, s->state));
        }
        if (parts.size() < 2)
            throw HttpError{404, "NotFound", "no such endpoint", std::nullopt};

        auto s = session(parts[1]);
        std::lock_guard lock(s->mutex);
        const std::string action = parts.size() > 2 ? parts[2] : "";

        if (parts.size() == 2 && get)
            return json_response(200, proof_view(s->id, s->state));

        if (parts.size() == 3 && post && action == "focus") {
            const json req = parse_body(body);
            bool blocked = false;
            if (req.contains("move")) {
                try {
                    s->state = move_focus(s->state, parse_move(required_string(req, "move")));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::AtRoot && e.code() != ErrorCode::NoSuchChild
                        && e.code() != ErrorCode::NoSibling)
                        throw;
                    blocked = true;
                }
            } else if (req.contains("path")) {
                s->state = focus_display_path(s->state, parse_path(required_string(req, "path")));
            } else {
                bad_request("focus needs 'move' or 'path'");
            }
            json view = proof_view(s->id, s->state);
            view["blocked"] = blocked;
            return json_response(200, view);
        }

        if (parts.size() == 3 && post && action == "side") {
            const json req = parse_body(body);
            const std::string side = required_string(req, "side");
            if (side != "left" && side != "right")
                bad_request("side must be left or right");
            s->state = switch_side(s->state, side == "left" ? 0 : 1);
            return json_response(200, proof_view(s->id, s->state));
        }

        if (parts.size() == 3 && get && action == "matches") {
            const auto menu = applicable_laws(s->state.focus(), *s->stack, s->state.conjecture().theory,
                                              options_.menu_limit, options_.ranking);
            json entries = json::array();
            std::size_t rank = 0;
            for (const auto& m : menu) {
                entries.push_back(json{{"rank", ++rank},
                                       {"lawName", m.law.name},
                                       {"theory", m.law.owner},
                                       {"provenance", std::string(to_string(m.law.provenance))},
                                       {"direction", std::string(to_string(m.direction))},
                                       {"path", render_path(s->state.display_focus_path())},
                                       {"preview", render_term(display_preview(s->state, m.preview))},
                                       {"unbound", unbound_json(m)}});
            }
            return json_response(200, json{{"focus", render_path(s->state.display_focus_path())},
                                           {"ranking", std::string(to_string(options_.ranking))},
                                           {"matches", entries}});
        }

        if (parts.size() == 3 && post && action == "apply") {
            const json req = parse_body(body);
            if (s->state.complete())
                throw Error(ErrorCode::ProofAlreadyComplete, "the proof is already complete");
            const std::string law_name = required_string(req, "lawName");
            const Direction dir = parse_direction(required_string(req, "direction"));
            const std::string& theory = s->state.conjecture().theory;
            auto law = find_visible_law(*s->stack, theory, law_name);
            if (!law)
                throw Error(ErrorCode::UnknownLaw, "no visible law named '" + law_name + "'");
            const std::size_t distance =
                s->stack->index_of(theory) - s->stack->index_of(law->owner);
            auto m = match_law(s->state.focus(), *law, dir, distance);
            if (!m)
                throw Error(ErrorCode::NoMatch, law_name + " (" + std::string(to_string(dir))
                                                    + ") does not match the focus");
            if (!m->unbound.empty() && !req.contains("instantiation")) {
                return json_response(200, json{{"needsInstantiation", true},
                                               {"lawName", law_name},
                                               {"direction", std::string(to_string(dir))},
                                               {"unbound", unbound_json(*m)}});
            }
            std::vector<std::pair<std::string, std::string>> items;
            if (req.contains("instantiation")) {
                if (!req["instantiation"].is_object())
                    bad_request("instantiation must be an object of strings");
                for (const auto& [k, v] : req["instantiation"].items()) {
                    if (!v.is_string())
                        bad_request("instantiation values must be strings");
                    items.emplace_back(k, v.get<std::string>());
                }
            }
            const Binding inst = m->defaults.merged(parse_instantiation(*m, items));
            s->state = step(s->state, *m, inst);
            json view = proof_view(s->id, s->state);
            view["needsInstantiation"] = false;
            return json_response(200, view);
        }

        if (parts.size() == 3 && post && action == "undo") {
            s->state = undo(s->state);
            return json_response(200, proof_view(s->id, s->state));
        }

        if (parts.size() == 3 && post && action == "promote") {
            const Proof proof = finish_proof(s->state);
            std::unique_lock lock(stack_mutex_);
            TheoryStack next = promote(stack_, proof);
            commit_stack(std::move(next));
            const auto& c = s->state.conjecture();
            json view = proof_view(s->id, s->state);
            view["promoted"] = json{{"theory", c.theory},
                                    {"theorem", c.name},
                                    {"theorems", table_json(stack_.theory(c.theory), Table::Theorems)["rows"]}};
            return json_response(200, view);
        }

        if (parts.size() == 3 && get && action == "transcript")
            return ApiResponse{200, "text/plain", render_proof(s->state)};
    }

    throw HttpError{404, "NotFound",
                    "no endpoint " + std::string(method) + " " + std::string(path), std::nullopt};
}

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(ProofService& service)
    : impl_(std::make_unique<Impl>()) {
    auto route = [&service](const httplib::Request& req, httplib::Response& res) {
        ApiResponse r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    impl_->server.Get(".*", route);
    impl_->server.Post(".*", route);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0)
        return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

bool serve(ProofService& service, const std::string& host, int port) {
    HttpServer server(service);
    if (server.bind(host, port) < 0)
        return false;
    return server.listen();
}

} // namespace utp2
