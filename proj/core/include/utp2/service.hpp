#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "utp2/matcher.hpp"
#include "utp2/proof.hpp"
#include "utp2/theory.hpp"

namespace utp2 {

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

struct ServiceOptions {
    /// When set, the stack is saved here after every edit or promotion.
    std::optional<std::filesystem::path> autosave_path;
    Ranking ranking = Ranking::Default;
    std::size_t menu_limit = 20;
};

/// Session-oriented JSON interface over the proof engine. `handle` is the
/// whole API; `serve` only puts it behind HTTP. Requests for one session are
/// serialized, different sessions run concurrently.
///
///   GET  /theories                         stack summary
///   GET  /theories/{name}/{table}          laws | conjectures | theorems
///   POST /theories/{name}/{table}          {action, row}
///   POST /proofs                           {theory, conjecture, strategy}
///   GET  /proofs/{id}                      proof view
///   POST /proofs/{id}/focus                {move} or {path}
///   POST /proofs/{id}/side                 {side: left|right}
///   GET  /proofs/{id}/matches              ranked menu
///   POST /proofs/{id}/apply                {lawName, direction, instantiation?}
///   POST /proofs/{id}/undo
///   POST /proofs/{id}/promote
///   GET  /proofs/{id}/transcript           text/plain
class ProofService {
public:
    explicit ProofService(TheoryStack stack, ServiceOptions options = {});
    ~ProofService();

    ProofService(const ProofService&) = delete;
    ProofService& operator=(const ProofService&) = delete;

    ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

    TheoryStack stack() const;

private:
    struct Session;

    ApiResponse dispatch(std::string_view method, std::string_view path, std::string_view body);
    std::shared_ptr<Session> session(const std::string& id) const;
    void commit_stack(TheoryStack next);

    ServiceOptions options_;
    mutable std::shared_mutex stack_mutex_;
    TheoryStack stack_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::size_t next_session_ = 1;
};

/// HTTP front end for a ProofService.
class HttpServer {
public:
    explicit HttpServer(ProofService& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Serves until `stop`. Call after a successful `bind`.
    bool listen();
    /// Safe from any thread.
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Blocks serving `service` over HTTP until the process is stopped.
/// Returns false if the socket could not be bound.
bool serve(ProofService& service, const std::string& host, int port);

} // namespace utp2
