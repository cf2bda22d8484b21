#include "tooldesc/mcp/transport.hpp"

#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tooldesc/net.hpp"

extern char** environ;

namespace tooldesc::mcp {

// ---------------------------------------------------------------------------
// stdio
// ---------------------------------------------------------------------------

Result<std::unique_ptr<StdioProcessTransport>> StdioProcessTransport::spawn(const Endpoint& endpoint) {
    if (endpoint.command.empty())
        return make_error(ErrorCode::Config, "endpoint '" + endpoint.name + "' has no command");

    int to_child[2];   // we write, child reads as stdin
    int from_child[2]; // child writes stdout, we read
    if (pipe(to_child) != 0) return make_error(ErrorCode::Transport, "pipe() failed");
    if (pipe(from_child) != 0) {
        ::close(to_child[0]);
        ::close(to_child[1]);
        return make_error(ErrorCode::Transport, "pipe() failed");
    }

    const pid_t pid = fork();
    if (pid < 0) {
        for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
        return make_error(ErrorCode::Transport, "fork() failed: " + std::string(strerror(errno)));
    }

    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);

        std::vector<std::string> env_storage;
        std::vector<char*> envp;
        for (char** e = environ; *e; ++e) {
            const std::string entry(*e);
            const auto eq = entry.find('=');
            if (eq != std::string::npos && endpoint.env.count(entry.substr(0, eq))) continue;
            env_storage.push_back(entry);
        }
        for (const auto& [k, v] : endpoint.env) env_storage.push_back(k + "=" + v);
        for (auto& s : env_storage) envp.push_back(s.data());
        envp.push_back(nullptr);

        std::vector<std::string> arg_storage;
        arg_storage.push_back(endpoint.command);
        for (const auto& a : endpoint.args) arg_storage.push_back(a);
        std::vector<char*> argv;
        for (auto& s : arg_storage) argv.push_back(s.data());
        argv.push_back(nullptr);

        execvpe(endpoint.command.c_str(), argv.data(), envp.data());
        std::fprintf(stderr, "exec %s failed: %s\n", endpoint.command.c_str(), strerror(errno));
        _exit(127);
    }

    ::close(to_child[0]);
    ::close(from_child[1]);

    auto t = std::unique_ptr<StdioProcessTransport>(new StdioProcessTransport());
    t->peer_ = endpoint.name;
    t->pid_ = pid;
    t->write_fd_ = to_child[1];
    t->read_fd_ = from_child[0];
    return t;
}

StdioProcessTransport::~StdioProcessTransport() { close(); }

Result<void> StdioProcessTransport::send(const Json& message) {
    if (write_fd_ < 0)
        return make_error(ErrorCode::Transport, "transport to '" + peer_ + "' is closed");
    const std::string frame = encode_frame(message);
    size_t off = 0;
    while (off < frame.size()) {
        const ssize_t n = ::write(write_fd_, frame.data() + off, frame.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            return make_error(ErrorCode::Transport,
                              "write to '" + peer_ + "' failed: " + std::string(strerror(errno)));
        }
        off += static_cast<size_t>(n);
    }
    return {};
}

Result<Json> StdioProcessTransport::receive(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
        if (auto msg = decoder_.next()) {
            if (!*msg) return msg->error();
            return std::move(*msg).value();
        }
        if (read_fd_ < 0)
            return make_error(ErrorCode::Transport, "transport to '" + peer_ + "' is closed");

        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0)
            return make_error(ErrorCode::Timeout,
                              "timed out waiting for a message from '" + peer_ + "'");

        pollfd pfd{read_fd_, POLLIN, 0};
        const int rc = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
        if (rc < 0) {
            if (errno == EINTR) continue;
            return make_error(ErrorCode::Transport, "poll failed: " + std::string(strerror(errno)));
        }
        if (rc == 0)
            return make_error(ErrorCode::Timeout,
                              "timed out waiting for a message from '" + peer_ + "'");

        char buf[4096];
        const ssize_t n = ::read(read_fd_, buf, sizeof(buf));
        if (n < 0) {
            if (errno == EINTR) continue;
            return make_error(ErrorCode::Transport,
                              "read from '" + peer_ + "' failed: " + std::string(strerror(errno)));
        }
        if (n == 0)
            return make_error(ErrorCode::Transport, "endpoint '" + peer_ + "' closed the connection");
        decoder_.feed(std::string_view(buf, static_cast<size_t>(n)));
    }
}

void StdioProcessTransport::close() {
    if (write_fd_ >= 0) {
        ::close(write_fd_);
        write_fd_ = -1;
    }
    if (read_fd_ >= 0) {
        ::close(read_fd_);
        read_fd_ = -1;
    }
    if (pid_ > 0) {
        // give the child a moment to exit on stdin EOF, then escalate
        int status = 0;
        for (int i = 0; i < 20; ++i) {
            if (waitpid(pid_, &status, WNOHANG) == pid_) {
                pid_ = -1;
                return;
            }
            usleep(10 * 1000);
        }
        kill(pid_, SIGTERM);
        for (int i = 0; i < 20; ++i) {
            if (waitpid(pid_, &status, WNOHANG) == pid_) {
                pid_ = -1;
                return;
            }
            usleep(10 * 1000);
        }
        kill(pid_, SIGKILL);
        waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

// ---------------------------------------------------------------------------
// streamable http
// ---------------------------------------------------------------------------

class HttpClientImpl {
public:
    explicit HttpClientImpl(const std::string& base) : client(base) {
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(120, 0);
    }
    httplib::Client client;
};

Result<std::unique_ptr<HttpTransport>> HttpTransport::open(const Endpoint& endpoint) {
    auto url = net::parse_url(endpoint.url);
    if (!url)
        return make_error(ErrorCode::Config,
                          "endpoint '" + endpoint.name + "': " + url.error().message);
    auto t = std::unique_ptr<HttpTransport>(new HttpTransport());
    t->peer_ = endpoint.name;
    t->base_ = url.value().base;
    t->path_ = url.value().path;
    t->bearer_ = endpoint.bearer_token;
    t->client_ = std::make_unique<HttpClientImpl>(t->base_);
    return t;
}

HttpTransport::~HttpTransport() = default;

void HttpTransport::close() { client_.reset(); }

namespace {

/// Split an SSE body into the JSON payloads of its data fields.
std::vector<std::string> parse_sse_payloads(const std::string& body) {
    std::vector<std::string> out;
    std::string data;
    size_t start = 0;
    auto flush = [&] {
        if (!data.empty()) out.push_back(data);
        data.clear();
    };
    while (start <= body.size()) {
        size_t nl = body.find('\n', start);
        std::string line =
            nl == std::string::npos ? body.substr(start) : body.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
        } else if (line.rfind("data:", 0) == 0) {
            std::string chunk = line.substr(5);
            if (!chunk.empty() && chunk.front() == ' ') chunk.erase(0, 1);
            if (!data.empty()) data += "\n";
            data += chunk;
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    flush();
    return out;
}

} // namespace

Result<void> HttpTransport::send(const Json& message) {
    if (!client_) return make_error(ErrorCode::Transport, "transport to '" + peer_ + "' is closed");

    httplib::Headers headers{{"Accept", "application/json, text/event-stream"}};
    if (!bearer_.empty()) headers.emplace("Authorization", "Bearer " + bearer_);
    if (!session_id_.empty()) headers.emplace("Mcp-Session-Id", session_id_);

    auto res = client_->client.Post(path_, headers, message.dump(), "application/json");
    if (!res)
        return make_error(ErrorCode::Transport, "endpoint '" + peer_ + "' unreachable at " + base_ +
                                                    " (" + httplib::to_string(res.error()) + ")");
    if (auto it = res->headers.find("Mcp-Session-Id"); it != res->headers.end())
        session_id_ = it->second;

    if (res->status == 202 || (res->status == 200 && res->body.empty())) return {};
    if (res->status != 200)
        return make_error(ErrorCode::Transport,
                          "endpoint '" + peer_ + "' returned HTTP " + std::to_string(res->status),
                          Json{{"body", res->body}});

    const std::string content_type = res->get_header_value("Content-Type");
    std::vector<std::string> payloads;
    if (content_type.find("text/event-stream") != std::string::npos)
        payloads = parse_sse_payloads(res->body);
    else
        payloads.push_back(res->body);

    for (const auto& payload : payloads) {
        try {
            inbox_.push_back(Json::parse(payload));
        } catch (const Json::parse_error& e) {
            return make_error(ErrorCode::Framing,
                              "malformed JSON from '" + peer_ + "' at byte offset " +
                                  std::to_string(e.byte - 1),
                              Json{{"offset", e.byte - 1}, {"body", payload}});
        }
    }
    return {};
}

Result<Json> HttpTransport::receive(std::chrono::milliseconds) {
    if (inbox_.empty())
        return make_error(ErrorCode::Timeout, "no pending message from '" + peer_ + "'");
    Json msg = std::move(inbox_.front());
    inbox_.pop_front();
    return msg;
}

Result<std::unique_ptr<Transport>> open_transport(const Endpoint& endpoint) {
    auto valid = endpoint.validate();
    if (!valid) return valid.error();
    if (endpoint.transport == TransportKind::Stdio) {
        auto t = StdioProcessTransport::spawn(endpoint);
        if (!t) return t.error();
        return Result<std::unique_ptr<Transport>>(std::move(t).value());
    }
    auto t = HttpTransport::open(endpoint);
    if (!t) return t.error();
    return Result<std::unique_ptr<Transport>>(std::move(t).value());
}

} // namespace tooldesc::mcp
