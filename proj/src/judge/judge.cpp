#include "tooldesc/judge/judge.hpp"

#include <condition_variable>
#include <cstdlib>
#include <mutex>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tooldesc/net.hpp"

namespace tooldesc::judge {

namespace {

/// Bounds concurrent remote calls so a jury fan-out cannot stampede a provider.
class InflightLimiter {
public:
    void set_limit(int n) {
        std::lock_guard lock(mu_);
        limit_ = n > 0 ? n : 1;
        cv_.notify_all();
    }
    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return active_ < limit_; });
        ++active_;
    }
    void release() {
        std::lock_guard lock(mu_);
        --active_;
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int limit_ = 8;
    int active_ = 0;
};

InflightLimiter& limiter() {
    static InflightLimiter instance;
    return instance;
}

struct InflightGuard {
    InflightGuard() { limiter().acquire(); }
    ~InflightGuard() { limiter().release(); }
};

Result<rubric::JudgeVerdict> remote_judge(const JudgeSpec& spec, const std::string& prompt) {
    Json raw_replies = Json::array();
    std::string corrective;

    for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
        std::string user_message = "Score the tool description now. Reply with the JSON object only.";
        if (!corrective.empty()) user_message += "\n\n" + corrective;

        auto content = chat_complete(spec, prompt, user_message);
        if (!content) return content.error(); // network/auth: not a parse failure, no retry

        raw_replies.push_back(content.value());
        auto verdict = rubric::parse_verdict(content.value());
        if (verdict) return verdict;

        corrective = "Your previous reply could not be used: " + verdict.error().message +
                     ". Reply again with exactly the JSON object described in the output format.";
    }

    return make_error(ErrorCode::Judge,
                      "judge '" + spec.model_id + "' produced no parseable verdict in " +
                          std::to_string(spec.max_attempts) + " attempts",
                      Json{{"replies", raw_replies}});
}

} // namespace

Result<std::string> chat_complete(const JudgeSpec& spec, const std::string& system,
                                  const std::string& user) {
    if (spec.kind != JudgeKind::Remote)
        return make_error(ErrorCode::Config, "chat_complete requires a remote spec");
    auto url = net::parse_url(spec.endpoint_url);
    if (!url) return url.error();

    std::string token;
    if (!spec.credential_env.empty()) {
        if (const char* v = std::getenv(spec.credential_env.c_str())) token = v;
    }

    httplib::Client client(url.value().base);
    client.set_connection_timeout(30, 0);
    client.set_read_timeout(120, 0);

    Json body = {{"model", spec.model_id},
                 {"temperature", spec.temperature},
                 {"messages", Json::array({Json{{"role", "system"}, {"content", system}},
                                           Json{{"role", "user"}, {"content", user}}})}};

    httplib::Headers headers;
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

    InflightGuard guard;
    auto res = client.Post(url.value().path, headers, body.dump(), "application/json");
    if (!res)
        return make_error(ErrorCode::Transport,
                          "model endpoint unreachable: " + spec.endpoint_url + " (" +
                              httplib::to_string(res.error()) + ")");
    if (res->status == 401 || res->status == 403)
        return make_error(ErrorCode::Config, "model endpoint rejected credentials (HTTP " +
                                                 std::to_string(res->status) + "); check $" +
                                                 spec.credential_env);
    if (res->status != 200)
        return make_error(ErrorCode::Transport,
                          "model endpoint returned HTTP " + std::to_string(res->status),
                          Json{{"body", res->body}});

    try {
        Json reply = Json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception& e) {
        return make_error(ErrorCode::Protocol,
                          std::string("malformed chat-completion response: ") + e.what(),
                          Json{{"body", res->body}});
    }
}

JudgeSpec JudgeSpec::heuristic() {
    JudgeSpec s;
    s.kind = JudgeKind::Heuristic;
    return s;
}

JudgeSpec JudgeSpec::remote(std::string model_id, std::string endpoint_url, std::string credential_env) {
    JudgeSpec s;
    s.kind = JudgeKind::Remote;
    s.model_id = std::move(model_id);
    s.endpoint_url = std::move(endpoint_url);
    s.credential_env = std::move(credential_env);
    return s;
}

Result<void> JudgeSpec::validate() const {
    if (kind == JudgeKind::Remote) {
        if (model_id.empty()) return make_error(ErrorCode::Config, "remote judge requires a model_id");
        if (endpoint_url.empty())
            return make_error(ErrorCode::Config, "remote judge requires an endpoint URL");
        auto url = net::parse_url(endpoint_url);
        if (!url) return url.error();
    } else {
        if (!model_id.empty() || !endpoint_url.empty())
            return make_error(ErrorCode::Config,
                              "heuristic judge must not carry a model_id or endpoint");
    }
    if (max_attempts < 1) return make_error(ErrorCode::Config, "max_attempts must be >= 1");
    return {};
}

Json JudgeSpec::to_json() const {
    Json j = {{"kind", kind == JudgeKind::Remote ? "remote" : "heuristic"}};
    if (kind == JudgeKind::Remote) {
        j["model_id"] = model_id;
        j["endpoint_url"] = endpoint_url;
        j["credential_env"] = credential_env;
        j["temperature"] = temperature;
    }
    j["max_attempts"] = max_attempts;
    return j;
}

Result<JudgeSpec> JudgeSpec::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        return make_error(ErrorCode::Config, "judge spec requires a 'kind'");
    JudgeSpec s;
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "remote")
        s.kind = JudgeKind::Remote;
    else if (kind == "heuristic")
        s.kind = JudgeKind::Heuristic;
    else
        return make_error(ErrorCode::Config, "unknown judge kind '" + kind + "'");
    s.model_id = j.value("model_id", "");
    s.endpoint_url = j.value("endpoint_url", "");
    s.credential_env = j.value("credential_env", std::string("TOOLDESC_API_KEY"));
    s.temperature = j.value("temperature", 0.0);
    s.max_attempts = j.value("max_attempts", 3);
    auto valid = s.validate();
    if (!valid) return valid.error();
    return s;
}

void set_remote_inflight_limit(int limit) { limiter().set_limit(limit); }

Result<rubric::JudgeVerdict> judge(const JudgeSpec& spec, const std::string& prompt) {
    auto valid = spec.validate();
    if (!valid) return valid.error();
    if (spec.kind == JudgeKind::Heuristic) {
        auto payload = rubric::extract_tool_payload(prompt);
        if (!payload)
            return make_error(ErrorCode::Parse,
                              "heuristic judge could not locate the tool payload in the prompt");
        auto tool = mcp::ToolDescriptor::from_json(payload.value());
        if (!tool) return tool.error();
        return heuristic_verdict(tool.value());
    }
    return remote_judge(spec, prompt);
}

} // namespace tooldesc::judge
