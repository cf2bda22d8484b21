#include "mock_model.hpp"

#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tooldesc/judge/judge.hpp"
#include "tooldesc/mcp/types.hpp"
#include "tooldesc/rubric/rubric.hpp"

namespace mockmodel {

using tooldesc::Json;

struct MockModelServer::Impl {
    httplib::Server server;
    std::thread thread;
    int port = 0;
};

MockModelServer::MockModelServer() : impl_(std::make_unique<Impl>()) {}
MockModelServer::~MockModelServer() { stop(); }

namespace {

/// Consume one unit from a first-N counter; true while the budget lasts.
bool take(std::atomic<int>& counter) {
    int n = counter.load();
    while (n > 0 && !counter.compare_exchange_weak(n, n - 1)) {
    }
    return n > 0;
}

std::string type_of(const Json& schema, const std::string& prop) {
    if (schema.is_object() && schema.contains("properties") &&
        schema["properties"].contains(prop) && schema["properties"][prop].is_object())
        return schema["properties"][prop].value("type", "value");
    return "value";
}

Json synthesize_draft(const Json& payload) {
    const std::string name = payload.value("name", "tool");
    const std::string original = payload.value("description", "");
    const Json schema = payload.contains("input_schema") ? payload["input_schema"] : Json(nullptr);

    std::string purpose = "This tool performs the documented operation: " + original +
                          " It returns structured text content on success and reports failures "
                          "through an error flag.";
    std::string guidelines = "Use this tool when the task needs " + name +
                             ". Do not use it for unrelated operations, and you should check the "
                             "response before continuing.";
    std::string limitations =
        "It only supports the documented arguments, cannot recover from upstream failures, and "
        "enforces a maximum input size limit.";

    std::string parameter_explanation;
    const auto props = tooldesc::mcp::schema_property_names(schema);
    if (props.empty()) {
        parameter_explanation = "This tool takes no input parameters.";
    } else {
        for (const auto& p : props) {
            if (!parameter_explanation.empty()) parameter_explanation += "\n";
            parameter_explanation +=
                "- `" + p + "` (" + type_of(schema, p) + "): input value controlling " + p + ".";
        }
    }
    return Json{{"purpose", purpose},
                {"guidelines", guidelines},
                {"limitations", limitations},
                {"parameter_explanation", parameter_explanation}};
}

std::string synthesize_examples(const Json& traces) {
    if (!traces.is_array() || traces.empty())
        return "No trace-grounded examples are available for this tool.";
    std::string out;
    size_t used = 0;
    for (const auto& trace : traces) {
        if (used >= 2) break;
        if (!trace.is_object() || !trace.contains("calls") || trace["calls"].empty()) continue;
        const Json& call = trace["calls"][0];
        out += "Arguments " + call.value("arguments", Json::object()).dump() + " led to outcome " +
               call.value("outcome", "success") + ". ";
        ++used;
    }
    if (out.empty()) return "No trace-grounded examples are available for this tool.";
    return out;
}

} // namespace

std::string MockModelServer::start() {
    impl_->server.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                      httplib::Response& res) {
        total_requests++;
        if (auth_error_status > 0) {
            res.status = auth_error_status;
            res.set_content("{\"error\":\"unauthorized\"}", "application/json");
            return;
        }
        if (always_http_error || take(http_error_first_n)) {
            res.status = 500;
            res.set_content("{\"error\":\"boom\"}", "application/json");
            return;
        }

        std::string system;
        try {
            const Json body = Json::parse(req.body);
            system = body.at("messages").at(0).at("content").get<std::string>();
        } catch (...) {
            res.status = 400;
            return;
        }

        std::string content;
        if (system.find("You are grading a tool description") != std::string::npos) {
            scoring_requests++;
            auto payload = tooldesc::rubric::extract_tool_payload(system);
            auto tool = tooldesc::mcp::ToolDescriptor::from_json(payload.value());
            const auto verdict = tooldesc::judge::heuristic_verdict(tool.value());
            content = "Here is the assessment you asked for:\n```json\n" +
                      tooldesc::rubric::serialize_verdict(verdict).dump(2) + "\n```\n";
        } else if (system.find("Do not invent usage examples") != std::string::npos) {
            init_requests++;
            auto payload = tooldesc::rubric::extract_tool_payload(system);
            content = synthesize_draft(payload.value()).dump(2);
        } else if (system.find("finalizing the structured description") != std::string::npos) {
            consolidate_requests++;
            auto draft = tooldesc::rubric::extract_tool_payload(system); // first fenced block
            // the traces block is the second fenced json block
            const size_t first = system.find("```json\n");
            const size_t second = system.find("```json\n", first + 8);
            Json traces = Json::array();
            if (second != std::string::npos) {
                const size_t body_start = second + 8;
                const size_t close = system.find("\n```", body_start);
                if (close != std::string::npos)
                    traces = Json::parse(system.substr(body_start, close - body_start));
            }
            Json final_obj = draft.value();
            final_obj.erase("source_tool");
            final_obj.erase("model_id");
            std::string examples = synthesize_examples(traces);
            if (take(ungrounded_first_n)) examples += " Also consider \"unrelated_fabricated_value\".";
            final_obj["examples"] = examples;
            if (take(omit_limitations_first_n)) final_obj.erase("limitations");
            content = final_obj.dump(2);
        } else {
            content = "I cannot help with that.";
        }

        if (take(prose_only_first_n))
            content = "Sure thing! Let me think about this description in prose first.";

        const Json reply = {{"choices", Json::array({Json{
                                {"message",
                                 Json{{"role", "assistant"}, {"content", content}}}}})}};
        res.status = 200;
        res.set_content(reply.dump(), "application/json");
    });

    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return "http://127.0.0.1:" + std::to_string(impl_->port) + "/v1/chat/completions";
}

void MockModelServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

} // namespace mockmodel
