#pragma once

#include <atomic>
#include <memory>
#include <string>

namespace mockmodel {

/// In-process chat-completion endpoint with deterministic replies: scoring
/// prompts get heuristic verdicts, augmentation prompts get synthesized
/// drafts/consolidations built from the embedded payload. Misbehavior knobs
/// exercise the retry paths.
class MockModelServer {
public:
    MockModelServer();
    ~MockModelServer();

    /// Starts listening on an ephemeral port; returns the full endpoint URL.
    std::string start();
    void stop();

    // misbehavior knobs
    std::atomic<int> prose_only_first_n{0};      // unparseable prose for the first N requests
    std::atomic<int> http_error_first_n{0};      // HTTP 500 for the first N requests
    std::atomic<bool> always_http_error{false};  // HTTP 500 forever
    std::atomic<int> auth_error_status{0};       // nonzero: always reply with this status
    std::atomic<int> omit_limitations_first_n{0};// consolidate replies missing 'limitations'
    std::atomic<int> ungrounded_first_n{0};      // consolidate examples with a bogus value

    // counters
    std::atomic<int> total_requests{0};
    std::atomic<int> scoring_requests{0};
    std::atomic<int> init_requests{0};
    std::atomic<int> consolidate_requests{0};

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace mockmodel
