#pragma once

#include <string>
#include <vector>

#include "tooldesc/cli/manifest.hpp"
#include "tooldesc/judge/judge.hpp"
#include "tooldesc/json.hpp"
#include "tooldesc/router/router.hpp"

namespace tooldesc::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1; // some servers/tools failed, report still written
inline constexpr int kExitUsage = 2;  // configuration or input problem

struct CommandOutcome {
    int exit_code = kExitOk;
    Json report = Json::object();
};

struct ScanOptions {
    ServerManifest manifest;
    std::vector<judge::JudgeSpec> judges;
    mcp::ClientConfig client;
    int concurrency = 4; // parallel tool scoring per server
};

/// Reflect every manifest endpoint, score each tool with the jury, and build
/// the scan report (per-tool smells, prevalence, agreement, official-vs-
/// community tests). Per-server failures are isolated and enumerated.
CommandOutcome cmd_scan(const ScanOptions& options);

struct AugmentOptions {
    ServerManifest manifest; // ignored when from_store is set
    std::string traces_path; // empty or missing file: proceed ungrounded with a warning
    judge::JudgeSpec model;  // remote
    std::string store_path;
    bool from_store = false; // re-augment the store's records instead of reflecting
    mcp::ClientConfig client;
};

CommandOutcome cmd_augment(const AugmentOptions& options);

struct ReportOptions {
    std::vector<std::string> outcome_files;
    std::string pareto_csv_path; // empty: CSV embedded in the report only
    bool continuity = true;      // McNemar continuity correction
};

/// RunSummaries, deltas, Pareto data and the paired tests over the given
/// outcome files (two files: McNemar + Wilcoxon; three or more: Cochran's Q).
CommandOutcome cmd_report(const ReportOptions& options);

/// Long-running router process; returns only on stream EOF (stdio) or stop.
int cmd_serve(router::RouterConfig config);

/// Write a report to a file or stdout ("-" or empty).
int write_report(const Json& report, const std::string& path);

} // namespace tooldesc::cli
