// tooldesc: scan MCP tool descriptions for smells, augment them, serve the
// description router, and crunch benchmark outcome files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tooldesc/cli/commands.hpp"
#include "tooldesc/rubric/prompt_assets.hpp"
#include "tooldesc/text.hpp"

namespace {

using namespace tooldesc;

Result<cli::ServerManifest> manifest_from_flag(const std::string& path) {
    if (path.empty())
        return make_error(ErrorCode::Config, "a manifest is required (--manifest or --config)");
    return cli::ServerManifest::load(path);
}

/// Parse "--upstream" / endpoint specs: http(s) URLs become http endpoints,
/// anything else is a command line split on spaces.
mcp::Endpoint parse_endpoint_spec(const std::string& name, const std::string& spec) {
    if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0)
        return mcp::Endpoint::http(name, spec);
    auto parts = text::split(text::trim(spec), ' ');
    std::string command = parts.empty() ? "" : parts.front();
    std::vector<std::string> args(parts.begin() + (parts.empty() ? 0 : 1), parts.end());
    std::erase(args, "");
    return mcp::Endpoint::stdio(name, command, args);
}

struct ConfigFile {
    Json root = Json::object();

    static Result<ConfigFile> load(const std::string& path) {
        std::ifstream in(path);
        if (!in) return make_error(ErrorCode::Config, "cannot open config: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        ConfigFile c;
        try {
            c.root = Json::parse(text::interpolate_env(buf.str()));
        } catch (const Json::parse_error& e) {
            return make_error(ErrorCode::Config, "config " + path + ": " + e.what());
        }
        return c;
    }
};

Result<std::vector<judge::JudgeSpec>> judges_from_config(const Json& root, int heuristic_judges) {
    std::vector<judge::JudgeSpec> judges;
    if (root.contains("judges") && root["judges"].is_array()) {
        for (const auto& j : root["judges"]) {
            auto spec = judge::JudgeSpec::from_json(j);
            if (!spec) return spec.error();
            judges.push_back(std::move(spec).value());
        }
    }
    if (judges.empty())
        for (int i = 0; i < heuristic_judges; ++i) judges.push_back(judge::JudgeSpec::heuristic());
    return judges;
}

int dump_prompts(const std::string& out_dir) {
    struct Asset {
        const char* filename;
        const char* body;
    };
    const Asset assets[] = {
        {"scoring_prompt_v1.txt", rubric::assets::kScoringPromptTemplate},
        {"init_augment_prompt_v1.txt", rubric::assets::kInitAugmentPromptTemplate},
        {"consolidate_prompt_v1.txt", rubric::assets::kConsolidatePromptTemplate},
    };
    if (out_dir.empty()) {
        for (const auto& a : assets)
            std::cout << "==== " << a.filename << " ====\n" << a.body << "\n";
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    for (const auto& a : assets) {
        std::ofstream out(std::filesystem::path(out_dir) / a.filename, std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << a.filename << " under " << out_dir << "\n";
            return cli::kExitUsage;
        }
        out << a.body;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MCP tool description toolkit: scan, augment, serve, report"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (judges, store, manifest)");

    // --- scan ---
    auto* scan = app.add_subcommand("scan", "score every tool of every manifest server");
    std::string scan_manifest, scan_out;
    int scan_heuristic_judges = 3;
    int scan_concurrency = 4;
    int scan_timeout_ms = 30000;
    scan->add_option("--manifest", scan_manifest, "server manifest JSON");
    scan->add_option("--out", scan_out, "report path (default stdout)");
    scan->add_option("--heuristic-judges", scan_heuristic_judges,
                     "jury size when the config defines no judges");
    scan->add_option("--concurrency", scan_concurrency, "parallel tool scoring");
    scan->add_option("--timeout-ms", scan_timeout_ms, "handshake/request timeout");

    // --- augment ---
    auto* augment = app.add_subcommand("augment", "rewrite descriptions through the staged pipeline");
    std::string aug_manifest, aug_traces, aug_store, aug_out;
    std::string aug_model_id, aug_endpoint, aug_credential_env = "TOOLDESC_API_KEY";
    bool aug_from_store = false;
    augment->add_option("--manifest", aug_manifest, "server manifest JSON");
    augment->add_option("--traces", aug_traces, "execution trace JSON file");
    augment->add_option("--store", aug_store, "description store directory")->required();
    augment->add_option("--model-id", aug_model_id, "augmentation model id");
    augment->add_option("--endpoint", aug_endpoint, "chat-completion endpoint URL");
    augment->add_option("--credential-env", aug_credential_env, "env var holding the API key");
    augment->add_flag("--from-store", aug_from_store, "re-augment records already in the store");
    augment->add_option("--out", aug_out, "report path (default stdout)");

    // --- serve ---
    auto* serve = app.add_subcommand("serve", "run the tool description router");
    std::string serve_upstream, serve_upstream_name = "upstream", serve_listen = "stdio";
    std::string serve_descriptions = "original", serve_components, serve_fallback = "serve-original";
    std::string serve_store;
    serve->add_option("--upstream", serve_upstream, "upstream server (URL or command line)")
        ->required();
    serve->add_option("--upstream-name", serve_upstream_name,
                      "label the upstream is stored under");
    serve->add_option("--listen", serve_listen, "stdio | [host]:port");
    serve->add_option("--descriptions", serve_descriptions, "original | augmented");
    serve->add_option("--components", serve_components,
                      "comma-separated component names (augmented mode)");
    serve->add_option("--fallback", serve_fallback, "serve-original | fail");
    serve->add_option("--store", serve_store, "description store directory");

    // --- report ---
    auto* report = app.add_subcommand("report", "summarize benchmark outcome files");
    std::vector<std::string> report_files;
    std::string report_out, report_csv;
    bool report_no_continuity = false;
    report->add_option("files", report_files, "TaskOutcome JSONL files")->required();
    report->add_option("--out", report_out, "report path (default stdout)");
    report->add_option("--pareto-csv", report_csv, "write plot data CSV here");
    report->add_flag("--no-continuity", report_no_continuity,
                     "drop the McNemar continuity correction");

    // --- prompts ---
    auto* prompts = app.add_subcommand("prompts", "export the versioned prompt templates");
    std::string prompts_out;
    prompts->add_option("--out", prompts_out, "directory to write the templates into");

    CLI11_PARSE(app, argc, argv);

    Json config_root = Json::object();
    if (!config_path.empty()) {
        auto config = ConfigFile::load(config_path);
        if (!config) {
            std::cerr << "error: " << config.error().message << "\n";
            return cli::kExitUsage;
        }
        config_root = std::move(config).value().root;
    }
    auto config_str = [&](const char* key, const std::string& flag_value) {
        if (!flag_value.empty()) return flag_value;
        return config_root.value(key, std::string());
    };

    if (scan->parsed()) {
        cli::ScanOptions options;
        auto manifest = manifest_from_flag(config_str("manifest", scan_manifest));
        if (!manifest) {
            std::cerr << "error: " << manifest.error().message << "\n";
            return cli::kExitUsage;
        }
        options.manifest = std::move(manifest).value();
        auto judges = judges_from_config(config_root, scan_heuristic_judges);
        if (!judges) {
            std::cerr << "error: " << judges.error().message << "\n";
            return cli::kExitUsage;
        }
        options.judges = std::move(judges).value();
        options.concurrency = scan_concurrency;
        options.client.handshake_timeout = std::chrono::milliseconds(scan_timeout_ms);
        options.client.rpc_timeout = std::chrono::milliseconds(scan_timeout_ms);
        auto outcome = cli::cmd_scan(options);
        const int write_rc = cli::write_report(outcome.report, config_str("output", scan_out));
        return outcome.exit_code ? outcome.exit_code : write_rc;
    }

    if (augment->parsed()) {
        cli::AugmentOptions options;
        options.store_path = aug_store;
        options.traces_path = aug_traces;
        options.from_store = aug_from_store;
        if (!aug_from_store) {
            auto manifest = manifest_from_flag(config_str("manifest", aug_manifest));
            if (!manifest) {
                std::cerr << "error: " << manifest.error().message << "\n";
                return cli::kExitUsage;
            }
            options.manifest = std::move(manifest).value();
        }
        if (aug_model_id.empty() && config_root.contains("model")) {
            auto spec = judge::JudgeSpec::from_json(config_root["model"]);
            if (!spec) {
                std::cerr << "error: " << spec.error().message << "\n";
                return cli::kExitUsage;
            }
            options.model = std::move(spec).value();
        } else {
            options.model = judge::JudgeSpec::remote(aug_model_id, aug_endpoint, aug_credential_env);
        }
        auto outcome = cli::cmd_augment(options);
        const int write_rc = cli::write_report(outcome.report, config_str("output", aug_out));
        return outcome.exit_code ? outcome.exit_code : write_rc;
    }

    if (serve->parsed()) {
        router::RouterConfig config;
        config.upstream = parse_endpoint_spec(serve_upstream_name, serve_upstream);
        config.store_path = config_str("store", serve_store);
        if (serve_listen == "stdio") {
            config.listen_kind = router::RouterConfig::ListenKind::Stdio;
        } else {
            config.listen_kind = router::RouterConfig::ListenKind::Http;
            auto colon = serve_listen.rfind(':');
            if (colon == std::string::npos) {
                std::cerr << "error: --listen must be 'stdio' or '[host]:port'\n";
                return cli::kExitUsage;
            }
            const std::string host = serve_listen.substr(0, colon);
            config.listen_host = host.empty() ? "127.0.0.1" : host;
            try {
                config.listen_port = std::stoi(serve_listen.substr(colon + 1));
            } catch (...) {
                std::cerr << "error: bad port in --listen\n";
                return cli::kExitUsage;
            }
        }
        auto selection = store::ComponentSelection::parse(serve_descriptions, serve_components);
        if (!selection) {
            std::cerr << "error: " << selection.error().message << "\n";
            return cli::kExitUsage;
        }
        config.selection = std::move(selection).value();
        auto fallback = router::parse_fallback(serve_fallback);
        if (!fallback) {
            std::cerr << "error: " << fallback.error().message << "\n";
            return cli::kExitUsage;
        }
        config.fallback = fallback.value();
        return cli::cmd_serve(std::move(config));
    }

    if (report->parsed()) {
        cli::ReportOptions options;
        options.outcome_files = report_files;
        options.pareto_csv_path = report_csv;
        options.continuity = !report_no_continuity;
        auto outcome = cli::cmd_report(options);
        const int write_rc = cli::write_report(outcome.report, config_str("output", report_out));
        return outcome.exit_code ? outcome.exit_code : write_rc;
    }

    if (prompts->parsed()) return dump_prompts(prompts_out);

    return cli::kExitUsage;
}
