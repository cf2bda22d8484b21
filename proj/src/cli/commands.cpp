#include "tooldesc/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "tooldesc/augment/augmentor.hpp"
#include "tooldesc/clock.hpp"
#include "tooldesc/jury/jury.hpp"
#include "tooldesc/stats/stats.hpp"
#include "tooldesc/store/store.hpp"
#include "tooldesc/text.hpp"

namespace tooldesc::cli {

namespace {

Json meta_block(const std::string& command) {
    return Json{{"generated_at", iso8601_utc_now()}, {"command", command}, {"schema_version", 1}};
}

CommandOutcome usage_error(const std::string& command, const std::string& message) {
    CommandOutcome out;
    out.exit_code = kExitUsage;
    out.report = Json{{"meta", meta_block(command)}, {"error", message}};
    std::cerr << "error: " << message << "\n";
    return out;
}

void parallel_for(size_t count, int workers, const std::function<void(size_t)>& fn) {
    if (count == 0) return;
    const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        pool.emplace_back([&] {
            while (true) {
                const size_t idx = next.fetch_add(1);
                if (idx >= count) return;
                fn(idx);
            }
        });
    for (auto& t : pool) t.join();
}

} // namespace

int write_report(const Json& report, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot write report to " << path << "\n";
        return kExitUsage;
    }
    out << report.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

namespace {

const std::array<std::vector<rubric::RubricComponent>, 5>& nested_combinations() {
    using C = rubric::RubricComponent;
    static const std::array<std::vector<C>, 5> combos = {{
        {C::Purpose},
        {C::Purpose, C::Guidelines},
        {C::Purpose, C::Guidelines, C::Limitations},
        {C::Purpose, C::Guidelines, C::Limitations, C::ParameterExplanation},
        {C::Purpose, C::Guidelines, C::Limitations, C::ParameterExplanation, C::ExamplesBalance},
    }};
    return combos;
}

std::string combination_label(const std::vector<rubric::RubricComponent>& combo) {
    static const std::map<rubric::RubricComponent, std::string> codes = {
        {rubric::RubricComponent::Purpose, "P"},
        {rubric::RubricComponent::Guidelines, "G"},
        {rubric::RubricComponent::Limitations, "L"},
        {rubric::RubricComponent::ParameterExplanation, "PEx"},
        {rubric::RubricComponent::ExamplesBalance, "E"},
        {rubric::RubricComponent::LengthCompleteness, "LC"},
    };
    std::vector<std::string> parts;
    for (auto c : combo) parts.push_back(codes.at(c));
    return text::join(parts, "+");
}

} // namespace

CommandOutcome cmd_scan(const ScanOptions& options) {
    if (options.manifest.servers.empty())
        return usage_error("scan", "manifest lists no servers");
    if (options.judges.empty()) return usage_error("scan", "no judges configured");
    for (const auto& j : options.judges) {
        auto valid = j.validate();
        if (!valid) return usage_error("scan", valid.error().message);
    }

    CommandOutcome out;
    Json servers_json = Json::array();
    Json failures = Json::array();
    std::vector<jury::SmellReport> reports;
    std::map<std::string, bool> official_by_server;

    for (const auto& entry : options.manifest.servers) {
        official_by_server[entry.endpoint.name] = entry.official;
        Json server_json = {{"name", entry.endpoint.name}, {"official", entry.official}};

        auto session = mcp::Session::connect(entry.endpoint, options.client);
        if (!session) {
            server_json["ok"] = false;
            server_json["error"] = session.error().to_string();
            failures.push_back(Json{{"server", entry.endpoint.name},
                                    {"stage", "connect"},
                                    {"error", session.error().to_string()}});
            servers_json.push_back(server_json);
            continue;
        }
        auto tools = session.value().list_tools();
        if (!tools) {
            server_json["ok"] = false;
            server_json["error"] = tools.error().to_string();
            failures.push_back(Json{{"server", entry.endpoint.name},
                                    {"stage", "list"},
                                    {"error", tools.error().to_string()}});
            servers_json.push_back(server_json);
            continue;
        }

        const auto& listing = tools.value();
        std::vector<std::optional<Result<jury::SmellReport>>> scored(listing.size());
        parallel_for(listing.size(), options.concurrency, [&](size_t i) {
            scored[i] = jury::score_tool(listing[i], options.judges);
        });

        int ok_count = 0;
        for (size_t i = 0; i < listing.size(); ++i) {
            auto& result = *scored[i];
            if (!result) {
                failures.push_back(Json{{"server", entry.endpoint.name},
                                        {"tool", listing[i].name},
                                        {"stage", "score"},
                                        {"error", result.error().to_string()}});
                continue;
            }
            ++ok_count;
            reports.push_back(std::move(result).value());
        }
        server_json["ok"] = true;
        server_json["server_name"] = session.value().server_name();
        server_json["protocol_version"] = session.value().protocol_version();
        server_json["tool_count"] = static_cast<int>(listing.size());
        server_json["tools_scored"] = ok_count;
        servers_json.push_back(server_json);
    }

    Json tools_json = Json::array();
    for (const auto& r : reports) tools_json.push_back(r.to_json());

    // smell prevalence across scored tools
    Json prevalence = Json::object();
    const double n_tools = static_cast<double>(reports.size());
    int any_smell = 0;
    for (const auto& r : reports)
        if (!r.smells.empty()) ++any_smell;
    for (auto c : rubric::kAllComponents) {
        const auto smell = jury::smell_of(c);
        int count = 0;
        for (const auto& r : reports)
            if (r.smells.count(smell)) ++count;
        prevalence[jury::smell_name(smell)] =
            Json{{"count", count}, {"percent", n_tools ? 100.0 * count / n_tools : 0.0}};
    }
    prevalence["any_smell"] =
        Json{{"count", any_smell}, {"percent", n_tools ? 100.0 * any_smell / n_tools : 0.0}};

    Json combos_json = Json::array();
    for (const auto& combo : nested_combinations()) {
        const auto counted = stats::count_smell_free(reports, combo);
        combos_json.push_back(Json{{"components", combination_label(combo)},
                                   {"count", counted.count},
                                   {"percent", counted.percent}});
    }

    // official vs community: Mann-Whitney on per-server medians of mean scores
    Json comparison = Json::object();
    {
        std::map<std::string, std::map<rubric::RubricComponent, std::vector<double>>> per_server;
        for (const auto& r : reports)
            for (auto c : rubric::kAllComponents)
                per_server[r.tool.server][c].push_back(r.column(c).mean());

        for (auto c : rubric::kAllComponents) {
            std::vector<double> official, community;
            for (const auto& [server, by_component] : per_server) {
                auto it = by_component.find(c);
                if (it == by_component.end() || it->second.empty()) continue;
                std::vector<double> values = it->second;
                const double med = stats::median(values);
                (official_by_server[server] ? official : community).push_back(med);
            }
            if (official.empty() || community.empty()) continue;
            const auto mwu = stats::mann_whitney_u(official, community);
            comparison[rubric::component_key(c)] =
                Json{{"u", mwu.u},
                     {"p", mwu.p},
                     {"p_adjusted", stats::bonferroni(mwu.p, rubric::kComponentCount)},
                     {"m", rubric::kComponentCount},
                     {"exact", mwu.exact},
                     {"n_official", static_cast<int>(official.size())},
                     {"n_community", static_cast<int>(community.size())}};
        }
    }

    const auto agreement = jury::summarize_agreement(reports);

    out.report = Json{{"meta", meta_block("scan")},
                      {"servers", servers_json},
                      {"tools", tools_json},
                      {"prevalence", prevalence},
                      {"smell_free_combinations", combos_json},
                      {"agreement", agreement.to_json()},
                      {"official_vs_community", comparison},
                      {"failures", failures}};
    out.exit_code = failures.empty() ? kExitOk : kExitPartial;
    return out;
}

// ---------------------------------------------------------------------------
// augment
// ---------------------------------------------------------------------------

CommandOutcome cmd_augment(const AugmentOptions& options) {
    if (options.store_path.empty()) return usage_error("augment", "no store path given");
    auto file_store = store::FileStore::open(options.store_path);
    if (!file_store) return usage_error("augment", file_store.error().message);
    auto writable = file_store.value().probe_writable();
    if (!writable) return usage_error("augment", writable.error().message);

    if (options.model.kind != judge::JudgeKind::Remote)
        return usage_error("augment", "augmentation requires a remote model spec");
    auto model_valid = options.model.validate();
    if (!model_valid) return usage_error("augment", model_valid.error().message);

    Json warnings = Json::array();
    std::map<std::string, std::vector<augment::ExecutionTrace>> traces_by_tool;
    if (options.traces_path.empty()) {
        warnings.push_back("no traces file given; examples will be flagged ungrounded");
    } else if (!std::ifstream(options.traces_path)) {
        warnings.push_back("traces file '" + options.traces_path +
                           "' absent; examples will be flagged ungrounded");
    } else {
        auto ingested = augment::ingest_traces(options.traces_path);
        if (!ingested) return usage_error("augment", ingested.error().message);
        for (const auto& w : ingested.value().warnings) warnings.push_back(w);
        traces_by_tool = augment::group_by_tool(ingested.value().traces);
    }

    // Collect the tools to augment.
    std::vector<mcp::ToolDescriptor> tools;
    Json failures = Json::array();
    if (options.from_store) {
        auto records = file_store.value().list();
        if (!records) return usage_error("augment", records.error().message);
        for (const auto& r : records.value()) {
            mcp::ToolDescriptor t;
            t.server = r.server;
            t.name = r.tool;
            t.description = r.original;
            t.input_schema = r.input_schema;
            tools.push_back(std::move(t));
        }
        if (tools.empty()) return usage_error("augment", "store holds no records to re-augment");
    } else {
        if (options.manifest.servers.empty()) return usage_error("augment", "manifest lists no servers");
        for (const auto& entry : options.manifest.servers) {
            auto session = mcp::Session::connect(entry.endpoint, options.client);
            if (!session) {
                failures.push_back(Json{{"server", entry.endpoint.name},
                                        {"stage", "connect"},
                                        {"error", session.error().to_string()}});
                continue;
            }
            auto listing = session.value().list_tools();
            if (!listing) {
                failures.push_back(Json{{"server", entry.endpoint.name},
                                        {"stage", "list"},
                                        {"error", listing.error().to_string()}});
                continue;
            }
            for (auto& t : listing.value()) tools.push_back(std::move(t));
        }
    }

    Json tools_json = Json::array();
    std::mutex mu;
    parallel_for(tools.size(), 4, [&](size_t i) {
        const auto& tool = tools[i];
        auto draft = augment::init_augment(tool, options.model);
        if (!draft) {
            std::lock_guard lock(mu);
            failures.push_back(Json{{"server", tool.server},
                                    {"tool", tool.name},
                                    {"stage", "init_augment"},
                                    {"error", draft.error().to_string()}});
            return;
        }
        std::vector<augment::ExecutionTrace> tool_traces;
        if (auto it = traces_by_tool.find(tool.name); it != traces_by_tool.end())
            tool_traces = it->second;
        auto augmented = augment::consolidate(draft.value(), tool_traces, options.model);
        if (!augmented) {
            std::lock_guard lock(mu);
            failures.push_back(Json{{"server", tool.server},
                                    {"tool", tool.name},
                                    {"stage", "consolidate"},
                                    {"error", augmented.error().to_string()}});
            return;
        }
        const auto validation =
            augment::validate_augmented(tool, augmented.value(), &tool_traces);

        std::lock_guard lock(mu);
        store::StoreRecord record;
        if (auto existing = file_store.value().get(tool.server, tool.name); existing)
            record = std::move(existing).value();
        record.server = tool.server;
        record.tool = tool.name;
        record.original = tool.description;
        record.input_schema = tool.input_schema;
        record.augmented = augmented.value();
        auto revision = file_store.value().put(record);
        if (!revision) {
            failures.push_back(Json{{"server", tool.server},
                                    {"tool", tool.name},
                                    {"stage", "store"},
                                    {"error", revision.error().to_string()}});
            return;
        }
        std::cerr << tool.server << "/" << tool.name << ": augmented (revision "
                  << revision.value() << ", " << validation.violations.size() << " violations)\n";
        tools_json.push_back(Json{{"server", tool.server},
                                  {"tool", tool.name},
                                  {"revision", revision.value()},
                                  {"examples_ungrounded", augmented.value().examples_ungrounded},
                                  {"validation", validation.to_json()}});
    });

    CommandOutcome out;
    out.report = Json{{"meta", meta_block("augment")},
                      {"store", options.store_path},
                      {"tools", tools_json},
                      {"warnings", warnings},
                      {"failures", failures}};
    out.exit_code = failures.empty() ? kExitOk : kExitPartial;
    return out;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

namespace {

Json summary_json(const stats::RunSummary& s) { return s.to_json(); }

Json grouped_summaries(const std::vector<stats::TaskOutcome>& outcomes,
                       const std::function<std::string(const stats::TaskOutcome&)>& key) {
    std::map<std::string, std::vector<stats::TaskOutcome>> groups;
    for (const auto& o : outcomes) groups[key(o)].push_back(o);
    Json out = Json::object();
    for (const auto& [k, members] : groups) out[k] = summary_json(stats::summarize(members));
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

CommandOutcome cmd_report(const ReportOptions& options) {
    if (options.outcome_files.empty()) return usage_error("report", "no outcome files given");

    std::vector<std::vector<stats::TaskOutcome>> runs;
    Json runs_json = Json::array();
    for (const auto& path : options.outcome_files) {
        auto outcomes = stats::read_outcomes_jsonl(path);
        if (!outcomes) return usage_error("report", outcomes.error().message);
        if (outcomes.value().empty())
            return usage_error("report", "outcomes file '" + path + "' is empty");
        runs.push_back(std::move(outcomes).value());

        const auto& run = runs.back();
        std::set<std::string> variants;
        for (const auto& o : run) variants.insert(o.variant);
        Json run_json = {{"file", path},
                         {"variants", Json(variants)},
                         {"summary", summary_json(stats::summarize(run))},
                         {"by_model", grouped_summaries(run, [](const auto& o) { return o.model; })},
                         {"by_domain", grouped_summaries(run, [](const auto& o) { return o.domain; })}};
        runs_json.push_back(run_json);
    }

    Json report = Json{{"meta", meta_block("report")}, {"runs", runs_json}};

    // Pairwise machinery needs task-id joins; orphans are a hard error.
    auto index_by_task = [](const std::vector<stats::TaskOutcome>& run) {
        std::map<std::string, const stats::TaskOutcome*> idx;
        for (const auto& o : run) idx[o.task] = &o;
        return idx;
    };

    if (runs.size() >= 2) {
        Json orphans = Json::array();
        const auto base_idx = index_by_task(runs[0]);
        for (size_t r = 1; r < runs.size(); ++r) {
            const auto idx = index_by_task(runs[r]);
            for (const auto& [task, _] : base_idx)
                if (!idx.count(task))
                    orphans.push_back(Json{{"task", task}, {"missing_from", options.outcome_files[r]}});
            for (const auto& [task, _] : idx)
                if (!base_idx.count(task))
                    orphans.push_back(Json{{"task", task}, {"missing_from", options.outcome_files[0]}});
        }
        if (!orphans.empty()) {
            CommandOutcome out;
            out.exit_code = kExitUsage;
            out.report = Json{{"meta", meta_block("report")},
                              {"error", "task ids do not pair across outcome files"},
                              {"orphans", orphans}};
            std::cerr << "error: task ids do not pair across outcome files ("
                      << orphans.size() << " orphans)\n";
            return out;
        }
    }

    if (runs.size() == 2) {
        const auto before = stats::summarize(runs[0]);
        const auto after = stats::summarize(runs[1]);
        Json deltas = {{"sr_pp", stats::delta_sr_pp(before, after)},
                       {"ae", after.ae - before.ae},
                       {"as", after.as - before.as}};

        // Median deltas under both groupings; the report labels them rather
        // than picking one aggregation.
        for (const auto& [label, key] :
             std::vector<std::pair<std::string, std::function<std::string(const stats::TaskOutcome&)>>>{
                 {"over_models", [](const auto& o) { return o.model; }},
                 {"over_domains", [](const auto& o) { return o.domain; }}}) {
            std::map<std::string, std::vector<stats::TaskOutcome>> g0, g1;
            for (const auto& o : runs[0]) g0[key(o)].push_back(o);
            for (const auto& o : runs[1]) g1[key(o)].push_back(o);
            std::vector<double> sr_deltas, ae_deltas, as_deltas;
            for (const auto& [k, members] : g0) {
                if (!g1.count(k)) continue;
                const auto s0 = stats::summarize(members);
                const auto s1 = stats::summarize(g1[k]);
                sr_deltas.push_back(s1.sr - s0.sr);
                ae_deltas.push_back(s1.ae - s0.ae);
                as_deltas.push_back(s1.as - s0.as);
            }
            if (!sr_deltas.empty())
                deltas["median_" + label] = Json{{"sr_pp", stats::median(sr_deltas)},
                                                 {"ae", stats::median(ae_deltas)},
                                                 {"as", stats::median(as_deltas)}};
        }
        report["deltas"] = deltas;

        const auto base_idx = index_by_task(runs[0]);
        const auto aug_idx = index_by_task(runs[1]);
        long b = 0, c = 0;
        std::vector<double> ae_before, ae_after, steps_before, steps_after;
        for (const auto& [task, o0] : base_idx) {
            const auto* o1 = aug_idx.at(task);
            if (o0->success() && !o1->success()) ++b;
            if (!o0->success() && o1->success()) ++c;
            ae_before.push_back(o0->pass_fraction());
            ae_after.push_back(o1->pass_fraction());
            steps_before.push_back(o0->steps);
            steps_after.push_back(o1->steps);
        }
        const auto mcn = stats::mcnemar(b, c, options.continuity);
        const auto wil_ae = stats::wilcoxon_signed_rank(ae_before, ae_after);
        const auto wil_as = stats::wilcoxon_signed_rank(steps_before, steps_after);
        report["tests"] = Json{
            {"mcnemar_sr",
             Json{{"b", b}, {"c", c}, {"chi2", mcn.chi2}, {"p", mcn.p},
                  {"degenerate", mcn.degenerate}, {"continuity", options.continuity}}},
            {"wilcoxon_ae", Json{{"w", wil_ae.w}, {"p", wil_ae.p}, {"defined", wil_ae.defined},
                                 {"n_nonzero", wil_ae.n_nonzero}, {"exact", wil_ae.exact}}},
            {"wilcoxon_as", Json{{"w", wil_as.w}, {"p", wil_as.p}, {"defined", wil_as.defined},
                                 {"n_nonzero", wil_as.n_nonzero}, {"exact", wil_as.exact}}}};
    }

    if (runs.size() >= 3) {
        std::vector<std::map<std::string, const stats::TaskOutcome*>> indexes;
        for (const auto& run : runs) indexes.push_back(index_by_task(run));
        std::vector<std::vector<int>> matrix;
        for (const auto& [task, o0] : indexes[0]) {
            std::vector<int> row;
            row.push_back(o0->success() ? 1 : 0);
            for (size_t r = 1; r < indexes.size(); ++r)
                row.push_back(indexes[r].at(task)->success() ? 1 : 0);
            matrix.push_back(std::move(row));
        }
        const auto q = stats::cochran_q(matrix);
        report["tests_cochran_q"] = Json{{"q", q.q}, {"p", q.p}, {"df", q.df},
                                         {"degenerate", q.degenerate},
                                         {"n_tasks", static_cast<int>(matrix.size())}};
    }

    // Pareto points: one per (run, model, domain) group.
    struct PointMeta {
        std::string model, domain, run;
    };
    std::vector<stats::ParetoPoint> points;
    std::vector<PointMeta> metas;
    for (size_t r = 0; r < runs.size(); ++r) {
        std::map<std::pair<std::string, std::string>, std::vector<stats::TaskOutcome>> groups;
        for (const auto& o : runs[r]) groups[{o.model, o.domain}].push_back(o);
        for (const auto& [key, members] : groups) {
            const auto s = stats::summarize(members);
            points.push_back({s.ae, s.as});
            metas.push_back({key.first, key.second, options.outcome_files[r]});
        }
    }
    const auto frontier = stats::pareto_frontier(points);
    const std::set<size_t> on_frontier(frontier.begin(), frontier.end());
    Json pareto_json = Json::array();
    std::string csv = "ae,as,model,domain,frontier\n";
    for (size_t i = 0; i < points.size(); ++i) {
        const bool flag = on_frontier.count(i) > 0;
        pareto_json.push_back(Json{{"ae", points[i].ae},
                                   {"as", points[i].as},
                                   {"model", metas[i].model},
                                   {"domain", metas[i].domain},
                                   {"run", metas[i].run},
                                   {"frontier", flag}});
        csv += std::to_string(points[i].ae) + "," + std::to_string(points[i].as) + "," +
               csv_field(metas[i].model) + "," + csv_field(metas[i].domain) + "," +
               (flag ? "true" : "false") + "\n";
    }
    report["pareto"] = Json{{"points", pareto_json}};
    if (!options.pareto_csv_path.empty()) {
        std::ofstream out(options.pareto_csv_path, std::ios::trunc);
        if (!out) return usage_error("report", "cannot write " + options.pareto_csv_path);
        out << csv;
        report["pareto"]["csv_path"] = options.pareto_csv_path;
    } else {
        report["pareto"]["csv"] = csv;
    }

    CommandOutcome out;
    out.report = std::move(report);
    out.exit_code = kExitOk;
    return out;
}

// ---------------------------------------------------------------------------
// serve
// ---------------------------------------------------------------------------

namespace {
std::atomic<bool> g_stop_requested{false};
void handle_stop(int) { g_stop_requested = true; }
} // namespace

int cmd_serve(router::RouterConfig config) {
    const auto listen_kind = config.listen_kind;
    const std::string listen_host = config.listen_host;
    router::Router router(std::move(config));
    router.set_log([](const std::string& line) { std::cerr << "[router] " << line << "\n"; });
    auto started = router.start();
    if (!started) {
        std::cerr << "error: " << started.error().to_string() << "\n";
        return kExitUsage;
    }

    std::signal(SIGINT, handle_stop);
    std::signal(SIGTERM, handle_stop);

    // stdio serves the one attached client until EOF; http blocks on a flag.
    if (listen_kind == router::RouterConfig::ListenKind::Stdio) {
        auto served = router.serve_stdio(std::cin, std::cout);
        if (!served) {
            std::cerr << "error: " << served.error().to_string() << "\n";
            return kExitPartial;
        }
        return kExitOk;
    }

    auto port = router.serve_http();
    if (!port) {
        std::cerr << "error: " << port.error().to_string() << "\n";
        return kExitUsage;
    }
    std::cerr << "[router] listening on " << listen_host << ":" << port.value() << "\n";
    while (!g_stop_requested) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    router.stop();
    return kExitOk;
}

} // namespace tooldesc::cli
