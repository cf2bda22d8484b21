#include "tooldesc/store/store.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include "tooldesc/text.hpp"

namespace tooldesc::store {

namespace fs = std::filesystem;

Result<ComponentSelection> ComponentSelection::parse(const std::string& mode_str,
                                                     const std::string& components_csv) {
    ComponentSelection s;
    const std::string mode = text::to_lower(text::trim(mode_str));
    if (mode == "original") {
        s.mode = Mode::Original;
        return s;
    }
    if (mode != "augmented")
        return make_error(ErrorCode::Config, "descriptions mode must be 'original' or 'augmented'");
    s.mode = Mode::Augmented;

    const std::string csv = text::trim(components_csv);
    if (csv.empty()) {
        s.components.assign(augment::kAllDescComponents.begin(), augment::kAllDescComponents.end());
        return s;
    }
    std::set<DescComponent> seen;
    for (const auto& token : text::split(csv, ',')) {
        if (text::trim(token).empty())
            return make_error(ErrorCode::Config, "empty component name in selection");
        auto c = augment::parse_desc_component(token);
        if (!c) return c.error();
        if (!seen.insert(c.value()).second)
            return make_error(ErrorCode::Config,
                              "duplicate component '" + text::trim(token) + "' in selection");
        s.components.push_back(c.value());
    }
    return s;
}

ComponentSelection ComponentSelection::original() {
    ComponentSelection s;
    s.mode = Mode::Original;
    return s;
}

ComponentSelection ComponentSelection::all_augmented() {
    ComponentSelection s;
    s.mode = Mode::Augmented;
    s.components.assign(augment::kAllDescComponents.begin(), augment::kAllDescComponents.end());
    return s;
}

std::string ComponentSelection::label() const {
    if (mode == Mode::Original) return "original";
    std::vector<std::string> codes;
    for (auto c : components) codes.emplace_back(augment::desc_component_code(c));
    return text::join(codes, "+");
}

Json StoreRecord::to_json() const {
    Json j = {{"server", server},
              {"tool", tool},
              {"original", original},
              {"input_schema", input_schema},
              {"revision", revision}};
    j["augmented"] = augmented ? augmented->to_json() : Json(nullptr);
    return j;
}

Result<StoreRecord> StoreRecord::from_json(const Json& j) {
    if (!j.is_object()) return make_error(ErrorCode::Parse, "store record must be a JSON object");
    StoreRecord r;
    r.server = j.value("server", "");
    r.tool = j.value("tool", "");
    r.original = j.value("original", "");
    if (j.contains("input_schema")) r.input_schema = j["input_schema"];
    r.revision = j.value("revision", 0);
    if (j.contains("augmented") && !j["augmented"].is_null()) {
        auto a = AugmentedDescription::from_json(j["augmented"]);
        if (!a) return a.error();
        r.augmented = std::move(a).value();
    }
    if (r.server.empty() || r.tool.empty())
        return make_error(ErrorCode::Validation, "store record requires server and tool keys");
    return r;
}

Result<FileStore> FileStore::open(const std::string& root) {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec)
        return make_error(ErrorCode::Storage,
                          "cannot create store root '" + root + "': " + ec.message());
    return FileStore(fs::path(root));
}

fs::path FileStore::record_path(const std::string& server, const std::string& tool) const {
    return root_ / text::sanitize_path_component(server) /
           (text::sanitize_path_component(tool) + ".json");
}

Result<void> FileStore::probe_writable() const {
    const fs::path probe = root_ / ".probe";
    std::ofstream out(probe);
    if (!out) return make_error(ErrorCode::Storage, "store root is not writable: " + root_.string());
    out << "ok";
    out.close();
    std::error_code ec;
    fs::remove(probe, ec);
    return {};
}

Result<int> FileStore::put(const StoreRecord& record) {
    if (record.server.empty() || record.tool.empty())
        return make_error(ErrorCode::Validation, "store record requires server and tool keys");

    const fs::path path = record_path(record.server, record.tool);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec)
        return make_error(ErrorCode::Storage,
                          "cannot create " + path.parent_path().string() + ": " + ec.message());

    int current = 0;
    if (fs::exists(path)) {
        auto existing = get(record.server, record.tool);
        if (!existing) return existing.error();
        current = existing.value().revision;
    }
    if (record.revision != current)
        return make_error(ErrorCode::Conflict,
                          "concurrent write on " + record.server + "/" + record.tool +
                              ": expected revision " + std::to_string(record.revision) +
                              ", store has " + std::to_string(current));

    StoreRecord to_write = record;
    to_write.revision = current + 1;

    const fs::path tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return make_error(ErrorCode::Storage, "cannot write " + tmp.string());
        out << to_write.to_json().dump(2) << "\n";
        if (!out) return make_error(ErrorCode::Storage, "short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) return make_error(ErrorCode::Storage, "rename failed: " + ec.message());

    const fs::path audit = path.parent_path() / (path.stem().string() + ".audit.jsonl");
    std::ofstream log(audit, std::ios::app);
    if (log) log << to_write.to_json().dump() << "\n";

    return to_write.revision;
}

Result<StoreRecord> FileStore::get(const std::string& server, const std::string& tool) const {
    const fs::path path = record_path(server, tool);
    std::ifstream in(path);
    if (!in)
        return make_error(ErrorCode::Storage,
                          "no store record for " + server + "/" + tool + " under " + root_.string());
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        return make_error(ErrorCode::Parse, "corrupt store record " + path.string() + ": " + e.what());
    }
    return StoreRecord::from_json(j);
}

Result<std::vector<StoreRecord>> FileStore::list() const {
    std::vector<StoreRecord> out;
    if (!fs::exists(root_)) return out;
    for (const auto& server_dir : fs::directory_iterator(root_)) {
        if (!server_dir.is_directory()) continue;
        for (const auto& entry : fs::directory_iterator(server_dir.path())) {
            if (entry.path().extension() != ".json") continue;
            std::ifstream in(entry.path());
            if (!in) continue;
            Json j;
            try {
                in >> j;
            } catch (const Json::parse_error& e) {
                return make_error(ErrorCode::Parse,
                                  "corrupt store record " + entry.path().string() + ": " + e.what());
            }
            auto r = StoreRecord::from_json(j);
            if (!r) return r.error();
            out.push_back(std::move(r).value());
        }
    }
    std::sort(out.begin(), out.end(), [](const StoreRecord& a, const StoreRecord& b) {
        return std::tie(a.server, a.tool) < std::tie(b.server, b.tool);
    });
    return out;
}

Result<std::vector<StoreRecord>> FileStore::audit_log(const std::string& server,
                                                      const std::string& tool) const {
    const fs::path path = record_path(server, tool);
    const fs::path audit = path.parent_path() / (path.stem().string() + ".audit.jsonl");
    std::ifstream in(audit);
    if (!in) return make_error(ErrorCode::Storage, "no audit log for " + server + "/" + tool);
    std::vector<StoreRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            return make_error(ErrorCode::Parse, "corrupt audit line: " + std::string(e.what()));
        }
        auto r = StoreRecord::from_json(j);
        if (!r) return r.error();
        out.push_back(std::move(r).value());
    }
    return out;
}

Result<std::string> assemble_record(const StoreRecord& record, const ComponentSelection& selection) {
    if (selection.mode == ComponentSelection::Mode::Original) return record.original;
    if (selection.components.empty())
        return make_error(ErrorCode::Config, "augmented selection has no components");
    if (!record.augmented)
        return make_error(ErrorCode::Storage, "tool '" + record.tool + "' on server '" +
                                                  record.server + "' has no augmented record");
    return augment::render_selection(*record.augmented, selection.components);
}

Result<std::string> assemble(const DescriptionStore& store, const std::string& server,
                             const std::string& tool, const ComponentSelection& selection) {
    auto record = store.get(server, tool);
    if (!record) return record.error();
    return assemble_record(record.value(), selection);
}

Result<Snapshot> Snapshot::load(const DescriptionStore& store) {
    auto records = store.list();
    if (!records) return records.error();
    Snapshot s;
    for (auto& record : records.value()) {
        auto key = std::make_pair(record.server, record.tool);
        s.records_.emplace(std::move(key), std::move(record));
    }
    return s;
}

const StoreRecord* Snapshot::find(const std::string& server, const std::string& tool) const {
    auto it = records_.find({server, tool});
    return it == records_.end() ? nullptr : &it->second;
}

} // namespace tooldesc::store
