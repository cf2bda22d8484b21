#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tooldesc/augment/augmented.hpp"
#include "tooldesc/json.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::store {

using augment::AugmentedDescription;
using augment::DescComponent;

/// Which description variant a consumer wants: the original text, or an
/// ordered subset of augmented components.
struct ComponentSelection {
    enum class Mode { Original, Augmented } mode = Mode::Augmented;
    std::vector<DescComponent> components; // ordered, duplicate-free, non-empty when augmented

    /// mode_str: "original" | "augmented"; components_csv e.g. "purpose,guidelines"
    /// or "P,G,L,PEx,E". Unknown names fail before any serving begins.
    static Result<ComponentSelection> parse(const std::string& mode_str,
                                            const std::string& components_csv);
    static ComponentSelection original();
    static ComponentSelection all_augmented();

    std::string label() const; // "original" or "P+G+..."
};

struct StoreRecord {
    std::string server;
    std::string tool;
    std::string original;
    Json input_schema = nullptr; // kept alongside so re-augmentation can skip reflection
    std::optional<AugmentedDescription> augmented;
    int revision = 0; // last revision the writer observed; 0 = create

    Json to_json() const;
    static Result<StoreRecord> from_json(const Json& j);
};

/// Versioned persistence for descriptions, keyed (server label, tool name).
class DescriptionStore {
public:
    virtual ~DescriptionStore() = default;

    /// Atomic write. The record's revision must match the stored one (0 for a
    /// new key); mismatches fail with a retry-able Conflict. Returns the new
    /// revision.
    virtual Result<int> put(const StoreRecord& record) = 0;
    virtual Result<StoreRecord> get(const std::string& server, const std::string& tool) const = 0;
    virtual Result<std::vector<StoreRecord>> list() const = 0;
};

/// Default backend: one JSON file per tool under <root>/<server>/, replaced
/// by atomic rename; every revision appended to a .audit.jsonl next to it.
class FileStore final : public DescriptionStore {
public:
    static Result<FileStore> open(const std::string& root);

    Result<int> put(const StoreRecord& record) override;
    Result<StoreRecord> get(const std::string& server, const std::string& tool) const override;
    Result<std::vector<StoreRecord>> list() const override;

    /// Past revisions of one key, oldest first.
    Result<std::vector<StoreRecord>> audit_log(const std::string& server,
                                               const std::string& tool) const;

    /// Verify the root is writable before doing any expensive work.
    Result<void> probe_writable() const;

    const std::filesystem::path& root() const { return root_; }

private:
    explicit FileStore(std::filesystem::path root) : root_(std::move(root)) {}
    std::filesystem::path record_path(const std::string& server, const std::string& tool) const;

    std::filesystem::path root_;
};

/// Assemble the text a consumer should see for one tool under a selection.
Result<std::string> assemble(const DescriptionStore& store, const std::string& server,
                             const std::string& tool, const ComponentSelection& selection);

/// Same, against an already-loaded record.
Result<std::string> assemble_record(const StoreRecord& record, const ComponentSelection& selection);

/// Read-only snapshot taken by the router at startup.
class Snapshot {
public:
    static Result<Snapshot> load(const DescriptionStore& store);
    const StoreRecord* find(const std::string& server, const std::string& tool) const;
    size_t size() const { return records_.size(); }

private:
    std::map<std::pair<std::string, std::string>, StoreRecord> records_;
};

} // namespace tooldesc::store
