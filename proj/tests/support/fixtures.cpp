#include "fixtures.hpp"

#include <atomic>
#include <random>

using tooldesc::Json;

namespace fixtures {

tooldesc::mcp::ToolDescriptor paypal_invoice() {
    tooldesc::mcp::ToolDescriptor t;
    t.server = "paypal";
    t.name = "create_invoice";
    t.description = "Creates PayPal Invoice Link.";
    t.input_schema = Json{{"type", "object"}, {"properties", Json::object()}};
    return t;
}

tooldesc::mcp::ToolDescriptor sequential_thinking() {
    tooldesc::mcp::ToolDescriptor t;
    t.server = "sequential-thinking";
    t.name = "sequentialthinking";
    t.description =
        "A tool for dynamic and reflective problem solving through thoughts. It supports "
        "flexible, evolving reasoning where each thought can build on, question, or revise "
        "previous insights.\n"
        "\n"
        "When to use:\n"
        "- Complex problems that need stepwise reasoning\n"
        "- Planning or analysis that may require revision\n"
        "- Multi-step solutions or unclear initial scope\n"
        "- Tasks needing context retention\n"
        "- Situations requiring filtering of irrelevant info\n"
        "\n"
        "Key features:\n"
        "- Adjustable total_thoughts\n"
        "- Ability to revise or question past thoughts\n"
        "- Add thoughts even after reaching an apparent end\n"
        "- Support for uncertainty, branching, and backtracking\n"
        "- Hypothesis generation and verification\n"
        "\n"
        "Parameters:\n"
        "- thought (string): The current thinking step\n"
        "- next_thought_needed (boolean): Whether another thought step is needed\n"
        "- thought_number (integer): Current thought number\n"
        "- total_thoughts (integer): Estimated total thoughts needed\n"
        "- is_revision (boolean, optional): Whether this revises previous thinking\n"
        "- revises_thought (integer, optional): Which thought is being reconsidered\n"
        "- branch_from_thought (integer, optional): Branching point thought number\n"
        "- branch_id (string, optional): Branch identifier\n"
        "- needs_more_thoughts (boolean, optional): If more thoughts are needed\n"
        "\n"
        "You should:\n"
        "1. Start with an adjustable estimate of needed thoughts\n"
        "2. Revise previous reasoning when appropriate\n"
        "3. Add thoughts freely, even at the end\n"
        "4. Express uncertainty when relevant\n"
        "5. Mark revisions or branches\n"
        "6. Ignore irrelevant information\n"
        "7. Generate and verify hypotheses\n"
        "8. Iterate until satisfied\n"
        "9. Provide a single correct final answer\n"
        "10. Set next_thought_needed to false only when truly done\n";
    Json properties = Json::object();
    for (const char* p : {"thought", "next_thought_needed", "thought_number", "total_thoughts",
                          "is_revision", "revises_thought", "branch_from_thought", "branch_id",
                          "needs_more_thoughts"})
        properties[p] = Json{{"type", "string"}};
    t.input_schema = Json{{"type", "object"}, {"properties", properties}};
    return t;
}

tooldesc::mcp::Endpoint fixture_endpoint(const std::string& name,
                                         const std::vector<std::string>& extra_args) {
    return tooldesc::mcp::Endpoint::stdio(name, TOOLDESC_FIXTURE_SERVER_BIN, extra_args);
}

std::filesystem::path make_temp_dir(const std::string& prefix) {
    static std::atomic<int> counter{0};
    static std::mt19937_64 rng(std::random_device{}());
    const auto dir = std::filesystem::temp_directory_path() /
                     (prefix + "-" + std::to_string(rng() % 1000000) + "-" +
                      std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string worked_example_jsonl(const std::string& variant) {
    Json t1 = {{"task", "task-01"}, {"domain", "demo"},    {"model", "demo-model"},
               {"evaluators_passed", 3}, {"evaluators_total", 3}, {"steps", 4},
               {"variant", variant}};
    Json t2 = {{"task", "task-02"}, {"domain", "demo"},    {"model", "demo-model"},
               {"evaluators_passed", 2}, {"evaluators_total", 4}, {"steps", 6},
               {"variant", variant}};
    return t1.dump() + "\n" + t2.dump() + "\n";
}

} // namespace fixtures
