#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tooldesc/json.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::augment {

/// The five content components of an augmented description. Length and
/// completeness is a meta-dimension of the whole text and has no field.
enum class DescComponent {
    Purpose = 0,
    Guidelines,
    Limitations,
    ParameterExplanation,
    Examples,
};

inline constexpr std::array<DescComponent, 5> kAllDescComponents = {
    DescComponent::Purpose, DescComponent::Guidelines, DescComponent::Limitations,
    DescComponent::ParameterExplanation, DescComponent::Examples};

const char* desc_component_name(DescComponent c);   // "Purpose", ...
const char* desc_component_header(DescComponent c); // "Purpose:", ..., "Parameters:"
const char* desc_component_code(DescComponent c);   // "P", "G", "L", "PEx", "E"

/// Accepts full names (case-insensitive, '_' or ' ' separated) and the short
/// codes P/G/L/PEx/E.
Result<DescComponent> parse_desc_component(const std::string& token);

struct Provenance {
    std::string source_tool; // "<server>/<tool>"
    std::string stage;       // last stage that produced this record
    std::string model_id;
    std::string timestamp; // ISO 8601 UTC
};

/// Five-field structured description produced by the augmentation pipeline.
struct AugmentedDescription {
    std::string purpose;
    std::string guidelines;
    std::string limitations;
    std::string parameter_explanation;
    std::string examples;
    bool examples_ungrounded = false; // no traces existed when examples were written
    Provenance provenance;

    const std::string& field(DescComponent c) const;
    std::string& field(DescComponent c);

    Json to_json() const;
    static Result<AugmentedDescription> from_json(const Json& j);
};

/// Render the selected components, each under its fixed header, in the given
/// order. Sections are separated by blank lines.
std::string render_selection(const AugmentedDescription& a, std::span<const DescComponent> components);

/// All five components in canonical order.
std::string render_augmented(const AugmentedDescription& a);

} // namespace tooldesc::augment
