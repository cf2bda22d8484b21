#include "tooldesc/augment/augmented.hpp"

#include "tooldesc/text.hpp"

namespace tooldesc::augment {

const char* desc_component_name(DescComponent c) {
    switch (c) {
    case DescComponent::Purpose: return "Purpose";
    case DescComponent::Guidelines: return "Guidelines";
    case DescComponent::Limitations: return "Limitations";
    case DescComponent::ParameterExplanation: return "ParameterExplanation";
    case DescComponent::Examples: return "Examples";
    }
    return "";
}

const char* desc_component_header(DescComponent c) {
    switch (c) {
    case DescComponent::Purpose: return "Purpose:";
    case DescComponent::Guidelines: return "Guidelines:";
    case DescComponent::Limitations: return "Limitations:";
    case DescComponent::ParameterExplanation: return "Parameters:";
    case DescComponent::Examples: return "Examples:";
    }
    return "";
}

const char* desc_component_code(DescComponent c) {
    switch (c) {
    case DescComponent::Purpose: return "P";
    case DescComponent::Guidelines: return "G";
    case DescComponent::Limitations: return "L";
    case DescComponent::ParameterExplanation: return "PEx";
    case DescComponent::Examples: return "E";
    }
    return "";
}

Result<DescComponent> parse_desc_component(const std::string& token) {
    std::string t = text::to_lower(text::trim(token));
    std::string squashed;
    for (char c : t)
        if (c != '_' && c != ' ' && c != '-') squashed += c;
    if (squashed == "p" || squashed == "purpose") return DescComponent::Purpose;
    if (squashed == "g" || squashed == "guidelines" || squashed == "guideline")
        return DescComponent::Guidelines;
    if (squashed == "l" || squashed == "limitations" || squashed == "limitation")
        return DescComponent::Limitations;
    if (squashed == "pex" || squashed == "parameterexplanation" || squashed == "parameters")
        return DescComponent::ParameterExplanation;
    if (squashed == "e" || squashed == "examples" || squashed == "example")
        return DescComponent::Examples;
    return make_error(ErrorCode::Config, "unknown description component '" + token + "'");
}

const std::string& AugmentedDescription::field(DescComponent c) const {
    switch (c) {
    case DescComponent::Purpose: return purpose;
    case DescComponent::Guidelines: return guidelines;
    case DescComponent::Limitations: return limitations;
    case DescComponent::ParameterExplanation: return parameter_explanation;
    case DescComponent::Examples: return examples;
    }
    return purpose;
}

std::string& AugmentedDescription::field(DescComponent c) {
    return const_cast<std::string&>(static_cast<const AugmentedDescription*>(this)->field(c));
}

Json AugmentedDescription::to_json() const {
    return Json{{"purpose", purpose},
                {"guidelines", guidelines},
                {"limitations", limitations},
                {"parameter_explanation", parameter_explanation},
                {"examples", examples},
                {"examples_ungrounded", examples_ungrounded},
                {"provenance", Json{{"source_tool", provenance.source_tool},
                                    {"stage", provenance.stage},
                                    {"model_id", provenance.model_id},
                                    {"timestamp", provenance.timestamp}}}};
}

Result<AugmentedDescription> AugmentedDescription::from_json(const Json& j) {
    if (!j.is_object()) return make_error(ErrorCode::Parse, "augmented description must be an object");
    AugmentedDescription a;
    a.purpose = j.value("purpose", "");
    a.guidelines = j.value("guidelines", "");
    a.limitations = j.value("limitations", "");
    a.parameter_explanation = j.value("parameter_explanation", "");
    a.examples = j.value("examples", "");
    a.examples_ungrounded = j.value("examples_ungrounded", false);
    if (a.purpose.empty())
        return make_error(ErrorCode::Validation, "augmented description has an empty purpose");
    if (j.contains("provenance") && j["provenance"].is_object()) {
        const Json& p = j["provenance"];
        a.provenance.source_tool = p.value("source_tool", "");
        a.provenance.stage = p.value("stage", "");
        a.provenance.model_id = p.value("model_id", "");
        a.provenance.timestamp = p.value("timestamp", "");
    }
    return a;
}

std::string render_selection(const AugmentedDescription& a,
                             std::span<const DescComponent> components) {
    std::string out;
    for (DescComponent c : components) {
        if (!out.empty()) out += "\n\n";
        out += desc_component_header(c);
        out += "\n";
        out += a.field(c);
    }
    return out;
}

std::string render_augmented(const AugmentedDescription& a) {
    return render_selection(a, kAllDescComponents);
}

} // namespace tooldesc::augment
