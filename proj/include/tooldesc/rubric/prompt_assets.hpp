#pragma once

namespace tooldesc::rubric::assets {

// Prompt templates ship as embedded, versioned constants so every run is
// reproducible offline. `tooldesc prompts` exports them as files.

inline constexpr const char* kScoringPromptVersion = "1";
inline constexpr const char* kInitAugmentPromptVersion = "1";
inline constexpr const char* kConsolidatePromptVersion = "1";

/// Judge prompt. Slots: {rubric_text}, {tool_payload}.
extern const char* const kScoringPromptTemplate;

/// Stage-one augmentation prompt. Slots: {rubric_text}, {tool_payload}.
extern const char* const kInitAugmentPromptTemplate;

/// Stage-three consolidation prompt. Slots: {draft}, {traces}.
extern const char* const kConsolidatePromptTemplate;

} // namespace tooldesc::rubric::assets
