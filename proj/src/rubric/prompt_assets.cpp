#include "tooldesc/rubric/prompt_assets.hpp"

namespace tooldesc::rubric::assets {

const char* const kScoringPromptTemplate = R"PROMPT(You are grading a tool description. Score each component from 1 to 5, then provide an overall label, a one sentence justification, and improvement recommendations.

Scoring Rubric (1-5 scale for each component)

{rubric_text}

Input

```json
{tool_payload}
```

Output Format (JSON)

{
  "scores": {
    "purpose": 1-5,
    "usage_guideline": 1-5,
    "limitation": 1-5,
    "parameter_explanation": 1-5,
    "examples_balance": 1-5,
    "length_completeness": 1-5
  },
  "label": "Good" | "Bad",
  "reason": "One sentence justification",
  "improvement_needed": [
    "comma separated list of specific weak areas with scores <= 3"
  ]
}

Labeling rules:

A description is labeled Bad if:
- Any of the six rubric dimensions score below 3, or
- Examples replace the description instead of supporting it.

A description is labeled Good only if:
- All six dimensions score 3 or higher, and
- All requirements in components 1 through 6 are satisfied.

Reply with the JSON object only.
)PROMPT";

const char* const kInitAugmentPromptTemplate = R"PROMPT(You are rewriting the description of one tool exposed by an MCP server.

Improve the description so it clearly covers the tool's purpose, its usage guidelines, its limitations, and an explanation of every input parameter, with enough well-formed sentences to be complete. Preserve the original meaning and intent of the tool. Mention every parameter declared in the input schema by its exact name, and never introduce a parameter name that the schema does not declare.

Do not invent usage examples at this stage; example content is added later from real execution traces.

Quality rubric for reference:

{rubric_text}

Tool payload (JSON)

```json
{tool_payload}
```

Reply with a single JSON object and no surrounding prose:

{
  "purpose": "...",
  "guidelines": "...",
  "limitations": "...",
  "parameter_explanation": "..."
}
)PROMPT";

const char* const kConsolidatePromptTemplate = R"PROMPT(You are finalizing the structured description of one MCP tool.

Merge the draft description below with the evidence in the recorded execution traces into five fields: purpose, guidelines, limitations, parameter_explanation, and examples. The examples field must only reference argument values and outcomes that appear in the traces. If the trace list is empty, state explicitly that no trace-grounded examples are available. Keep every parameter name exactly as the draft spells it.

Draft description (JSON)

```json
{draft}
```

Execution traces (JSON)

```json
{traces}
```

Reply with a single JSON object and no surrounding prose:

{
  "purpose": "...",
  "guidelines": "...",
  "limitations": "...",
  "parameter_explanation": "...",
  "examples": "..."
}
)PROMPT";

} // namespace tooldesc::rubric::assets
