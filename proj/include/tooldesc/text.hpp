#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tooldesc::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string replace_all(std::string s, std::string_view needle, std::string_view replacement);

/// True when `word` occurs in `haystack` delimited by non-identifier characters.
/// With `prefix` set, the match may continue with identifier characters on the
/// right ("limit" matches "limitations").
bool contains_word(std::string_view haystack, std::string_view word, bool prefix = false);

/// Case-insensitive substring search.
bool icontains(std::string_view haystack, std::string_view needle);

/// Number of sentence-like units: spans terminated by '.', '!' or '?' plus
/// bullet/numbered list lines without terminal punctuation.
int sentence_count(std::string_view s);

/// Word count of the longest-free reading: whitespace-separated tokens.
int word_count(std::string_view s);

/// Expand ${NAME} occurrences from the process environment; unknown names
/// expand to the empty string.
std::string interpolate_env(std::string_view s);

/// Percent-encode characters that are unsafe in a single path component.
std::string sanitize_path_component(std::string_view s);

} // namespace tooldesc::text
