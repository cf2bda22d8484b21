#include "tooldesc/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace tooldesc::text {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_bullet_line(std::string_view line) {
    size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) return false;
    char c = line[i];
    if (c == '-' || c == '*' || c == '+') return i + 1 < line.size() && line[i + 1] == ' ';
    if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
        return i < line.size() && (line[i] == '.' || line[i] == ')');
    }
    return false;
}

} // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string replace_all(std::string s, std::string_view needle, std::string_view replacement) {
    if (needle.empty()) return s;
    size_t pos = 0;
    while ((pos = s.find(needle, pos)) != std::string::npos) {
        s.replace(pos, needle.size(), replacement);
        pos += replacement.size();
    }
    return s;
}

bool contains_word(std::string_view haystack, std::string_view word, bool prefix) {
    if (word.empty()) return false;
    const std::string h = to_lower(haystack);
    const std::string w = to_lower(word);
    size_t pos = 0;
    while ((pos = h.find(w, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || !is_ident_char(h[pos - 1]);
        const size_t end = pos + w.size();
        const bool right_ok = prefix || end >= h.size() || !is_ident_char(h[end]);
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

bool icontains(std::string_view haystack, std::string_view needle) {
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

int sentence_count(std::string_view s) {
    int terminated = 0;
    bool in_run = false; // inside a run of terminal punctuation
    bool has_content = false;
    for (char c : s) {
        if (c == '.' || c == '!' || c == '?') {
            if (!in_run && has_content) {
                ++terminated;
                has_content = false;
            }
            in_run = true;
        } else {
            in_run = false;
            if (!std::isspace(static_cast<unsigned char>(c))) has_content = true;
        }
    }
    int bullets = 0;
    size_t start = 0;
    while (start <= s.size()) {
        size_t nl = s.find('\n', start);
        std::string_view line = s.substr(start, nl == std::string_view::npos ? s.size() - start : nl - start);
        if (is_bullet_line(line)) {
            std::string t = trim(line);
            if (!t.empty() && t.back() != '.' && t.back() != '!' && t.back() != '?') ++bullets;
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return terminated + bullets;
}

int word_count(std::string_view s) {
    int n = 0;
    bool in_word = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++n;
        }
    }
    return n;
}

std::string interpolate_env(std::string_view s) {
    std::string out;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '$' && i + 1 < s.size() && s[i + 1] == '{') {
            size_t close = s.find('}', i + 2);
            if (close != std::string_view::npos) {
                std::string name(s.substr(i + 2, close - i - 2));
                const char* v = std::getenv(name.c_str());
                if (v) out += v;
                i = close + 1;
                continue;
            }
        }
        out += s[i++];
    }
    return out;
}

std::string sanitize_path_component(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        const bool safe = std::isalnum(c) || c == '-' || c == '_' || c == '.';
        if (safe && !(c == '.' && out.empty())) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    if (out.empty()) out = "_";
    return out;
}

} // namespace tooldesc::text
