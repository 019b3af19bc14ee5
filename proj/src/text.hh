// text.hh -- small scanner shared by the text-format parsers (internal)

#ifndef HOCA_SRC_TEXT_HH
#define HOCA_SRC_TEXT_HH

#include "hoca/error.hh"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace hoca::text {

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#' ||
           c == '\'' || c == '$' || c == '@';
}

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept(std::string_view word) {
        skip_ws();
        if (s_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_ident_char(s_[pos_]))
            ++pos_;
        if (start == pos_)
            fail("expected identifier");
        return std::string(s_.substr(start, pos_ - start));
    }
    std::uint64_t number() {
        skip_ws();
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
        if (start == pos_)
            fail("expected number");
        return v;
    }
    /// Text up to the parenthesis matching an already consumed '('.
    std::string_view balanced() {
        std::size_t start = pos_;
        int depth = 1;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '(')
                ++depth;
            else if (c == ')' && --depth == 0)
                return s_.substr(start, pos_ - start);
            ++pos_;
        }
        fail("unbalanced parentheses");
    }
    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }
    std::string_view rest() const { return s_.substr(pos_); }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        if (i > start)
            out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

/// Strips a `#` comment. A `#` glued to an identifier (as in generated
/// state names like `t3#push`) is kept.
inline std::string_view strip_comment(std::string_view line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
            return line.substr(0, i);
    }
    return line;
}

/// Splits "key: value" lines; returns false for lines without a key.
inline bool split_key(std::string_view line, std::string_view& key, std::string_view& value) {
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
        return false;
    key = trim(line.substr(0, colon));
    value = trim(line.substr(colon + 1));
    for (char c : key)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
            return false;
    return true;
}

inline std::vector<std::string_view> lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

} // namespace hoca::text

#endif
