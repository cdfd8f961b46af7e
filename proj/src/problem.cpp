#include "torusfix/problem.hpp"

#include "torusfix/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace torusfix {

using nlohmann::json;

Integer json_integer(const json& j, const std::string& field) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<unsigned long long>()))
                                      : Integer(std::to_string(j.get<long long>()));
    }
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        bool ok = start < s.size();
        for (std::size_t i = start; ok && i < s.size(); ++i) ok = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
        if (!ok) throw ParseError("field '" + field + "': '" + s + "' is not an integer");
        if (s[0] == '+') s.erase(0, 1);
        return Integer(s);
    }
    throw ParseError("field '" + field + "': expected an integer, got " + j.dump());
}

json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return json(static_cast<long long>(v.get_si()));
    return json(v.get_str());
}

IntMatrix2 json_matrix(const json& j, const std::string& field, char prefix) {
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
            throw ParseError("field '" + field + "': expected [[" + prefix + "1, " + prefix + "3], [" + prefix +
                             "2, " + prefix + "4]]");
        }
        return {json_integer(j[0][0], field + "[0][0]"), json_integer(j[0][1], field + "[0][1]"),
                json_integer(j[1][0], field + "[1][0]"), json_integer(j[1][1], field + "[1][1]")};
    }
    if (j.is_object()) {
        auto entry = [&](int i) {
            const std::string key = std::string(1, prefix) + std::to_string(i);
            if (!j.contains(key)) throw ParseError("field '" + field + "': missing '" + key + "'");
            return json_integer(j.at(key), field + "." + key);
        };
        return {entry(1), entry(3), entry(2), entry(4)};
    }
    throw ParseError("field '" + field + "': expected a 2x2 matrix");
}

json matrix_json(const IntMatrix2& m) {
    return json::array({json::array({integer_json(m.m11), integer_json(m.m12)}),
                        json::array({integer_json(m.m21), integer_json(m.m22)})});
}

namespace {

long json_long(const json& j, const std::string& field) {
    const Integer v = json_integer(j, field);
    if (!v.fits_slong_p()) throw ParseError("field '" + field + "': " + v.get_str() + " is out of range");
    return v.get_si();
}

ExactScalar json_scalar(const json& j, const std::string& field) {
    if (j.is_number_integer()) return ExactScalar(json_integer(j, field));
    if (!j.is_string()) throw ParseError("field '" + field + "': expected an exact-scalar string like \"1/2+sqrt2\"");
    try {
        return ExactScalar::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError("field '" + field + "': " + e.what());
    }
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("problem must be an object");
    static const char* const kKnown[] = {"A", "B", "c1", "c2", "n", "eps", "delta", "search_bound"};
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || item.key() == k;
        if (!known) throw ParseError("unknown field '" + item.key() + "'");
    }
    for (const char* required : {"A", "B"}) {
        if (!j.contains(required)) throw ParseError("missing field '" + std::string(required) + "'");
    }
    ProblemSpec spec;
    spec.A = json_matrix(j.at("A"), "A", 'a');
    spec.B = json_matrix(j.at("B"), "B", 'b');
    if (j.contains("c1")) spec.c1 = json_integer(j.at("c1"), "c1");
    if (j.contains("c2")) spec.c2 = json_integer(j.at("c2"), "c2");
    if (j.contains("n")) spec.n = json_long(j.at("n"), "n");
    if (spec.n < 1) throw ParseError("field 'n': must be a positive integer");
    if (j.contains("eps")) spec.eps = json_scalar(j.at("eps"), "eps");
    if (j.contains("delta")) spec.delta = json_scalar(j.at("delta"), "delta");
    if (j.contains("search_bound")) {
        spec.search_bound = json_long(j.at("search_bound"), "search_bound");
        if (*spec.search_bound < 0) throw ParseError("field 'search_bound': must be nonnegative");
    }
    return spec;
}

json problem_to_json(const ProblemSpec& spec) {
    json j;
    j["A"] = matrix_json(spec.A);
    j["B"] = matrix_json(spec.B);
    j["c1"] = integer_json(spec.c1);
    j["c2"] = integer_json(spec.c2);
    j["n"] = spec.n;
    if (spec.eps) j["eps"] = spec.eps->to_string();
    if (spec.delta) j["delta"] = spec.delta->to_string();
    if (spec.search_bound) j["search_bound"] = *spec.search_bound;
    return j;
}

ProblemSpec parse_problem_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return problem_from_json(j);
}

namespace {

class TomlValueParser {
public:
    TomlValueParser(std::string_view text, int line) : text_(text), line_(line) {}

    json parse_all() {
        json v = value();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing text '" + std::string(text_.substr(pos_)) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    json value() {
        skip_ws();
        if (pos_ >= text_.size()) fail("missing value");
        const char ch = text_[pos_];
        if (ch == '[') return array();
        if (ch == '{') return table();
        if (ch == '"' || ch == '\'') return string();
        return integer();
    }

    json array() {
        ++pos_;
        json out = json::array();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return out;
        }
        while (true) {
            out.push_back(value());
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated array");
            if (text_[pos_] == ',') {
                ++pos_;
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ']') {
                    ++pos_;
                    return out;
                }
                continue;
            }
            if (text_[pos_] == ']') {
                ++pos_;
                return out;
            }
            fail("expected ',' or ']' in array");
        }
    }

    json table() {
        ++pos_;
        json out = json::object();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '}') {
            ++pos_;
            return out;
        }
        while (true) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string key(text_.substr(start, pos_ - start));
            if (key.empty()) fail("expected a key in inline table");
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '=') fail("expected '=' after '" + key + "'");
            ++pos_;
            out[key] = value();
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated inline table");
            if (text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (text_[pos_] == '}') {
                ++pos_;
                return out;
            }
            fail("expected ',' or '}' in inline table");
        }
    }

    json string() {
        const char quote = text_[pos_++];
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != quote) {
            if (quote == '"' && text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
            out.push_back(text_[pos_++]);
        }
        if (pos_ >= text_.size()) fail("unterminated string");
        ++pos_;
        return out;
    }

    json integer() {
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        std::string digits;
        for (char ch : text_.substr(start, pos_ - start)) {
            if (ch != '_' && ch != '+') digits.push_back(ch);
        }
        if (digits.empty() || digits == "-") fail("expected a value at '" + std::string(text_.substr(start)) + "'");
        const Integer v(digits);
        if (v.fits_slong_p()) return json(static_cast<long long>(v.get_si()));
        return json(v.get_str());
    }

    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quote) {
            if (ch == quote) quote = 0;
        } else if (ch == '"' || ch == '\'') {
            quote = ch;
        } else if (ch == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int bracket_balance(const std::string& s) {
    int depth = 0;
    char quote = 0;
    for (char ch : s) {
        if (quote) {
            if (ch == quote) quote = 0;
        } else if (ch == '"' || ch == '\'') {
            quote = ch;
        } else if (ch == '[' || ch == '{') {
            ++depth;
        } else if (ch == ']' || ch == '}') {
            --depth;
        }
    }
    return depth;
}

}  // namespace

json toml_to_json(std::string_view text) {
    json root = json::object();
    json* section = &root;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[' && line.find('=') == std::string::npos) {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError("line " + std::to_string(line_no) + ": malformed section header");
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (root.contains(name)) throw ParseError("line " + std::to_string(line_no) + ": duplicate '" + name + "'");
            root[name] = json::object();
            section = &root[name];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
        std::string value = trim(line.substr(eq + 1));
        const int start_line = line_no;
        // Arrays and inline tables may span lines.
        while (bracket_balance(value) > 0 && std::getline(in, raw)) {
            ++line_no;
            value += " " + trim(strip_comment(raw));
        }
        if (bracket_balance(value) != 0) throw ParseError("line " + std::to_string(start_line) + ": unbalanced brackets");
        if (section->contains(key)) throw ParseError("line " + std::to_string(start_line) + ": duplicate key '" + key + "'");
        (*section)[key] = TomlValueParser(value, start_line).parse_all();
    }
    return root;
}

ProblemSpec parse_problem_toml(std::string_view text) { return problem_from_json(toml_to_json(text)); }

ProblemSpec load_problem(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    const std::string text = buf.str();
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    try {
        if (ends_with(".json")) return parse_problem_json(text);
        if (ends_with(".toml")) return parse_problem_toml(text);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') return parse_problem_json(text);
        return parse_problem_toml(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace torusfix
