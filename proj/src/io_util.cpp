#include "mulchsim/io_util.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>

#include "mulchsim/errors.hpp"

namespace mulchsim::io {

std::string format_double(double v) {
    // Try increasing precision until the text parses back to the same bits.
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    if (t.empty())
        throw ValidationError(context + ": empty numeric field");
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw ValidationError(context + ": not a number: '" + t + "'");
    return v;
}

long parse_long(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    if (t.empty())
        throw ValidationError(context + ": empty integer field");
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw ValidationError(context + ": not an integer: '" + t + "'");
    return v;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : parse_double(it->second, key);
}

long KeyValueFile::get_long(const std::string& key, long fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : parse_long(it->second, key);
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

KeyValueFile parse_key_value(std::istream& in) {
    KeyValueFile kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value', got '" + t + "'", lineno);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ParseError("missing key before '='", lineno);
        if (kv.values.count(key))
            throw ParseError("duplicate key '" + key + "'", lineno);
        kv.values.emplace(key, value);
        kv.order.push_back(key);
    }
    return kv;
}

KeyValueFile parse_key_value_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f)
        throw ValidationError("cannot open config file: " + path.string());
    return parse_key_value(f);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace mulchsim::io
