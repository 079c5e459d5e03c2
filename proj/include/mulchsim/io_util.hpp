#ifndef MULCHSIM_IO_UTIL_HPP
#define MULCHSIM_IO_UTIL_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mulchsim::io {

// Shortest decimal form that round-trips a double exactly ("%.17g" fallback).
std::string format_double(double v);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

// Strict numeric parsing; `context` names the field for error messages.
double parse_double(const std::string& text, const std::string& context);
long parse_long(const std::string& text, const std::string& context);

// Flat "key = value" configuration text. '#' starts a comment, blank lines
// are skipped, duplicate keys are an error. Insertion order is preserved
// separately so files can be echoed back deterministically.
struct KeyValueFile {
    std::map<std::string, std::string> values;
    std::vector<std::string> order;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
};

KeyValueFile parse_key_value(std::istream& in);
KeyValueFile parse_key_value_file(const std::filesystem::path& path);

// Write-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace mulchsim::io

#endif
