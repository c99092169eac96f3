#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ddp::text {

// Number of UTF-8 code points in `s`. Continuation bytes are not counted;
// invalid sequences count one per lead byte.
int utf8_length(std::string_view s);

// Code points of `s` as separate strings.
std::vector<std::string> utf8_chars(std::string_view s);

std::string first_char(std::string_view s);
std::string last_char(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_blank(std::string_view s);
std::string_view trim(std::string_view s);

// Parses a base-10 integer occupying the whole of `s`.
bool parse_int(std::string_view s, int& out);

// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);
bool parse_double(std::string_view s, double& out);

// Strips a trailing '\r' so CRLF input is accepted on read.
std::string_view chomp(std::string_view line);

}  // namespace ddp::text
