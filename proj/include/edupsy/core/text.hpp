// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace edupsy::text {

/// Decodes UTF-8 into code points. Malformed sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

/// Number of code points in `s`.
std::size_t char_length(std::string_view s);

/// Longest prefix of `s` holding at most `max_chars` code points.
std::string truncate_chars(std::string_view s, std::size_t max_chars);

bool is_space(char32_t cp) noexcept;

std::string trim(std::string_view s);
bool is_blank(std::string_view s);

/// Trim, collapse whitespace runs to one ASCII space, lowercase ASCII letters.
std::u32string normalize(std::string_view s);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t v);

}  // namespace edupsy::text
