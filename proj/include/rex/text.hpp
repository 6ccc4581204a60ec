#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rex {

struct DecodeError {
    std::size_t byte_offset = 0;
    std::string message;
    bool non_bmp = false;
};

// Strict UTF-8 decoder restricted to the 16-bit plane. Rejects overlong
// forms, surrogates, truncated sequences and code points above 0xFFFF.
// When byte_offsets is supplied it receives one entry per decoded
// character plus a final entry for the end of input.
std::optional<std::u16string> decode_utf8(std::string_view bytes, DecodeError* err,
                                          std::vector<std::uint32_t>* byte_offsets = nullptr);

std::string encode_utf8(std::u16string_view chars);

// Immutable code-point sequence being matched. Positions are
// code-point offsets; byte_offsets maps them back to the original
// UTF-8 bytes when the subject came from UTF-8 input.
struct Subject {
    std::u16string chars;
    std::string bytes;
    std::vector<std::uint32_t> byte_offsets;
    bool ascii = false;

    std::size_t size() const { return chars.size(); }

    static Subject from_chars(std::u16string chars);
    static std::optional<Subject> from_utf8(std::string_view bytes, DecodeError* err);
};

}  // namespace rex
