#include "rex/text.hpp"

namespace rex {

std::optional<std::u16string> decode_utf8(std::string_view bytes, DecodeError* err,
                                          std::vector<std::uint32_t>* byte_offsets) {
    std::u16string out;
    out.reserve(bytes.size());
    if (byte_offsets) byte_offsets->clear();
    std::size_t i = 0;
    auto fail = [&](std::size_t at, std::string msg, bool non_bmp = false) {
        if (err) *err = DecodeError{at, std::move(msg), non_bmp};
        return std::nullopt;
    };
    while (i < bytes.size()) {
        std::size_t start = i;
        auto b0 = static_cast<unsigned char>(bytes[i++]);
        std::uint32_t cp;
        std::size_t extra;
        if (b0 < 0x80) {
            cp = b0;
            extra = 0;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            extra = 1;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            extra = 2;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            extra = 3;
        } else {
            return fail(start, "invalid UTF-8 lead byte");
        }
        if (i + extra > bytes.size()) return fail(start, "truncated UTF-8 sequence");
        for (std::size_t k = 0; k < extra; ++k) {
            auto b = static_cast<unsigned char>(bytes[i++]);
            if ((b & 0xC0) != 0x80) return fail(start, "invalid UTF-8 continuation byte");
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr std::uint32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
        if (cp < kMin[extra]) return fail(start, "overlong UTF-8 sequence");
        if (cp >= 0xD800 && cp <= 0xDFFF) return fail(start, "surrogate code point");
        if (cp > 0xFFFF) {
            return fail(start, "code point above the 16-bit plane is not supported", true);
        }
        if (byte_offsets) byte_offsets->push_back(static_cast<std::uint32_t>(start));
        out.push_back(static_cast<char16_t>(cp));
    }
    if (byte_offsets) byte_offsets->push_back(static_cast<std::uint32_t>(bytes.size()));
    return out;
}

Subject Subject::from_chars(std::u16string chars) {
    Subject s;
    s.chars = std::move(chars);
    return s;
}

std::optional<Subject> Subject::from_utf8(std::string_view bytes, DecodeError* err) {
    Subject s;
    auto decoded = decode_utf8(bytes, err, &s.byte_offsets);
    if (!decoded) return std::nullopt;
    s.chars = std::move(*decoded);
    s.bytes.assign(bytes);
    s.ascii = s.bytes.size() == s.chars.size();
    return s;
}

std::string encode_utf8(std::u16string_view chars) {
    std::string out;
    out.reserve(chars.size());
    for (char16_t c : chars) {
        auto cp = static_cast<std::uint32_t>(c);
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

}  // namespace rex
