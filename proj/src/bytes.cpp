#include "redact/bytes.hpp"

#include <stdexcept>

namespace redact {

std::string hex(std::span<const uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Bytes from_hex(std::string_view s) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("bad hex digit");
    };
    if (s.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out(s.size() / 2);
    for (size_t i = 0; i < out.size(); i++) {
        out[i] = uint8_t(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    }
    return out;
}

void secure_wipe(uint8_t* data, size_t n) {
    volatile uint8_t* p = data;
    for (size_t i = 0; i < n; i++) p[i] = 0;
}

}  // namespace redact
