#ifndef REDACT_BYTES_HPP_
#define REDACT_BYTES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redact {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline void append(Bytes& out, std::span<const uint8_t> more) {
    out.insert(out.end(), more.begin(), more.end());
}

inline Bytes concat(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    Bytes out(a.begin(), a.end());
    append(out, b);
    return out;
}

std::string hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view s);

// Best-effort wipe for secret material; not optimized away.
void secure_wipe(uint8_t* data, size_t n);
inline void secure_wipe(Bytes& b) { secure_wipe(b.data(), b.size()); }

}  // namespace redact

#endif
