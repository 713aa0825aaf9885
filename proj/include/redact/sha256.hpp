#ifndef REDACT_SHA256_HPP_
#define REDACT_SHA256_HPP_

#include <array>
#include <cstdint>
#include <span>

#include "redact/bytes.hpp"

namespace redact {

using Digest32 = std::array<uint8_t, 32>;

class Sha256 {
  public:
    Sha256() { reset(); }
    void reset();
    Sha256& update(std::span<const uint8_t> data);
    Digest32 finish();

  private:
    void compress(const uint8_t* block);
    std::array<uint32_t, 8> state_;
    std::array<uint8_t, 64> buf_;
    uint64_t total_ = 0;
    size_t fill_ = 0;
};

Digest32 sha256(std::span<const uint8_t> data);

}  // namespace redact

#endif
