#ifndef REDACT_RNG_HPP_
#define REDACT_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

#include "redact/bytes.hpp"

namespace redact {

class Field;
class Scalar;

// Seedable randomness source. All protocol code takes an Rng& so runs are
// reproducible from a seed; scalar() is virtual so tests can script exact
// field elements.
class Rng {
  public:
    virtual ~Rng() = default;
    virtual uint64_t next_u64() = 0;

    // Uniform field element; default draws width+64 bits and reduces.
    virtual Scalar scalar(const Field& f);

    void fill(std::span<uint8_t> out) {
        size_t i = 0;
        while (i < out.size()) {
            uint64_t w = next_u64();
            for (int k = 0; k < 8 && i < out.size(); k++, i++) {
                out[i] = uint8_t(w >> (8 * k));
            }
        }
    }

    Bytes bytes(size_t n) {
        Bytes out(n);
        fill(out);
        return out;
    }
};

class SeededRng final : public Rng {
  public:
    explicit SeededRng(uint64_t seed) : eng_(seed) {}
    uint64_t next_u64() override { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace redact

#endif
