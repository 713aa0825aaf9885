#ifndef REDACT_SERIAL_HPP_
#define REDACT_SERIAL_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "redact/suite.hpp"

namespace redact {

// Container format: a flat stream of tagged, length-prefixed fields.
//   field := kind(u8) len(u32 BE) payload(len bytes)
// Scalars are fixed-width big-endian; group elements use the suite's
// compressed encoding. Object serializers start with a version scalar-free
// u64 field. The tagging keeps the stream self-describing so storage
// accounting can be checked from raw bytes.
enum class FieldKind : uint8_t {
    kScalar = 0,
    kGElem = 1,
    kHElem = 2,
    kTElem = 3,
    kBytes = 4,
    kText = 5,
    kU64 = 6,
};

class SerialError : public std::runtime_error {
  public:
    explicit SerialError(const std::string& what) : std::runtime_error(what) {}
};

class Writer {
  public:
    void put_scalar(const Scalar& s) { put(FieldKind::kScalar, s.field().to_bytes(s)); }
    // A scalar-class field with caller-chosen width (the trapdoor mask).
    void put_scalar_wide(std::span<const uint8_t> b) { put(FieldKind::kScalar, b); }
    void put_g(const GElem& e) { put(FieldKind::kGElem, e.to_bytes()); }
    void put_h(const HElem& e) { put(FieldKind::kHElem, e.to_bytes()); }
    void put_t(const TElem& e) { put(FieldKind::kTElem, e.to_bytes()); }
    void put_bytes(std::span<const uint8_t> b) { put(FieldKind::kBytes, b); }
    void put_text(std::string_view s) {
        put(FieldKind::kText, std::span<const uint8_t>(
            reinterpret_cast<const uint8_t*>(s.data()), s.size()));
    }
    void put_u64(uint64_t v) {
        uint8_t b[8];
        for (int i = 0; i < 8; i++) b[i] = uint8_t(v >> (56 - 8 * i));
        put(FieldKind::kU64, {b, 8});
    }

    const Bytes& data() const { return out_; }
    Bytes take() { return std::move(out_); }

  private:
    void put(FieldKind kind, std::span<const uint8_t> payload);
    Bytes out_;
};

class Reader {
  public:
    Reader(std::span<const uint8_t> data, const Suite* suite)
        : data_(data), suite_(suite) {}

    Scalar get_scalar();
    Bytes get_scalar_wide();
    GElem get_g();
    HElem get_h();
    TElem get_t();
    Bytes get_bytes();
    std::string get_text();
    uint64_t get_u64();
    bool done() const { return pos_ == data_.size(); }
    void expect_done() const {
        if (!done()) throw SerialError("trailing bytes in container");
    }

  private:
    std::span<const uint8_t> next(FieldKind want);
    std::span<const uint8_t> data_;
    const Suite* suite_;
    size_t pos_ = 0;
};

// Per-kind field counts of a serialized container; the storage-accounting
// test reads these straight off the byte stream.
struct FieldTally {
    size_t scalars = 0;
    size_t g_elems = 0;
    size_t h_elems = 0;
    size_t t_elems = 0;
    size_t bytes_fields = 0;
    size_t text_fields = 0;
    size_t u64_fields = 0;
};

FieldTally tally_fields(std::span<const uint8_t> data);

}  // namespace redact

#endif
