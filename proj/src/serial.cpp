#include "redact/serial.hpp"

namespace redact {

void Writer::put(FieldKind kind, std::span<const uint8_t> payload) {
    out_.push_back(uint8_t(kind));
    uint32_t len = uint32_t(payload.size());
    for (int i = 0; i < 4; i++) out_.push_back(uint8_t(len >> (24 - 8 * i)));
    append(out_, payload);
}

std::span<const uint8_t> Reader::next(FieldKind want) {
    if (pos_ + 5 > data_.size()) throw SerialError("truncated container");
    FieldKind kind = FieldKind(data_[pos_]);
    uint32_t len = 0;
    for (int i = 0; i < 4; i++) len = (len << 8) | data_[pos_ + 1 + i];
    pos_ += 5;
    if (pos_ + len > data_.size()) throw SerialError("truncated field");
    if (kind != want) throw SerialError("unexpected field kind");
    auto out = data_.subspan(pos_, len);
    pos_ += len;
    return out;
}

Scalar Reader::get_scalar() { return suite_->field().from_bytes(next(FieldKind::kScalar)); }

Bytes Reader::get_scalar_wide() {
    auto s = next(FieldKind::kScalar);
    return Bytes(s.begin(), s.end());
}

GElem Reader::get_g() { return suite_->g_from_bytes(next(FieldKind::kGElem)); }
HElem Reader::get_h() { return suite_->h_from_bytes(next(FieldKind::kHElem)); }
TElem Reader::get_t() { return suite_->t_from_bytes(next(FieldKind::kTElem)); }

Bytes Reader::get_bytes() {
    auto s = next(FieldKind::kBytes);
    return Bytes(s.begin(), s.end());
}

std::string Reader::get_text() {
    auto s = next(FieldKind::kText);
    return std::string(s.begin(), s.end());
}

uint64_t Reader::get_u64() {
    auto s = next(FieldKind::kU64);
    if (s.size() != 8) throw SerialError("bad u64 field");
    uint64_t v = 0;
    for (uint8_t b : s) v = (v << 8) | b;
    return v;
}

FieldTally tally_fields(std::span<const uint8_t> data) {
    FieldTally t;
    size_t pos = 0;
    while (pos < data.size()) {
        if (pos + 5 > data.size()) throw SerialError("truncated container");
        FieldKind kind = FieldKind(data[pos]);
        uint32_t len = 0;
        for (int i = 0; i < 4; i++) len = (len << 8) | data[pos + 1 + i];
        pos += 5 + len;
        if (pos > data.size()) throw SerialError("truncated field");
        switch (kind) {
            case FieldKind::kScalar: t.scalars++; break;
            case FieldKind::kGElem: t.g_elems++; break;
            case FieldKind::kHElem: t.h_elems++; break;
            case FieldKind::kTElem: t.t_elems++; break;
            case FieldKind::kBytes: t.bytes_fields++; break;
            case FieldKind::kText: t.text_fields++; break;
            case FieldKind::kU64: t.u64_fields++; break;
            default: throw SerialError("unknown field kind");
        }
    }
    return t;
}

}  // namespace redact
