#ifndef REDACT_KZG_HPP_
#define REDACT_KZG_HPP_

#include <memory>
#include <span>

#include "redact/poly.hpp"
#include "redact/serial.hpp"
#include "redact/suite.hpp"

namespace redact::kzg {

struct Params {
    std::shared_ptr<const Suite> suite;
    std::vector<GElem> g_powers;  // g^{alpha^0} .. g^{alpha^t}
    HElem h, h_alpha;

    size_t degree_bound() const { return g_powers.size() - 1; }
};

// Returns the trapdoor together with the params; the honest-dealer caller
// is expected to wipe the trapdoor once the params are published.
std::pair<Scalar, Params> setup(std::shared_ptr<const Suite> suite, size_t t, Rng& rng);

// Consecutive-power pairing checks on the params.
bool consistent(const Params& params);

struct Commitment {
    GElem c;
    bool operator==(const Commitment& o) const { return c == o.c; }
};

struct Witness {
    Scalar point;
    Scalar value;
    GElem w;
};

Commitment commit(const Params& params, const UniPoly& f);
Witness create_witness(const Params& params, const UniPoly& f, const Scalar& point);
bool verify_eval(const Params& params, const Commitment& c, const Witness& wit);

void write_params(Writer& w, const Params& p);
Params read_params(Reader& r, std::shared_ptr<const Suite> suite);
void write_commitment(Writer& w, const Commitment& c);
Commitment read_commitment(Reader& r);
void write_witness(Writer& w, const Witness& wit);
Witness read_witness(Reader& r);

}  // namespace redact::kzg

#endif
