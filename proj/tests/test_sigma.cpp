#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redact/sigma.hpp"
#include "support/script_rng.hpp"

using namespace redact;
using redact::testing::ScriptRng;

namespace {

cham::Trapdoor trapdoor_from(Rng& rng) {
    return cham::Trapdoor(rng.bytes(cham::kTrapdoorBytes));
}

}  // namespace

TEST_CASE("keygen derives pk = g^sk and resamples zero") {
    auto s = Suite::mock();
    const Field& f = s->field();

    ScriptRng rng({0, 7});
    auto kp = sigma::keygen(*s, rng);
    CHECK(kp.sk == f.from_u64(7));  // the scripted zero was rejected
    CHECK(kp.pk == s->g_pow(f.from_u64(7)));

    SeededRng a(4), b(4);
    CHECK(sigma::keygen(*s, a).sk == sigma::keygen(*s, b).sk);
}

TEST_CASE("pad interprets R || 0^256 as a 512-bit integer mod q") {
    auto s = Suite::mock();
    const Field& f = s->field();
    Bytes r(cham::kTrapdoorBytes, 0);
    r[31] = 1;  // R = 1 as a 256-bit integer
    // padded value is 2^256 mod q
    mpz_class expect = 1;
    mpz_class q = f.modulus();
    for (int i = 0; i < 256; i++) expect = expect * 2 % q;
    CHECK(sigma::pad_scalar(f, r).value() == expect);
}

TEST_CASE("sign/verify completeness and the scripted arithmetic oracle") {
    auto s = Suite::mock();
    const Field& f = s->field();
    SeededRng rng(13);
    auto kp = sigma::keygen(*s, rng);
    auto td = trapdoor_from(rng);

    auto [tag, sig] = sigma::sign(*s, kp, td, rng);
    CHECK(sigma::verify(*s, kp.pk, tag, sig));

    // sk=3, esk=4, challenge pinned to 2 -> sigma = 10
    CHECK(sigma::detail::sign_with_challenge(f.from_u64(3), f.from_u64(4), f.from_u64(2)) ==
          f.from_u64(10));

    // the full signature satisfies sigma = esk + sk * H(epk || c)
    Scalar chal = sigma::challenge(*s, sig.epk, tag);
    Scalar esk = s->exponent_of(sig.epk);
    CHECK(sig.s == esk + kp.sk * chal);

    SUBCASE("mutated sigma fails") {
        auto bad = sig;
        bad.s = bad.s + f.one();
        CHECK_FALSE(sigma::verify(*s, kp.pk, tag, bad));
    }

    SUBCASE("two signatures on the same R use fresh ephemeral keys") {
        auto [tag2, sig2] = sigma::sign(*s, kp, td, rng);
        CHECK(tag2.c == tag.c);
        CHECK(sig2.epk != sig.epk);
    }
}

TEST_CASE("verification rejects almost every foreign tag (mock exhaustive)") {
    auto s = Suite::mock();
    const Field& f = s->field();
    SeededRng rng(17);
    auto kp = sigma::keygen(*s, rng);
    auto td = trapdoor_from(rng);
    auto [tag, sig] = sigma::sign(*s, kp, td, rng);

    uint64_t q = 65521;
    uint64_t honest = s->exponent_of(tag.c).as_u64();
    size_t accepted = 0;
    for (uint64_t x = 0; x < q; x++) {
        if (x == honest) continue;
        sigma::LinkTag forged{s->g_pow(f.from_u64(x))};
        if (sigma::verify(*s, kp.pk, forged, sig)) accepted++;
    }
    // each foreign tag passes only on a hash coincidence, expect ~1 of q
    CHECK(accepted < 20);
}

TEST_CASE("link delta ties shifted keys to tag quotients") {
    auto s = Suite::mock();
    const Field& f = s->field();
    SeededRng rng(19);
    auto td = trapdoor_from(rng);

    SUBCASE("same tag gives the identity delta") {
        auto kp = sigma::keygen(*s, rng);
        auto tag = sigma::tag_for(*s, kp.sk, td);
        CHECK(sigma::link_delta(tag, tag).is_identity());
    }

    SUBCASE("sk=3, sk'=5 over one R gives g^2") {
        auto t3 = sigma::tag_for(*s, f.from_u64(3), td);
        auto t5 = sigma::tag_for(*s, f.from_u64(5), td);
        CHECK(sigma::link_delta(t3, t5) == s->g_pow(f.from_u64(2)));
    }

    SUBCASE("pk' = pk * delta for honest pairs") {
        for (int i = 0; i < 20; i++) {
            auto kp1 = sigma::keygen(*s, rng);
            auto kp2 = sigma::keygen(*s, rng);
            auto t1 = sigma::tag_for(*s, kp1.sk, td);
            auto t2 = sigma::tag_for(*s, kp2.sk, td);
            CHECK(kp2.pk == kp1.pk * sigma::link_delta(t1, t2));
        }
    }

    SUBCASE("tags from different trapdoors do not link") {
        auto kp1 = sigma::keygen(*s, rng);
        auto kp2 = sigma::keygen(*s, rng);
        auto other = trapdoor_from(rng);
        auto t1 = sigma::tag_for(*s, kp1.sk, td);
        auto t2 = sigma::tag_for(*s, kp2.sk, other);
        CHECK(kp2.pk != kp1.pk * sigma::link_delta(t1, t2));
    }
}

TEST_CASE("key/signature shifting") {
    auto s = Suite::mock();
    const Field& f = s->field();
    SeededRng rng(23);
    auto kp = sigma::keygen(*s, rng);
    auto td = trapdoor_from(rng);
    auto [tag, sig] = sigma::sign(*s, kp, td, rng);

    SUBCASE("zero shift is the identity transform") {
        auto shifted = sigma::shift(*s, kp.pk, tag, sig, f.zero());
        CHECK(shifted.pk == kp.pk);
        CHECK(shifted.sig.s == sig.s);
        CHECK(shifted.sig.epk == sig.epk);
    }

    SUBCASE("shift-then-verify holds for 100 random deltas") {
        for (int i = 0; i < 100; i++) {
            Scalar delta = f.random(rng);
            auto shifted = sigma::shift(*s, kp.pk, tag, sig, delta);
            CHECK(shifted.pk == kp.pk * s->g_pow(delta));
            CHECK(sigma::verify(*s, shifted.pk, tag, shifted.sig));
        }
    }

    SUBCASE("shifted signatures equal fresh ones ephemeral-by-ephemeral") {
        // enumerate every esk in a small field: the shifted value always
        // matches what sk+delta would have signed with that esk
        auto s101 = Suite::mock(101);
        const Field& f101 = s101->field();
        Scalar sk = f101.from_u64(3), delta = f101.from_u64(40);
        cham::Trapdoor td101(SeededRng(1).bytes(cham::kTrapdoorBytes));
        auto tag101 = sigma::tag_for(*s101, sk, td101);
        for (uint64_t esk = 0; esk < 101; esk++) {
            GElem epk = s101->g_pow(f101.from_u64(esk));
            Scalar chal = sigma::challenge(*s101, epk, tag101);
            sigma::Signature base{epk, sigma::detail::sign_with_challenge(sk, f101.from_u64(esk), chal)};
            auto shifted = sigma::shift(*s101, s101->g_pow(sk), tag101, base, delta);
            Scalar fresh = sigma::detail::sign_with_challenge(sk + delta, f101.from_u64(esk), chal);
            CHECK(shifted.sig.s == fresh);
        }
    }

    SUBCASE("linearity of verifications") {
        for (int i = 0; i < 20; i++) {
            Scalar delta = f.random(rng);
            REQUIRE(sigma::verify(*s, kp.pk, tag, sig));
            auto shifted = sigma::shift(*s, kp.pk, tag, sig, delta);
            CHECK(sigma::verify(*s, shifted.pk, tag, shifted.sig));
        }
    }
}
