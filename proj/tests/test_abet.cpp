#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "redact/abet.hpp"
#include "support/script_rng.hpp"

using namespace redact;
using redact::testing::ScriptRng;

namespace {

std::shared_ptr<const Suite> mock_suite() {
    static auto s = Suite::mock();
    return s;
}

Bytes payload_of(Rng& rng) { return rng.bytes(abet::kPayloadBytes); }

abet::Blackbox key_box(const abet::Mpk& mpk, std::vector<abet::SecretKey> keys) {
    return [&mpk, keys = std::move(keys)](const abet::Ciphertext& ct) -> std::optional<Bytes> {
        for (const auto& key : keys) {
            if (auto r = abet::decrypt(mpk, ct, key)) return r;
        }
        return std::nullopt;
    };
}

}  // namespace

TEST_CASE("setup invariants") {
    SeededRng rng(31);

    SUBCASE("k=1 has a single hierarchy element per side") {
        auto m = abet::setup(mock_suite(), 1, rng);
        CHECK(m.mpk.g_alpha.size() == 1);
        CHECK(m.mpk.h_alpha.size() == 1);
    }

    SUBCASE("pairing cross-checks pass for k=8") {
        auto m = abet::setup(mock_suite(), 8, rng);
        const Suite& s = *m.mpk.suite;
        for (size_t i = 0; i < 8; i++) {
            CHECK(s.pair(m.mpk.g_alpha[i], m.mpk.h) == s.pair(m.mpk.g, m.mpk.h_alpha[i]));
        }
        CHECK(s.pair(s.g_pow(m.theta), m.mpk.h_inv_alpha) == m.mpk.e_gh_theta_alpha);
        CHECK(s.pair_gh().pow(m.alpha) == m.mpk.e_gh_alpha);
    }

    SUBCASE("scripted mock: alpha=2, beta=3, theta=5, z1=7 gives g_1^alpha = g^14") {
        ScriptRng rng2({2, 3, 5, 7});
        auto m = abet::setup(mock_suite(), 1, rng2);
        CHECK(mock_suite()->exponent_of(m.mpk.g_alpha[0]).as_u64() == 14);
        CHECK(mock_suite()->exponent_of(m.mpk.g_beta).as_u64() == 3);
    }

    CHECK_THROWS(abet::setup(mock_suite(), 0, rng));
}

TEST_CASE("index vectors are the fixed system prefix") {
    const Field& f = mock_suite()->field();
    auto i3 = abet::IndexVector::committee(f, 3);
    auto i5 = abet::IndexVector::committee(f, 5);
    REQUIRE(i3.entries.size() == 3);
    for (size_t e = 0; e < 3; e++) {
        CHECK(i3.entries[e] == i5.entries[e]);
        CHECK_FALSE(i3.entries[e].is_zero());
    }
}

TEST_CASE("keygen round-trip and policy gating") {
    auto suite = mock_suite();
    SeededRng rng(37);
    auto master = abet::setup(suite, 3, rng);
    const Field& f = suite->field();

    auto idx1 = abet::IndexVector::committee(f, 1);
    auto key = abet::keygen(master, AccessPolicy::parse("A"), idx1, rng);

    SUBCASE("decrypts a ciphertext at an extending index") {
        for (size_t depth : {1u, 2u, 3u}) {
            Bytes payload = payload_of(rng);
            auto ct = abet::encrypt(master.mpk, payload, AttributeSet::of({"A"}, f),
                                    abet::IndexVector::committee(f, depth), rng);
            auto got = abet::decrypt(master.mpk, ct, key);
            REQUIRE(got.has_value());
            CHECK(*got == payload);
        }
    }

    SUBCASE("an AND key fails on a partial attribute set") {
        auto key_ab = abet::keygen(master, AccessPolicy::parse("A AND B"), idx1, rng);
        Bytes payload = payload_of(rng);
        auto ct = abet::encrypt(master.mpk, payload, AttributeSet::of({"A"}, f), idx1, rng);
        CHECK_FALSE(abet::decrypt(master.mpk, ct, key_ab).has_value());
    }

    SUBCASE("depth overflow is rejected") {
        CHECK_THROWS(abet::keygen(master, AccessPolicy::parse("A"),
                                  abet::IndexVector::committee(f, 4), rng));
    }
}

TEST_CASE("exponent bookkeeping: sk_1 = theta + ihat * t* + beta r*") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(41);
    auto master = abet::setup(suite, 3, rng);
    auto idx = abet::IndexVector::committee(f, 2);
    auto key = abet::keygen(master, AccessPolicy::parse("A AND (B OR C)"), idx, rng);

    // t* and r* recovered through the mock transparency
    Scalar t_star = f.zero();
    for (const auto& row : key.rows) t_star = t_star + suite->exponent_of(row.d3);
    Scalar r_star = suite->exponent_of(key.sk0_r);

    Scalar ihat_exp = f.one();
    for (size_t e = 1; e <= idx.depth; e++) {
        ihat_exp = ihat_exp + master.alpha * master.z[master.mpk.k - e] * idx.entries[e - 1];
    }
    Scalar expect = master.theta + ihat_exp * t_star + master.beta * r_star;
    CHECK(suite->exponent_of(key.sk1) == expect);
    CHECK(suite->exponent_of(key.sk0_t) == t_star * master.alpha.inverse());
    CHECK(key.sk2.size() == master.mpk.k - idx.depth);
}

TEST_CASE("ciphertext component exponents (s, s/alpha, beta s/alpha)") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(43);
    auto master = abet::setup(suite, 2, rng);
    auto attrs = AttributeSet::of({"X", "Y"}, f);
    auto idx = abet::IndexVector::committee(f, 1);
    auto ct = abet::encrypt(master.mpk, payload_of(rng), attrs, idx, rng);

    Scalar s = suite->exponent_of(ct.ct0_1);
    Scalar inv_alpha = master.alpha.inverse();
    CHECK(suite->exponent_of(ct.ct0_2) == s * inv_alpha);
    CHECK(suite->exponent_of(ct.ct0_3) == master.beta * s * inv_alpha);

    Scalar jhat_exp = f.one() + master.alpha * master.z[master.mpk.k - 1] * idx.entries[0];
    CHECK(suite->exponent_of(ct.ct1) == jhat_exp * s);

    // fresh randomness: equal inputs, different ciphertexts
    Bytes payload = payload_of(rng);
    auto c1 = abet::encrypt(master.mpk, payload, attrs, idx, rng);
    auto c2 = abet::encrypt(master.mpk, payload, attrs, idx, rng);
    CHECK(c1.ct0_1 != c2.ct0_1);
    CHECK(c1.mask != c2.mask);
}

TEST_CASE("decryption pairing identity matches the exponent oracle") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(47);
    auto master = abet::setup(suite, 3, rng);
    for (int i = 0; i < 10; i++) {
        auto idx = abet::IndexVector::committee(f, 1 + i % 3);
        auto key = abet::keygen(master, AccessPolicy::parse("A OR (B AND C)"), idx, rng);
        auto ct = abet::encrypt(master.mpk, payload_of(rng),
                                AttributeSet::of({"A", "B"}, f),
                                abet::IndexVector::committee(f, 3), rng);
        abet::DecryptTrace trace;
        auto got = abet::decrypt(master.mpk, ct, key, &trace);
        REQUIRE(got.has_value());
        Scalar s = suite->exponent_of(ct.ct0_1);
        CHECK(suite->exponent_of(trace.b_value) == master.alpha * s);
        CHECK(suite->exponent_of(trace.a_value) == master.theta * s * master.alpha.inverse());
        CHECK(trace.matched_depth == 3);
    }
}

TEST_CASE("delegation") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(53);
    auto master = abet::setup(suite, 3, rng);
    auto key1 = abet::keygen(master, AccessPolicy::parse("A"),
                             abet::IndexVector::committee(f, 1), rng);

    SUBCASE("delegate then decrypt at the deeper index") {
        auto key2 = abet::delegate_key(master.mpk, key1, rng);
        CHECK(key2.depth == 2);
        Bytes payload = payload_of(rng);
        auto ct = abet::encrypt(master.mpk, payload, AttributeSet::of({"A"}, f),
                                abet::IndexVector::committee(f, 2), rng);
        auto got = abet::decrypt(master.mpk, ct, key2);
        REQUIRE(got.has_value());
        CHECK(*got == payload);
    }

    SUBCASE("delegated keys cannot reach shallower ciphertexts") {
        auto key2 = abet::delegate_key(master.mpk, key1, rng);
        auto ct = abet::encrypt(master.mpk, payload_of(rng), AttributeSet::of({"A"}, f),
                                abet::IndexVector::committee(f, 1), rng);
        CHECK_FALSE(abet::decrypt(master.mpk, ct, key2).has_value());
    }

    SUBCASE("depth accounting across two delegations") {
        auto key3 = abet::delegate_key(master.mpk, abet::delegate_key(master.mpk, key1, rng), rng);
        CHECK(key3.depth == 3);
        CHECK(key3.sk2.empty());
        CHECK_THROWS(abet::delegate_key(master.mpk, key3, rng));
    }
}

TEST_CASE("decryption succeeds exactly on (policy ok) x (index prefix ok)") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(59);
    const size_t k = 3;
    auto master = abet::setup(suite, k, rng);

    struct PolicyCase {
        const char* text;
        std::vector<std::string> attrs;
    };
    const PolicyCase cases[] = {
        {"A", {"A"}},
        {"A AND B", {"A", "B", "C"}},
        {"(A AND B) OR C", {"C"}},
        {"A AND (B OR C) AND D", {"A", "C", "D"}},
    };
    for (const auto& pc : cases) {
        AccessPolicy policy = AccessPolicy::parse(pc.text);
        AttributeSet good = AttributeSet::of(pc.attrs, f);
        AttributeSet bad = AttributeSet::of({"Z"}, f);
        REQUIRE(policy.satisfied_by(good.label_set()));
        REQUIRE_FALSE(policy.satisfied_by(bad.label_set()));
        for (size_t key_depth = 1; key_depth <= k; key_depth++) {
            auto key = abet::keygen(master, policy.clone(),
                                    abet::IndexVector::committee(f, key_depth), rng);
            for (size_t ct_depth = 1; ct_depth <= k; ct_depth++) {
                auto idx = abet::IndexVector::committee(f, ct_depth);
                Bytes payload = payload_of(rng);
                auto ct_good = abet::encrypt(master.mpk, payload, good, idx, rng);
                auto ct_bad = abet::encrypt(master.mpk, payload, bad, idx, rng);
                bool index_ok = key_depth <= ct_depth;
                CHECK(abet::decrypt(master.mpk, ct_good, key).has_value() == index_ok);
                CHECK_FALSE(abet::decrypt(master.mpk, ct_bad, key).has_value());
                if (index_ok) {
                    CHECK(*abet::decrypt(master.mpk, ct_good, key) == payload);
                }
            }
        }
    }
}

TEST_CASE("delegated keys never decrypt outside their cone (exhaustive, k=3)") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(61);
    const size_t k = 3;
    auto master = abet::setup(suite, k, rng);
    auto attrs = AttributeSet::of({"A"}, f);

    for (size_t base_depth = 1; base_depth <= k; base_depth++) {
        auto key = abet::keygen(master, AccessPolicy::parse("A"),
                                abet::IndexVector::committee(f, base_depth), rng);
        std::vector<abet::SecretKey> chain{key};
        while (chain.back().depth < k) {
            chain.push_back(abet::delegate_key(master.mpk, chain.back(), rng));
        }
        for (const auto& variant : chain) {
            for (size_t ct_depth = 1; ct_depth <= k + 1; ct_depth++) {
                Bytes payload = payload_of(rng);
                auto ct = abet::encrypt(master.mpk, payload, attrs,
                                        abet::IndexVector::committee(f, ct_depth), rng);
                bool expect = variant.depth <= ct_depth && ct_depth <= k;
                auto got = abet::decrypt(master.mpk, ct, variant);
                CHECK(got.has_value() == expect);
            }
        }
    }
}

TEST_CASE("ciphertexts reveal no index structurally") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(67);
    auto master = abet::setup(suite, 4, rng);
    auto attrs = AttributeSet::of({"A", "B"}, f);
    Bytes payload = payload_of(rng);

    auto ct1 = abet::encrypt(master.mpk, payload, attrs,
                             abet::IndexVector::committee(f, 1), rng);
    auto ct4 = abet::encrypt(master.mpk, payload, attrs,
                             abet::IndexVector::committee(f, 4), rng);
    Writer w1, w4;
    abet::write_ciphertext(w1, ct1);
    abet::write_ciphertext(w4, ct4);
    CHECK(w1.data().size() == w4.data().size());
    auto t1 = tally_fields(w1.data());
    auto t4 = tally_fields(w4.data());
    CHECK(t1.scalars == t4.scalars);
    CHECK(t1.g_elems == t4.g_elems);
    CHECK(t1.h_elems == t4.h_elems);
    CHECK(t1.u64_fields == t4.u64_fields);
    CHECK(t1.text_fields == t4.text_fields);
}

TEST_CASE("tracing") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(71);
    const size_t k = 5;
    auto master = abet::setup(suite, k, rng);

    auto probe_a = AttributeSet::of({"groupA"}, f);
    auto probe_b = AttributeSet::of({"groupB"}, f);

    SUBCASE("one key at depth 2, one probe, N=1") {
        std::vector<abet::SecretKey> keys;
        keys.push_back(abet::keygen(master, AccessPolicy::parse("groupA"),
                                    abet::IndexVector::committee(f, 2), rng));
        auto box = key_box(master.mpk, std::move(keys));
        std::vector<AttributeSet> probes{probe_a};
        auto report = abet::trace(master.mpk, box, probes, 0.5, 1, rng);
        CHECK(report.accused == std::set<size_t>{2});
        REQUIRE(report.sweeps.size() == 1);
        for (size_t d = 1; d <= k; d++) {
            CHECK(report.sweeps[0][d] == (d >= 2 ? 1.0 : 0.0));
        }
        CHECK(report.sweeps[0][k + 1] == 0.0);
    }

    SUBCASE("empty blackbox accuses nobody") {
        auto box = key_box(master.mpk, {});
        std::vector<AttributeSet> probes{probe_a, probe_b};
        auto report = abet::trace(master.mpk, box, probes, 0.5, 1, rng);
        CHECK(report.accused.empty());
    }

    SUBCASE("keys at depths 2 and 5 with disjoint policies") {
        std::vector<abet::SecretKey> keys;
        keys.push_back(abet::keygen(master, AccessPolicy::parse("groupA"),
                                    abet::IndexVector::committee(f, 2), rng));
        keys.push_back(abet::keygen(master, AccessPolicy::parse("groupB"),
                                    abet::IndexVector::committee(f, 5), rng));
        auto box = key_box(master.mpk, std::move(keys));
        std::vector<AttributeSet> probes{probe_a, probe_b};
        auto report = abet::trace(master.mpk, box, probes, 0.5, 1, rng);
        CHECK(report.accused == std::set<size_t>{2, 5});
    }
}

TEST_CASE("key and ciphertext serialization round-trips") {
    auto suite = mock_suite();
    const Field& f = suite->field();
    SeededRng rng(73);
    auto master = abet::setup(suite, 3, rng);

    auto key = abet::keygen(master, AccessPolicy::parse("A AND (B OR C)"),
                            abet::IndexVector::committee(f, 2), rng);
    Writer kw;
    abet::write_key(kw, key);
    Reader kr(kw.data(), suite.get());
    auto key2 = abet::read_key(kr, *suite);
    kr.expect_done();

    Bytes payload = payload_of(rng);
    auto ct = abet::encrypt(master.mpk, payload, AttributeSet::of({"A", "B"}, f),
                            abet::IndexVector::committee(f, 3), rng);
    Writer cw;
    abet::write_ciphertext(cw, ct);
    Reader cr(cw.data(), suite.get());
    auto ct2 = abet::read_ciphertext(cr, *suite);
    cr.expect_done();

    auto got = abet::decrypt(master.mpk, ct2, key2);
    REQUIRE(got.has_value());
    CHECK(*got == payload);

    Writer mw;
    abet::write_master(mw, master);
    Reader mr(mw.data(), suite.get());
    auto master2 = abet::read_master(mr, suite);
    CHECK(master2.alpha == master.alpha);
    CHECK(master2.mpk.g_alpha.size() == master.mpk.g_alpha.size());
}

TEST_CASE("production profile end-to-end encrypt/decrypt") {
    auto suite = Suite::supersingular();
    const Field& f = suite->field();
    SeededRng rng(79);
    auto master = abet::setup(suite, 2, rng);
    auto key = abet::keygen(master, AccessPolicy::parse("A"),
                            abet::IndexVector::committee(f, 1), rng);
    Bytes payload = SeededRng(5).bytes(abet::kPayloadBytes);
    auto ct = abet::encrypt(master.mpk, payload, AttributeSet::of({"A"}, f),
                            abet::IndexVector::committee(f, 2), rng);
    auto got = abet::decrypt(master.mpk, ct, key);
    REQUIRE(got.has_value());
    CHECK(*got == payload);
    auto bad = abet::encrypt(master.mpk, payload, AttributeSet::of({"B"}, f),
                             abet::IndexVector::committee(f, 1), rng);
    CHECK_FALSE(abet::decrypt(master.mpk, bad, key).has_value());
}
