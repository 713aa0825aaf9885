#include "redact/rewrite.hpp"

namespace redact::rewrite {

MutableTransaction hash_transaction(const abet::Mpk& mpk, const sigma::Keypair& author,
                                    std::span<const uint8_t> content,
                                    const AttributeSet& attrs, const abet::IndexVector& idx,
                                    Rng& rng) {
    const Suite& suite = *mpk.suite;
    auto [trapdoor, pub] = cham::keygen(suite, rng);
    MutableTransaction tx;
    tx.pk_ch = pub;
    tx.m = hash_to_scalar(suite.field(), content);
    tx.hash = cham::hash(suite, pub, tx.m, rng);
    tx.trapdoor_ct = abet::encrypt(mpk, trapdoor.r, attrs, idx, rng);
    auto [tag, sig] = sigma::sign(suite, author, trapdoor, rng);
    tx.tag = std::move(tag);
    tx.sig = std::move(sig);
    tx.author_pk = author.pk;
    return tx;
}

bool verify_transaction(const Suite& suite, const MutableTransaction& tx) {
    return cham::verify(suite, tx.pk_ch, tx.m, tx.hash) &&
           sigma::verify(suite, tx.author_pk, tx.tag, tx.sig);
}

MutableTransaction adapt_transaction(const abet::Mpk& mpk, const abet::SecretKey& key,
                                     const sigma::Keypair& modifier,
                                     const MutableTransaction& tx,
                                     std::span<const uint8_t> new_content, Rng& rng,
                                     const AdaptOptions& opts) {
    const Suite& suite = *mpk.suite;
    if (!verify_transaction(suite, tx)) {
        throw VerifyFailed("transaction fails verification before adapt");
    }
    abet::DecryptTrace dec_trace;
    auto recovered = abet::decrypt(mpk, tx.trapdoor_ct, key, &dec_trace);
    if (!recovered) {
        throw abet::DecryptDenied("key does not open this transaction's trapdoor");
    }
    cham::Trapdoor trapdoor(std::move(*recovered));
    // The ciphertext is only trusted after this consistency check: the
    // decrypted string must be the trapdoor of this very hash.
    if (cham::public_of(suite, trapdoor).p_prime != tx.pk_ch.p_prime) {
        throw abet::DecryptDenied("decrypted trapdoor does not match pk_CH");
    }

    MutableTransaction out;
    out.pk_ch = tx.pk_ch;
    out.m = hash_to_scalar(suite.field(), new_content);
    out.hash = cham::Hash{tx.hash.b, cham::adapt(suite, trapdoor, tx.m, out.m, tx.hash)};

    AttributeSet attrs = tx.attrs();
    size_t depth = dec_trace.matched_depth;
    if (!opts.preserve_attributes) {
        if (opts.new_attrs) attrs = *opts.new_attrs;
        if (opts.new_depth) depth = *opts.new_depth;
    }
    out.trapdoor_ct = abet::encrypt(mpk, trapdoor.r, attrs,
                                    abet::IndexVector::committee(suite.field(), depth), rng);
    auto [tag, sig] = sigma::sign(suite, modifier, trapdoor, rng);
    out.tag = std::move(tag);
    out.sig = std::move(sig);
    out.author_pk = modifier.pk;

    if (!verify_transaction(suite, out)) {
        throw VerifyFailed("adapted transaction fails verification");
    }
    return out;
}

std::optional<LinkResult> judge_link(const Suite& suite, const MutableTransaction& tx,
                                     const MutableTransaction& tx_new) {
    if (!verify_transaction(suite, tx) || !verify_transaction(suite, tx_new)) {
        return std::nullopt;
    }
    if (tx.hash.b != tx_new.hash.b || tx.pk_ch.p_prime != tx_new.pk_ch.p_prime) {
        return std::nullopt;
    }
    GElem delta = sigma::link_delta(tx.tag, tx_new.tag);
    if (tx_new.author_pk != tx.author_pk * delta) return std::nullopt;
    return LinkResult{tx.author_pk, tx_new.author_pk, std::move(delta)};
}

TraceOutcome judge_trace(const abet::Mpk& mpk, const abet::Blackbox& box,
                         std::span<const AttributeSet> probes, const GrantStore& grants,
                         double eps, size_t trials, Rng& rng) {
    TraceOutcome out;
    out.report = abet::trace(mpk, box, probes, eps, trials, rng);
    for (size_t depth : out.report.accused) {
        for (auto& rec : grants.matching_depth(depth)) out.matched.push_back(rec);
    }
    return out;
}

void write_tx(Writer& w, const MutableTransaction& tx) {
    w.put_u64(1);
    // chameleon section: 2 scalars, 3 G elements
    w.put_scalar(tx.m);
    w.put_scalar(tx.hash.r);
    w.put_g(tx.pk_ch.p_prime);
    w.put_g(tx.hash.b);
    w.put_g(tx.author_pk);
    // encryption section
    abet::write_ciphertext(w, tx.trapdoor_ct);
    // signature section: 1 scalar, 2 G elements
    w.put_scalar(tx.sig.s);
    w.put_g(tx.tag.c);
    w.put_g(tx.sig.epk);
}

MutableTransaction read_tx(Reader& r, const Suite& suite) {
    if (r.get_u64() != 1) throw SerialError("bad transaction version");
    MutableTransaction tx;
    tx.m = r.get_scalar();
    tx.hash.r = r.get_scalar();
    tx.pk_ch.p_prime = r.get_g();
    tx.hash.b = r.get_g();
    tx.author_pk = r.get_g();
    tx.trapdoor_ct = abet::read_ciphertext(r, suite);
    tx.sig.s = r.get_scalar();
    tx.tag.c = r.get_g();
    tx.sig.epk = r.get_g();
    return tx;
}

Bytes leaf_preimage(const MutableTransaction& tx) {
    Bytes out = tx.pk_ch.p_prime.to_bytes();
    append(out, tx.hash.b.to_bytes());
    return out;
}

}  // namespace redact::rewrite
