#include "redact/abet.hpp"

#include <algorithm>
#include <cassert>

namespace redact::abet {

namespace {

Bytes mask_stream(const TElem& b, const TElem& a) {
    Bytes data = b.to_bytes();
    append(data, a.to_bytes());
    return hash512(0x4d, data);
}

Bytes xor_mask(const Bytes& x, const Bytes& y) {
    assert(x.size() == y.size());
    Bytes out(x.size());
    for (size_t i = 0; i < x.size(); i++) out[i] = x[i] ^ y[i];
    return out;
}

size_t attr_position(const AttributeSet& attrs, const std::string& label) {
    const auto& labels = attrs.labels();
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    assert(it != labels.end() && *it == label);
    return size_t(it - labels.begin());
}

// Depth extension without re-randomization; decryption's internal search
// uses this on a working copy.
SecretKey extend_one_level(const Mpk& mpk, const SecretKey& key) {
    assert(key.depth < mpk.k && !key.sk2.empty());
    size_t next = key.depth + 1;
    Scalar entry = IndexVector::committee(mpk.suite->field(), next).entries[next - 1];
    SecretKey out = key;
    out.depth = next;
    out.sk1 = key.sk1 * key.sk2.front().pow(entry);
    out.sk2.erase(out.sk2.begin());
    return out;
}

}  // namespace

IndexVector IndexVector::committee(const Field& f, size_t depth) {
    IndexVector idx;
    idx.depth = depth;
    idx.entries.reserve(depth);
    for (size_t e = 1; e <= depth; e++) {
        std::string base = "committee." + std::to_string(e);
        Scalar v = hash_to_scalar(f, base);
        for (uint32_t ctr = 0; v.is_zero(); ctr++) {
            v = hash_to_scalar(f, base + ".r" + std::to_string(ctr));
        }
        idx.entries.push_back(std::move(v));
    }
    return idx;
}

Master setup(std::shared_ptr<const Suite> suite, size_t k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("committee capacity must be >= 1");
    const Field& f = suite->field();
    Master m;
    m.alpha = f.random_nonzero(rng);
    m.beta = f.random_nonzero(rng);
    m.theta = f.random_nonzero(rng);
    m.z.reserve(k);
    for (size_t i = 0; i < k; i++) m.z.push_back(f.random_nonzero(rng));

    Mpk& mpk = m.mpk;
    mpk.suite = suite;
    mpk.k = k;
    mpk.g = suite->g();
    mpk.h = suite->h();
    mpk.u = suite->g_pow(f.random_nonzero(rng));
    mpk.v = suite->g_pow(f.random_nonzero(rng));
    mpk.w = suite->g_pow(f.random_nonzero(rng));
    mpk.g_beta = suite->g_pow(m.beta);
    Scalar inv_alpha = m.alpha.inverse();
    mpk.h_inv_alpha = suite->h_pow(inv_alpha);
    mpk.h_beta_alpha = suite->h_pow(m.beta * inv_alpha);
    mpk.e_gh_alpha = suite->pair_gh().pow(m.alpha);
    mpk.e_gh_theta_alpha = suite->pair_gh().pow(m.theta * inv_alpha);
    mpk.g_alpha.reserve(k);
    mpk.h_alpha.reserve(k);
    for (size_t i = 0; i < k; i++) {
        Scalar za = m.z[i] * m.alpha;
        mpk.g_alpha.push_back(suite->g_pow(za));
        mpk.h_alpha.push_back(suite->h_pow(za));
    }
    return m;
}

void Master::wipe_secrets() {
    alpha.wipe();
    beta.wipe();
    theta.wipe();
    for (auto& s : z) s.wipe();
}

GElem ihat(const Mpk& mpk, const IndexVector& idx) {
    if (idx.depth > mpk.k) throw std::invalid_argument("index depth exceeds capacity");
    GElem acc = mpk.g;
    for (size_t e = 1; e <= idx.depth; e++) {
        acc = acc * mpk.g_alpha[mpk.k - e].pow(idx.entries[e - 1]);
    }
    return acc;
}

HElem jhat(const Mpk& mpk, const IndexVector& idx) {
    if (idx.depth > mpk.k + 1) throw std::invalid_argument("index depth exceeds capacity");
    HElem acc = mpk.h;
    size_t regular = std::min(idx.depth, mpk.k);
    for (size_t e = 1; e <= regular; e++) {
        acc = acc * mpk.h_alpha[mpk.k - e].pow(idx.entries[e - 1]);
    }
    if (idx.depth == mpk.k + 1) {
        // Synthetic tracing depth: one extra factor outside every key's
        // reach (delegation material runs out at depth k).
        acc = acc * mpk.h_alpha[mpk.k - 1].pow(idx.entries[mpk.k]);
    }
    return acc;
}

SecretKey keygen(const Mpk& mpk, const Scalar& alpha, const Scalar& theta,
                 const AccessPolicy& policy, const IndexVector& idx, Rng& rng) {
    if (idx.depth < 1 || idx.depth > mpk.k) {
        throw std::invalid_argument("key depth out of range");
    }
    const Suite& suite = *mpk.suite;
    const Field& f = suite.field();

    SecretKey key;
    key.policy_text = policy.to_string();
    key.msp = policy_to_msp(policy, f);
    key.depth = idx.depth;

    std::vector<Scalar> lambda = lss_share(key.msp, alpha, rng);
    Scalar t_star = f.zero();
    Scalar r_star = f.zero();
    key.rows.reserve(key.msp.n_rows());
    for (size_t tau = 0; tau < key.msp.n_rows(); tau++) {
        Scalar t = f.random(rng);
        Scalar r = f.random(rng);
        Scalar a = hash_to_scalar(f, key.msp.row_labels[tau]);
        KeyRow row;
        row.d1 = suite.g_pow(lambda[tau]) * mpk.w.pow(t);
        row.d2 = (mpk.u.pow(a) * mpk.v).pow(t).inverse();
        row.d3 = suite.h_pow(t);
        key.rows.push_back(std::move(row));
        t_star = t_star + t;
        r_star = r_star + r;
    }

    key.sk0_t = suite.g_pow(t_star * alpha.inverse());
    key.sk0_r = suite.g_pow(r_star);
    key.sk1 = suite.g_pow(theta) * ihat(mpk, idx).pow(t_star) * mpk.g_beta.pow(r_star);
    key.sk2.reserve(mpk.k - idx.depth);
    for (size_t level = idx.depth + 1; level <= mpk.k; level++) {
        key.sk2.push_back(mpk.g_alpha[mpk.k - level].pow(t_star));
    }
    for (auto& s : lambda) s.wipe();
    t_star.wipe();
    r_star.wipe();
    return key;
}

SecretKey keygen(const Master& master, const AccessPolicy& policy, const IndexVector& idx,
                 Rng& rng) {
    return keygen(master.mpk, master.alpha, master.theta, policy, idx, rng);
}

SecretKey delegate_key(const Mpk& mpk, const SecretKey& key, Rng& rng) {
    if (key.depth >= mpk.k || key.sk2.empty()) {
        throw std::invalid_argument("no delegation elements left");
    }
    const Suite& suite = *mpk.suite;
    const Field& f = suite.field();
    SecretKey out = extend_one_level(mpk, key);
    // Fresh randomness on the row triples and on the r-side. The t-side
    // aggregate cannot be re-randomized from public values (that would
    // require g^{1/alpha}).
    for (size_t tau = 0; tau < out.rows.size(); tau++) {
        Scalar t = f.random(rng);
        Scalar a = hash_to_scalar(f, out.msp.row_labels[tau]);
        out.rows[tau].d1 = out.rows[tau].d1 * mpk.w.pow(t);
        out.rows[tau].d2 = out.rows[tau].d2 * (mpk.u.pow(a) * mpk.v).pow(t).inverse();
        out.rows[tau].d3 = out.rows[tau].d3 * suite.h_pow(t);
    }
    Scalar r = f.random(rng);
    out.sk0_r = out.sk0_r * suite.g_pow(r);
    out.sk1 = out.sk1 * mpk.g_beta.pow(r);
    return out;
}

Ciphertext encrypt(const Mpk& mpk, std::span<const uint8_t> payload,
                   const AttributeSet& attrs, const IndexVector& idx, Rng& rng) {
    if (payload.size() != kPayloadBytes) {
        throw std::invalid_argument("payload must be 32 bytes");
    }
    const Suite& suite = *mpk.suite;
    const Field& f = suite.field();

    Scalar s = f.random_nonzero(rng);
    Ciphertext ct;
    ct.attrs = attrs;
    GElem w_neg_s = mpk.w.pow(s).inverse();
    ct.attr_h.reserve(attrs.size());
    ct.attr_g.reserve(attrs.size());
    for (size_t tau = 0; tau < attrs.size(); tau++) {
        Scalar r = f.random(rng);
        ct.attr_h.push_back(suite.h_pow(r));
        ct.attr_g.push_back((mpk.u.pow(attrs.encodings()[tau]) * mpk.v).pow(r) * w_neg_s);
    }
    ct.ct0_1 = suite.h_pow(s);
    ct.ct0_2 = mpk.h_inv_alpha.pow(s);
    ct.ct0_3 = mpk.h_beta_alpha.pow(s);
    ct.ct1 = jhat(mpk, idx).pow(s);

    Bytes padded(payload.begin(), payload.end());
    padded.resize(kMaskBytes, 0);
    ct.mask = xor_mask(padded, mask_stream(mpk.e_gh_alpha.pow(s), mpk.e_gh_theta_alpha.pow(s)));
    s.wipe();
    return ct;
}

std::optional<Bytes> decrypt(const Mpk& mpk, const Ciphertext& ct, const SecretKey& key,
                             DecryptTrace* trace) {
    auto sol = msp_satisfy(key.msp, ct.attrs);
    if (!sol) return std::nullopt;

    const Suite& suite = *mpk.suite;
    // B depends only on the policy side and is computed once.
    TElem b_value = suite.identity_t();
    for (size_t n = 0; n < sol->rows.size(); n++) {
        size_t mu = sol->rows[n];
        size_t pos = attr_position(ct.attrs, key.msp.row_labels[mu]);
        TElem term = suite.pair(key.rows[mu].d1, ct.ct0_1) *
                     suite.pair(key.rows[mu].d2, ct.attr_h[pos]) *
                     suite.pair(ct.attr_g[pos], key.rows[mu].d3);
        b_value = b_value * term.pow(sol->coeffs[n]);
    }

    SecretKey work = key;
    for (;;) {
        TElem a_value = suite.pair(work.sk1, ct.ct0_2) /
                        (suite.pair(work.sk0_t, ct.ct1) * suite.pair(work.sk0_r, ct.ct0_3));
        Bytes plain = xor_mask(ct.mask, mask_stream(b_value, a_value));
        bool pad_ok = true;
        for (size_t i = kPayloadBytes; i < kMaskBytes; i++) {
            if (plain[i] != 0) { pad_ok = false; break; }
        }
        if (pad_ok) {
            if (trace) *trace = DecryptTrace{b_value, a_value, work.depth};
            plain.resize(kPayloadBytes);
            return plain;
        }
        if (work.depth >= mpk.k || work.sk2.empty()) return std::nullopt;
        work = extend_one_level(mpk, work);
    }
}

TraceReport trace(const Mpk& mpk, const Blackbox& box,
                  std::span<const AttributeSet> probes, double eps, size_t trials,
                  Rng& rng) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    TraceReport report;
    for (const AttributeSet& probe : probes) {
        std::vector<double> freq(mpk.k + 2, 0.0);
        for (size_t depth = 1; depth <= mpk.k + 1; depth++) {
            IndexVector idx = IndexVector::committee(mpk.suite->field(), depth);
            size_t hits = 0;
            for (size_t n = 0; n < trials; n++) {
                Bytes payload = rng.bytes(kPayloadBytes);
                Ciphertext ct = encrypt(mpk, payload, probe, idx, rng);
                std::optional<Bytes> got = box(ct);
                if (got && *got == payload) hits++;
            }
            freq[depth] = double(hits) / double(trials);
        }
        for (size_t depth = 1; depth <= mpk.k; depth++) {
            double prev = depth == 1 ? 0.0 : freq[depth - 1];
            if (freq[depth] - prev >= eps) report.accused.insert(depth);
        }
        report.sweeps.push_back(std::move(freq));
    }
    return report;
}

// ---- serialization ----

void write_mpk(Writer& w, const Mpk& mpk) {
    w.put_u64(1);
    w.put_u64(mpk.k);
    w.put_g(mpk.g);
    w.put_g(mpk.u);
    w.put_g(mpk.v);
    w.put_g(mpk.w);
    w.put_g(mpk.g_beta);
    w.put_h(mpk.h);
    w.put_h(mpk.h_inv_alpha);
    w.put_h(mpk.h_beta_alpha);
    w.put_t(mpk.e_gh_alpha);
    w.put_t(mpk.e_gh_theta_alpha);
    for (const auto& e : mpk.g_alpha) w.put_g(e);
    for (const auto& e : mpk.h_alpha) w.put_h(e);
}

Mpk read_mpk(Reader& r, std::shared_ptr<const Suite> suite) {
    if (r.get_u64() != 1) throw SerialError("bad mpk version");
    Mpk mpk;
    mpk.suite = suite;
    mpk.k = r.get_u64();
    mpk.g = r.get_g();
    mpk.u = r.get_g();
    mpk.v = r.get_g();
    mpk.w = r.get_g();
    mpk.g_beta = r.get_g();
    mpk.h = r.get_h();
    mpk.h_inv_alpha = r.get_h();
    mpk.h_beta_alpha = r.get_h();
    mpk.e_gh_alpha = r.get_t();
    mpk.e_gh_theta_alpha = r.get_t();
    for (size_t i = 0; i < mpk.k; i++) mpk.g_alpha.push_back(r.get_g());
    for (size_t i = 0; i < mpk.k; i++) mpk.h_alpha.push_back(r.get_h());
    return mpk;
}

void write_master(Writer& w, const Master& m) {
    write_mpk(w, m.mpk);
    w.put_scalar(m.alpha);
    w.put_scalar(m.beta);
    w.put_scalar(m.theta);
    for (const auto& z : m.z) w.put_scalar(z);
}

Master read_master(Reader& r, std::shared_ptr<const Suite> suite) {
    Master m;
    m.mpk = read_mpk(r, suite);
    m.alpha = r.get_scalar();
    m.beta = r.get_scalar();
    m.theta = r.get_scalar();
    for (size_t i = 0; i < m.mpk.k; i++) m.z.push_back(r.get_scalar());
    return m;
}

void write_key(Writer& w, const SecretKey& key) {
    w.put_u64(1);
    w.put_text(key.policy_text);
    w.put_u64(key.depth);
    w.put_u64(key.rows.size());
    for (const auto& row : key.rows) {
        w.put_g(row.d1);
        w.put_g(row.d2);
        w.put_h(row.d3);
    }
    w.put_g(key.sk0_t);
    w.put_g(key.sk0_r);
    w.put_g(key.sk1);
    w.put_u64(key.sk2.size());
    for (const auto& e : key.sk2) w.put_g(e);
}

SecretKey read_key(Reader& r, const Suite& suite) {
    if (r.get_u64() != 1) throw SerialError("bad key version");
    SecretKey key;
    key.policy_text = r.get_text();
    key.msp = policy_to_msp(AccessPolicy::parse(key.policy_text), suite.field());
    key.depth = r.get_u64();
    size_t rows = r.get_u64();
    if (rows != key.msp.n_rows()) throw SerialError("key rows mismatch policy");
    for (size_t i = 0; i < rows; i++) {
        KeyRow row;
        row.d1 = r.get_g();
        row.d2 = r.get_g();
        row.d3 = r.get_h();
        key.rows.push_back(std::move(row));
    }
    key.sk0_t = r.get_g();
    key.sk0_r = r.get_g();
    key.sk1 = r.get_g();
    size_t d = r.get_u64();
    for (size_t i = 0; i < d; i++) key.sk2.push_back(r.get_g());
    return key;
}

void write_ciphertext(Writer& w, const Ciphertext& ct) {
    w.put_u64(1);
    w.put_u64(ct.attrs.size());
    for (const auto& l : ct.attrs.labels()) w.put_text(l);
    for (size_t i = 0; i < ct.attrs.size(); i++) {
        w.put_h(ct.attr_h[i]);
        w.put_g(ct.attr_g[i]);
    }
    w.put_h(ct.ct0_1);
    w.put_h(ct.ct0_2);
    w.put_h(ct.ct0_3);
    w.put_h(ct.ct1);
    w.put_scalar_wide(ct.mask);
}

Ciphertext read_ciphertext(Reader& r, const Suite& suite) {
    if (r.get_u64() != 1) throw SerialError("bad ciphertext version");
    Ciphertext ct;
    size_t n = r.get_u64();
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; i++) labels.push_back(r.get_text());
    ct.attrs = AttributeSet::of(std::move(labels), suite.field());
    if (ct.attrs.size() != n) throw SerialError("duplicate ciphertext attributes");
    for (size_t i = 0; i < n; i++) {
        ct.attr_h.push_back(r.get_h());
        ct.attr_g.push_back(r.get_g());
    }
    ct.ct0_1 = r.get_h();
    ct.ct0_2 = r.get_h();
    ct.ct0_3 = r.get_h();
    ct.ct1 = r.get_h();
    ct.mask = r.get_scalar_wide();
    if (ct.mask.size() != kMaskBytes) throw SerialError("bad mask width");
    return ct;
}

}  // namespace redact::abet
