#include "redact/chain.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

namespace redact::chain {

Digest32 merkle_leaf(const Transaction& tx) {
    Bytes preimage;
    preimage.push_back(uint8_t(tx.kind));
    if (tx.kind == TxKind::kMutable) {
        append(preimage, rewrite::leaf_preimage(tx.mut));
    } else {
        append(preimage, tx.payload);
    }
    return sha256(preimage);
}

Digest32 merkle_root(std::span<const Transaction> txs) {
    if (txs.empty()) return Digest32{};
    std::vector<Digest32> level;
    level.reserve(txs.size());
    for (const auto& tx : txs) level.push_back(merkle_leaf(tx));
    while (level.size() > 1) {
        if (level.size() % 2 == 1) level.push_back(level.back());
        std::vector<Digest32> next;
        next.reserve(level.size() / 2);
        for (size_t i = 0; i < level.size(); i += 2) {
            Bytes pair(level[i].begin(), level[i].end());
            append(pair, level[i + 1]);
            next.push_back(sha256(pair));
        }
        level = std::move(next);
    }
    return level[0];
}

Digest32 header_hash(const Block& b) {
    Bytes header(b.prev_hash.begin(), b.prev_hash.end());
    append(header, b.merkle_root);
    for (int i = 0; i < 8; i++) header.push_back(uint8_t(b.nonce >> (56 - 8 * i)));
    return sha256(header);
}

bool meets_difficulty(const Digest32& digest, uint32_t bits) {
    for (uint32_t i = 0; i < bits; i++) {
        if (digest[i / 8] & (0x80u >> (i % 8))) return false;
    }
    return true;
}

const Block& mine_block(Chain& chain, std::vector<Transaction> txs, uint64_t nonce_start) {
    Block b;
    b.prev_hash = chain.blocks.empty() ? Digest32{} : header_hash(chain.blocks.back());
    b.merkle_root = merkle_root(txs);
    b.txs = std::move(txs);
    b.nonce = nonce_start;
    while (!meets_difficulty(header_hash(b), chain.difficulty)) b.nonce++;
    chain.blocks.push_back(std::move(b));
    return chain.blocks.back();
}

ValidationReport validate_chain(const Chain& chain, bool parallel) {
    ValidationReport report;
    size_t n = chain.blocks.size();
    report.blocks.resize(n);

    // expected link targets first; the per-block work is then independent
    std::vector<Digest32> want_prev(n);
    for (size_t h = 1; h < n; h++) want_prev[h] = header_hash(chain.blocks[h - 1]);

    auto check_block = [&](size_t h) {
        const Block& b = chain.blocks[h];
        auto started = std::chrono::steady_clock::now();
        BlockReport br;
        br.height = h;
        if (b.prev_hash != want_prev[h]) {
            br.ok = false;
            br.error = "broken hash link";
        }
        br.checks++;
        if (br.ok && !meets_difficulty(header_hash(b), chain.difficulty)) {
            br.ok = false;
            br.error = "proof of work below difficulty";
        }
        br.checks++;
        if (br.ok && merkle_root(b.txs) != b.merkle_root) {
            br.ok = false;
            br.error = "merkle root mismatch";
        }
        br.checks++;
        if (br.ok) {
            for (const auto& tx : b.txs) {
                if (tx.kind != TxKind::kMutable) continue;
                br.checks++;
                if (!rewrite::verify_transaction(*chain.suite, tx.mut)) {
                    br.ok = false;
                    br.error = "mutable transaction fails verification";
                    break;
                }
            }
        }
        br.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
        report.blocks[h] = std::move(br);
    };

    if (parallel && n > 1) {
        size_t hw = std::thread::hardware_concurrency();
        size_t workers = std::min(n, hw == 0 ? size_t(2) : hw);
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                for (;;) {
                    size_t h = next.fetch_add(1);
                    if (h >= n) return;
                    check_block(h);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        for (size_t h = 0; h < n; h++) check_block(h);
    }
    for (const auto& br : report.blocks) report.ok = report.ok && br.ok;
    return report;
}

RewriteOutcome rewrite_in_place(Chain& chain, const Locator& at, const abet::Mpk& mpk,
                                const abet::SecretKey& key, const sigma::Keypair& modifier,
                                std::span<const uint8_t> new_content, Rng& rng,
                                const rewrite::AdaptOptions& opts) {
    if (at.height >= chain.blocks.size()) throw ChainError("block height out of range");
    Block& block = chain.blocks[at.height];
    if (at.tx_index >= block.txs.size()) throw ChainError("transaction index out of range");
    Transaction& tx = block.txs[at.tx_index];
    if (tx.kind != TxKind::kMutable) throw ChainError("transaction is not mutable");

    RewriteOutcome out;
    out.before = tx.mut;
    out.after = rewrite::adapt_transaction(mpk, key, modifier, tx.mut, new_content, rng, opts);
    tx.mut = out.after;
    if (merkle_root(block.txs) != block.merkle_root) {
        throw ChainError("rewrite moved the merkle root");
    }
    return out;
}

void write_block(Writer& w, const Block& b) {
    w.put_u64(1);
    w.put_bytes(std::span<const uint8_t>(b.prev_hash.data(), b.prev_hash.size()));
    w.put_u64(b.nonce);
    w.put_bytes(std::span<const uint8_t>(b.merkle_root.data(), b.merkle_root.size()));
    w.put_u64(b.txs.size());
    for (const auto& tx : b.txs) {
        w.put_u64(uint64_t(tx.kind));
        if (tx.kind == TxKind::kMutable) {
            rewrite::write_tx(w, tx.mut);
        } else {
            w.put_bytes(tx.payload);
        }
    }
}

Block read_block(Reader& r, const Suite& suite) {
    if (r.get_u64() != 1) throw SerialError("bad block version");
    Block b;
    Bytes prev = r.get_bytes();
    if (prev.size() != 32) throw SerialError("bad prev hash width");
    std::copy(prev.begin(), prev.end(), b.prev_hash.begin());
    b.nonce = r.get_u64();
    Bytes root = r.get_bytes();
    if (root.size() != 32) throw SerialError("bad merkle root width");
    std::copy(root.begin(), root.end(), b.merkle_root.begin());
    size_t n = r.get_u64();
    for (size_t i = 0; i < n; i++) {
        Transaction tx;
        tx.kind = TxKind(r.get_u64());
        if (tx.kind == TxKind::kMutable) {
            tx.mut = rewrite::read_tx(r, suite);
        } else {
            tx.payload = r.get_bytes();
        }
        b.txs.push_back(std::move(tx));
    }
    return b;
}

namespace {

std::string block_file_name(size_t height) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "block_%05zu.bin", height);
    return buf;
}

}  // namespace

void save_chain(const Chain& chain, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        Writer w;
        w.put_u64(1);
        w.put_text(chain.suite->name());
        w.put_u64(chain.difficulty);
        w.put_u64(chain.blocks.size());
        std::ofstream out(dir / "manifest.bin", std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(w.data().data()), w.data().size());
    }
    for (size_t h = 0; h < chain.blocks.size(); h++) {
        Writer w;
        write_block(w, chain.blocks[h]);
        std::ofstream out(dir / block_file_name(h), std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(w.data().data()), w.data().size());
    }
}

namespace {

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ChainError("cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

Chain load_chain(const std::filesystem::path& dir, std::shared_ptr<const Suite> suite) {
    Bytes manifest = read_file(dir / "manifest.bin");
    Reader mr(manifest, suite.get());
    if (mr.get_u64() != 1) throw SerialError("bad chain manifest version");
    std::string profile = mr.get_text();
    if (profile != suite->name()) throw ChainError("chain profile mismatch: " + profile);
    Chain chain;
    chain.suite = suite;
    chain.difficulty = uint32_t(mr.get_u64());
    size_t count = mr.get_u64();
    for (size_t h = 0; h < count; h++) {
        Bytes data = read_file(dir / block_file_name(h));
        Reader r(data, suite.get());
        chain.blocks.push_back(read_block(r, *suite));
        r.expect_done();
    }
    return chain;
}

}  // namespace redact::chain
