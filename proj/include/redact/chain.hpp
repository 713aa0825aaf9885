#ifndef REDACT_CHAIN_HPP_
#define REDACT_CHAIN_HPP_

#include <filesystem>

#include "redact/rewrite.hpp"
#include "redact/sha256.hpp"

namespace redact::chain {

enum class TxKind : uint8_t {
    kMutable = 0,
    kImmutable = 1,
    kTranscript = 2,  // committee handoff transcripts, posted for PoW
};

struct Transaction {
    TxKind kind = TxKind::kImmutable;
    rewrite::MutableTransaction mut;  // kind == kMutable only
    Bytes payload;                    // immutable / transcript bytes

    static Transaction mutable_tx(rewrite::MutableTransaction tx) {
        Transaction t;
        t.kind = TxKind::kMutable;
        t.mut = std::move(tx);
        return t;
    }
    static Transaction immutable_tx(Bytes payload) {
        Transaction t;
        t.kind = TxKind::kImmutable;
        t.payload = std::move(payload);
        return t;
    }
    static Transaction transcript_tx(Bytes payload) {
        Transaction t;
        t.kind = TxKind::kTranscript;
        t.payload = std::move(payload);
        return t;
    }
};

struct Block {
    Digest32 prev_hash{};
    uint64_t nonce = 0;
    Digest32 merkle_root{};
    std::vector<Transaction> txs;
};

struct Chain {
    std::shared_ptr<const Suite> suite;
    uint32_t difficulty = 0;  // leading zero bits of the header hash
    std::vector<Block> blocks;
};

class ChainError : public std::runtime_error {
  public:
    explicit ChainError(const std::string& what) : std::runtime_error(what) {}
};

// Mutable transactions hash to SHA-256 over (pk_CH, b) only, so a rewrite
// never moves the leaf; other kinds commit to their full payload.
Digest32 merkle_leaf(const Transaction& tx);
Digest32 merkle_root(std::span<const Transaction> txs);
Digest32 header_hash(const Block& b);
bool meets_difficulty(const Digest32& digest, uint32_t bits);

// Proof-of-work search from a caller-chosen starting nonce (runs are
// reproducible by fixing it); appends the found block.
const Block& mine_block(Chain& chain, std::vector<Transaction> txs, uint64_t nonce_start = 0);

struct BlockReport {
    size_t height = 0;
    bool ok = true;
    double millis = 0;
    size_t checks = 0;
    std::string error;
};

struct ValidationReport {
    bool ok = true;
    std::vector<BlockReport> blocks;
};

// Links, proof of work, Merkle roots, and per-transaction verification.
// The same code path runs whether or not the chain was ever rewritten.
// Blocks may be checked in parallel; the report order is by height
// either way.
ValidationReport validate_chain(const Chain& chain, bool parallel = false);

struct Locator {
    size_t height = 0;
    size_t tx_index = 0;
};

struct RewriteOutcome {
    rewrite::MutableTransaction before;
    rewrite::MutableTransaction after;
};

// Adapts the located transaction in place. Block bytes change, the header
// does not; the stored Merkle root must re-derive bit-identically.
RewriteOutcome rewrite_in_place(Chain& chain, const Locator& at, const abet::Mpk& mpk,
                                const abet::SecretKey& key, const sigma::Keypair& modifier,
                                std::span<const uint8_t> new_content, Rng& rng,
                                const rewrite::AdaptOptions& opts = {});

void write_block(Writer& w, const Block& b);
Block read_block(Reader& r, const Suite& suite);

// One file per block in the directory, plus a small manifest.
void save_chain(const Chain& chain, const std::filesystem::path& dir);
Chain load_chain(const std::filesystem::path& dir, std::shared_ptr<const Suite> suite);

}  // namespace redact::chain

#endif
