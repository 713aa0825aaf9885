#ifndef REDACT_COMMITTEE_HPP_
#define REDACT_COMMITTEE_HPP_

#include <functional>
#include <map>
#include <variant>

#include "redact/abet.hpp"
#include "redact/dpss.hpp"
#include "redact/grants.hpp"
#include "redact/kzg.hpp"

namespace redact::committee {

// ---- in-memory synchronous channel ----

struct ReducePayload {
    std::string instance;
    size_t from_pos = 0;
    Scalar value;
    kzg::Witness witness;  // against the sender's posted full-share commitment
};

struct ZeroCommitPayload {
    kzg::Commitment commitment;
    kzg::Witness at_zero;  // must open the value 0 at point 0
};

struct ZeroSlicePayload {
    UniPoly slice;  // contributor's bivariate lift, sliced at the recipient
};

struct FullDistPayload {
    std::string instance;
    size_t from_pos = 0;
    kzg::Commitment commitment;  // C_{F(x,j)} of the sender
    Scalar value;
    kzg::Witness witness;
};

struct Message {
    std::string from, to, tag;
    std::variant<ReducePayload, ZeroCommitPayload, ZeroSlicePayload, FullDistPayload> body;
};

// Round-based bus: post during a round, deliver at the boundary. Delivery
// order is a deterministic function of the scheduler seed; protocol
// handlers aggregate by sender so any order yields the same state.
class Bus {
  public:
    using Tamper = std::function<void(Message&)>;

    explicit Bus(uint64_t scheduler_seed = 0) : seed_(scheduler_seed) {}
    void set_tamper(Tamper t) { tamper_ = std::move(t); }
    void post(Message m);
    std::map<std::string, std::vector<Message>> deliver();
    size_t posted() const { return seq_; }

  private:
    uint64_t seed_;
    uint64_t round_ = 0;
    uint64_t seq_ = 0;
    std::vector<std::pair<uint64_t, Message>> queue_;
    Tamper tamper_;
};

// ---- committee state ----

struct InstanceState {
    std::string name;  // "alpha" | "theta"
    std::vector<dpss::FullShare> shares;        // aligned with cfg.members
    std::vector<kzg::Commitment> commitments;   // C_{f(i,.)} per member
};

struct State {
    std::shared_ptr<const Suite> suite;
    dpss::Config cfg;
    size_t index_depth = 1;  // position of this committee in the ABET hierarchy
    kzg::Params params;
    InstanceState alpha, theta;
};

class HandoffError : public std::runtime_error {
  public:
    HandoffError(std::string accused_member, const std::string& what)
        : std::runtime_error(what), accused(std::move(accused_member)) {}
    std::string accused;
};

struct HandoffOptions {
    uint64_t scheduler_seed = 0;
    bool parallel = false;
    Bus::Tamper tamper;  // fault injection for tests
};

struct MemberTranscript {
    std::string member;
    struct PerInstance {
        kzg::Commitment reduced;    // C_{f(x,j)}
        kzg::Commitment proactive;  // C_{F(x,j)}
        std::vector<kzg::Witness> reduce_witnesses;  // w_{f(i,j)}, old quorum points
        std::vector<kzg::Witness> full_witnesses;    // w_{F(i,j)}, new member points
    };
    PerInstance alpha, theta;
};

struct HandoffTranscript {
    uint64_t from_epoch = 0;
    uint64_t to_epoch = 0;
    std::vector<MemberTranscript> members;
};

struct HandoffResult {
    State next;
    HandoffTranscript transcript;
};

// Honest dealer: shares both master scalars over the committee and posts
// per-member full-share commitments. The KZG degree bound must cover the
// largest 2t the deployment will reach.
State setup(std::shared_ptr<const Suite> suite, dpss::Config cfg, size_t index_depth,
            const Scalar& alpha_secret, const Scalar& theta_secret, size_t kzg_bound,
            Rng& rng);

// Share reduction, proactivization (one zero polynomial reused by both
// instances), and full-share distribution; every transmitted share is
// checked against a KZG commitment and a bad value aborts naming the
// sender. Membership and threshold may change across the handoff.
HandoffResult handoff(const State& old_state, dpss::Config new_cfg, Rng& rng,
                      const HandoffOptions& opts = {});

bool verify_transcript(const kzg::Params& params, const HandoffTranscript& t);

// Zero-hole resharing on its own: 2t+1 members contribute degree-2t
// univariate zero polynomials, each bound by a commitment opening 0 at 0,
// resharded along x into per-member reduced shares of a common bivariate.
struct ZeroShares {
    std::vector<dpss::ReducedShare> shares;  // f'(., pos_j) per member
    std::vector<std::string> contributors;
};
ZeroShares zero_shares(const State& st, Rng& rng, const HandoffOptions& opts = {});

// A quorum of t+1 members reconstructs (alpha, theta) transiently, issues
// an ABET key at this committee's hierarchy depth, wipes the secrets, and
// records the grant.
// quorum = 0 means the default t+1; smaller quorums fail in open().
abet::SecretKey open_and_keygen(const State& st, const abet::Mpk& mpk,
                                const AccessPolicy& policy, const GElem& modifier_pk,
                                GrantStore& grants, Rng& rng, size_t quorum = 0);

void write_state(Writer& w, const State& st);
State read_state(Reader& r, std::shared_ptr<const Suite> suite);
void write_transcript(Writer& w, const HandoffTranscript& t);
HandoffTranscript read_transcript(Reader& r);
Bytes transcript_bytes(const HandoffTranscript& t);

}  // namespace redact::committee

#endif
