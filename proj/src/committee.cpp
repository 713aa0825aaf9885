#include "redact/committee.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace redact::committee {

void Bus::post(Message m) {
    if (tamper_) tamper_(m);
    queue_.emplace_back(seq_++, std::move(m));
}

std::map<std::string, std::vector<Message>> Bus::deliver() {
    std::mt19937_64 sched(seed_ ^ (0x9e3779b97f4a7c15ULL * ++round_));
    std::vector<size_t> order(queue_.size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::shuffle(order.begin(), order.end(), sched);
    std::map<std::string, std::vector<Message>> inboxes;
    for (size_t idx : order) {
        Message& m = queue_[idx].second;
        inboxes[m.to].push_back(std::move(m));
    }
    queue_.clear();
    return inboxes;
}

namespace {

// Per-member work; each slot is written by exactly one worker, and errors
// rethrow in member order so accusations stay deterministic.
void for_each_member(bool parallel, size_t n, const std::function<void(size_t)>& work) {
    if (!parallel || n < 2) {
        for (size_t i = 0; i < n; i++) work(i);
        return;
    }
    size_t hw = std::thread::hardware_concurrency();
    size_t workers = std::min(n, hw == 0 ? size_t(2) : hw);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    work(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct ZeroContribution {
    UniPoly univariate;   // u(y), deg 2t, u(0) = 0
    BivarPoly lift;       // g(x,y), dims (t, 2t), g(0,y) = u(y)
    kzg::Commitment commitment;
    kzg::Witness at_zero;
};

ZeroContribution make_zero_contribution(const Field& f, size_t t, const kzg::Params& params,
                                        Rng& rng) {
    ZeroContribution c;
    c.univariate = UniPoly::random(f, 2 * t, rng);
    c.univariate.c[0] = f.zero();
    c.commitment = kzg::commit(params, c.univariate);
    c.at_zero = kzg::create_witness(params, c.univariate, f.zero());
    c.lift = BivarPoly::random(f, t, 2 * t, f.zero(), rng);
    for (size_t e = 0; e <= 2 * t; e++) c.lift.c[0][e] = c.univariate.c[e];
    return c;
}

void truncate_degree(UniPoly& p, size_t degree) {
    if (p.c.size() > degree + 1) p.c.resize(degree + 1);
}

const InstanceState& instance_of(const State& st, const std::string& name) {
    return name == "alpha" ? st.alpha : st.theta;
}

}  // namespace

State setup(std::shared_ptr<const Suite> suite, dpss::Config cfg, size_t index_depth,
            const Scalar& alpha_secret, const Scalar& theta_secret, size_t kzg_bound,
            Rng& rng) {
    cfg.validate();
    if (kzg_bound < 2 * cfg.t) throw std::invalid_argument("kzg bound below 2t");
    State st;
    st.suite = suite;
    st.cfg = std::move(cfg);
    st.index_depth = index_depth;
    auto [trapdoor, params] = kzg::setup(suite, kzg_bound, rng);
    trapdoor.wipe();
    st.params = std::move(params);
    for (auto* inst : {&st.alpha, &st.theta}) {
        inst->name = inst == &st.alpha ? "alpha" : "theta";
        inst->shares = dpss::share(inst == &st.alpha ? alpha_secret : theta_secret, st.cfg, rng);
        inst->commitments.reserve(st.cfg.n);
        for (const auto& sh : inst->shares) {
            inst->commitments.push_back(kzg::commit(st.params, sh.poly));
        }
    }
    return st;
}

HandoffResult handoff(const State& old_state, dpss::Config new_cfg, Rng& rng,
                      const HandoffOptions& opts) {
    old_state.cfg.validate();
    new_cfg.validate();
    const Field& f = old_state.suite->field();
    const kzg::Params& params = old_state.params;
    const size_t t_old = old_state.cfg.t;
    const size_t t_new = new_cfg.t;
    const size_t dy = std::max(2 * t_old, 2 * t_new);
    if (new_cfg.n < dy + 1) {
        throw std::invalid_argument("new committee too small for the handoff dimension");
    }
    if (params.degree_bound() < dy) throw std::invalid_argument("kzg bound below handoff degree");

    const size_t n_new = new_cfg.n;
    const size_t quorum = t_old + 1;
    const size_t contributors = 2 * t_new + 1;
    const char* instances[2] = {"alpha", "theta"};

    // Independent per-member randomness so the parallel executor is
    // bit-identical to the serial one.
    std::vector<SeededRng> member_rngs;
    member_rngs.reserve(n_new);
    for (size_t j = 0; j < n_new; j++) member_rngs.emplace_back(rng.next_u64());

    Bus bus(opts.scheduler_seed);
    bus.set_tamper(opts.tamper);

    // Round 1: share reduction sends. The first t_old+1 old members each
    // evaluate their full share at every new member's position.
    for (const char* iname : instances) {
        const InstanceState& inst = instance_of(old_state, iname);
        for (size_t o = 0; o < quorum; o++) {
            const auto& full = inst.shares[o];
            for (size_t j = 0; j < n_new; j++) {
                Scalar pos = f.from_u64(j + 1);
                ReducePayload p{iname, full.holder, full.poly.eval(pos),
                                kzg::create_witness(params, full.poly, pos)};
                bus.post(Message{old_state.cfg.members[o], new_cfg.members[j],
                                 std::string("reduce.") + iname, std::move(p)});
            }
        }
    }
    auto round1 = bus.deliver();

    // Round 2: every new member verifies the received evaluations against
    // the old committee's posted commitments, interpolates its reduced
    // share, and (if among the first 2t_new+1) prepares a zero-sharing
    // contribution.
    struct ReducedSlot {
        UniPoly alpha_poly, theta_poly;
    };
    std::vector<ReducedSlot> reduced(n_new);
    std::vector<std::vector<Message>> round2_out(n_new);
    for_each_member(opts.parallel, n_new, [&](size_t j) {
        const std::string& me = new_cfg.members[j];
        Scalar my_pos = f.from_u64(j + 1);
        auto inbox_it = round1.find(me);
        auto inbox = inbox_it == round1.end() ? std::vector<Message>{} : inbox_it->second;
        for (const char* iname : instances) {
            const InstanceState& inst = instance_of(old_state, iname);
            std::map<size_t, const ReducePayload*> got;
            for (const auto& m : inbox) {
                const auto* p = std::get_if<ReducePayload>(&m.body);
                if (!p || p->instance != iname) continue;
                got[p->from_pos] = p;
            }
            std::vector<std::pair<Scalar, Scalar>> points;
            points.reserve(quorum);
            for (size_t o = 0; o < quorum; o++) {
                auto it = got.find(o + 1);
                if (it == got.end()) {
                    throw HandoffError(old_state.cfg.members[o], "missing reduction share");
                }
                const ReducePayload& p = *it->second;
                bool ok = p.witness.point == my_pos && p.witness.value == p.value &&
                          kzg::verify_eval(params, inst.commitments[o], p.witness);
                if (!ok) {
                    throw HandoffError(old_state.cfg.members[o],
                                       "reduction share fails commitment verification");
                }
                points.emplace_back(f.from_u64(o + 1), p.value);
            }
            UniPoly r = interpolate(points);
            truncate_degree(r, t_new);
            (std::string(iname) == "alpha" ? reduced[j].alpha_poly : reduced[j].theta_poly) =
                std::move(r);
        }
        if (j < contributors) {
            ZeroContribution c = make_zero_contribution(f, t_new, params, member_rngs[j]);
            for (size_t i = 0; i < n_new; i++) {
                round2_out[j].push_back(Message{me, new_cfg.members[i], "zero.commit",
                                                ZeroCommitPayload{c.commitment, c.at_zero}});
                round2_out[j].push_back(
                    Message{me, new_cfg.members[i], "zero.slice",
                            ZeroSlicePayload{c.lift.slice_y(f.from_u64(i + 1))}});
            }
            c.univariate.wipe();
            c.lift.wipe();
        }
    });
    for (auto& out : round2_out) {
        for (auto& m : out) bus.post(std::move(m));
    }
    auto round2 = bus.deliver();

    // Round 3: validate the zero contributions, proactivize both
    // instances with the common zero polynomial, commit, and send the
    // full-share distribution values (first dy+1 members suffice).
    struct ProactiveSlot {
        UniPoly alpha_poly, theta_poly;
    };
    std::vector<ProactiveSlot> proactive(n_new);
    std::vector<MemberTranscript> pieces(n_new);
    std::vector<std::vector<Message>> round3_out(n_new);
    for_each_member(opts.parallel, n_new, [&](size_t j) {
        const std::string& me = new_cfg.members[j];
        auto inbox_it = round2.find(me);
        auto inbox = inbox_it == round2.end() ? std::vector<Message>{} : inbox_it->second;

        std::map<std::string, const ZeroCommitPayload*> commits;
        std::map<std::string, const ZeroSlicePayload*> slices;
        for (const auto& m : inbox) {
            if (const auto* c = std::get_if<ZeroCommitPayload>(&m.body)) commits[m.from] = c;
            if (const auto* s = std::get_if<ZeroSlicePayload>(&m.body)) slices[m.from] = s;
        }
        UniPoly zsum = UniPoly::zero(f, t_new);
        for (size_t c = 0; c < contributors; c++) {
            const std::string& who = new_cfg.members[c];
            auto ci = commits.find(who);
            auto si = slices.find(who);
            if (ci == commits.end() || si == slices.end()) {
                throw HandoffError(who, "missing zero-sharing contribution");
            }
            const ZeroCommitPayload& zc = *ci->second;
            bool ok = zc.at_zero.point.is_zero() && zc.at_zero.value.is_zero() &&
                      kzg::verify_eval(params, zc.commitment, zc.at_zero);
            if (!ok) {
                throw HandoffError(who, "zero contribution has a nonzero hole");
            }
            zsum = zsum + si->second->slice;
        }

        MemberTranscript piece;
        piece.member = me;
        for (const char* iname : instances) {
            bool is_alpha = std::string(iname) == "alpha";
            const UniPoly& red = is_alpha ? reduced[j].alpha_poly : reduced[j].theta_poly;
            UniPoly full = red + zsum;
            auto& tp = is_alpha ? piece.alpha : piece.theta;
            tp.reduced = kzg::commit(params, red);
            tp.proactive = kzg::commit(params, full);
            for (size_t o = 0; o < quorum; o++) {
                tp.reduce_witnesses.push_back(
                    kzg::create_witness(params, red, f.from_u64(o + 1)));
            }
            for (size_t i = 0; i < n_new; i++) {
                tp.full_witnesses.push_back(
                    kzg::create_witness(params, full, f.from_u64(i + 1)));
            }
            if (j < dy + 1) {
                for (size_t i = 0; i < n_new; i++) {
                    round3_out[j].push_back(
                        Message{me, new_cfg.members[i], std::string("fulldist.") + iname,
                                FullDistPayload{iname, j + 1, tp.proactive,
                                                full.eval(f.from_u64(i + 1)),
                                                tp.full_witnesses[i]}});
                }
            }
            (is_alpha ? proactive[j].alpha_poly : proactive[j].theta_poly) = std::move(full);
        }
        pieces[j] = std::move(piece);
    });
    for (auto& out : round3_out) {
        for (auto& m : out) bus.post(std::move(m));
    }
    auto round3 = bus.deliver();

    // Round 4: assemble the new full shares from dy+1 verified
    // evaluations, truncating the carried y-degree to the new 2t.
    State next;
    next.suite = old_state.suite;
    next.cfg = std::move(new_cfg);
    next.cfg.epoch = old_state.cfg.epoch + 1;
    next.index_depth = old_state.index_depth;
    next.params = params;
    next.alpha.name = "alpha";
    next.theta.name = "theta";
    next.alpha.shares.resize(n_new);
    next.theta.shares.resize(n_new);
    next.alpha.commitments.resize(n_new);
    next.theta.commitments.resize(n_new);
    for_each_member(opts.parallel, n_new, [&](size_t i) {
        const std::string& me = next.cfg.members[i];
        Scalar my_pos = f.from_u64(i + 1);
        auto inbox_it = round3.find(me);
        auto inbox = inbox_it == round3.end() ? std::vector<Message>{} : inbox_it->second;
        for (const char* iname : instances) {
            bool is_alpha = std::string(iname) == "alpha";
            std::map<size_t, const FullDistPayload*> got;
            for (const auto& m : inbox) {
                const auto* p = std::get_if<FullDistPayload>(&m.body);
                if (!p || p->instance != iname) continue;
                got[p->from_pos] = p;
            }
            std::vector<std::pair<Scalar, Scalar>> points;
            points.reserve(dy + 1);
            for (size_t s = 0; s < dy + 1; s++) {
                auto it = got.find(s + 1);
                if (it == got.end()) {
                    throw HandoffError(next.cfg.members[s], "missing full-share value");
                }
                const FullDistPayload& p = *it->second;
                bool ok = p.witness.point == my_pos && p.witness.value == p.value &&
                          kzg::verify_eval(params, p.commitment, p.witness);
                if (!ok) {
                    throw HandoffError(next.cfg.members[s],
                                       "full-share value fails commitment verification");
                }
                points.emplace_back(f.from_u64(s + 1), p.value);
            }
            UniPoly along_y = interpolate(points);
            truncate_degree(along_y, 2 * t_new);
            auto& inst = is_alpha ? next.alpha : next.theta;
            inst.shares[i] = dpss::FullShare{i + 1, std::move(along_y)};
            inst.commitments[i] = kzg::commit(params, inst.shares[i].poly);
        }
    });

    HandoffResult result;
    result.transcript.from_epoch = old_state.cfg.epoch;
    result.transcript.to_epoch = next.cfg.epoch;
    result.transcript.members = std::move(pieces);
    result.next = std::move(next);
    return result;
}

bool verify_transcript(const kzg::Params& params, const HandoffTranscript& t) {
    for (const auto& piece : t.members) {
        for (const auto* side : {&piece.alpha, &piece.theta}) {
            for (const auto& w : side->reduce_witnesses) {
                if (!kzg::verify_eval(params, side->reduced, w)) return false;
            }
            for (const auto& w : side->full_witnesses) {
                if (!kzg::verify_eval(params, side->proactive, w)) return false;
            }
        }
    }
    return true;
}

ZeroShares zero_shares(const State& st, Rng& rng, const HandoffOptions& opts) {
    st.cfg.validate();
    const Field& f = st.suite->field();
    const size_t n = st.cfg.n;
    const size_t t = st.cfg.t;
    const size_t contributors = 2 * t + 1;

    std::vector<SeededRng> member_rngs;
    member_rngs.reserve(contributors);
    for (size_t c = 0; c < contributors; c++) member_rngs.emplace_back(rng.next_u64());

    Bus bus(opts.scheduler_seed);
    bus.set_tamper(opts.tamper);
    for (size_t c = 0; c < contributors; c++) {
        ZeroContribution zc = make_zero_contribution(f, t, st.params, member_rngs[c]);
        for (size_t i = 0; i < n; i++) {
            bus.post(Message{st.cfg.members[c], st.cfg.members[i], "zero.commit",
                             ZeroCommitPayload{zc.commitment, zc.at_zero}});
            bus.post(Message{st.cfg.members[c], st.cfg.members[i], "zero.slice",
                             ZeroSlicePayload{zc.lift.slice_y(f.from_u64(i + 1))}});
        }
    }
    auto inboxes = bus.deliver();

    ZeroShares out;
    out.contributors.assign(st.cfg.members.begin(), st.cfg.members.begin() + contributors);
    out.shares.resize(n);
    for_each_member(opts.parallel, n, [&](size_t i) {
        const auto& inbox = inboxes.at(st.cfg.members[i]);
        std::map<std::string, const ZeroCommitPayload*> commits;
        std::map<std::string, const ZeroSlicePayload*> slices;
        for (const auto& m : inbox) {
            if (const auto* c = std::get_if<ZeroCommitPayload>(&m.body)) commits[m.from] = c;
            if (const auto* s = std::get_if<ZeroSlicePayload>(&m.body)) slices[m.from] = s;
        }
        UniPoly acc = UniPoly::zero(f, t);
        for (size_t c = 0; c < contributors; c++) {
            const std::string& who = st.cfg.members[c];
            const ZeroCommitPayload& zc = *commits.at(who);
            bool ok = zc.at_zero.point.is_zero() && zc.at_zero.value.is_zero() &&
                      kzg::verify_eval(st.params, zc.commitment, zc.at_zero);
            if (!ok) throw HandoffError(who, "zero contribution has a nonzero hole");
            acc = acc + slices.at(who)->slice;
        }
        out.shares[i] = dpss::ReducedShare{i + 1, std::move(acc)};
    });
    return out;
}

abet::SecretKey open_and_keygen(const State& st, const abet::Mpk& mpk,
                                const AccessPolicy& policy, const GElem& modifier_pk,
                                GrantStore& grants, Rng& rng, size_t quorum) {
    if (quorum == 0) quorum = st.cfg.t + 1;
    const Field& f = st.suite->field();
    Scalar alpha = dpss::open(std::span(st.alpha.shares).first(std::min(quorum, st.alpha.shares.size())),
                              st.cfg.t);
    Scalar theta = dpss::open(std::span(st.theta.shares).first(std::min(quorum, st.theta.shares.size())),
                              st.cfg.t);
    auto idx = abet::IndexVector::committee(f, st.index_depth);
    abet::SecretKey key = abet::keygen(mpk, alpha, theta, policy, idx, rng);
    alpha.wipe();
    theta.wipe();
    grants.append(GrantRecord{st.cfg.epoch, st.index_depth, modifier_pk, policy.to_string()});
    return key;
}

// ---- serialization ----

namespace {

void write_poly(Writer& w, const UniPoly& p) {
    w.put_u64(p.c.size());
    for (const auto& c : p.c) w.put_scalar(c);
}

UniPoly read_poly(Reader& r) {
    UniPoly p;
    size_t n = r.get_u64();
    for (size_t i = 0; i < n; i++) p.c.push_back(r.get_scalar());
    return p;
}

void write_instance(Writer& w, const InstanceState& inst) {
    w.put_text(inst.name);
    w.put_u64(inst.shares.size());
    for (const auto& sh : inst.shares) {
        w.put_u64(sh.holder);
        write_poly(w, sh.poly);
    }
    for (const auto& c : inst.commitments) kzg::write_commitment(w, c);
}

InstanceState read_instance(Reader& r) {
    InstanceState inst;
    inst.name = r.get_text();
    size_t n = r.get_u64();
    for (size_t i = 0; i < n; i++) {
        dpss::FullShare sh;
        sh.holder = r.get_u64();
        sh.poly = read_poly(r);
        inst.shares.push_back(std::move(sh));
    }
    for (size_t i = 0; i < n; i++) inst.commitments.push_back(kzg::read_commitment(r));
    return inst;
}

}  // namespace

void write_state(Writer& w, const State& st) {
    w.put_u64(1);
    w.put_u64(st.cfg.n);
    w.put_u64(st.cfg.t);
    w.put_u64(st.cfg.epoch);
    for (const auto& m : st.cfg.members) w.put_text(m);
    w.put_u64(st.index_depth);
    kzg::write_params(w, st.params);
    write_instance(w, st.alpha);
    write_instance(w, st.theta);
}

State read_state(Reader& r, std::shared_ptr<const Suite> suite) {
    if (r.get_u64() != 1) throw SerialError("bad committee state version");
    State st;
    st.suite = suite;
    st.cfg.n = r.get_u64();
    st.cfg.t = r.get_u64();
    st.cfg.epoch = r.get_u64();
    for (size_t i = 0; i < st.cfg.n; i++) st.cfg.members.push_back(r.get_text());
    st.index_depth = r.get_u64();
    st.params = kzg::read_params(r, suite);
    st.alpha = read_instance(r);
    st.theta = read_instance(r);
    return st;
}

namespace {

void write_witness_list(Writer& w, const std::vector<kzg::Witness>& list) {
    w.put_u64(list.size());
    for (const auto& wit : list) kzg::write_witness(w, wit);
}

std::vector<kzg::Witness> read_witness_list(Reader& r) {
    std::vector<kzg::Witness> list;
    size_t n = r.get_u64();
    for (size_t i = 0; i < n; i++) list.push_back(kzg::read_witness(r));
    return list;
}

}  // namespace

void write_transcript(Writer& w, const HandoffTranscript& t) {
    w.put_u64(1);
    w.put_u64(t.from_epoch);
    w.put_u64(t.to_epoch);
    w.put_u64(t.members.size());
    for (const auto& piece : t.members) {
        w.put_text(piece.member);
        for (const auto* side : {&piece.alpha, &piece.theta}) {
            kzg::write_commitment(w, side->reduced);
            kzg::write_commitment(w, side->proactive);
            write_witness_list(w, side->reduce_witnesses);
            write_witness_list(w, side->full_witnesses);
        }
    }
}

HandoffTranscript read_transcript(Reader& r) {
    if (r.get_u64() != 1) throw SerialError("bad transcript version");
    HandoffTranscript t;
    t.from_epoch = r.get_u64();
    t.to_epoch = r.get_u64();
    size_t n = r.get_u64();
    for (size_t i = 0; i < n; i++) {
        MemberTranscript piece;
        piece.member = r.get_text();
        for (auto* side : {&piece.alpha, &piece.theta}) {
            side->reduced = kzg::read_commitment(r);
            side->proactive = kzg::read_commitment(r);
            side->reduce_witnesses = read_witness_list(r);
            side->full_witnesses = read_witness_list(r);
        }
        t.members.push_back(std::move(piece));
    }
    return t;
}

Bytes transcript_bytes(const HandoffTranscript& t) {
    Writer w;
    write_transcript(w, t);
    return w.take();
}

}  // namespace redact::committee
