#include "redact/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>

#include "redact/bench.hpp"
#include "redact/chain.hpp"
#include "redact/committee.hpp"
#include "redact/stats.hpp"

namespace redact::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
  public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

class OperationFailed : public std::runtime_error {
  public:
    explicit OperationFailed(const std::string& what) : std::runtime_error(what) {}
};

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), data.size());
}

// Every binary artifact starts with a version and the profile name, so a
// file names the suite it was produced under.
Writer profile_writer(const Suite& suite) {
    Writer w;
    w.put_u64(1);
    w.put_text(suite.name());
    return w;
}

struct Loaded {
    std::shared_ptr<const Suite> suite;
    Bytes data;
    Reader reader() const { return Reader(data, suite.get()); }
};

Loaded load_profiled(const std::string& path) {
    Loaded l;
    l.data = read_file(path);
    Reader probe(l.data, nullptr);
    if (probe.get_u64() != 1) throw UsageError("unsupported file version: " + path);
    l.suite = Suite::from_name(probe.get_text());
    return l;
}

void skip_header(Reader& r) {
    r.get_u64();
    r.get_text();
}

abet::Mpk load_mpk(const std::string& path, std::shared_ptr<const Suite>* suite_out) {
    Loaded l = load_profiled(path);
    Reader r = l.reader();
    skip_header(r);
    abet::Mpk mpk = abet::read_mpk(r, l.suite);
    if (suite_out) *suite_out = l.suite;
    return mpk;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

sigma::Keypair keypair_from_seed(const Suite& suite, uint64_t seed) {
    SeededRng rng(seed ^ 0x5167fa11ded5ee3dULL);
    return sigma::keygen(suite, rng);
}

std::vector<AttributeSet> load_probes(const std::string& path, const Field& f) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<AttributeSet> probes;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> labels;
        std::string cur;
        for (char c : line + " ") {
            if (std::isspace(uint8_t(c)) || c == ',') {
                if (!cur.empty()) labels.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!labels.empty()) probes.push_back(AttributeSet::of(std::move(labels), f));
    }
    if (probes.empty()) throw UsageError("no probes in " + path);
    return probes;
}

// ---- shared option bag ----

struct Options {
    std::string profile = "mock";
    uint64_t seed = 1;
    size_t k = 4;
    std::string out, out2;
    std::string params_path, master_path, committee_path, key_path, grants_path;
    std::string tx_path, tx2_path, blackbox_path, probes_path, scenario_path;
    std::string content, content_file;
    std::string attrs_csv, members_csv, policy;
    size_t depth = 1;
    size_t t = 1;
    size_t kzg_bound = 0;
    uint64_t author_seed = 1;
    uint64_t modifier_seed = 2;
    size_t blocks = 10;
    size_t txs = 100;
    uint32_t difficulty = 8;
    std::string chain_dir;
    size_t height = 0;
    size_t tx_index = 0;
    bool preserve_attrs = false;
    double eps = 0.5;
    size_t trials = 1;
    std::vector<std::string> transcripts;
    std::string sizes = "10:100:10";
    size_t reps = 5;
    std::string t_values = "2,3,4,5,6";
};

Bytes content_bytes(const Options& opt) {
    if (!opt.content_file.empty()) return read_file(opt.content_file);
    return to_bytes(opt.content);
}

// ---- command handlers ----

int cmd_setup(const Options& opt, std::ostream& out) {
    auto suite = Suite::from_name(opt.profile);
    SeededRng rng(opt.seed);
    abet::Master master = abet::setup(suite, opt.k, rng);
    Writer pw = profile_writer(*suite);
    abet::write_mpk(pw, master.mpk);
    write_file(opt.params_path, pw.data());
    Writer mw = profile_writer(*suite);
    abet::write_master(mw, master);
    write_file(opt.master_path, mw.data());
    master.wipe_secrets();
    out << json{{"cmd", "setup"}, {"profile", suite->name()}, {"k", opt.k},
                {"params", opt.params_path}, {"master", opt.master_path}}
        << "\n";
    return 0;
}

int cmd_committee_share(const Options& opt, std::ostream& out) {
    Loaded l = load_profiled(opt.master_path);
    Reader r = l.reader();
    skip_header(r);
    abet::Master master = abet::read_master(r, l.suite);
    auto members = split_list(opt.members_csv);
    std::sort(members.begin(), members.end());
    dpss::Config cfg;
    cfg.n = members.size();
    cfg.t = opt.t;
    cfg.epoch = 0;
    cfg.members = std::move(members);
    size_t bound = opt.kzg_bound ? opt.kzg_bound : 2 * opt.t;
    SeededRng rng(opt.seed);
    auto st = committee::setup(l.suite, std::move(cfg), opt.depth, master.alpha, master.theta,
                               bound, rng);
    master.wipe_secrets();
    Writer w = profile_writer(*l.suite);
    committee::write_state(w, st);
    write_file(opt.out, w.data());
    out << json{{"cmd", "committee share"}, {"n", st.cfg.n}, {"t", st.cfg.t},
                {"depth", st.index_depth}, {"epoch", st.cfg.epoch}, {"out", opt.out}}
        << "\n";
    return 0;
}

committee::State load_committee(const std::string& path) {
    Loaded l = load_profiled(path);
    Reader r = l.reader();
    skip_header(r);
    return committee::read_state(r, l.suite);
}

int cmd_committee_handoff(const Options& opt, std::ostream& out) {
    committee::State st = load_committee(opt.committee_path);
    SeededRng rng(opt.seed);

    struct Step {
        size_t t;
        std::vector<std::string> members;
    };
    std::vector<Step> steps;
    if (!opt.scenario_path.empty()) {
        std::ifstream in(opt.scenario_path);
        if (!in) throw UsageError("cannot open " + opt.scenario_path);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            Step step;
            if (!(ls >> step.t)) continue;
            std::string name;
            while (ls >> name) step.members.push_back(name);
            if (!step.members.empty()) steps.push_back(std::move(step));
        }
        if (steps.empty()) throw UsageError("no handoff steps in " + opt.scenario_path);
    } else {
        Step step;
        step.t = opt.t;
        step.members = split_list(opt.members_csv);
        steps.push_back(std::move(step));
    }

    Bytes all_transcripts;
    for (auto& step : steps) {
        std::sort(step.members.begin(), step.members.end());
        dpss::Config cfg;
        cfg.n = step.members.size();
        cfg.t = step.t;
        cfg.members = std::move(step.members);
        auto res = committee::handoff(st, std::move(cfg), rng);
        bool tv = committee::verify_transcript(res.next.params, res.transcript);
        out << json{{"cmd", "committee handoff"}, {"epoch", res.next.cfg.epoch},
                    {"n", res.next.cfg.n}, {"t", res.next.cfg.t},
                    {"transcript_ok", tv}}
            << "\n";
        if (!tv) throw OperationFailed("handoff transcript failed verification");
        if (!opt.out2.empty()) {
            Writer tw = profile_writer(*st.suite);
            committee::write_transcript(tw, res.transcript);
            all_transcripts = tw.take();
        }
        st = std::move(res.next);
    }
    Writer w = profile_writer(*st.suite);
    committee::write_state(w, st);
    write_file(opt.out, w.data());
    if (!opt.out2.empty()) write_file(opt.out2, all_transcripts);
    return 0;
}

GrantStore load_grants(const std::string& path, const Suite& suite) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) return GrantStore{};
    Bytes data = read_file(path);
    Reader r(data, &suite);
    skip_header(r);
    size_t n = r.get_u64();
    GrantStore store;
    for (size_t i = 0; i < n; i++) store.append(read_grant(r));
    return store;
}

void store_grants(const std::string& path, const Suite& suite, const GrantStore& store) {
    Writer w = profile_writer(suite);
    w.put_u64(store.records().size());
    for (const auto& rec : store.records()) write_grant(w, rec);
    write_file(path, w.data());
}

int cmd_committee_grant(const Options& opt, std::ostream& out) {
    committee::State st = load_committee(opt.committee_path);
    std::shared_ptr<const Suite> suite;
    abet::Mpk mpk = load_mpk(opt.params_path, &suite);
    if (suite->profile() != st.suite->profile()) throw UsageError("profile mismatch");
    SeededRng rng(opt.seed);
    sigma::Keypair modifier = keypair_from_seed(*st.suite, opt.modifier_seed);
    GrantStore grants = load_grants(opt.grants_path, *st.suite);
    abet::SecretKey key = committee::open_and_keygen(
        st, mpk, AccessPolicy::parse(opt.policy), modifier.pk, grants, rng);
    store_grants(opt.grants_path, *st.suite, grants);

    Writer kw = profile_writer(*st.suite);
    abet::write_key(kw, key);
    write_file(opt.out, kw.data());

    if (!opt.blackbox_path.empty()) {
        // append to (or create) the try-all-keys fixture
        std::vector<abet::SecretKey> keys;
        std::ifstream probe(opt.blackbox_path, std::ios::binary);
        if (probe) {
            Loaded l = load_profiled(opt.blackbox_path);
            Reader r = l.reader();
            skip_header(r);
            size_t n = r.get_u64();
            for (size_t i = 0; i < n; i++) keys.push_back(abet::read_key(r, *l.suite));
        }
        keys.push_back(key);
        Writer bw = profile_writer(*st.suite);
        bw.put_u64(keys.size());
        for (const auto& k : keys) abet::write_key(bw, k);
        write_file(opt.blackbox_path, bw.data());
    }
    out << json{{"cmd", "committee grant"}, {"policy", key.policy_text},
                {"depth", key.depth}, {"epoch", st.cfg.epoch}, {"key", opt.out},
                {"grants", grants.records().size()}}
        << "\n";
    return 0;
}

abet::SecretKey load_key(const std::string& path, const Suite& expected) {
    Loaded l = load_profiled(path);
    if (l.suite.get() != &expected) throw UsageError("profile mismatch: " + path);
    Reader r = l.reader();
    skip_header(r);
    return abet::read_key(r, *l.suite);
}

rewrite::MutableTransaction load_tx(const std::string& path,
                                    std::shared_ptr<const Suite>* suite_out) {
    Loaded l = load_profiled(path);
    Reader r = l.reader();
    skip_header(r);
    if (suite_out) *suite_out = l.suite;
    return rewrite::read_tx(r, *l.suite);
}

void store_tx(const std::string& path, const Suite& suite,
              const rewrite::MutableTransaction& tx) {
    Writer w = profile_writer(suite);
    rewrite::write_tx(w, tx);
    write_file(path, w.data());
}

int cmd_tx_hash(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    abet::Mpk mpk = load_mpk(opt.params_path, &suite);
    SeededRng rng(opt.seed);
    sigma::Keypair author = keypair_from_seed(*suite, opt.author_seed);
    auto attrs = AttributeSet::of(split_list(opt.attrs_csv), suite->field());
    auto tx = rewrite::hash_transaction(mpk, author, content_bytes(opt), attrs,
                                        abet::IndexVector::committee(suite->field(), opt.depth),
                                        rng);
    store_tx(opt.out, *suite, tx);
    out << json{{"cmd", "tx hash"}, {"attrs", tx.attrs().labels()},
                {"b", hex(tx.hash.b.to_bytes())}, {"out", opt.out}}
        << "\n";
    return 0;
}

int cmd_tx_verify(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    auto tx = load_tx(opt.tx_path, &suite);
    bool ok = rewrite::verify_transaction(*suite, tx);
    out << json{{"cmd", "tx verify"}, {"ok", ok}} << "\n";
    return ok ? 0 : 1;
}

int cmd_tx_adapt(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    abet::Mpk mpk = load_mpk(opt.params_path, &suite);
    auto key = load_key(opt.key_path, *suite);
    std::shared_ptr<const Suite> suite_check;
    auto tx = load_tx(opt.tx_path, &suite_check);
    if (suite_check.get() != suite.get()) throw UsageError("profile mismatch: " + opt.tx_path);
    SeededRng rng(opt.seed);
    sigma::Keypair modifier = keypair_from_seed(*suite, opt.modifier_seed);
    rewrite::AdaptOptions adapt;
    adapt.preserve_attributes = opt.preserve_attrs;
    if (!opt.attrs_csv.empty()) {
        adapt.new_attrs = AttributeSet::of(split_list(opt.attrs_csv), suite->field());
        adapt.new_depth = opt.depth;
    }
    auto tx2 = rewrite::adapt_transaction(mpk, key, modifier, tx, content_bytes(opt), rng,
                                          adapt);
    store_tx(opt.out, *suite, tx2);
    out << json{{"cmd", "tx adapt"}, {"b", hex(tx2.hash.b.to_bytes())}, {"out", opt.out}}
        << "\n";
    return 0;
}

int cmd_chain_mine(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    abet::Mpk mpk = load_mpk(opt.params_path, &suite);
    SeededRng rng(opt.seed);
    sigma::Keypair author = keypair_from_seed(*suite, opt.author_seed);
    auto attrs = AttributeSet::of(
        opt.attrs_csv.empty() ? std::vector<std::string>{"open"} : split_list(opt.attrs_csv),
        suite->field());
    auto idx = abet::IndexVector::committee(suite->field(), opt.depth);

    chain::Chain c;
    c.suite = suite;
    c.difficulty = opt.difficulty;
    for (size_t b = 0; b < opt.blocks; b++) {
        std::vector<chain::Transaction> txs;
        if (b == 0) {
            for (const auto& path : opt.transcripts) {
                txs.push_back(chain::Transaction::transcript_tx(read_file(path)));
            }
            if (!opt.grants_path.empty()) {
                std::ifstream probe(opt.grants_path, std::ios::binary);
                if (probe) {
                    txs.push_back(chain::Transaction::immutable_tx(read_file(opt.grants_path)));
                }
            }
        }
        for (size_t i = 0; i < opt.txs; i++) {
            std::string content =
                "content " + std::to_string(b) + "/" + std::to_string(i);
            txs.push_back(chain::Transaction::mutable_tx(rewrite::hash_transaction(
                mpk, author, to_bytes(content), attrs, idx, rng)));
        }
        const auto& blk = chain::mine_block(c, std::move(txs), rng.next_u64() & 0xffffff);
        out << json{{"cmd", "chain mine"}, {"height", b}, {"nonce", blk.nonce},
                    {"txs", blk.txs.size()},
                    {"header", hex(chain::header_hash(blk))}}
            << "\n";
    }
    chain::save_chain(c, opt.chain_dir);
    return 0;
}

int cmd_chain_validate(const Options& opt, std::ostream& out) {
    // the manifest names the profile; probe it first
    Bytes manifest = read_file(std::filesystem::path(opt.chain_dir) / "manifest.bin");
    Reader probe(manifest, nullptr);
    probe.get_u64();
    auto suite = Suite::from_name(probe.get_text());
    auto c = chain::load_chain(opt.chain_dir, suite);
    auto report = chain::validate_chain(c);
    for (const auto& br : report.blocks) {
        json line{{"height", br.height}, {"ok", br.ok}, {"millis", br.millis}};
        if (!br.ok) line["error"] = br.error;
        out << line << "\n";
    }
    return report.ok ? 0 : 1;
}

int cmd_chain_rewrite(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    abet::Mpk mpk = load_mpk(opt.params_path, &suite);
    auto key = load_key(opt.key_path, *suite);
    auto c = chain::load_chain(opt.chain_dir, suite);
    SeededRng rng(opt.seed);
    sigma::Keypair modifier = keypair_from_seed(*suite, opt.modifier_seed);
    auto before_headers = c.blocks;
    auto outcome = chain::rewrite_in_place(c, {opt.height, opt.tx_index}, mpk, key, modifier,
                                           content_bytes(opt), rng);
    chain::save_chain(c, opt.chain_dir);
    if (!opt.out.empty()) store_tx(opt.out, *suite, outcome.before);
    if (!opt.out2.empty()) store_tx(opt.out2, *suite, outcome.after);
    bool headers_fixed = true;
    for (size_t h = 0; h < c.blocks.size(); h++) {
        headers_fixed = headers_fixed &&
                        chain::header_hash(c.blocks[h]) == chain::header_hash(before_headers[h]);
    }
    out << json{{"cmd", "chain rewrite"}, {"height", opt.height}, {"tx", opt.tx_index},
                {"headers_unchanged", headers_fixed}}
        << "\n";
    return headers_fixed ? 0 : 1;
}

int cmd_judge_link(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    auto tx1 = load_tx(opt.tx_path, &suite);
    auto tx2 = load_tx(opt.tx2_path, nullptr);
    auto link = rewrite::judge_link(*suite, tx1, tx2);
    if (!link) {
        out << json{{"cmd", "judge link"}, {"linked", false}} << "\n";
        return 1;
    }
    out << json{{"cmd", "judge link"}, {"linked", true},
                {"pk", hex(link->pk.to_bytes())},
                {"pk_new", hex(link->pk_new.to_bytes())},
                {"delta", hex(link->delta.to_bytes())}}
        << "\n";
    return 0;
}

int cmd_judge_trace(const Options& opt, std::ostream& out) {
    std::shared_ptr<const Suite> suite;
    abet::Mpk mpk = load_mpk(opt.params_path, &suite);
    Loaded l = load_profiled(opt.blackbox_path);
    Reader r = l.reader();
    skip_header(r);
    size_t n = r.get_u64();
    std::vector<abet::SecretKey> keys;
    for (size_t i = 0; i < n; i++) keys.push_back(abet::read_key(r, *l.suite));
    abet::Blackbox box = [&](const abet::Ciphertext& ct) -> std::optional<Bytes> {
        for (const auto& k : keys) {
            if (auto got = abet::decrypt(mpk, ct, k)) return got;
        }
        return std::nullopt;
    };
    auto probes = load_probes(opt.probes_path, suite->field());
    GrantStore grants = load_grants(opt.grants_path, *suite);
    SeededRng rng(opt.seed);
    auto outcome = rewrite::judge_trace(mpk, box, probes, grants, opt.eps, opt.trials, rng);
    json accused = json::array();
    for (size_t d : outcome.report.accused) accused.push_back(d);
    json matches = json::array();
    for (const auto& rec : outcome.matched) {
        matches.push_back(json{{"epoch", rec.epoch}, {"depth", rec.committee_depth},
                               {"policy", rec.policy_text},
                               {"modifier_pk", hex(rec.modifier_pk.to_bytes())}});
    }
    out << json{{"cmd", "judge trace"}, {"accused", accused}, {"matches", matches}} << "\n";
    return 0;
}

// ---- benches ----

std::vector<size_t> parse_sizes(const std::string& spec) {
    // "start:stop:step" or comma list
    if (spec.find(':') != std::string::npos) {
        size_t a = 0, b = 0, s = 1;
        if (std::sscanf(spec.c_str(), "%zu:%zu:%zu", &a, &b, &s) != 3 || s == 0) {
            throw UsageError("bad sizes spec: " + spec);
        }
        std::vector<size_t> out;
        for (size_t v = a; v <= b; v += s) out.push_back(v);
        return out;
    }
    std::vector<size_t> out;
    for (const auto& tok : split_list(spec)) out.push_back(std::stoul(tok));
    return out;
}

template <typename F>
double time_op(size_t reps, F&& op) {
    return measure_op_ms(op, reps, 2.0);
}

AccessPolicy or_chain(const std::vector<std::string>& labels) {
    AccessPolicy p = AccessPolicy::leaf(labels[0]);
    for (size_t i = 1; i < labels.size(); i++) {
        p = AccessPolicy::or_of(std::move(p), AccessPolicy::leaf(labels[i]));
    }
    return p;
}

std::vector<std::string> label_range(size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (size_t i = 0; i < n; i++) out.push_back("attr" + std::to_string(i));
    return out;
}

int cmd_bench(const std::string& which, const Options& opt, std::ostream& out) {
    auto suite = Suite::from_name(opt.profile);
    const Field& f = suite->field();
    SeededRng rng(opt.seed);

    if (which == "dpss") {
        for (const auto& tok : split_list(opt.t_values)) {
            size_t t = std::stoul(tok);
            size_t n = 2 * t + 1 + 1;
            std::vector<std::string> members;
            for (size_t i = 0; i < n; i++) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "m%04zu", i);
                members.push_back(buf);
            }
            dpss::Config cfg{n, t, 0, members};
            Scalar alpha = f.random_nonzero(rng);
            Scalar theta = f.random_nonzero(rng);
            auto st = committee::setup(suite, cfg, 1, alpha, theta, 2 * t, rng);
            double ms = time_op(opt.reps, [&] {
                dpss::Config next = cfg;
                auto res = committee::handoff(st, next, rng);
                (void)res;
            });
            out << json{{"op", "dpss"}, {"t", t}, {"n", n}, {"millis", ms}} << "\n";
        }
        return 0;
    }

    auto master = abet::setup(suite, 2, rng);
    auto idx = abet::IndexVector::committee(f, 1);
    for (size_t size : parse_sizes(opt.sizes)) {
        auto labels = label_range(size);
        double ms = 0;
        if (which == "keygen") {
            auto policy = or_chain(labels);
            ms = time_op(opt.reps, [&] {
                auto key = abet::keygen(master, policy, idx, rng);
                (void)key;
            });
        } else if (which == "hash") {
            auto attrs = AttributeSet::of(labels, f);
            sigma::Keypair author = keypair_from_seed(*suite, opt.author_seed);
            ms = time_op(opt.reps, [&] {
                auto tx = rewrite::hash_transaction(master.mpk, author, to_bytes("bench"),
                                                    attrs, idx, rng);
                (void)tx;
            });
        } else if (which == "adapt") {
            auto attrs = AttributeSet::of(labels, f);
            sigma::Keypair author = keypair_from_seed(*suite, opt.author_seed);
            sigma::Keypair modifier = keypair_from_seed(*suite, opt.modifier_seed);
            auto key = abet::keygen(master, or_chain(labels), idx, rng);
            auto tx = rewrite::hash_transaction(master.mpk, author, to_bytes("bench"), attrs,
                                                idx, rng);
            size_t round = 0;
            ms = time_op(opt.reps, [&] {
                auto tx2 = rewrite::adapt_transaction(
                    master.mpk, key, modifier, tx,
                    to_bytes("bench " + std::to_string(round++)), rng);
                (void)tx2;
            });
        } else {
            throw UsageError("unknown bench: " + which);
        }
        out << json{{"op", which}, {"size", size}, {"millis", ms}} << "\n";
    }
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"accountable fine-grained rewriting for open chains"};
    app.require_subcommand(1);
    Options opt;
    if (const char* env = std::getenv("REDACT_PROFILE")) opt.profile = env;

    int rc = 0;
    auto run = [&](auto&& fn) {
        return [&rc, fn, &out]() { rc = fn(out); };
    };

    auto* setup = app.add_subcommand("setup", "generate master keys and public parameters");
    setup->add_option("--profile", opt.profile);
    setup->add_option("--k", opt.k, "committee capacity");
    setup->add_option("--seed", opt.seed);
    setup->add_option("--out-params", opt.params_path)->required();
    setup->add_option("--out-master", opt.master_path)->required();
    setup->callback(run([&](std::ostream& o) { return cmd_setup(opt, o); }));

    auto* committee_cmd = app.add_subcommand("committee", "committee lifecycle");
    committee_cmd->require_subcommand(1);
    auto* share = committee_cmd->add_subcommand("share", "split the master secrets");
    share->add_option("--master", opt.master_path)->required();
    share->add_option("--members", opt.members_csv)->required();
    share->add_option("--t", opt.t)->required();
    share->add_option("--depth", opt.depth, "hierarchy depth of this committee");
    share->add_option("--kzg-bound", opt.kzg_bound, "degree bound, default 2t");
    share->add_option("--seed", opt.seed);
    share->add_option("--out", opt.out)->required();
    share->callback(run([&](std::ostream& o) { return cmd_committee_share(opt, o); }));

    auto* handoff = committee_cmd->add_subcommand("handoff", "move shares to a new committee");
    handoff->add_option("--committee", opt.committee_path)->required();
    handoff->add_option("--members", opt.members_csv);
    handoff->add_option("--t", opt.t);
    handoff->add_option("--scenario", opt.scenario_path, "one line per epoch: t members...");
    handoff->add_option("--seed", opt.seed);
    handoff->add_option("--out", opt.out)->required();
    handoff->add_option("--out-transcript", opt.out2, "transcript of the final handoff");
    handoff->callback(run([&](std::ostream& o) { return cmd_committee_handoff(opt, o); }));

    auto* grant = committee_cmd->add_subcommand("grant", "issue a rewriting privilege");
    grant->add_option("--committee", opt.committee_path)->required();
    grant->add_option("--params", opt.params_path)->required();
    grant->add_option("--policy", opt.policy)->required();
    grant->add_option("--modifier-seed", opt.modifier_seed);
    grant->add_option("--grants", opt.grants_path)->required();
    grant->add_option("--blackbox", opt.blackbox_path, "append the key to this fixture");
    grant->add_option("--seed", opt.seed);
    grant->add_option("--out", opt.out)->required();
    grant->callback(run([&](std::ostream& o) { return cmd_committee_grant(opt, o); }));

    auto* tx = app.add_subcommand("tx", "mutable transactions");
    tx->require_subcommand(1);
    auto* tx_hash = tx->add_subcommand("hash", "create a mutable transaction");
    tx_hash->add_option("--params", opt.params_path)->required();
    tx_hash->add_option("--content", opt.content);
    tx_hash->add_option("--content-file", opt.content_file);
    tx_hash->add_option("--attrs", opt.attrs_csv)->required();
    tx_hash->add_option("--depth", opt.depth);
    tx_hash->add_option("--author-seed", opt.author_seed);
    tx_hash->add_option("--seed", opt.seed);
    tx_hash->add_option("--out", opt.out)->required();
    tx_hash->callback(run([&](std::ostream& o) { return cmd_tx_hash(opt, o); }));

    auto* tx_verify = tx->add_subcommand("verify", "verify a transaction");
    tx_verify->add_option("--tx", opt.tx_path)->required();
    tx_verify->callback(run([&](std::ostream& o) { return cmd_tx_verify(opt, o); }));

    auto* tx_adapt = tx->add_subcommand("adapt", "rewrite a transaction");
    tx_adapt->add_option("--params", opt.params_path)->required();
    tx_adapt->add_option("--key", opt.key_path)->required();
    tx_adapt->add_option("--tx", opt.tx_path)->required();
    tx_adapt->add_option("--content", opt.content);
    tx_adapt->add_option("--content-file", opt.content_file);
    tx_adapt->add_option("--attrs", opt.attrs_csv, "re-target the attribute set");
    tx_adapt->add_option("--depth", opt.depth);
    tx_adapt->add_flag("--preserve-attrs", opt.preserve_attrs);
    tx_adapt->add_option("--modifier-seed", opt.modifier_seed);
    tx_adapt->add_option("--seed", opt.seed);
    tx_adapt->add_option("--out", opt.out)->required();
    tx_adapt->callback(run([&](std::ostream& o) { return cmd_tx_adapt(opt, o); }));

    auto* chain_cmd = app.add_subcommand("chain", "toy proof-of-work chain");
    chain_cmd->require_subcommand(1);
    auto* mine = chain_cmd->add_subcommand("mine", "mine a demo chain");
    mine->add_option("--params", opt.params_path)->required();
    mine->add_option("--dir", opt.chain_dir)->required();
    mine->add_option("--blocks", opt.blocks);
    mine->add_option("--txs", opt.txs);
    mine->add_option("--difficulty", opt.difficulty);
    mine->add_option("--attrs", opt.attrs_csv);
    mine->add_option("--depth", opt.depth);
    mine->add_option("--author-seed", opt.author_seed);
    mine->add_option("--transcript", opt.transcripts, "include as transcript txs");
    mine->add_option("--grants", opt.grants_path, "include the grant store on-chain");
    mine->add_option("--seed", opt.seed);
    mine->callback(run([&](std::ostream& o) { return cmd_chain_mine(opt, o); }));

    auto* validate = chain_cmd->add_subcommand("validate", "validate a chain directory");
    validate->add_option("--dir", opt.chain_dir)->required();
    validate->callback(run([&](std::ostream& o) { return cmd_chain_validate(opt, o); }));

    auto* rewrite_cmd = chain_cmd->add_subcommand("rewrite", "rewrite one transaction");
    rewrite_cmd->add_option("--params", opt.params_path)->required();
    rewrite_cmd->add_option("--key", opt.key_path)->required();
    rewrite_cmd->add_option("--dir", opt.chain_dir)->required();
    rewrite_cmd->add_option("--height", opt.height)->required();
    rewrite_cmd->add_option("--tx", opt.tx_index)->required();
    rewrite_cmd->add_option("--content", opt.content);
    rewrite_cmd->add_option("--content-file", opt.content_file);
    rewrite_cmd->add_option("--modifier-seed", opt.modifier_seed);
    rewrite_cmd->add_option("--seed", opt.seed);
    rewrite_cmd->add_option("--out-before", opt.out);
    rewrite_cmd->add_option("--out-after", opt.out2);
    rewrite_cmd->callback(run([&](std::ostream& o) { return cmd_chain_rewrite(opt, o); }));

    auto* judge = app.add_subcommand("judge", "public accountability");
    judge->require_subcommand(1);
    auto* link = judge->add_subcommand("link", "link a rewrite to a modifier key");
    link->add_option("--tx1", opt.tx_path)->required();
    link->add_option("--tx2", opt.tx2_path)->required();
    link->callback(run([&](std::ostream& o) { return cmd_judge_link(opt, o); }));

    auto* trace_cmd = judge->add_subcommand("trace", "trace an access blackbox");
    trace_cmd->add_option("--params", opt.params_path)->required();
    trace_cmd->add_option("--blackbox", opt.blackbox_path)->required();
    trace_cmd->add_option("--probes", opt.probes_path)->required();
    trace_cmd->add_option("--grants", opt.grants_path);
    trace_cmd->add_option("--eps", opt.eps);
    trace_cmd->add_option("--trials", opt.trials);
    trace_cmd->add_option("--seed", opt.seed);
    trace_cmd->callback(run([&](std::ostream& o) { return cmd_judge_trace(opt, o); }));

    auto* bench = app.add_subcommand("bench", "runtime shape measurements");
    bench->require_subcommand(1);
    for (const char* which : {"keygen", "hash", "adapt", "dpss"}) {
        auto* b = bench->add_subcommand(which);
        b->add_option("--profile", opt.profile);
        b->add_option("--seed", opt.seed);
        b->add_option("--sizes", opt.sizes, "start:stop:step or comma list");
        b->add_option("--reps", opt.reps);
        b->add_option("--t-values", opt.t_values);
        b->add_option("--author-seed", opt.author_seed);
        b->add_option("--modifier-seed", opt.modifier_seed);
        std::string name = which;
        b->callback([&rc, &out, &opt, name]() { rc = cmd_bench(name, opt, out); });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace redact::cli
