#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "redact/bytes.hpp"
#include "redact/cli.hpp"
#include "redact/rewrite.hpp"

using namespace redact;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;

    Sandbox() {
        dir = fs::temp_directory_path() / ("redact_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct RunResult {
    int rc;
    std::string out, err;
    std::vector<json> lines() const {
        std::vector<json> out_lines;
        std::istringstream in(out);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) out_lines.push_back(json::parse(line));
        }
        return out_lines;
    }
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = cli::dispatch(args, out, err);
    return RunResult{rc, out.str(), err.str()};
}

Bytes slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("usage errors exit 2 and never crash") {
    CHECK(run({"no-such-command"}).rc == 2);
    CHECK(run({"setup"}).rc == 2);                       // missing required options
    CHECK(run({"tx", "verify", "--tx", "missing"}).rc == 2);
    CHECK(run({"--help"}).rc == 0);
    CHECK(run({"setup", "--profile", "bogus", "--out-params", "/tmp/x",
               "--out-master", "/tmp/y"})
              .rc == 2);
}

TEST_CASE("setup is byte-identical under one seed") {
    Sandbox sb;
    auto args1 = std::vector<std::string>{
        "setup", "--k", "8", "--profile", "mock", "--seed", "7",
        "--out-params", sb.path("p1.bin"), "--out-master", sb.path("m1.bin")};
    auto args2 = std::vector<std::string>{
        "setup", "--k", "8", "--profile", "mock", "--seed", "7",
        "--out-params", sb.path("p2.bin"), "--out-master", sb.path("m2.bin")};
    CHECK(run(args1).rc == 0);
    CHECK(run(args2).rc == 0);
    CHECK(slurp(sb.path("p1.bin")) == slurp(sb.path("p2.bin")));
    CHECK(slurp(sb.path("m1.bin")) == slurp(sb.path("m2.bin")));

    auto args3 = std::vector<std::string>{
        "setup", "--k", "8", "--profile", "mock", "--seed", "8",
        "--out-params", sb.path("p3.bin"), "--out-master", sb.path("m3.bin")};
    CHECK(run(args3).rc == 0);
    CHECK(slurp(sb.path("p1.bin")) != slurp(sb.path("p3.bin")));
}

TEST_CASE("end-to-end committee, transaction, chain, judge flow") {
    Sandbox sb;
    REQUIRE(run({"setup", "--k", "5", "--profile", "mock", "--seed", "3", "--out-params",
                 sb.path("params.bin"), "--out-master", sb.path("master.bin")})
                .rc == 0);

    // committee at hierarchy depth 2, then a handoff with churn
    REQUIRE(run({"committee", "share", "--master", sb.path("master.bin"), "--members",
                 "n1,n2,n3,n4,n5", "--t", "2", "--depth", "2", "--kzg-bound", "8", "--seed",
                 "4", "--out", sb.path("c0.bin")})
                .rc == 0);
    auto handoff = run({"committee", "handoff", "--committee", sb.path("c0.bin"),
                        "--members", "n2,n3,n4,n5,n6", "--t", "2", "--seed", "5", "--out",
                        sb.path("c1.bin"), "--out-transcript", sb.path("transcript.bin")});
    REQUIRE(handoff.rc == 0);
    CHECK(handoff.lines()[0]["transcript_ok"] == true);

    // grant a key; the grant store and blackbox fixture grow
    REQUIRE(run({"committee", "grant", "--committee", sb.path("c1.bin"), "--params",
                 sb.path("params.bin"), "--policy", "secret AND clearance", "--modifier-seed",
                 "21", "--grants", sb.path("grants.bin"), "--blackbox", sb.path("demo.bb"),
                 "--seed", "6", "--out", sb.path("key.bin")})
                .rc == 0);

    // standalone transaction flow
    REQUIRE(run({"tx", "hash", "--params", sb.path("params.bin"), "--content", "hello",
                 "--attrs", "secret,clearance", "--depth", "3", "--author-seed", "11",
                 "--seed", "7", "--out", sb.path("tx.bin")})
                .rc == 0);
    CHECK(run({"tx", "verify", "--tx", sb.path("tx.bin")}).rc == 0);
    REQUIRE(run({"tx", "adapt", "--params", sb.path("params.bin"), "--key", sb.path("key.bin"),
                 "--tx", sb.path("tx.bin"), "--content", "patched", "--modifier-seed", "21",
                 "--seed", "8", "--out", sb.path("tx2.bin")})
                .rc == 0);
    CHECK(run({"tx", "verify", "--tx", sb.path("tx2.bin")}).rc == 0);
    auto linked = run({"judge", "link", "--tx1", sb.path("tx.bin"), "--tx2", sb.path("tx2.bin")});
    CHECK(linked.rc == 0);
    CHECK(linked.lines()[0]["linked"] == true);

    // unrelated transactions do not link (exit 1)
    REQUIRE(run({"tx", "hash", "--params", sb.path("params.bin"), "--content", "other",
                 "--attrs", "secret", "--depth", "1", "--author-seed", "12", "--seed", "9",
                 "--out", sb.path("tx3.bin")})
                .rc == 0);
    CHECK(run({"judge", "link", "--tx1", sb.path("tx.bin"), "--tx2", sb.path("tx3.bin")}).rc == 1);

    // a small chain with the transcript and grants on-chain
    auto mined = run({"chain", "mine", "--params", sb.path("params.bin"), "--dir",
                      sb.path("chain"), "--blocks", "3", "--txs", "5", "--difficulty", "4",
                      "--attrs", "secret,clearance", "--depth", "3", "--author-seed", "11",
                      "--transcript", sb.path("transcript.bin"), "--grants",
                      sb.path("grants.bin"), "--seed", "10"});
    REQUIRE(mined.rc == 0);
    CHECK(mined.lines().size() == 3);

    auto validated = run({"chain", "validate", "--dir", sb.path("chain")});
    CHECK(validated.rc == 0);
    auto lines = validated.lines();
    REQUIRE(lines.size() == 3);
    for (const auto& line : lines) CHECK(line["ok"] == true);

    auto rewritten = run({"chain", "rewrite", "--params", sb.path("params.bin"), "--key",
                          sb.path("key.bin"), "--dir", sb.path("chain"), "--height", "1",
                          "--tx", "2", "--content", "redacted", "--modifier-seed", "21",
                          "--seed", "11", "--out-before", sb.path("before.bin"),
                          "--out-after", sb.path("after.bin")});
    REQUIRE(rewritten.rc == 0);
    CHECK(rewritten.lines()[0]["headers_unchanged"] == true);
    CHECK(run({"chain", "validate", "--dir", sb.path("chain")}).rc == 0);
    CHECK(run({"judge", "link", "--tx1", sb.path("before.bin"), "--tx2", sb.path("after.bin")})
              .rc == 0);

    // trace the blackbox fixture against the probes
    {
        std::ofstream probes(sb.path("probes.txt"));
        probes << "secret clearance\n";
    }
    auto traced = run({"judge", "trace", "--params", sb.path("params.bin"), "--blackbox",
                       sb.path("demo.bb"), "--probes", sb.path("probes.txt"), "--grants",
                       sb.path("grants.bin"), "--eps", "0.5", "--trials", "1", "--seed", "12"});
    REQUIRE(traced.rc == 0);
    auto tline = traced.lines()[0];
    CHECK(tline["accused"] == json::array({2}));
    REQUIRE(tline["matches"].size() == 1);
    CHECK(tline["matches"][0]["depth"] == 2);
}

TEST_CASE("two-committee blackbox fixture traces to depths 2 and 5") {
    Sandbox sb;
    REQUIRE(run({"setup", "--k", "5", "--profile", "mock", "--seed", "31", "--out-params",
                 sb.path("params.bin"), "--out-master", sb.path("master.bin")})
                .rc == 0);
    // one committee at hierarchy depth 2, another at depth 5
    REQUIRE(run({"committee", "share", "--master", sb.path("master.bin"), "--members",
                 "a1,a2,a3", "--t", "1", "--depth", "2", "--seed", "32", "--out",
                 sb.path("c_depth2.bin")})
                .rc == 0);
    REQUIRE(run({"committee", "share", "--master", sb.path("master.bin"), "--members",
                 "b1,b2,b3", "--t", "1", "--depth", "5", "--seed", "33", "--out",
                 sb.path("c_depth5.bin")})
                .rc == 0);
    // each grants a key with a disjoint policy into the same fixture
    REQUIRE(run({"committee", "grant", "--committee", sb.path("c_depth2.bin"), "--params",
                 sb.path("params.bin"), "--policy", "east", "--modifier-seed", "41",
                 "--grants", sb.path("grants.bin"), "--blackbox", sb.path("demo.bb"),
                 "--seed", "34", "--out", sb.path("k2.bin")})
                .rc == 0);
    REQUIRE(run({"committee", "grant", "--committee", sb.path("c_depth5.bin"), "--params",
                 sb.path("params.bin"), "--policy", "west", "--modifier-seed", "42",
                 "--grants", sb.path("grants.bin"), "--blackbox", sb.path("demo.bb"),
                 "--seed", "35", "--out", sb.path("k5.bin")})
                .rc == 0);
    {
        std::ofstream probes(sb.path("probes.txt"));
        probes << "east\n";
        probes << "west\n";
    }
    auto traced = run({"judge", "trace", "--params", sb.path("params.bin"), "--blackbox",
                       sb.path("demo.bb"), "--probes", sb.path("probes.txt"), "--grants",
                       sb.path("grants.bin"), "--trials", "1", "--seed", "36"});
    REQUIRE(traced.rc == 0);
    auto line = traced.lines()[0];
    CHECK(line["accused"] == json::array({2, 5}));
    CHECK(line["matches"].size() == 2);
}

TEST_CASE("scenario-driven handoffs") {
    Sandbox sb;
    REQUIRE(run({"setup", "--k", "3", "--profile", "mock", "--seed", "3", "--out-params",
                 sb.path("params.bin"), "--out-master", sb.path("master.bin")})
                .rc == 0);
    REQUIRE(run({"committee", "share", "--master", sb.path("master.bin"), "--members",
                 "a,b,c,d,e", "--t", "1", "--depth", "1", "--kzg-bound", "8", "--seed", "4",
                 "--out", sb.path("c0.bin")})
                .rc == 0);
    {
        std::ofstream scenario(sb.path("scenario.txt"));
        scenario << "2 a b c d e\n";
        scenario << "2 b c d e f\n";
        scenario << "1 c d e f g\n";
    }
    auto res = run({"committee", "handoff", "--committee", sb.path("c0.bin"), "--scenario",
                    sb.path("scenario.txt"), "--seed", "5", "--out", sb.path("c3.bin")});
    REQUIRE(res.rc == 0);
    auto lines = res.lines();
    REQUIRE(lines.size() == 3);
    CHECK(lines[2]["epoch"] == 3);
    CHECK(lines[2]["t"] == 1);
}

TEST_CASE("the CLI is a thin wrapper: library calls with the same seeds agree") {
    Sandbox sb;
    REQUIRE(run({"setup", "--k", "3", "--profile", "mock", "--seed", "55", "--out-params",
                 sb.path("params.bin"), "--out-master", sb.path("master.bin")})
                .rc == 0);
    REQUIRE(run({"tx", "hash", "--params", sb.path("params.bin"), "--content", "wrap",
                 "--attrs", "x,y", "--depth", "2", "--author-seed", "77", "--seed", "78",
                 "--out", sb.path("tx.bin")})
                .rc == 0);

    // replicate through the library with the same seeds
    auto suite = Suite::mock();
    SeededRng setup_rng(55);
    auto master = abet::setup(suite, 3, setup_rng);
    SeededRng author_rng(77 ^ 0x5167fa11ded5ee3dULL);
    auto author = sigma::keygen(*suite, author_rng);
    SeededRng tx_rng(78);
    auto tx = rewrite::hash_transaction(master.mpk, author, to_bytes("wrap"),
                                        AttributeSet::of({"x", "y"}, suite->field()),
                                        abet::IndexVector::committee(suite->field(), 2),
                                        tx_rng);
    Writer w;
    w.put_u64(1);
    w.put_text(suite->name());
    rewrite::write_tx(w, tx);
    CHECK(slurp(sb.path("tx.bin")) == w.data());
}

TEST_CASE("bench emits one json line per size") {
    auto res = run({"bench", "keygen", "--profile", "mock", "--sizes", "5:15:5", "--reps",
                    "2", "--seed", "1"});
    REQUIRE(res.rc == 0);
    auto lines = res.lines();
    REQUIRE(lines.size() == 3);
    CHECK(lines[0]["op"] == "keygen");
    CHECK(lines[0]["size"] == 5);
    CHECK(lines[0]["millis"].is_number());

    auto dp = run({"bench", "dpss", "--profile", "mock", "--t-values", "2,3", "--reps", "2",
                   "--seed", "1"});
    REQUIRE(dp.rc == 0);
    CHECK(dp.lines().size() == 2);
}
