#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fermat_lab/sweep.hpp"

using namespace fermat_lab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fermat_lab_sweep_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<CountRecord> load(const fs::path& p) {
    std::ifstream in(p);
    return read_csv(in);
}

SweepConfig base(const fs::path& dir, u64 lo, u64 hi) {
    SweepConfig c;
    c.lo = lo;
    c.hi = hi;
    c.output_path = dir / "out.csv";
    c.record_timing = false;
    return c;
}

}  // namespace

TEST_CASE("small sweeps") {
    TempDir dir;
    SweepConfig c = base(dir.path, 5, 100);
    std::vector<u64> seen;
    const SweepSummary s = sweep(c, [&](const CountRecord& r) { seen.push_back(r.p); });
    CHECK(s.records_written == 23);
    CHECK(s.complete);
    CHECK_FALSE(s.resumed);
    const auto recs = load(c.output_path);
    REQUIRE(recs.size() == 23);
    CHECK(recs.front().p == 5);
    CHECK(recs.back().p == 97);
    CHECK(seen == std::vector<u64>{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
                                   89, 97});

    c = base(dir.path, 1090, 1100);
    sweep(c);
    const auto w = load(c.output_path);
    REQUIRE(w.size() == 3);
    CHECK(w[0].p == 1091);
    CHECK(w[1].p == 1093);
    CHECK(w[1].n0 == 17);
    CHECK(w[2].p == 1097);

    c.include_wieferich = false;
    sweep(c);
    CHECK(load(c.output_path).size() == 2);
}

TEST_CASE("configuration validation") {
    TempDir dir;
    SweepConfig c = base(dir.path, 100, 50);
    CHECK_THROWS_AS(sweep(c), Error);
    c = base(dir.path, 3, 10);
    c.workers = 0;
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("output does not depend on the worker count or quotient backing") {
    TempDir dir;
    SweepConfig c = base(dir.path, 3, 20000);
    c.workers = 1;
    sweep(c);
    const std::string one = slurp(c.output_path);
    c.workers = 4;
    sweep(c);
    CHECK(slurp(c.output_path) == one);
    c.backing = QuotientBacking::Direct;
    sweep(c);
    CHECK(slurp(c.output_path) == one);
    CHECK(config_hash(c) != config_hash(base(dir.path, 3, 20000)));
}

TEST_CASE("JSON lines output") {
    TempDir dir;
    SweepConfig c = base(dir.path, 3, 30);
    c.format = OutputFormat::Jsonl;
    sweep(c);
    const std::string s = slurp(c.output_path);
    CHECK(std::count(s.begin(), s.end(), '\n') == 9);
    CHECK(s.rfind("{", 0) == 0);
}

TEST_CASE("interrupted sweeps resume to identical bytes") {
    TempDir dir;
    SweepConfig ref = base(dir.path, 3, 8000);
    ref.output_path = dir.path / "ref.csv";
    ref.workers = 2;
    sweep(ref);
    const std::string want = slurp(ref.output_path);

    for (bool rewind : {false, true}) {
        SweepConfig c = base(dir.path, 3, 8000);
        c.checkpoint_path = dir.path / "cp.json";
        c.workers = 2;
        fs::remove(*c.checkpoint_path);
        c.stop_after = 300;
        const SweepSummary first = sweep(c);
        CHECK_FALSE(first.complete);
        CHECK(first.records_written == 300);
        const Checkpoint cp = read_checkpoint(*c.checkpoint_path);
        CHECK(cp.records_written == 300);
        if (rewind) {
            // As if killed after the periodic checkpoint but before the next one.
            Checkpoint older = cp;
            older.records_written = kCheckpointEvery;
            older.last_completed_p = load(c.output_path)[kCheckpointEvery - 1].p;
            write_checkpoint(*c.checkpoint_path, older);
        }
        {
            std::ofstream out(c.output_path, std::ios::app | std::ios::binary);
            out << "7919,2,13";  // torn trailing line
        }
        c.stop_after.reset();
        c.workers = 3;
        const SweepSummary second = sweep(c);
        CHECK(second.resumed);
        CHECK(second.complete);
        CHECK(second.records_written == 1006);
        CHECK(slurp(c.output_path) == want);

        // Rerunning a finished sweep writes nothing new.
        const SweepSummary third = sweep(c);
        CHECK(third.records_this_run == 0);
        CHECK(slurp(c.output_path) == want);
    }
}

TEST_CASE("a checkpoint from a different configuration is rejected") {
    TempDir dir;
    SweepConfig c = base(dir.path, 3, 3000);
    c.checkpoint_path = dir.path / "cp.json";
    c.stop_after = 50;
    sweep(c);
    c.stop_after.reset();
    c.mode = CountMode::Streaming;
    try {
        sweep(c);
        FAIL("expected ChecksumMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ChecksumMismatch);
    }
}
