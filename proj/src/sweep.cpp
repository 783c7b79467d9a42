#include "fermat_lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>

namespace fermat_lab {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kChunkPrimes = 64;

std::string format_record(const CountRecord& r, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(r) : to_jsonl(r);
}

// Keeps the header (CSV) and the first `records` lines; drops anything a
// crash may have left after the last checkpoint.
void truncate_output(const fs::path& path, u64 records, OutputFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot reopen output " + path.string() + " for resume");
    const u64 keep = records + (format == OutputFormat::Csv ? 1 : 0);
    std::string line;
    u64 lines = 0;
    std::uintmax_t offset = 0;
    while (lines < keep && std::getline(in, line)) {
        if (in.eof()) break;  // final line without newline is incomplete
        offset += line.size() + 1;
        ++lines;
    }
    if (lines < keep) {
        throw Error(ErrorCode::Io, "output " + path.string() + " holds fewer records than its checkpoint");
    }
    in.close();
    fs::resize_file(path, offset);
}

}  // namespace

void validate(const SweepConfig& config) {
    if (config.lo < 3) throw Error(ErrorCode::Parse, "sweep range must start at 3 or above");
    if (config.hi > kMaxPrimeExclusive) throw Error(ErrorCode::Parse, "sweep range must end at or below 2^31");
    if (config.hi < config.lo) throw Error(ErrorCode::Parse, "sweep range is reversed");
    if (config.workers < 1) throw Error(ErrorCode::Parse, "at least one worker is required");
    if (config.output_path.empty()) throw Error(ErrorCode::Parse, "an output path is required");
}

std::string config_hash(const SweepConfig& config) {
    std::string canon = std::to_string(config.lo) + "|" + std::to_string(config.hi) + "|" +
                        (config.mode ? std::string(to_string(*config.mode)) : std::string("default")) + "|" +
                        (config.backing == QuotientBacking::Table ? "table" : "direct") + "|" +
                        (config.include_wieferich ? "w1" : "w0") + "|" + (config.record_timing ? "t1" : "t0") +
                        "|" + (config.format == OutputFormat::Csv ? "csv" : "jsonl");
    // FNV-1a, 64-bit.
    u64 h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Checkpoint read_checkpoint(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read checkpoint " + path.string());
    try {
        const auto j = nlohmann::json::parse(in);
        return {j.at("last_completed_p").get<u64>(), j.at("records_written").get<u64>(),
                j.at("config_hash").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, "malformed checkpoint " + path.string() + ": " + e.what());
    }
}

void write_checkpoint(const fs::path& path, const Checkpoint& cp) {
    const nlohmann::json j = {{"last_completed_p", cp.last_completed_p},
                              {"records_written", cp.records_written},
                              {"config_hash", cp.config_hash}};
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump() << '\n';
        if (!out) throw Error(ErrorCode::Io, "cannot write checkpoint " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot move checkpoint into " + path.string() + ": " + ec.message());
}

SweepSummary sweep(const SweepConfig& config, const std::function<void(const CountRecord&)>& on_record) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    const std::string hash = config_hash(config);
    SweepSummary summary;

    Checkpoint cp{0, 0, hash};
    if (config.checkpoint_path && fs::exists(*config.checkpoint_path)) {
        cp = read_checkpoint(*config.checkpoint_path);
        if (cp.config_hash != hash) {
            throw Error(ErrorCode::ChecksumMismatch, "checkpoint " + config.checkpoint_path->string() +
                                                         " was written by a different sweep configuration");
        }
        truncate_output(config.output_path, cp.records_written, config.format);
        summary.resumed = true;
    } else {
        std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
        if (config.format == OutputFormat::Csv) out << csv_header() << '\n';
        if (!out) throw Error(ErrorCode::Io, "cannot create output " + config.output_path.string());
    }
    summary.records_written = cp.records_written;

    std::vector<u64> primes;
    if (config.hi > 3) {
        for (u64 p : primes_in_range(std::max<u64>(config.lo, 3), config.hi - 1)) {
            if (p <= cp.last_completed_p) continue;
            if (!config.include_wieferich && is_wieferich(Prime(p))) continue;
            primes.push_back(p);
        }
    }

    std::optional<FactorSieve> sieve;
    if (config.backing == QuotientBacking::Table && !primes.empty()) {
        const bool any_orbitwise = config.mode ? *config.mode == CountMode::Orbitwise
                                               : default_mode(Prime(primes.back())) == CountMode::Orbitwise;
        if (any_orbitwise) sieve.emplace((primes.back() + 1) / 2);
    }

    std::ofstream out(config.output_path, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::Io, "cannot append to output " + config.output_path.string());

    const std::size_t n_chunks = (primes.size() + kChunkPrimes - 1) / kChunkPrimes;
    std::vector<std::vector<CountRecord>> results(n_chunks);
    std::vector<char> done(n_chunks, 0);
    std::vector<std::exception_ptr> errors(n_chunks);
    std::mutex mu;
    std::condition_variable cv;
    std::size_t consumed = 0;
    bool stop = false;
    std::atomic<std::size_t> next{0};
    const std::size_t window = 4 * static_cast<std::size_t>(config.workers);

    auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_chunks) return;
            {
                std::unique_lock lock(mu);
                cv.wait(lock, [&] { return stop || idx < consumed + window; });
                if (stop) return;
            }
            const std::size_t begin = idx * kChunkPrimes;
            const std::size_t end = std::min(primes.size(), begin + kChunkPrimes);
            std::vector<CountRecord> chunk(end - begin);
            std::exception_ptr error;
            try {
                // Largest first, so the expensive tail of a chunk starts early.
                for (std::size_t i = end; i-- > begin;) {
                    const Prime p(primes[i]);
                    const CountMode mode = config.mode ? *config.mode : default_mode(p);
                    CountRecord r = count(p, mode, config.backing, sieve ? &*sieve : nullptr);
                    if (!config.record_timing) r.elapsed = 0.0;
                    chunk[i - begin] = r;
                }
            } catch (...) {
                error = std::current_exception();
            }
            {
                std::lock_guard lock(mu);
                results[idx] = std::move(chunk);
                errors[idx] = error;
                done[idx] = 1;
            }
            cv.notify_all();
        }
    };

    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < config.workers; ++w) pool.emplace_back(worker);

    auto flush_checkpoint = [&] {
        out.flush();
        if (!out) throw Error(ErrorCode::Io, "write failed on " + config.output_path.string());
        if (config.checkpoint_path) write_checkpoint(*config.checkpoint_path, cp);
    };

    try {
        bool halted = false;
        for (std::size_t idx = 0; idx < n_chunks && !halted; ++idx) {
            std::vector<CountRecord> chunk;
            {
                std::unique_lock lock(mu);
                cv.wait(lock, [&] { return done[idx] != 0; });
                if (errors[idx]) std::rethrow_exception(errors[idx]);
                chunk = std::move(results[idx]);
                consumed = idx + 1;
            }
            cv.notify_all();
            for (const CountRecord& r : chunk) {
                out << format_record(r, config.format) << '\n';
                cp.last_completed_p = r.p;
                ++cp.records_written;
                ++summary.records_this_run;
                if (on_record) on_record(r);
                if (cp.records_written % kCheckpointEvery == 0) flush_checkpoint();
                if (config.stop_after && summary.records_this_run >= *config.stop_after) {
                    halted = true;
                    break;
                }
            }
        }
        summary.complete = !halted;
        flush_checkpoint();
    } catch (...) {
        {
            std::lock_guard lock(mu);
            stop = true;
        }
        cv.notify_all();
        throw;
    }
    {
        std::lock_guard lock(mu);
        stop = true;
    }
    cv.notify_all();
    pool.clear();

    summary.records_written = cp.records_written;
    summary.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

}  // namespace fermat_lab
