#include "fermat_lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace fermat_lab {

double normalize_n1(const CountRecord& record) {
    const double p = static_cast<double>(record.p);
    return (static_cast<double>(record.n1) - p / 2.0) / std::sqrt(1.5 * p);
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
        carry_ += (sum_ - t) + x;
    } else {
        carry_ += (x - t) + sum_;
    }
    sum_ = t;
}

double normal_moment(int k) noexcept {
    if (k % 2 == 1) return 0.0;
    double m = 1.0;
    for (int j = k - 1; j > 0; j -= 2) m *= j;
    return m;
}

MomentsReport moments(std::span<const CountRecord> records, int kmax) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "moments of an empty record set");
    MomentsReport rep;
    rep.count = records.size();
    rep.lo = records.front().p;
    rep.hi = records.front().p + 1;
    std::vector<CompensatedSum> sums(kmax);
    for (const CountRecord& r : records) {
        rep.lo = std::min(rep.lo, r.p);
        rep.hi = std::max(rep.hi, r.p + 1);
        const double x = normalize_n1(r);
        double power = 1.0;
        for (int k = 0; k < kmax; ++k) {
            power *= x;
            sums[k].add(power);
        }
    }
    for (int k = 1; k <= kmax; ++k) {
        rep.moments.push_back(sums[k - 1].value() / static_cast<double>(rep.count));
        rep.normal_reference.push_back(normal_moment(k));
    }
    return rep;
}

double poisson_prediction(double n_class, int k) {
    constexpr double kMean = 1.0 / 6.0;
    return n_class * std::exp(-kMean - std::lgamma(k + 1.0) + k * std::log(kMean));
}

PoissonReport poisson_table(std::span<const CountRecord> records, const PoissonOptions& options) {
    PoissonReport rep;
    std::vector<u64> t1, t2;
    auto bump = [](std::vector<u64>& t, u64 k) {
        if (t.size() <= k) t.resize(k + 1, 0);
        ++t[k];
    };
    for (const CountRecord& r : records) {
        if (r.p < 5) continue;
        if (is_wieferich(Prime(r.p))) {
            if (!options.drop_wieferich) {
                throw Error(ErrorCode::UnexcludedWieferich,
                            "Wieferich prime " + std::to_string(r.p) + " in the Poisson table input");
            }
            rep.excluded.push_back(r.p);
            continue;
        }
        if (r.p % 3 == 1) {
            ++rep.n1_class;
            if (r.n0 >= 2 && (r.n0 - 2) % 6 == 0) {
                bump(t1, (r.n0 - 2) / 6);
                continue;
            }
        } else {
            ++rep.n2_class;
            if (r.n0 % 6 == 0) {
                bump(t2, r.n0 / 6);
                continue;
            }
        }
        rep.anomalies.push_back(r);
    }
    const std::size_t bins = std::max<std::size_t>({static_cast<std::size_t>(options.kmax) + 1, t1.size(), t2.size()});
    t1.resize(bins, 0);
    t2.resize(bins, 0);
    const double pooled = static_cast<double>(rep.n1_class + rep.n2_class) / 2.0;
    for (std::size_t k = 0; k < bins; ++k) {
        PoissonBin b;
        b.k = static_cast<int>(k);
        b.t1 = t1[k];
        b.t2 = t2[k];
        b.prediction1 = poisson_prediction(static_cast<double>(rep.n1_class), b.k);
        b.prediction2 = poisson_prediction(static_cast<double>(rep.n2_class), b.k);
        b.prediction_pooled = poisson_prediction(pooled, b.k);
        rep.bins.push_back(b);
    }
    return rep;
}

GrowthDiagnostic n0_growth_diagnostic(std::span<const CountRecord> records) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "growth diagnostic of an empty record set");
    GrowthDiagnostic best;
    best.ratio = -1.0;
    for (const CountRecord& r : records) {
        const double pd = static_cast<double>(r.p);
        const double ratio = static_cast<double>(r.n0) / std::cbrt(pd * pd);
        if (ratio > best.ratio) best = {r.p, ratio};
    }
    return best;
}

std::string format_moments(const MomentsReport& report) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "Moments of normalised N_1(p), %llu primes in [%llu, %llu)\n",
                  static_cast<unsigned long long>(report.count), static_cast<unsigned long long>(report.lo),
                  static_cast<unsigned long long>(report.hi));
    out << line;
    std::snprintf(line, sizeof line, "%3s %14s %8s\n", "k", "E(X^k)", "E(N^k)");
    out << line;
    for (std::size_t k = 0; k < report.moments.size(); ++k) {
        std::snprintf(line, sizeof line, "%3zu %14.5f %8.0f\n", k + 1, report.moments[k], report.normal_reference[k]);
        out << line;
    }
    return out.str();
}

std::string format_poisson(const PoissonReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "Frequency table for N_0(p): %llu primes = 1 mod 3, %llu primes = 2 mod 3\n",
                  static_cast<unsigned long long>(report.n1_class), static_cast<unsigned long long>(report.n2_class));
    out << line;
    std::snprintf(line, sizeof line, "%3s %10s %10s %12s %12s %12s\n", "k", "T1(k)", "T2(k)", "Poisson(1)", "Poisson(2)",
                  "Poisson(avg)");
    out << line;
    for (const PoissonBin& b : report.bins) {
        std::snprintf(line, sizeof line, "%3d %10llu %10llu %12.3f %12.3f %12.3f\n", b.k,
                      static_cast<unsigned long long>(b.t1), static_cast<unsigned long long>(b.t2), b.prediction1,
                      b.prediction2, b.prediction_pooled);
        out << line;
    }
    if (!report.excluded.empty()) {
        out << "excluded:";
        for (u64 p : report.excluded) out << ' ' << p;
        out << '\n';
    }
    out << "anomalies: " << report.anomalies.size() << '\n';
    return out.str();
}

std::string moments_json(const MomentsReport& report) {
    nlohmann::json j;
    j["lo"] = report.lo;
    j["hi"] = report.hi;
    j["count"] = report.count;
    j["moments"] = report.moments;
    j["normal_reference"] = report.normal_reference;
    return j.dump();
}

std::string poisson_json(const PoissonReport& report) {
    nlohmann::json j;
    j["n1_class"] = report.n1_class;
    j["n2_class"] = report.n2_class;
    j["excluded"] = report.excluded;
    nlohmann::json bins = nlohmann::json::array();
    for (const PoissonBin& b : report.bins) {
        bins.push_back({{"k", b.k},
                        {"T1", b.t1},
                        {"T2", b.t2},
                        {"prediction1", b.prediction1},
                        {"prediction2", b.prediction2},
                        {"prediction_pooled", b.prediction_pooled}});
    }
    j["bins"] = std::move(bins);
    nlohmann::json anomalies = nlohmann::json::array();
    for (const CountRecord& r : report.anomalies) anomalies.push_back({{"p", r.p}, {"n0", r.n0}});
    j["anomalies"] = std::move(anomalies);
    return j.dump();
}

}  // namespace fermat_lab
