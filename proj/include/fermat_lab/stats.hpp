#pragma once

// Distribution of the census across primes: moments of the normalised
// N_1(p) against N(0, 1), and a Poisson frequency table for N_0(p).

#include <array>
#include <span>
#include <string>
#include <vector>

#include "fermat_lab/counting.hpp"

namespace fermat_lab {

/// X = (N_1(p) - p/2) / sqrt(3p/2).
double normalize_n1(const CountRecord& record);

/// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct MomentsReport {
    u64 lo = 0;       // smallest prime included
    u64 hi = 0;       // one past the largest prime included
    u64 count = 0;
    std::vector<double> moments;  // E[X^k], k = 1..kmax
    std::vector<double> normal_reference;  // standard normal moments
};

double normal_moment(int k) noexcept;

MomentsReport moments(std::span<const CountRecord> records, int kmax = 8);

/// n * e^{-1/6} (1/6)^k / k!
double poisson_prediction(double n_class, int k);

struct PoissonBin {
    int k = 0;
    u64 t1 = 0;  // p = 1 mod 3 with N_0 = 6k + 2
    u64 t2 = 0;  // p = 2 mod 3 with N_0 = 6k
    double prediction1 = 0.0;
    double prediction2 = 0.0;
    double prediction_pooled = 0.0;  // using half the total prime count
};

struct PoissonReport {
    std::vector<PoissonBin> bins;
    u64 n1_class = 0;
    u64 n2_class = 0;
    std::vector<u64> excluded;
    std::vector<CountRecord> anomalies;  // N_0 fits neither pattern
};

struct PoissonOptions {
    int kmax = 4;                 // bins grow beyond this if the data needs it
    bool drop_wieferich = true;   // otherwise their presence is an error
};

/// Records with p < 5 are ignored.
PoissonReport poisson_table(std::span<const CountRecord> records, const PoissonOptions& options = {});

struct GrowthDiagnostic {
    u64 p = 0;
    double ratio = 0.0;  // N_0(p) / p^{2/3}
};

GrowthDiagnostic n0_growth_diagnostic(std::span<const CountRecord> records);

std::string format_moments(const MomentsReport& report);
std::string format_poisson(const PoissonReport& report);
std::string moments_json(const MomentsReport& report);
std::string poisson_json(const PoissonReport& report);

}  // namespace fermat_lab
