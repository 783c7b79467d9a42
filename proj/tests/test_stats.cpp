#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "fermat_lab/stats.hpp"

using namespace fermat_lab;

namespace {

std::vector<CountRecord> census_range(u64 lo, u64 hi) {
    std::vector<CountRecord> out;
    for (u64 q : primes_in_range(lo, hi)) out.push_back(count(Prime(q), CountMode::Orbitwise, QuotientBacking::Table));
    return out;
}

CountRecord rec(u64 p, u64 n0, u64 n1) {
    CountRecord r;
    r.p = p;
    r.class3 = static_cast<int>(p % 3);
    r.n0 = n0;
    r.n1 = n1;
    r.nm1 = p - 2 - n0 - n1;
    return r;
}

}  // namespace

TEST_CASE("normalisation of N_1") {
    CHECK(normalize_n1(rec(5, 0, 3)) == doctest::Approx(0.5 / std::sqrt(7.5)));
    CHECK(normalize_n1(rec(5, 0, 3)) == doctest::Approx(0.1826).epsilon(1e-3));
}

TEST_CASE("compensated summation") {
    CompensatedSum s;
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 1.0);
    CompensatedSum t;
    for (int i = 0; i < 1000000; ++i) t.add(0.1);
    CHECK(std::abs(t.value() - 100000.0) < 1e-9);
}

TEST_CASE("normal moments") {
    CHECK(normal_moment(1) == 0.0);
    CHECK(normal_moment(2) == 1.0);
    CHECK(normal_moment(4) == 3.0);
    CHECK(normal_moment(6) == 15.0);
    CHECK(normal_moment(8) == 105.0);
    CHECK(normal_moment(7) == 0.0);
}

TEST_CASE("sample moments on a census") {
    const auto recs = census_range(5, 20000);
    const MomentsReport m = moments(recs);
    CHECK(m.count == recs.size());
    CHECK(m.lo == 5);
    CHECK(m.hi == recs.back().p + 1);
    REQUIRE(m.moments.size() == 8);
    double mean = 0, sq = 0;
    for (const CountRecord& r : recs) {
        const double x = normalize_n1(r);
        mean += x;
        sq += x * x;
    }
    CHECK(m.moments[0] == doctest::Approx(mean / recs.size()));
    CHECK(m.moments[1] == doctest::Approx(sq / recs.size()));
    for (std::size_t k = 1; k + 1 < m.moments.size(); k += 2) {
        // Cauchy-Schwarz: E[X^{k+1}]^2 <= E[X^{2k+2}] whenever 2k+2 <= kmax.
        const std::size_t twice = 2 * k + 1;
        if (twice < m.moments.size()) CHECK(m.moments[k] * m.moments[k] <= m.moments[twice] * (1 + 1e-12));
    }
    CHECK(std::abs(m.moments[1] - 1.0) < 0.15);
    CHECK_THROWS_AS(moments(std::vector<CountRecord>{}), Error);
    const auto j = nlohmann::json::parse(moments_json(m));
    CHECK(j["count"] == recs.size());
    CHECK(format_moments(m).find("k") != std::string::npos);
}

TEST_CASE("Poisson predictions") {
    CHECK(poisson_prediction(1000, 1) == doctest::Approx(141.08).epsilon(1e-4));
    CHECK(poisson_prediction(332287, 3) == doctest::Approx(217.03).epsilon(1e-4));
    CHECK(poisson_prediction(1000, 0) == doctest::Approx(1000 * std::exp(-1.0 / 6)));
    double total = 0;
    for (int k = 0; k < 40; ++k) total += poisson_prediction(500, k);
    CHECK(total == doctest::Approx(500));
}

TEST_CASE("Poisson table on a census") {
    const auto recs = census_range(3, 30000);
    const PoissonReport rep = poisson_table(recs);
    CHECK(rep.anomalies.empty());
    CHECK(rep.excluded == std::vector<u64>{1093, 3511});
    CHECK(rep.bins.size() >= 5);
    u64 t1 = 0, t2 = 0;
    for (const PoissonBin& b : rep.bins) {
        t1 += b.t1;
        t2 += b.t2;
    }
    CHECK(t1 == rep.n1_class);
    CHECK(t2 == rep.n2_class);
    // p = 3 is ignored, so the classes cover all primes in [5, 30000) but the two excluded.
    CHECK(rep.n1_class + rep.n2_class + 2 == recs.size() - 1);
    CHECK(rep.bins[0].t1 > rep.bins[1].t1);

    PoissonOptions strict;
    strict.drop_wieferich = false;
    try {
        poisson_table(recs, strict);
        FAIL("expected UnexcludedWieferich");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnexcludedWieferich);
    }
    const auto j = nlohmann::json::parse(poisson_json(rep));
    CHECK(j["bins"].size() == rep.bins.size());
    CHECK_FALSE(format_poisson(rep).empty());
}

TEST_CASE("Poisson bins grow and anomalies are kept") {
    std::vector<CountRecord> recs{rec(7, 2 + 6 * 9, 1), rec(11, 5, 1)};
    const PoissonReport rep = poisson_table(recs);
    CHECK(rep.bins.size() == 10);
    CHECK(rep.bins[9].t1 == 1);
    REQUIRE(rep.anomalies.size() == 1);
    CHECK(rep.anomalies[0].p == 11);
}

TEST_CASE("growth diagnostic") {
    const auto recs = census_range(1000, 4000);
    const GrowthDiagnostic g = n0_growth_diagnostic(recs);
    CHECK(g.p == 1093);
    CHECK(g.ratio == doctest::Approx(17.0 / std::cbrt(1093.0 * 1093.0)));
    CHECK(g.ratio == doctest::Approx(0.160).epsilon(5e-3));
    CHECK_THROWS_AS(n0_growth_diagnostic(std::vector<CountRecord>{}), Error);
}

TEST_CASE("statistics survive a CSV round trip") {
    const auto recs = census_range(3, 5000);
    std::stringstream ss;
    write_csv(ss, recs);
    const auto back = read_csv(ss);
    const MomentsReport a = moments(recs), b = moments(back);
    CHECK(a.moments == b.moments);
}
