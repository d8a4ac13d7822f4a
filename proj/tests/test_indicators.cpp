#include <cmath>
#include <random>

#include "doctest.h"

#include "dqa/indicators.hpp"
#include "dqa/synth.hpp"

using namespace dqa;

namespace {

// Independent oracle: head size by explicit rounding, head membership by
// repeated max-extraction (not a sort), percentages in plain arithmetic.
double oracle_left_skew(const ClassHistogram& h, double k_percent) {
    std::size_t c = h.counts.size();
    std::size_t m = static_cast<std::size_t>(std::floor(k_percent * c / 100.0 + 0.5));
    if (m < 1) m = 1;
    if (m > c) m = c;

    std::map<std::string, std::uint64_t> pool = h.counts;
    std::uint64_t head = 0;
    for (std::size_t i = 0; i < m; ++i) {
        auto best = pool.begin();
        for (auto it = pool.begin(); it != pool.end(); ++it)
            if (it->second > best->second) best = it;  // map order breaks count ties
        head += best->second;
        pool.erase(best);
    }
    return 100.0 * head / static_cast<double>(h.total_samples);
}

double oracle_long_tail(const ClassHistogram& h, std::uint64_t k) {
    std::uint64_t below = 0;
    for (const auto& [cls, n] : h.counts)
        if (n < k) ++below;
    return 100.0 * below / static_cast<double>(h.counts.size());
}

ClassHistogram balanced(std::uint64_t classes, std::uint64_t per_class) {
    ClassHistogram h;
    for (std::uint64_t i = 0; i < classes; ++i)
        h.counts["c" + std::to_string(1000 + i)] = per_class;
    h.total_samples = classes * per_class;
    return h;
}

}  // namespace

TEST_CASE("left-skewedness of a balanced 100x1250 dataset at k=5 is 5%") {
    CHECK(left_skewedness(balanced(100, 1250), 5.0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("k=100 makes every class head") {
    ClassHistogram h{{{"a", 7}, {"b", 1}, {"c", 2}}, 10};
    CHECK(left_skewedness(h, 100.0) == doctest::Approx(100.0));
}

TEST_CASE("head selection: {a:90,b:5,c:5} at k=34 keeps one class") {
    ClassHistogram h{{{"a", 90}, {"b", 5}, {"c", 5}}, 100};
    CHECK(left_skewedness(h, 34.0) == doctest::Approx(90.0));
}

TEST_CASE("head-boundary count ties break by ascending class id") {
    // b and c tie at 10; only one head slot -> a (largest). Two slots -> a then b.
    ClassHistogram h{{{"a", 20}, {"b", 10}, {"c", 10}}, 40};
    CHECK(left_skewedness(h, 34.0) == doctest::Approx(100.0 * 20 / 40));
    CHECK(left_skewedness(h, 67.0) == doctest::Approx(100.0 * 30 / 40));
}

TEST_CASE("long-tailedness counts strictly-below classes") {
    CHECK(long_tailedness(balanced(100, 1250), 500) == doctest::Approx(0.0));
    ClassHistogram h{{{"a", 50}, {"b", 600}, {"c", 600}}, 1250};
    CHECK(long_tailedness(h, 500) == doctest::Approx(100.0 / 3));
    // count == k is not below
    ClassHistogram eq{{{"a", 500}}, 500};
    CHECK(long_tailedness(eq, 500) == doctest::Approx(0.0));
}

TEST_CASE("long-tailedness at k=1 is the zero-sample class percentage") {
    ClassHistogram h{{{"a", 3}, {"b", 0}, {"c", 0}, {"d", 1}}, 4};
    CHECK(long_tailedness(h, 1) == doctest::Approx(50.0));
}

TEST_CASE("indicators are undefined on empty datasets") {
    CHECK_THROWS_AS(left_skewedness(ClassHistogram{}, 5.0), DataError);
    CHECK_THROWS_AS(long_tailedness(ClassHistogram{}, 100), DataError);
    CHECK_THROWS_AS(audit(ClassHistogram{}, IndicatorConfig{}), DataError);
}

TEST_CASE("audit of the balanced fixture matches the known row") {
    IndicatorReport r = audit(balanced(100, 1250), IndicatorConfig{});
    CHECK(r.label_set_size == 100);
    CHECK(r.total_samples == 125000);
    CHECK(r.left_skew == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.long_tail_at(500) == doctest::Approx(0.0));
    CHECK(r.long_tail_at(100) == doctest::Approx(0.0));
    CHECK(r.per_class_min == 1250);
    CHECK(r.per_class_max == 1250);
    CHECK(r.per_class_mean == doctest::Approx(1250.0));
}

TEST_CASE("single-class histogram is all head and all tail") {
    IndicatorReport r = audit(ClassHistogram{{{"a", 10}}, 10}, IndicatorConfig{});
    CHECK(r.left_skew == doctest::Approx(100.0));
    CHECK(r.long_tail_at(500) == doctest::Approx(100.0));
    CHECK(r.long_tail_at(100) == doctest::Approx(100.0));
}

TEST_CASE("indicators match the brute-force oracle on random histograms") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        ClassHistogram h;
        int classes = 1 + static_cast<int>(rng() % 20);
        for (int c = 0; c < classes; ++c)
            h.counts["cl" + std::to_string(c)] = rng() % 2000;
        for (const auto& [cls, n] : h.counts) h.total_samples += n;
        if (h.total_samples == 0) h.counts.begin()->second = h.total_samples = 1;

        double k_percent = 1.0 + static_cast<double>(rng() % 990) / 10.0;
        std::uint64_t k = 1 + rng() % 1500;
        CHECK(left_skewedness(h, k_percent) ==
              doctest::Approx(oracle_left_skew(h, k_percent)).epsilon(1e-12));
        CHECK(long_tailedness(h, k) == doctest::Approx(oracle_long_tail(h, k)));
    }
}

TEST_CASE("scaling every count by the same factor preserves the indicators") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        ClassHistogram h;
        int classes = 2 + static_cast<int>(rng() % 15);
        for (int c = 0; c < classes; ++c) h.counts["c" + std::to_string(c)] = 1 + rng() % 500;
        for (const auto& [cls, n] : h.counts) h.total_samples += n;

        std::uint64_t s = 2 + rng() % 9;
        ClassHistogram scaled;
        for (const auto& [cls, n] : h.counts) scaled.counts[cls] = n * s;
        scaled.total_samples = h.total_samples * s;

        double kp = 1.0 + static_cast<double>(rng() % 99);
        CHECK(left_skewedness(scaled, kp) ==
              doctest::Approx(left_skewedness(h, kp)).epsilon(1e-12));
        // exact-divisibility case of threshold scaling
        std::uint64_t k = 1 + rng() % 400;
        CHECK(long_tailedness(scaled, k * s) == doctest::Approx(long_tailedness(h, k)));
    }
}

TEST_CASE("renaming classes preserves indicators when counts are distinct") {
    ClassHistogram h{{{"a", 10}, {"b", 20}, {"c", 35}}, 65};
    ClassHistogram renamed{{{"x", 10}, {"y", 20}, {"z", 35}}, 65};
    for (double kp : {5.0, 34.0, 67.0, 100.0})
        CHECK(left_skewedness(h, kp) == doctest::Approx(left_skewedness(renamed, kp)));
    for (std::uint64_t k : {1ull, 15ull, 30ull, 100ull})
        CHECK(long_tailedness(h, k) == doctest::Approx(long_tailedness(renamed, k)));
}

TEST_CASE("left-skew is bounded below by k_percent") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        ClassHistogram h;
        int classes = 1 + static_cast<int>(rng() % 25);
        for (int c = 0; c < classes; ++c) h.counts["c" + std::to_string(c)] = 1 + rng() % 300;
        for (const auto& [cls, n] : h.counts) h.total_samples += n;
        double kp = 1.0 + static_cast<double>(rng() % 990) / 10.0;
        // with few classes the rounded head can cover less than k% of C
        bool ok = left_skewedness(h, kp) >= kp - 1e-9 ||
                  std::floor(kp * classes / 100.0 + 0.5) < kp * classes / 100.0;
        CHECK(ok);
    }
    // equality on perfectly balanced data when k% of C is integral
    CHECK(left_skewedness(balanced(100, 7), 5.0) == doctest::Approx(5.0));
}

TEST_CASE("long-tailedness is non-decreasing in k") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 100; ++trial) {
        ClassHistogram h;
        int classes = 1 + static_cast<int>(rng() % 20);
        for (int c = 0; c < classes; ++c) h.counts["c" + std::to_string(c)] = rng() % 1000;
        h.total_samples = 1;
        double prev = -1.0;
        for (std::uint64_t k : {1, 10, 100, 500, 1000, 2000}) {
            double v = long_tailedness(h, k);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("config validation") {
    IndicatorConfig bad;
    bad.skew_k_percent = 0.0;
    CHECK_THROWS_AS(bad.validate(), DataError);
    bad.skew_k_percent = 101.0;
    CHECK_THROWS_AS(bad.validate(), DataError);
    bad = IndicatorConfig{};
    bad.tail_thresholds = {100, 500};  // not decreasing
    CHECK_THROWS_AS(bad.validate(), DataError);
    bad.tail_thresholds = {500, 0};
    CHECK_THROWS_AS(bad.validate(), DataError);
    CHECK_NOTHROW(IndicatorConfig{}.validate());
}

TEST_CASE("report json round-trips with 4-decimal percentages") {
    ClassHistogram h{{{"a", 1}, {"b", 1}, {"c", 1}}, 3};
    IndicatorReport r = audit(h, IndicatorConfig{});
    std::string j = report_to_json(r);
    CHECK(j.find("33.3333") != std::string::npos);
    IndicatorReport back = report_from_json(j);
    CHECK(back.label_set_size == r.label_set_size);
    CHECK(back.total_samples == r.total_samples);
    CHECK(back.config == r.config);
    CHECK(back.left_skew == doctest::Approx(r.left_skew).epsilon(1e-4));
}
