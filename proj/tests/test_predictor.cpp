#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "dqa/predictor.hpp"

using namespace dqa;

namespace {

// the nine comparison rows: indicators and observed accuracies
const std::vector<double> kAcc = {85.3, 82.5, 82.2, 79.3, 76.6, 73.9, 73.4, 67.7, 58.2};
const std::vector<double> kTail500 = {0, 0, 0, 0, 0, 9, 9, 64, 67};
const std::vector<double> kTail100 = {0, 0, 0, 0, 0, 9, 9, 9, 9};
const std::vector<double> kSkew = {5, 5, 45, 13, 25, 31, 12, 64, 18};
const std::vector<double> kSize = {125000, 130000, 190000, 101000, 90000,
                                   135000, 105000, 135000, 53000};

CandidateEntry make_candidate(const std::string& name, double tail500, double tail100,
                              std::uint64_t total) {
    CandidateEntry c;
    c.name = name;
    c.report.config = IndicatorConfig{};
    c.report.long_tail = {{500, tail500}, {100, tail100}};
    c.report.total_samples = total;
    c.report.label_set_size = 100;
    return c;
}

}  // namespace

TEST_CASE("long-tail indicators have zero discordant pairs on the fixture") {
    auto s500 = concordance(kTail500, kAcc);
    CHECK(s500.discordant_pairs == 0);
    CHECK(s500.concordant_pairs == 25);
    CHECK(s500.kendall_tau_b == doctest::Approx(0.833333).epsilon(1e-4));

    auto s100 = concordance(kTail100, kAcc);
    CHECK(s100.discordant_pairs == 0);
    CHECK(s100.concordant_pairs == 20);
}

TEST_CASE("left-skew disagrees on 11 of 36 pairs on the fixture") {
    auto s = concordance(kSkew, kAcc);
    CHECK(s.discordant_pairs == 11);
    CHECK(s.concordant_pairs == 24);
}

TEST_CASE("dataset size alone is a poor predictor on the fixture") {
    // size is better-when-larger, so flip it into the higher-is-worse convention
    std::vector<double> neg;
    for (double s : kSize) neg.push_back(-s);
    auto s = concordance(neg, kAcc);
    CHECK(s.concordant_pairs == 21);
    CHECK(s.discordant_pairs == 14);
    CHECK(s.discordant_pairs > 0);
}

TEST_CASE("identical lists are maximally discordant under higher-is-worse") {
    std::vector<double> x = {1, 2, 3, 4};
    auto s = concordance(x, x);
    CHECK(s.concordant_pairs == 0);
    CHECK(s.discordant_pairs == 6);
    CHECK(s.kendall_tau_b == doctest::Approx(-1.0));
    // and a perfect inverse relation scores +1
    std::vector<double> inv = {4, 3, 2, 1};
    CHECK(concordance(x, inv).kendall_tau_b == doctest::Approx(1.0));
}

TEST_CASE("concordance rejects bad input") {
    CHECK_THROWS_AS(concordance({1, 2}, {1, 2, 3}), DataError);
    CHECK_THROWS_AS(concordance({1}, {1}), DataError);
}

TEST_CASE("discordant count is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x, y;
        int n = 3 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            x.push_back(static_cast<double>(rng() % 20));
            y.push_back(static_cast<double>(rng() % 20));
        }
        auto base = concordance(x, y);
        std::vector<double> tx, ty;
        for (double v : x) tx.push_back(3.0 * v * v * v + 7.0);  // strictly increasing on >=0
        for (double v : y) ty.push_back(std::exp(v / 10.0));
        auto transformed = concordance(tx, ty);
        CHECK(transformed.discordant_pairs == base.discordant_pairs);
        CHECK(transformed.concordant_pairs == base.concordant_pairs);
    }
}

TEST_CASE("swapping the hypothesis direction swaps concordant and discordant") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x, y;
        int n = 3 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            x.push_back(static_cast<double>(rng() % 15));
            y.push_back(static_cast<double>(rng() % 15));
        }
        auto fwd = concordance(x, y);
        std::vector<double> neg;
        for (double v : x) neg.push_back(-v);
        auto rev = concordance(neg, y);
        CHECK(fwd.concordant_pairs == rev.discordant_pairs);
        CHECK(fwd.discordant_pairs == rev.concordant_pairs);
    }
}

TEST_CASE("predict_order groups the fixture rows by long-tail values") {
    std::vector<CandidateEntry> rows;
    for (std::size_t i = 0; i < kAcc.size(); ++i)
        rows.push_back(make_candidate("row" + std::to_string(i), kTail500[i], kTail100[i],
                                      static_cast<std::uint64_t>(kSize[i])));
    auto groups = predict_order(rows);
    // sizes differ everywhere, so each row is its own group; what matters is
    // the block structure: five 0/0 rows first, the 9/9 pair next, 64 then 67
    REQUIRE(groups.size() == 9);
    for (int g = 0; g < 5; ++g) {
        REQUIRE(groups[g].size() == 1);
        CHECK(kTail500[groups[g][0]] == 0);
    }
    CHECK(rows.at(groups[0][0]).report.total_samples == 190000);  // biggest 0/0 first
    CHECK(kTail500[groups[5][0]] == 9);
    CHECK(kTail500[groups[6][0]] == 9);
    CHECK(kTail500[groups[7][0]] == 64);
    CHECK(kTail500[groups[8][0]] == 67);
}

TEST_CASE("single candidate gives a single group") {
    auto groups = predict_order({make_candidate("only", 0, 0, 10)});
    REQUIRE(groups.size() == 1);
    CHECK(groups[0] == std::vector<std::size_t>{0});
}

TEST_CASE("candidates identical on the full key share a rank group") {
    auto a = make_candidate("a", 5, 2, 1000);
    auto b = make_candidate("b", 5, 2, 1000);
    auto c = make_candidate("c", 5, 2, 999);
    auto groups = predict_order({a, b, c});
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].size() == 2);
    CHECK(groups[1].size() == 1);
}

TEST_CASE("predict_order is invariant to candidate input order") {
    std::vector<CandidateEntry> rows;
    for (std::size_t i = 0; i < kAcc.size(); ++i)
        rows.push_back(make_candidate("row" + std::to_string(i), kTail500[i], kTail100[i],
                                      static_cast<std::uint64_t>(kSize[i])));
    auto name_sequence = [&](const std::vector<CandidateEntry>& cs) {
        std::vector<std::string> names;
        for (const auto& group : predict_order(cs))
            for (std::size_t i : group) names.push_back(cs[i].name);
        return names;
    };
    auto base = name_sequence(rows);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(rows.begin(), rows.end(), rng);
        CHECK(name_sequence(rows) == base);
    }
}

TEST_CASE("mixed indicator configs are rejected") {
    auto a = make_candidate("a", 0, 0, 10);
    auto b = make_candidate("b", 0, 0, 10);
    b.report.config.skew_k_percent = 10.0;
    CHECK_THROWS_AS(predict_order({a, b}), DataError);
}
