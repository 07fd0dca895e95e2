#include "polar/coi/coi.hpp"

#include "polar/core/errors.hpp"
#include "polar/csn/builder.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace polar;
using namespace polar::core;
using namespace polar::coi;

namespace {

// hand-assembled CSN: edges as (src, tgt, score) with unit weights
Csn make_csn(std::size_t n, const std::vector<std::tuple<int, int, double>>& edges,
             std::vector<std::int64_t> comment_count) {
    Csn csn;
    for (std::size_t i = 0; i < n; ++i)
        csn.subgroups.push_back({static_cast<int>(i), std::string(1, char('A' + i)), ""});
    csn.cells.assign(n * n, std::nullopt);
    for (const auto& [src, tgt, score] : edges)
        csn.cell(static_cast<std::size_t>(src), static_cast<std::size_t>(tgt)) =
            Csn::EdgeData{score, 1.0, 1};
    csn.comment_count = std::move(comment_count);
    csn.total_comments = 0;
    for (auto c : csn.comment_count) csn.total_comments += c;
    validate_csn(csn);
    return csn;
}

// independent transcription of the metric: share * cohesion * summed
// flipped-negative edges, cohesion from the self-loop (clamped at zero,
// 1.0 when absent), self-loop excluded from the hostility sum
double direct_coi(const Csn& csn, double cohesion_default = 1.0) {
    double total = 0.0;
    const auto n = csn.size();
    for (std::size_t i = 0; i < n; ++i) {
        double hostility = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto e = csn.edge(i, j);
            if (e && *e <= 0.0) hostility += -*e;
        }
        const auto self = csn.edge(i, i);
        const double t_i = self ? (*self > 0.0 ? *self : 0.0) : cohesion_default;
        total += (static_cast<double>(csn.comment_count[i]) /
                  static_cast<double>(csn.total_comments)) *
                 t_i * hostility;
    }
    return total;
}

Csn random_csn(std::mt19937_64& gen, bool only_positive = false) {
    const std::size_t n = 1 + gen() % 5;
    std::uniform_real_distribution<double> score(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    std::vector<std::tuple<int, int, double>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (gen() % 3 != 0)
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j),
                                   only_positive ? pos(gen) : score(gen));
    std::vector<std::int64_t> counts(n);
    std::int64_t total = 0;
    for (auto& c : counts) {
        c = static_cast<std::int64_t>(gen() % 20);
        total += c;
    }
    if (total == 0) counts[0] = 1; // keep N > 0
    return make_csn(n, edges, counts);
}

} // namespace

TEST_CASE("hostility_term") {
    CHECK(hostility_term(-0.8) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(hostility_term(0.6) == 0.0);
    CHECK(hostility_term(0.0) == 0.0);
    CHECK(hostility_term(-1.0) == 1.0);
}

TEST_CASE("subgroup_polarization examples") {
    // t_0 = 0.9 via the self-loop, one hostile edge -0.8: 0.9 * 0.8 = 0.72
    const auto csn = make_csn(2, {{0, 0, 0.9}, {0, 1, -0.8}}, {1, 1});
    CHECK(subgroup_polarization(csn, 0) == doctest::Approx(0.72).epsilon(1e-12));

    // all outgoing edges positive: nothing contributes
    const auto friendly = make_csn(2, {{0, 1, 0.5}, {1, 0, 0.2}}, {1, 1});
    CHECK(subgroup_polarization(friendly, 0) == 0.0);

    // zero cohesion silences any hostility
    const auto muted = make_csn(2, {{0, 0, -0.4}, {0, 1, -0.9}}, {1, 1});
    CHECK(subgroup_polarization(muted, 0) == 0.0);

    CHECK_THROWS_AS(subgroup_polarization(csn, 9), IndexError);
}

TEST_CASE("coi worked two-group example") {
    // shares 0.6/0.4, cohesions 0.9/0.6 via self-loops, cross edges -0.8/-0.5:
    // 0.6*0.9*0.8 + 0.4*0.6*0.5 = 0.552
    const auto csn = make_csn(2, {{0, 0, 0.9}, {1, 1, 0.6}, {0, 1, -0.8}, {1, 0, -0.5}}, {6, 4});
    const auto report = coi(csn);
    CHECK(std::abs(report.total - 0.552) < 1e-9);
    CHECK(report.total == doctest::Approx(direct_coi(csn)).epsilon(1e-15));

    REQUIRE(report.per_subgroup.size() == 2);
    CHECK(report.per_subgroup[0].share == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(report.per_subgroup[0].cohesion == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(report.per_subgroup[0].hostility_sum == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(report.per_subgroup[1].contribution == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("coi of an all-friendly network is zero") {
    const auto csn = make_csn(3, {{0, 1, 0.4}, {1, 2, 0.2}, {2, 0, 0.9}}, {3, 2, 1});
    CHECK(coi(csn).total == 0.0);
}

TEST_CASE("coi of a single subgroup with a friendly self-loop is zero") {
    const auto csn = make_csn(1, {{0, 0, 0.7}}, {5});
    CHECK(coi(csn).total == 0.0); // no out-group exists
}

TEST_CASE("coi on an empty network") {
    Csn csn;
    csn.subgroups = {{0, "A", ""}};
    csn.cells.assign(1, std::nullopt);
    csn.comment_count = {0};
    csn.total_comments = 0;
    CHECK_THROWS_AS(coi(csn), EmptyNetwork);
}

TEST_CASE("report total always equals the contribution sum") {
    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const auto csn = random_csn(gen);
        const auto report = coi(csn);
        double sum = 0.0;
        for (const auto& term : report.per_subgroup) {
            sum += term.contribution;
            CHECK(term.contribution >= 0.0);
        }
        CHECK(std::abs(report.total - sum) < 1e-12);
        CHECK(report.total == doctest::Approx(direct_coi(csn)).epsilon(1e-15));
    }
}

TEST_CASE("coi non-negativity on random networks") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) CHECK(coi(random_csn(gen)).total >= 0.0);
}

TEST_CASE("coi upper bound: at most subgroup count minus one") {
    std::mt19937_64 gen(18);
    for (int trial = 0; trial < 200; ++trial) {
        const auto csn = random_csn(gen);
        CHECK(coi(csn).total <= static_cast<double>(csn.size() - 1) + 1e-12);
    }
}

TEST_CASE("power-of-two cohesion scaling is exact") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto csn = random_csn(gen);
        // positive self-loops everywhere so t_i scales linearly without clamping
        for (std::size_t i = 0; i < csn.size(); ++i)
            csn.cell(i, i) = Csn::EdgeData{unit(gen), 1.0, 1};
        const double base = coi(csn).total;
        for (const double lambda : {0.5, 0.25, 0.0625, 0.0}) {
            auto scaled = csn;
            for (std::size_t i = 0; i < csn.size(); ++i)
                scaled.cell(i, i)->score = lambda * csn.cell(i, i)->score;
            CHECK(coi(scaled).total == lambda * base); // exact, not approximate
        }
    }
}

TEST_CASE("making a negative edge more negative never decreases coi") {
    std::mt19937_64 gen(20);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int exercised = 0;
    for (int trial = 0; trial < 400 && exercised < 200; ++trial) {
        auto csn = random_csn(gen);
        // pick the first off-diagonal negative edge there is
        bool found = false;
        for (std::size_t i = 0; i < csn.size() && !found; ++i) {
            for (std::size_t j = 0; j < csn.size() && !found; ++j) {
                if (i == j) continue;
                auto& cell = csn.cell(i, j);
                if (cell && cell->score < 0.0) {
                    const double before = coi(csn).total;
                    cell->score = std::max(-1.0, cell->score - unit(gen) * (1.0 + cell->score));
                    CHECK(coi(csn).total >= before - 1e-15);
                    found = true;
                    ++exercised;
                }
            }
        }
    }
    CHECK(exercised >= 100);
}

TEST_CASE("report json round trip") {
    const auto csn = make_csn(2, {{0, 0, 0.9}, {1, 1, 0.6}, {0, 1, -0.8}, {1, 0, -0.5}}, {6, 4});
    auto report = coi(csn);
    report.slice_start = Instant{1646136000000LL};
    report.slice_end = Instant{1646139600000LL};

    std::ostringstream out;
    write_report_json(out, report, "cafe000000000000");
    std::istringstream in(out.str());
    std::string hash;
    const auto parsed = read_report_json(in, &hash);
    CHECK(hash == "cafe000000000000");
    CHECK(parsed.total == report.total);
    REQUIRE(parsed.per_subgroup.size() == report.per_subgroup.size());
    CHECK(parsed.per_subgroup[0].contribution == report.per_subgroup[0].contribution);
    CHECK(parsed.slice_start == report.slice_start);
    CHECK(parsed.slice_end == report.slice_end);
}

TEST_CASE("report table lists every subgroup and the total") {
    const auto csn = make_csn(2, {{0, 1, -0.8}, {1, 0, -0.5}}, {6, 4});
    std::ostringstream out;
    print_report_table(out, coi(csn));
    const auto text = out.str();
    CHECK(text.find("A") != std::string::npos);
    CHECK(text.find("B") != std::string::npos);
    CHECK(text.find("total") != std::string::npos);
    CHECK(text.find("contribution") != std::string::npos);
}
