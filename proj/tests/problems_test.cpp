#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "beecol/rng.hpp"
#include "beecol/uflp.hpp"

using beecol::BitVector;
using beecol::RngStream;
namespace problems = beecol::problems;
using problems::UflpInstance;

namespace {

// Three facilities, two customers, no cost ties.
UflpInstance small_instance() {
    return UflpInstance("small", 3, 2, {5.0, 4.0, 3.0},
                        {1.0, 9.0, 9.0,    // customer 0
                         9.0, 2.0, 3.0});  // customer 1
}

UflpInstance random_instance(RngStream& rng, std::size_t m, std::size_t n) {
    std::vector<double> setup(m);
    std::vector<double> ship(m * n);
    for (auto& s : setup) s = static_cast<double>(rng.uniform_int(0, 500)) / 10.0;
    for (auto& c : ship) c = static_cast<double>(rng.uniform_int(0, 300)) / 10.0;
    return UflpInstance("random", m, n, std::move(setup), std::move(ship));
}

// Reference evaluator: no ranking, same left-to-right summation order.
double naive_cost(const UflpInstance& inst, const BitVector& x) {
    double cost = 0.0;
    for (std::size_t i = 0; i < inst.facility_count(); ++i)
        if (x[i]) cost += inst.setup(i);
    for (std::size_t j = 0; j < inst.customer_count(); ++j) {
        double best = 0.0;
        bool found = false;
        for (std::size_t i = 0; i < inst.facility_count(); ++i) {
            if (!x[i]) continue;
            if (!found || inst.ship(i, j) < best) {
                best = inst.ship(i, j);
                found = true;
            }
        }
        REQUIRE(found);
        cost += best;
    }
    return cost;
}

}  // namespace

TEST_CASE("parse_orlib reads the cap format") {
    std::istringstream in(
        "2 2\n"
        "capacity 3.5\n"
        "100 4.5\n"
        "10 1.0 2.0\n"
        "20 3.0 4.0\n");
    const UflpInstance inst = problems::parse_orlib(in, "tiny", 99.0);
    CHECK_EQ(inst.name(), "tiny");
    CHECK_EQ(inst.facility_count(), 2);
    CHECK_EQ(inst.customer_count(), 2);
    CHECK_EQ(inst.optimum().value(), 99.0);
    CHECK_EQ(inst.setup(0), 3.5);
    CHECK_EQ(inst.setup(1), 4.5);
    CHECK_EQ(inst.ship(0, 0), 1.0);
    CHECK_EQ(inst.ship(1, 0), 2.0);
    CHECK_EQ(inst.ship(0, 1), 3.0);
    CHECK_EQ(inst.ship(1, 1), 4.0);
}

TEST_CASE("parse_orlib accepts free-form whitespace") {
    std::istringstream in("2 1\n  capacity\t2.0\ncapacity 1.0\n0\n 5.0\n\n   6.0 ");
    const UflpInstance inst = problems::parse_orlib(in);
    CHECK_EQ(inst.facility_count(), 2);
    CHECK_EQ(inst.ship(0, 0), 5.0);
    CHECK_EQ(inst.ship(1, 0), 6.0);
    CHECK_FALSE(inst.optimum().has_value());
}

TEST_CASE("parse_orlib points at the offending token") {
    std::istringstream truncated("2 2\ncapacity 3.5\n");
    CHECK_THROWS_WITH_AS(problems::parse_orlib(truncated),
                         doctest::Contains("unexpected end of input"), problems::ParseError);

    std::istringstream bad_number("2 1\ncapacity oops\ncapacity 1.0\n0 1.0 2.0\n");
    CHECK_THROWS_WITH_AS(problems::parse_orlib(bad_number), doctest::Contains("line 2"),
                         problems::ParseError);

    std::istringstream bad_header("x 1\n");
    CHECK_THROWS_WITH_AS(problems::parse_orlib(bad_header), doctest::Contains("line 1"),
                         problems::ParseError);

    std::istringstream trailing("1 1\ncapacity 1.0\n0 2.0\nextra\n");
    CHECK_THROWS_WITH_AS(problems::parse_orlib(trailing), doctest::Contains("end of input"),
                         problems::ParseError);

    std::istringstream negative("1 1\ncapacity -1.0\n0 2.0\n");
    CHECK_THROWS_AS(problems::parse_orlib(negative), std::invalid_argument);
}

TEST_CASE("write_orlib round-trips through parse_orlib") {
    RngStream rng(314);
    for (int rep = 0; rep < 20; ++rep) {
        const auto m = static_cast<std::size_t>(rng.uniform_int(1, 6));
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
        const UflpInstance original = random_instance(rng, m, n);

        std::stringstream buffer;
        problems::write_orlib(original, buffer);
        const UflpInstance reread = problems::parse_orlib(buffer, original.name());
        CHECK(original == reread);
    }
}

TEST_CASE("UflpInstance validates its inputs") {
    CHECK_THROWS_AS(UflpInstance("x", 0, 1, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(UflpInstance("x", 1, 1, {1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(UflpInstance("x", 2, 1, {1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(UflpInstance("x", 1, 1, {-1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("ranked orders facilities by cost then index") {
    const UflpInstance inst("r", 3, 2, {0.0, 0.0, 0.0},
                            {5.0, 1.0, 3.0,    // customer 0: order 1, 2, 0
                             2.0, 2.0, 7.0});  // customer 1: tie keeps 0 before 1
    const std::uint32_t* r0 = inst.ranked(0);
    CHECK_EQ(r0[0], 1);
    CHECK_EQ(r0[1], 2);
    CHECK_EQ(r0[2], 0);
    const std::uint32_t* r1 = inst.ranked(1);
    CHECK_EQ(r1[0], 0);
    CHECK_EQ(r1[1], 1);
    CHECK_EQ(r1[2], 2);
}

TEST_CASE("evaluate_uflp on worked examples") {
    const UflpInstance inst = small_instance();

    const auto two_open = problems::evaluate_uflp(inst, BitVector{1, 1, 0});
    CHECK_EQ(two_open.cost, 12.0);  // 5 + 4 + 1 + 2
    CHECK_EQ(two_open.assignment, std::vector<std::uint32_t>{0, 1});

    const auto last_only = problems::evaluate_uflp(inst, BitVector{0, 0, 1});
    CHECK_EQ(last_only.cost, 15.0);  // 3 + 9 + 3
    CHECK_EQ(last_only.assignment, std::vector<std::uint32_t>{2, 2});

    const auto all_open = problems::evaluate_uflp(inst, BitVector{1, 1, 1});
    CHECK_EQ(all_open.cost, 15.0);  // 12 + 1 + 2

    CHECK_THROWS_AS(problems::evaluate_uflp(inst, BitVector{0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(problems::evaluate_uflp(inst, BitVector{1, 0}), std::invalid_argument);
}

TEST_CASE("evaluate_uflp breaks assignment ties toward the lowest index") {
    const UflpInstance inst("tie", 2, 1, {0.0, 0.0}, {2.0, 2.0});
    const auto result = problems::evaluate_uflp(inst, BitVector{1, 1});
    CHECK_EQ(result.assignment, std::vector<std::uint32_t>{0});
    CHECK_EQ(result.cost, 2.0);
}

TEST_CASE("evaluate_uflp matches exhaustive enumeration on random instances") {
    RngStream rng(777);
    for (int rep = 0; rep < 30; ++rep) {
        const auto m = static_cast<std::size_t>(rng.uniform_int(2, 7));
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
        const UflpInstance inst = random_instance(rng, m, n);

        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            BitVector x(m);
            for (std::size_t i = 0; i < m; ++i) x.set(i, (mask >> i) & 1u);

            const auto result = problems::evaluate_uflp(inst, x);
            CHECK_EQ(result.cost, naive_cost(inst, x));
            for (std::size_t j = 0; j < n; ++j) {
                const std::uint32_t chosen = result.assignment[j];
                REQUIRE(x[chosen] == 1);
                for (std::size_t i = 0; i < m; ++i) {
                    if (!x[i]) continue;
                    CHECK(inst.ship(chosen, j) <= inst.ship(i, j));
                    if (inst.ship(i, j) == inst.ship(chosen, j)) CHECK(chosen <= i);
                }
            }
        }
    }
}

TEST_CASE("opening more facilities never hurts when setups are free") {
    RngStream rng(555);
    for (int rep = 0; rep < 20; ++rep) {
        const auto m = static_cast<std::size_t>(rng.uniform_int(2, 8));
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
        std::vector<double> ship(m * n);
        for (auto& c : ship) c = static_cast<double>(rng.uniform_int(0, 100));
        const UflpInstance inst("free", m, n, std::vector<double>(m, 0.0), std::move(ship));

        BitVector x(m);
        x.set(static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 1)), 1);
        double prev = problems::evaluate_uflp(inst, x).cost;
        for (std::size_t i = 0; i < m; ++i) {
            if (x[i]) continue;
            x.set(i, 1);
            const double now = problems::evaluate_uflp(inst, x).cost;
            CHECK(now <= prev);
            prev = now;
        }
    }
}

TEST_CASE("repair_all_closed opens the single cheapest facility") {
    const UflpInstance inst("rep", 3, 1, {10.0, 2.0, 5.0}, {1.0, 100.0, 2.0});
    // totals: 11, 102, 7 -> facility 2
    const BitVector repaired = problems::repair_all_closed(inst, BitVector(3));
    CHECK_EQ(repaired, BitVector{0, 0, 1});

    const UflpInstance tie("tie", 2, 1, {3.0, 3.0}, {1.0, 1.0});
    CHECK_EQ(problems::repair_all_closed(tie, BitVector(2)), BitVector{1, 0});
}

TEST_CASE("optima registry lists the fifteen benchmark instances") {
    const auto& registry = problems::optima_registry();
    CHECK_EQ(registry.size(), 15);
    const char* names[] = {"cap71",  "cap72",  "cap73",  "cap74",  "cap101",
                           "cap102", "cap103", "cap104", "cap131", "cap132",
                           "cap133", "cap134", "capa",   "capb",   "capc"};
    for (const char* name : names) {
        REQUIRE(registry.contains(name));
        CHECK(registry.at(name) > 0.0);
    }
    CHECK_EQ(registry.at("cap74"), doctest::Approx(1034976.98));
    CHECK_EQ(registry.at("capb"), doctest::Approx(12979071.58));
    CHECK_EQ(registry.at("capc"), doctest::Approx(11505594.33));
}

TEST_CASE("UflpProblem adapts an instance and repairs empty candidates") {
    const auto shared = std::make_shared<const UflpInstance>(small_instance());
    const problems::UflpProblem problem(shared);
    CHECK_EQ(problem.name(), "small");
    CHECK_EQ(problem.dimension(), 3);
    CHECK_FALSE(problem.optimum().has_value());
    CHECK_EQ(problem.evaluate(BitVector{1, 1, 0}), 12.0);

    BitVector closed(3);
    CHECK(problem.repair(closed));
    CHECK(closed.any());
    CHECK_EQ(closed.count_ones(), 1);

    BitVector open{0, 1, 0};
    CHECK_FALSE(problem.repair(open));
    CHECK_EQ(open, BitVector{0, 1, 0});

    CHECK_THROWS_AS(problems::UflpProblem(nullptr), std::invalid_argument);
}

TEST_CASE("cap71 exhaustive optimum matches the registry when data is present") {
    const std::filesystem::path path = "data/orlib/cap71.txt";
    if (!std::filesystem::exists(path)) {
        MESSAGE("cap71.txt not present; skipping exhaustive check");
        return;
    }
    std::ifstream in(path);
    const UflpInstance inst = problems::parse_orlib(in, "cap71");
    REQUIRE_EQ(inst.facility_count(), 16);
    double best = 0.0;
    bool found = false;
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        BitVector x(16);
        for (std::size_t i = 0; i < 16; ++i) x.set(i, (mask >> i) & 1u);
        const double cost = problems::evaluate_uflp(inst, x).cost;
        if (!found || cost < best) {
            best = cost;
            found = true;
        }
    }
    CHECK_EQ(best, doctest::Approx(problems::optima_registry().at("cap71")).epsilon(1e-9));
}
