#include "oracles.hpp"

#include "torusmd/batch.hpp"
#include "torusmd/error.hpp"

#include "doctest.h"

using namespace torusmd;

TEST_SUITE("batch") {
    TEST_CASE("enumeration matches the test-side corpus") {
        for (auto [bound, range] : std::vector<std::pair<int, int>>{{3, 5}, {6, 9}, {10, 7}}) {
            const auto got = enumerate_sol(bound, range);
            const auto want = oracle::sol_corpus(bound, 2, range);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(std::array<long long, 4>{got[i].a, got[i].b, got[i].c, got[i].d} == want[i]);
        }
        CHECK(enumerate_sol(10, 2).empty());
        CHECK_THROWS_AS(enumerate_sol(-1, 5), Error);
    }

    TEST_CASE("a failing bundle is recorded, not thrown") {
        const BatchRow bad = run_one({2, 1, 1, 2}, 1);
        CHECK(bad.status == RowStatus::Error);
        CHECK(bad.error_code == "DeterminantError");
        CHECK(render_batch_row(bad, Format::Csv).find(",error,,\"DeterminantError: ") != std::string::npos);

        const BatchRow degenerate = run_one({-2, 1, 1, -1}, 1);
        CHECK(degenerate.status == RowStatus::Degenerate);
        const BatchRow ok = run_one({2, 1, 1, 1}, -1);
        CHECK(ok.status == RowStatus::Pass);
        CHECK(ok.failed_checks.empty());
        CHECK(render_batch_row(ok, Format::Csv) == "2,1,1,1,3,5,1,\"(o,o)\",4,2,2,10,true,1,0,pass,,\n");
    }

    TEST_CASE("emission order does not depend on the thread count") {
        std::vector<std::string> serial, parallel;
        const BatchAggregate a = run_batch({6, 8, 1, 1}, [&](const BatchRow& r) { serial.push_back(render_batch_row(r, Format::Json)); });
        const BatchAggregate b = run_batch({6, 8, 1, 7}, [&](const BatchRow& r) { parallel.push_back(render_batch_row(r, Format::Json)); });
        CHECK(serial == parallel);
        CHECK(a.total == serial.size());
        CHECK(a.ok());
        CHECK(b.passed + b.degenerate == b.total);
    }

    TEST_CASE("table summary") {
        const TableSummary t = build_table({10, 7, 1, 0});
        CHECK(t.ok());
        REQUIRE(t.rows.size() == 4);
        CHECK(t.rows[2].bundles == 0); // r even forces N/r even
        for (const TableRow& row : t.rows)
            for (const auto& [n, counts] : row.counts_by_order) {
                if (row.parity_row == "(o,o)") CHECK(counts == std::pair<std::int64_t, std::int64_t>{2, (n - 1) / 2});
                if (row.parity_row == "(e,e)") CHECK(counts == std::pair<std::int64_t, std::int64_t>{8, n / 2 - 2});
            }
        for (Format f : {Format::Json, Format::Csv, Format::Latex, Format::Pretty}) CHECK_FALSE(render_table(t, f).empty());
    }
}
