#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iwasawa/criteria.hpp"
#include "iwasawa/errors.hpp"

using namespace iwa;

namespace {

nlohmann::json dump_all(const std::vector<VerdictRecord>& records)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : records)
        j.push_back(r.to_json());
    return j;
}

}  // namespace

TEST_CASE("single-module checks")
{
    const AlgebraDescriptor l1 = AlgebraDescriptor::standard(3, 1), l2 = AlgebraDescriptor::standard(3, 2);
    const Poly T = Poly::variable(1, 0), p1 = Poly::constant(1, 3);

    const auto finite = check_iwasawa_criterion(ModulePresentation::cyclic(l1, {p1, T}), default_schedule());
    CHECK(finite.verdict == Verdict::pass);
    CHECK(finite.ledger["vacuous"] == false);
    CHECK(finite.ledger["torsion"] == true);

    const auto free = check_iwasawa_criterion(ModulePresentation::free(l1, 1), default_schedule());
    CHECK(free.verdict == Verdict::pass);
    CHECK(free.ledger["vacuous"] == true);

    const auto pm = check_prop_main(ModulePresentation::free(l2, 1), 1, default_schedule());
    CHECK(pm.verdict == Verdict::pass);
    CHECK(pm.ledger["h0_torsion"] == false);
    CHECK(pm.ledger["vacuous"] == true);

    const auto h = check_howson(ModulePresentation::cyclic(l2, {Poly::variable(2, 0)}), 1, default_schedule());
    CHECK(h.verdict == Verdict::pass);
    CHECK(h.ledger["alternating_sum"] == 0);
    REQUIRE(h.ledger["terms"].size() == 2);
    CHECK(h.ledger["terms"][0]["rank"] == 1);
    CHECK(h.ledger["terms"][1]["rank"] == 1);
}

TEST_CASE("zoo entries are valid and the zero module comes first")
{
    for (std::size_t d : {1u, 2u, 3u}) {
        const auto zoo = module_zoo(5, d);
        CHECK(zoo.size() >= 8);
        CHECK(rank(zoo[0]) == 0);
        CHECK(is_finite(zoo[0], default_schedule()).verdict == Finiteness::finite);
        for (const auto& m : zoo)
            CHECK_NOTHROW(m.validate());
    }
}

TEST_CASE("campaigns are deterministic and order-independent")
{
    CampaignConfig c;
    c.seed = 99;
    c.count = 12;
    c.threads = 1;
    const auto one = dump_all(run_prop_main(c));
    c.threads = 4;
    const auto four = dump_all(run_prop_main(c));
    CHECK(one == four);
    CHECK(one.size() == 12);
    for (std::size_t i = 0; i < one.size(); ++i)
        CHECK(one[i]["module_id"] == i);

    const auto r1 = module_rng(c, 5);
    c.count = 1000;
    CHECK(module_rng(c, 5) == r1);
    c.seed = 100;
    CHECK_FALSE(module_rng(c, 5) == r1);
}

TEST_CASE("small campaigns have no failures")
{
    CampaignConfig c;
    c.seed = 7;
    c.count = 12;
    for (const auto& name : suite_names()) {
        CampaignConfig cc = c;
        if (name == "iwasawa-criterion")
            cc.dimension = 1;
        if (name == "pseudonull-main")
            cc.dimension = 3;
        CAPTURE(name);
        const auto records = run_suite(name, cc);
        const auto s = summarize(records);
        CHECK(s.total() == records.size());
        CHECK(s.fail == 0);
        for (const auto& r : records)
            CHECK(r.witness.contains(name == "weierstrass" ? "f" : "document"));
    }
    CHECK_THROWS_AS(run_suite("no-such-suite", c), FlagError);
}
