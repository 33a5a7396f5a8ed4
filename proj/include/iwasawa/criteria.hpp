#pragma once

// Seeded property campaigns. Each record is reproducible from its witness.

#include "iwasawa/module.hpp"
#include "iwasawa/skew.hpp"
#include "iwasawa/window.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace iwa {

struct CampaignConfig {
    std::uint64_t seed = 1;
    std::size_t count = 10;
    unsigned prime = 3;
    std::size_t dimension = 2;
    unsigned max_degree = 3;
    std::size_t max_size = 4;  // rows and columns of a random relation matrix
    std::size_t subgroup = 1;  // r
    Schedule schedule = default_schedule();
    bool include_zoo = true;
    unsigned threads = 0;  // 0: hardware concurrency

    nlohmann::json to_json() const;
};

enum class Verdict { pass, fail, unstable };
std::string to_string(Verdict v);

struct VerdictRecord {
    std::size_t module_id = 0;
    std::string check;
    Verdict verdict = Verdict::unstable;
    nlohmann::json ledger;
    nlohmann::json witness;  // document, windows, seed

    nlohmann::json to_json() const;
};

struct CampaignSummary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t unstable = 0;

    std::size_t total() const { return pass + fail + unstable; }
};
CampaignSummary summarize(const std::vector<VerdictRecord>& records);

/// Generator for module `id` of a campaign; independent of evaluation order.
std::mt19937_64 module_rng(const CampaignConfig& config, std::size_t id);
Poly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned prime, unsigned max_degree);
ModulePresentation random_presentation(std::mt19937_64& rng, const AlgebraDescriptor& a, unsigned max_degree,
                                       std::size_t max_size);
/// Hand-picked edge cases over Lambda_d: zero, free, finite, cyclic torsion,
/// twist-sensitive.
std::vector<ModulePresentation> module_zoo(unsigned prime, std::size_t d);

std::vector<VerdictRecord> run_weierstrass(const CampaignConfig& config);
std::vector<VerdictRecord> run_iwasawa_criterion(const CampaignConfig& config);
std::vector<VerdictRecord> run_prop_main(const CampaignConfig& config);
std::vector<VerdictRecord> run_pseudonull_main(const CampaignConfig& config);
std::vector<VerdictRecord> run_twist_invariance(const CampaignConfig& config);
std::vector<VerdictRecord> run_howson(const CampaignConfig& config);
std::vector<VerdictRecord> run_descent(const CampaignConfig& config);
std::vector<VerdictRecord> run_skew(const CampaignConfig& config);

/// Single-module checks behind the suites.
VerdictRecord check_iwasawa_criterion(const ModulePresentation& m, const Schedule& schedule);
VerdictRecord check_prop_main(const ModulePresentation& m, std::size_t r, const Schedule& schedule);
VerdictRecord check_howson(const ModulePresentation& m, std::size_t r, const Schedule& schedule);

const std::vector<std::string>& suite_names();
/// Throws FlagError for an unknown suite.
std::vector<VerdictRecord> run_suite(const std::string& name, const CampaignConfig& config);

}  // namespace iwa
