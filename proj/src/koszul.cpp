#include "iwasawa/koszul.hpp"

#include "iwasawa/truncated.hpp"

#include <random>
#include <stdexcept>

namespace iwa {

namespace {

struct FieldChoice {
    std::uint64_t prime;
    std::uint64_t seed;
};

constexpr FieldChoice kFields[] = {{2147483647ULL, 1}, {1000000007ULL, 2}};

using Fixed = std::vector<std::optional<std::uint64_t>>;

std::size_t ambient_rank(const ModulePresentation& m, ModuleKind kind)
{
    return kind == ModuleKind::cokernel ? m.generators : m.relations.size();
}

trunc::FreeLevel make_level(const ModRing& ring, std::size_t nvars, unsigned degree, std::size_t rank)
{
    return trunc::FreeLevel{ring, trunc::MonomialBasis(nvars, degree), rank};
}

// Stable image of Koszul homology from the deeper levels into levels.front().
// Kernel modules need one extra level: their generators at each level are
// the truncations of kernel elements from the next level down.
std::vector<std::uint64_t> stable_koszul(const ModulePresentation& m, ModuleKind kind, std::size_t r,
                                         const std::vector<ModRing>& rings, const std::vector<unsigned>& degrees,
                                         std::size_t nvars, const Fixed& fixed)
{
    const std::size_t n = ambient_rank(m, kind);
    if (n == 0)
        return std::vector<std::uint64_t>(r + 1, 0);
    std::vector<trunc::FreeLevel> levels;
    std::vector<trunc::ModPolyMatrix> mats;
    for (std::size_t i = 0; i < rings.size(); ++i) {
        levels.push_back(make_level(rings[i], nvars, degrees[i], n));
        mats.push_back(trunc::to_mod_matrix(m.relations, rings[i], fixed));
    }
    if (kind == ModuleKind::cokernel) {
        const auto hi = trunc::koszul_presented(levels[1], mats[1], r);
        const auto lo = trunc::koszul_presented(levels[0], mats[0], r);
        return trunc::stable_homology(hi, lo, trunc::koszul_projection(levels[1], levels[0], r));
    }
    auto truncated_kernel = [&](std::size_t deep, std::size_t shallow) {
        const auto gens = trunc::kernel_generators(levels[deep], mats[deep]);
        const auto map = trunc::free_projection(levels[deep], levels[shallow]);
        std::vector<SparseVec> out;
        for (const auto& g : gens) {
            auto v = trunc::project(g, map, rings[shallow]);
            if (!v.empty())
                out.push_back(std::move(v));
        }
        return out;
    };
    const auto hi = trunc::koszul_submodule(levels[1], truncated_kernel(2, 1), r);
    const auto lo = trunc::koszul_submodule(levels[0], truncated_kernel(1, 0), r);
    return trunc::stable_homology(hi, lo, trunc::koszul_projection(levels[1], levels[0], r));
}

void check_subgroup(const ModulePresentation& m, std::size_t r)
{
    if (r < 1 || r > m.algebra.dimension)
        throw std::invalid_argument("subgroup size must satisfy 1 <= r <= d");
}

template <class T>
std::optional<T> first_agreement(const std::vector<std::optional<T>>& seq)
{
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] && seq[i + 1] && *seq[i] == *seq[i + 1])
            return seq[i];
    return std::nullopt;
}

HomologyReport build_report(const ModulePresentation& m, ModuleKind kind, std::size_t r, const Schedule& schedule,
                            const KoszulOptions& options)
{
    check_subgroup(m, r);
    std::vector<std::size_t> acting;
    for (std::size_t i = 0; i < r; ++i)
        acting.push_back(i);

    HomologyReport rep;
    rep.subgroup_rank = r;
    rep.degrees.resize(r + 1);
    for (std::size_t k = 0; k <= r; ++k)
        rep.degrees[k].degree = k;
    {
        auto q = reduce_to_quotient(ModulePresentation::free(m.algebra, 0), acting);
        rep.quotient_algebra = q.algebra;
    }

    std::vector<std::vector<std::optional<std::size_t>>> ranks(r + 1);
    std::vector<std::vector<std::optional<std::uint64_t>>> cards(r + 1);
    for (std::size_t wi = 0; wi < schedule.size(); ++wi) {
        const auto& w = schedule[wi];
        std::vector<std::vector<std::size_t>> dims;
        for (const auto& f : kFields)
            dims.push_back(generic_homology_dims(m, kind, r, w.degree, f.prime, f.seed, options.lift_degree));
        std::vector<std::uint64_t> logs;
        if (options.cardinalities)
            logs = truncated_homology(m, kind, r, w, options);
        for (std::size_t k = 0; k <= r; ++k) {
            WindowRecord rec;
            rec.window = w;
            if (dims[0][k] == dims[1][k])
                rec.generic_rank = dims[0][k];
            if (options.cardinalities)
                rec.log_cardinality = logs[k];
            ranks[k].push_back(rec.generic_rank);
            cards[k].push_back(rec.log_cardinality);
            rep.degrees[k].windows.push_back(rec);
        }
        if (options.stop_when_settled && wi >= 1) {
            bool settled = true;
            for (std::size_t k = 0; k <= r; ++k) {
                settled = settled && first_agreement(ranks[k]).has_value();
                if (options.cardinalities)
                    settled = settled && first_agreement(cards[k]).has_value();
            }
            if (settled)
                break;
        }
    }

    for (std::size_t k = 0; k <= r; ++k) {
        auto& deg = rep.degrees[k];
        if (const auto rk = first_agreement(ranks[k])) {
            deg.rank = *rk;
            deg.torsion = *rk == 0;
            deg.stability = Stability::stabilized;
        }
        if (const auto c = first_agreement(cards[k])) {
            deg.log_cardinality = *c;
            deg.cardinality_stability = Stability::stabilized;
        }
    }

    if (kind == ModuleKind::cokernel) {
        auto& d0 = rep.degrees[0];
        d0.presentation = reduce_to_quotient(m, acting);
        d0.rank = rank(*d0.presentation);
        d0.torsion = *d0.rank == 0;
        d0.stability = Stability::exact;
        d0.log_cardinality.reset();
        d0.cardinality_stability = Stability::unstable;
        if (options.cardinalities) {
            const auto fin = is_finite(*d0.presentation, schedule);
            if (fin.verdict == Finiteness::finite && fin.log_cardinality) {
                d0.log_cardinality = fin.log_cardinality;
                d0.cardinality_stability = Stability::exact;
            }
        }
    }
    return rep;
}

}  // namespace

std::string to_string(Stability s)
{
    switch (s) {
    case Stability::exact: return "exact";
    case Stability::stabilized: return "stabilized";
    case Stability::unstable: return "unstable";
    }
    return "?";
}

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::holds: return "holds";
    case CheckStatus::violated: return "violated";
    case CheckStatus::unstable: return "unstable";
    }
    return "?";
}

bool HomologyReport::ranks_stable() const
{
    for (const auto& d : degrees)
        if (!d.rank)
            return false;
    return true;
}

std::vector<std::uint64_t> truncated_homology(const ModulePresentation& m, ModuleKind kind, std::size_t r,
                                              TruncationWindow w, const KoszulOptions& options)
{
    check_subgroup(m, r);
    std::vector<ModRing> rings;
    std::vector<unsigned> degrees;
    const std::size_t levels = kind == ModuleKind::cokernel ? 2 : 3;
    for (std::size_t i = 0; i < levels; ++i) {
        rings.emplace_back(m.algebra.prime, w.precision + static_cast<unsigned>(i) * options.lift_precision);
        degrees.push_back(w.degree + static_cast<unsigned>(i) * options.lift_degree);
    }
    return stable_koszul(m, kind, r, rings, degrees, m.algebra.dimension, {});
}

std::vector<std::size_t> generic_homology_dims(const ModulePresentation& m, ModuleKind kind, std::size_t r,
                                               unsigned degree, std::uint64_t field_prime, std::uint64_t seed,
                                               unsigned lift_degree)
{
    check_subgroup(m, r);
    const ModRing field(field_prime, 1);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, field_prime - 1);
    Fixed fixed(m.algebra.dimension);
    for (std::size_t i = r; i < m.algebra.dimension; ++i)
        fixed[i] = pick(rng);
    const std::size_t levels = kind == ModuleKind::cokernel ? 2 : 3;
    std::vector<ModRing> rings(levels, field);
    std::vector<unsigned> degrees;
    for (std::size_t i = 0; i < levels; ++i)
        degrees.push_back(degree + static_cast<unsigned>(i) * lift_degree);
    const auto logs = stable_koszul(m, kind, r, rings, degrees, r, fixed);
    return {logs.begin(), logs.end()};
}

HomologyReport koszul_homology(const ModulePresentation& m, std::size_t r, const Schedule& schedule,
                               const KoszulOptions& options)
{
    return build_report(m, ModuleKind::cokernel, r, schedule, options);
}

HomologyReport kernel_koszul_homology(const ModulePresentation& m, std::size_t r, const Schedule& schedule,
                                      const KoszulOptions& options)
{
    return build_report(m, ModuleKind::kernel, r, schedule, options);
}

DegreeReport invariants_top(const ModulePresentation& m, std::size_t r, const Schedule& schedule)
{
    return koszul_homology(m, r, schedule).degrees.at(r);
}

HowsonResult howson_check(const ModulePresentation& m, std::size_t r, const Schedule& schedule)
{
    KoszulOptions opt;
    opt.cardinalities = false;
    const auto rep = koszul_homology(m, r, schedule, opt);
    HowsonResult out;
    out.module_rank = rank(m);
    out.ledger["module_rank"] = out.module_rank;
    out.ledger["terms"] = nlohmann::json::array();
    bool complete = true;
    for (const auto& d : rep.degrees) {
        out.homology_ranks.push_back(d.rank);
        nlohmann::json term{{"degree", d.degree}, {"sign", d.degree % 2 == 0 ? 1 : -1},
                            {"stability", to_string(d.stability)}};
        if (d.rank) {
            term["rank"] = *d.rank;
            const auto v = static_cast<long long>(*d.rank);
            out.alternating_sum += d.degree % 2 == 0 ? v : -v;
        } else {
            term["rank"] = nullptr;
            complete = false;
        }
        out.ledger["terms"].push_back(term);
    }
    out.ledger["alternating_sum"] = out.alternating_sum;
    if (!complete)
        out.status = CheckStatus::unstable;
    else
        out.status = out.alternating_sum == static_cast<long long>(out.module_rank) ? CheckStatus::holds
                                                                                    : CheckStatus::violated;
    out.ledger["status"] = to_string(out.status);
    return out;
}

nlohmann::json report_json(const HomologyReport& r)
{
    nlohmann::json j;
    j["subgroup_rank"] = r.subgroup_rank;
    j["quotient_variables"] = r.quotient_algebra.variables;
    j["degrees"] = nlohmann::json::array();
    for (const auto& d : r.degrees) {
        nlohmann::json e;
        e["degree"] = d.degree;
        e["stability"] = to_string(d.stability);
        e["rank"] = d.rank ? nlohmann::json(*d.rank) : nlohmann::json(nullptr);
        e["torsion"] = d.torsion ? nlohmann::json(*d.torsion) : nlohmann::json(nullptr);
        e["log_cardinality"] = d.log_cardinality ? nlohmann::json(*d.log_cardinality) : nlohmann::json(nullptr);
        e["cardinality_stability"] = to_string(d.cardinality_stability);
        if (d.presentation) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : d.presentation->relations) {
                nlohmann::json jr = nlohmann::json::array();
                for (const auto& f : row)
                    jr.push_back(f.to_string(d.presentation->algebra.variables));
                rows.push_back(jr);
            }
            e["presentation"] = {{"generators", d.presentation->generators}, {"relations", rows}};
        }
        nlohmann::json ws = nlohmann::json::array();
        for (const auto& w : d.windows) {
            nlohmann::json jw{{"N", w.window.precision}, {"D", w.window.degree}};
            jw["log_cardinality"] =
                w.log_cardinality ? nlohmann::json(*w.log_cardinality) : nlohmann::json(nullptr);
            jw["generic_rank"] = w.generic_rank ? nlohmann::json(*w.generic_rank) : nlohmann::json(nullptr);
            ws.push_back(jw);
        }
        e["windows"] = ws;
        j["degrees"].push_back(e);
    }
    return j;
}

}  // namespace iwa
