#include "iwasawa/spectral.hpp"

#include "iwasawa/truncated.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwa {

ModulePresentation PerfectComplex::h2() const
{
    ModulePresentation m = ModulePresentation::free(algebra, target_rank);
    m.relations = differential;
    m.validate();
    return m;
}

namespace {

std::vector<std::size_t> all_variables(std::size_t d)
{
    std::vector<std::size_t> v(d);
    for (std::size_t i = 0; i < d; ++i)
        v[i] = i;
    return v;
}

// log_p of the top-degree hyperhomology of the complex tensored with
// Lambda/(p^N, T^D, T1..Td), counted in the lattice engine.
std::uint64_t edge_log_size(const ModulePresentation& h2, TruncationWindow w)
{
    const std::size_t d = h2.algebra.dimension;
    PolyMatrix rows = h2.relations;
    for (std::size_t g = 0; g < h2.generators; ++g)
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<Poly> row(h2.generators, Poly(d));
            row[g] = Poly::variable(d, i);
            rows.push_back(std::move(row));
        }
    const ModRing ring(h2.algebra.prime, w.precision);
    const trunc::FreeLevel level{ring, trunc::MonomialBasis(d, w.degree), h2.generators};
    return trunc::cokernel_log_size(level, trunc::to_mod_matrix(rows, ring));
}

std::uint64_t predicted_log_size(const ZpStructure& s, unsigned precision)
{
    std::uint64_t total = s.free_rank * precision;
    for (auto e : s.torsion_exponents)
        total += std::min(e, precision);
    return total;
}

nlohmann::json optional_json(const std::optional<std::size_t>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json optional_json(const std::optional<std::uint64_t>& v, int)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

CheckStatus combine(CheckStatus a, CheckStatus b)
{
    if (a == CheckStatus::violated || b == CheckStatus::violated)
        return CheckStatus::violated;
    if (a == CheckStatus::unstable || b == CheckStatus::unstable)
        return CheckStatus::unstable;
    return CheckStatus::holds;
}

}  // namespace

DescentLedger descent_check(const PerfectComplex& c, const Schedule& schedule)
{
    const ModulePresentation h2 = c.h2();
    const std::size_t d = h2.algebra.dimension;
    if (d == 0)
        throw std::invalid_argument("descent needs d >= 1");
    DescentLedger out;
    out.entries["dimension"] = d;

    // edge map: H_0(G, H2) against the truncated total complex
    const ModulePresentation coinv = reduce_to_quotient(h2, all_variables(d));
    out.h0_of_h2 = zp_structure(coinv);
    nlohmann::json edge;
    edge["free_rank"] = out.h0_of_h2.free_rank;
    edge["torsion_exponents"] = out.h0_of_h2.torsion_exponents;
    edge["windows"] = nlohmann::json::array();
    out.edge = CheckStatus::holds;
    for (const auto& w : schedule) {
        const auto got = edge_log_size(h2, w);
        const auto want = predicted_log_size(out.h0_of_h2, w.precision);
        edge["windows"].push_back({{"N", w.precision}, {"D", w.degree}, {"total_complex", got}, {"coinvariants", want}});
        if (got != want)
            out.edge = CheckStatus::violated;
    }
    edge["status"] = to_string(out.edge);
    out.entries["edge"] = edge;

    // shift: H_n(G, H1) ~ H_{n+2}(G, H2) for n >= 1
    const auto k1 = kernel_koszul_homology(h2, d, schedule);
    const auto k2 = koszul_homology(h2, d, schedule);
    out.entries["shift"] = nlohmann::json::array();
    out.shift = CheckStatus::holds;
    for (std::size_t n = 1; n <= d; ++n) {
        const auto& a = k1.degrees[n];
        nlohmann::json e{{"n", n}};
        e["h1_rank"] = optional_json(a.rank);
        e["h1_log_cardinality"] = optional_json(a.log_cardinality, 0);
        std::optional<std::size_t> brank;
        std::optional<std::uint64_t> bcard;
        if (n + 2 <= d) {
            brank = k2.degrees[n + 2].rank;
            bcard = k2.degrees[n + 2].log_cardinality;
        } else {
            brank = 0;
            bcard = 0;
        }
        e["h2_shift_rank"] = optional_json(brank);
        e["h2_shift_log_cardinality"] = optional_json(bcard, 0);
        CheckStatus st;
        if (!a.rank || !brank)
            st = CheckStatus::unstable;
        else if (*a.rank != *brank)
            st = CheckStatus::violated;
        else if (*a.rank > 0)
            st = CheckStatus::holds;
        else if (!a.log_cardinality || !bcard)
            st = CheckStatus::unstable;
        else
            st = *a.log_cardinality == *bcard ? CheckStatus::holds : CheckStatus::violated;
        e["status"] = to_string(st);
        out.shift = combine(out.shift, st);
        out.entries["shift"].push_back(e);
    }
    out.status = combine(out.edge, out.shift);
    out.entries["status"] = to_string(out.status);
    return out;
}

std::string to_string(EulerStatus s)
{
    switch (s) {
    case EulerStatus::defined: return "defined";
    case EulerStatus::undefined: return "undefined";
    case EulerStatus::unstable: return "unstable";
    }
    return "?";
}

std::string EulerCharacteristic::value_string() const
{
    if (status == EulerStatus::undefined)
        return "undefined";
    if (status == EulerStatus::unstable)
        return "unstable";
    if (denominator == 1)
        return numerator.get_str();
    return numerator.get_str() + "/" + denominator.get_str();
}

EulerCharacteristic euler_characteristic(const ModulePresentation& m, const Schedule& schedule)
{
    const std::size_t d = m.algebra.dimension;
    EulerCharacteristic out;
    const auto h0 = zp_structure(reduce_to_quotient(m, all_variables(d)));
    if (h0.free_rank > 0) {
        out.status = EulerStatus::undefined;
        out.reason = "H_0 has a free Zp-summand of rank " + std::to_string(h0.free_rank);
        return out;
    }
    // finite H_0 forces every H_n to be finite
    const auto rep = koszul_homology(m, d, schedule);
    long long total = 0;
    bool complete = true;
    for (const auto& deg : rep.degrees) {
        out.log_sizes.push_back(deg.log_cardinality);
        if (!deg.log_cardinality) {
            complete = false;
            continue;
        }
        const auto v = static_cast<long long>(*deg.log_cardinality);
        total += deg.degree % 2 == 0 ? v : -v;
    }
    if (!complete) {
        out.status = EulerStatus::unstable;
        out.reason = "some H_n did not settle over the schedule";
        return out;
    }
    out.status = EulerStatus::defined;
    out.log_p = total;
    if (total >= 0)
        out.numerator = ipow(m.algebra.prime, static_cast<unsigned>(total));
    else
        out.denominator = ipow(m.algebra.prime, static_cast<unsigned>(-total));
    out.reason = "all H_n finite";
    return out;
}

}  // namespace iwa
