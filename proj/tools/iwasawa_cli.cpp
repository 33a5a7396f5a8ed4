// iwasawa-cli: command-line front end over the iwasawa library.
//
// Exit status: 0 pass or computed, 1 a fail verdict, 2 unstable verdicts and
// no fail, 3 input error (no report file is written).

#include "iwasawa/criteria.hpp"
#include "iwasawa/document.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/koszul.hpp"
#include "iwasawa/module.hpp"
#include "iwasawa/skew.hpp"
#include "iwasawa/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace iwa;
using nlohmann::json;

namespace {

constexpr const char* kWindowsEnv = "IWASAWA_WINDOWS";

enum Exit { kOk = 0, kFail = 1, kUnstable = 2, kInput = 3 };

struct Outcome {
    int status = kOk;
    json report;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        out.push_back(item);
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}

long long parse_int(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw FlagError(what + ": '" + text + "' is not an integer");
    return v;
}

Schedule parse_windows(const std::string& text, const std::string& what)
{
    const auto parts = split(text, ',');
    if (parts.empty() || parts.size() % 2 != 0)
        throw FlagError(what + ": expected N,D[,N,D...]");
    Schedule s;
    for (std::size_t i = 0; i < parts.size(); i += 2) {
        const auto n = parse_int(parts[i], what), d = parse_int(parts[i + 1], what);
        if (n < 1 || d < 1 || n > 60 || d > 64)
            throw FlagError(what + ": window (" + parts[i] + "," + parts[i + 1] + ") out of range");
        s.push_back({static_cast<unsigned>(n), static_cast<unsigned>(d)});
    }
    return s;
}

Schedule schedule_from(const std::string& flag)
{
    if (!flag.empty())
        return parse_windows(flag, "--window");
    if (const char* env = std::getenv(kWindowsEnv); env && *env)
        return parse_windows(env, kWindowsEnv);
    return default_schedule();
}

json windows_json(const Schedule& s)
{
    json out = json::array();
    for (const auto& w : s)
        out.push_back({w.precision, w.degree});
    return out;
}

PresentationDocument read_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FlagError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

void require_plain(const PresentationDocument& doc, const std::string& cmd)
{
    if (doc.skew_chi)
        throw FlagError(cmd + " does not accept skew documents");
}

std::string optional_string(const std::optional<std::size_t>& v)
{
    return v ? std::to_string(*v) : "unknown";
}

// Moves the variables in `subset` to the front, keeping the rest in order.
ModulePresentation reorder(const ModulePresentation& m, const std::vector<std::size_t>& subset)
{
    const std::size_t d = m.algebra.dimension;
    std::vector<std::size_t> order = subset;
    for (std::size_t i = 0; i < d; ++i)
        if (std::find(subset.begin(), subset.end(), i) == subset.end())
            order.push_back(i);
    ModulePresentation out = m;
    for (std::size_t i = 0; i < d; ++i)
        out.algebra.variables[i] = m.algebra.variables[order[i]];
    for (auto& row : out.relations)
        for (auto& f : row) {
            Poly g(d);
            for (const auto& [e, c] : f.terms()) {
                Exponent ne(d);
                for (std::size_t i = 0; i < d; ++i)
                    ne[i] = e[order[i]];
                g.add_term(ne, c);
            }
            f = g;
        }
    return out;
}

std::vector<std::size_t> parse_subgroup(const std::string& text, const std::vector<std::string>& vars)
{
    std::vector<std::size_t> out;
    if (text.empty())
        return {0};
    for (const auto& item : split(text, ',')) {
        std::size_t idx = vars.size();
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == item)
                idx = i;
        if (idx == vars.size()) {
            const auto v = parse_int(item, "--subgroup");
            if (v < 1 || static_cast<std::size_t>(v) > vars.size())
                throw FlagError("--subgroup: index " + item + " out of range 1.." + std::to_string(vars.size()));
            idx = static_cast<std::size_t>(v - 1);
        }
        if (std::find(out.begin(), out.end(), idx) != out.end())
            throw FlagError("--subgroup: repeated variable " + item);
        out.push_back(idx);
    }
    return out;
}

int status_of(CheckStatus s)
{
    switch (s) {
    case CheckStatus::holds: return kOk;
    case CheckStatus::violated: return kFail;
    case CheckStatus::unstable: return kUnstable;
    }
    return kUnstable;
}

Outcome cmd_rank(const std::string& file, const Schedule& schedule)
{
    const auto doc = read_document(file);
    Outcome o;
    if (doc.skew_chi) {
        const auto m = to_skew_module(doc, schedule.front());
        const auto r = skew_rank(m, schedule);
        std::cout << "rank: " << (r.rank ? std::to_string(*r.rank) : "unstable") << "\n";
        std::cout << "  H_0 rank " << r.h0_rank << ", H_1 rank " << optional_string(r.h1_rank) << "\n";
        o.report["rank"] = r.rank ? json(*r.rank) : json(nullptr);
        o.report["h0_rank"] = r.h0_rank;
        o.report["h1_rank"] = r.h1_rank ? json(*r.h1_rank) : json(nullptr);
        o.report["stability"] = to_string(r.status);
        o.status = status_of(r.status);
        return o;
    }
    const auto m = to_module(doc, schedule.front());
    const auto r = rank(m);
    std::cout << "rank: " << r << "\n";
    o.report["rank"] = r;
    o.report["stability"] = "exact";
    return o;
}

Outcome cmd_torsion(const std::string& file, const Schedule& schedule)
{
    const auto doc = read_document(file);
    Outcome o;
    if (doc.skew_chi) {
        const auto r = skew_rank(to_skew_module(doc, schedule.front()), schedule);
        o.status = status_of(r.status);
        const std::string verdict = r.rank ? (*r.rank == 0 ? "true" : "false") : "unstable";
        std::cout << "torsion: " << verdict << "\n";
        o.report["torsion"] = verdict;
        o.report["stability"] = to_string(r.status);
        return o;
    }
    const auto m = to_module(doc, schedule.front());
    const bool t = is_torsion(m);
    const auto fitt = fitting_ideal(m);
    std::cout << "torsion: " << (t ? "true" : "false") << "\n";
    std::cout << "  Fitt_0 gcd: " << fitt.gcd_over_z.to_string(m.algebra.variables) << " ("
              << to_string(fitt.unit_status) << ")\n";
    o.report["torsion"] = t;
    o.report["rank"] = rank(m);
    o.report["fitting_gcd"] = fitt.gcd_over_z.to_string(m.algebra.variables);
    o.report["fitting_status"] = to_string(fitt.unit_status);
    o.report["stability"] = "exact";
    return o;
}

Outcome cmd_pseudonull(const std::string& file, const Schedule& schedule)
{
    const auto doc = read_document(file);
    require_plain(doc, "pseudonull");
    const auto m = to_module(doc, schedule.front());
    const auto v = pseudonull_verdict(m);
    Outcome o;
    std::cout << "pseudo-null: " << (v.pseudonull ? "true" : "false") << "\n";
    std::cout << "  " << v.reason << "\n";
    if (!v.proxy_complete)
        std::cout << "  note: Z[T] gcd used in place of the Lambda gcd\n";
    o.report["pseudonull"] = v.pseudonull;
    o.report["reason"] = v.reason;
    o.report["proxy_complete"] = v.proxy_complete;
    o.report["gcd"] = v.gcd.to_string(m.algebra.variables);
    return o;
}

Outcome cmd_homology(const std::string& file, const std::string& subgroup, const Schedule& schedule)
{
    const auto doc = read_document(file);
    Outcome o;
    if (doc.skew_chi) {
        const auto rep = n_homology(to_skew_module(doc, schedule.front()), schedule);
        std::cout << "H_0: rank " << rep.h0_rank << ", torsion " << (rep.h0_torsion ? "true" : "false")
                  << ", finite " << to_string(rep.h0_finite) << " (exact)\n";
        std::cout << "H_1: rank " << optional_string(rep.h1_rank) << ", torsion "
                  << (rep.h1_torsion ? (*rep.h1_torsion ? "true" : "false") : "unknown") << " ("
                  << to_string(rep.stability) << ")\n";
        if (rep.twist_exponent)
            std::cout << "twist exponent: " << *rep.twist_exponent << "\n";
        o.report["homology"] = rep.to_json();
        o.status = rep.stability == Stability::unstable || !rep.h0_consistent ? kUnstable : kOk;
        return o;
    }
    auto m = to_module(doc, schedule.front());
    const auto subset = parse_subgroup(subgroup, m.algebra.variables);
    m = reorder(m, subset);
    const auto rep = koszul_homology(m, subset.size(), schedule);
    std::cout << "subgroup: ";
    for (std::size_t i = 0; i < subset.size(); ++i)
        std::cout << (i ? "," : "") << m.algebra.variables[i];
    std::cout << "; quotient algebra in " << rep.quotient_algebra.variables.size() << " variable(s)\n";
    for (const auto& d : rep.degrees) {
        std::cout << "H_" << d.degree << ": rank " << optional_string(d.rank) << ", torsion "
                  << (d.torsion ? (*d.torsion ? "true" : "false") : "unknown");
        if (d.log_cardinality)
            std::cout << ", order p^" << *d.log_cardinality;
        std::cout << " (" << to_string(d.stability) << ")\n";
        if (d.stability == Stability::unstable)
            o.status = kUnstable;
    }
    o.report["homology"] = report_json(rep);
    return o;
}

Outcome cmd_twist(const std::string& file, const std::string& kappa, const Schedule& schedule)
{
    const auto doc = read_document(file);
    require_plain(doc, "twist");
    const auto m = to_module(doc, schedule.front());
    CharacterTwist k;
    k.precision = schedule.front().precision;
    for (const auto& v : split(kappa, ','))
        k.values.push_back(Integer(static_cast<long>(parse_int(v, "--kappa"))));
    if (k.values.size() != m.algebra.dimension)
        throw FlagError("--kappa: expected " + std::to_string(m.algebra.dimension) + " values");
    TwistedPresentation tw;
    try {
        tw = twist(m, k);
    } catch (const std::invalid_argument& e) {
        throw FlagError(std::string("--kappa: ") + e.what());
    }
    const auto r0 = rank(m), r1 = rank(tw.exact);
    std::cout << "rank: " << r0 << " -> " << r1 << "\n";
    std::cout << "torsion: " << (r0 == 0 ? "true" : "false") << " -> " << (r1 == 0 ? "true" : "false") << "\n";
    if (!tw.principal)
        std::cout << "note: character is not 1 mod p\n";
    std::cout << print_document(document_from(tw.exact));
    Outcome o;
    o.report["rank"] = r0;
    o.report["twisted_rank"] = r1;
    o.report["principal"] = tw.principal;
    o.report["twisted"] = document_json(document_from(tw.exact));
    o.report["twisted_mod_pN"] = document_json(document_from(tw.reduced));
    return o;
}

Outcome cmd_descent(const std::string& file, const Schedule& schedule)
{
    const auto doc = read_document(file);
    require_plain(doc, "descent");
    const auto c = to_complex(doc, schedule.front());
    const auto led = descent_check(c, schedule);
    std::cout << "edge: " << to_string(led.edge) << "\n";
    std::cout << "shift: " << to_string(led.shift) << "\n";
    std::cout << "descent: " << to_string(led.status) << "\n";
    Outcome o;
    o.report["descent"] = led.entries;
    o.status = status_of(led.status);
    return o;
}

Outcome cmd_euler(const std::string& file, const Schedule& schedule)
{
    const auto doc = read_document(file);
    require_plain(doc, "euler");
    const auto m = to_module(doc, schedule.front());
    const auto e = euler_characteristic(m, schedule);
    std::cout << "chi = " << e.value_string() << "\n";
    if (!e.reason.empty())
        std::cout << "  " << e.reason << "\n";
    Outcome o;
    o.report["chi"] = e.value_string();
    o.report["status"] = to_string(e.status);
    o.report["reason"] = e.reason;
    json sizes = json::array();
    for (const auto& s : e.log_sizes)
        sizes.push_back(s ? json(*s) : json(nullptr));
    o.report["log_sizes"] = sizes;
    o.status = e.status == EulerStatus::unstable ? kUnstable : kOk;
    return o;
}

Outcome cmd_verify(const std::string& suite, CampaignConfig config)
{
    const auto records = run_suite(suite, config);
    const auto s = summarize(records);
    std::cout << suite << ": " << s.total() << " records, " << s.pass << " pass, " << s.fail << " fail, "
              << s.unstable << " unstable\n";
    for (const auto& r : records)
        if (r.verdict == Verdict::fail)
            std::cout << "  FAIL module " << r.module_id << " (" << r.check << "): " << r.witness.dump() << "\n";
    Outcome o;
    o.report["suite"] = suite;
    o.report["config"] = config.to_json();
    o.report["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"unstable", s.unstable}};
    json recs = json::array();
    for (const auto& r : records)
        recs.push_back(r.to_json());
    o.report["records"] = recs;
    o.status = s.fail ? kFail : (s.unstable ? kUnstable : kOk);
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modules over Iwasawa algebras: ranks, torsion, homology, descent"};
    app.require_subcommand(1);
    std::string report_path = "iwasawa-report.json";
    app.add_option("--report", report_path, "Machine-readable report file");

    std::string file, windows, subgroup, kappa, suite;
    CampaignConfig config;
    config.count = 50;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "Presentation document (JSON)")->required();
        sub->add_option("--window", windows, "Window schedule N,D[,N,D...]; default from " + std::string(kWindowsEnv));
    };
    auto* rank_cmd = app.add_subcommand("rank", "Rank over the Iwasawa algebra");
    add_file(rank_cmd);
    auto* torsion_cmd = app.add_subcommand("torsion", "Torsion test");
    add_file(torsion_cmd);
    auto* pn_cmd = app.add_subcommand("pseudonull", "Pseudo-null test");
    add_file(pn_cmd);
    auto* hom_cmd = app.add_subcommand("homology", "H_n(N, M) for N generated by a subset of the variables");
    add_file(hom_cmd);
    hom_cmd->add_option("--subgroup", subgroup, "Variables generating N: names or 1-based indices i,j,...");
    auto* twist_cmd = app.add_subcommand("twist", "Twist by a character");
    add_file(twist_cmd);
    twist_cmd->add_option("--kappa", kappa, "Character values v1,...,vd")->required();
    auto* descent_cmd = app.add_subcommand("descent", "Descent identities for a two-term complex");
    add_file(descent_cmd);
    auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic of G-homology");
    add_file(euler_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "Seeded property campaign");
    verify_cmd->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--seed", config.seed, "Campaign seed");
    verify_cmd->add_option("--count", config.count, "Number of records")->check(CLI::Range(1, 100000));
    verify_cmd->add_option("--prime", config.prime, "Prime p");
    verify_cmd->add_option("--dimension", config.dimension, "d")->check(CLI::Range(1, 4));
    verify_cmd->add_option("--subgroup", config.subgroup, "Subgroup rank r")->check(CLI::Range(1, 4));
    verify_cmd->add_option("--max-degree", config.max_degree, "Entry degree bound")->check(CLI::Range(0, 6));
    verify_cmd->add_option("--max-size", config.max_size, "Matrix size bound")->check(CLI::Range(1, 6));
    verify_cmd->add_option("--threads", config.threads, "Worker threads (0: all cores)");
    verify_cmd->add_option("--window", windows, "Window schedule N,D[,N,D...]");
    verify_cmd->add_flag("!--no-zoo", config.include_zoo, "Skip the fixed edge cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    Outcome out;
    Schedule schedule;
    std::string command;
    try {
        schedule = schedule_from(windows);
        if (*rank_cmd) {
            command = "rank";
            out = cmd_rank(file, schedule);
        } else if (*torsion_cmd) {
            command = "torsion";
            out = cmd_torsion(file, schedule);
        } else if (*pn_cmd) {
            command = "pseudonull";
            out = cmd_pseudonull(file, schedule);
        } else if (*hom_cmd) {
            command = "homology";
            out = cmd_homology(file, subgroup, schedule);
        } else if (*twist_cmd) {
            command = "twist";
            out = cmd_twist(file, kappa, schedule);
        } else if (*descent_cmd) {
            command = "descent";
            out = cmd_descent(file, schedule);
        } else if (*euler_cmd) {
            command = "euler";
            out = cmd_euler(file, schedule);
        } else {
            command = "verify";
            AlgebraDescriptor::standard(config.prime, config.dimension).validate();
            config.schedule = schedule;
            out = cmd_verify(suite, config);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInput;
    } catch (const FlagError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }

    json report = out.report;
    report["command"] = command;
    report["windows"] = windows_json(schedule);
    if (!file.empty()) {
        report["input"] = file;
        try {
            report["document"] = document_json(read_document(file));
        } catch (const Error&) {
        }
    }
    report["exit_status"] = out.status;
    std::ofstream rep(report_path);
    if (!rep) {
        std::cerr << "error: cannot write report '" << report_path << "'\n";
        return kInput;
    }
    rep << report.dump(2) << "\n";
    return out.status;
}
