#include "iwasawa/document.hpp"

#include "iwasawa/errors.hpp"

#include <algorithm>
#include <cctype>

namespace iwa {

namespace {

constexpr unsigned kMaxExponent = 10000;

class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    Poly parse()
    {
        skip();
        if (pos_ == s_.size())
            fail("empty polynomial");
        Poly p = expr();
        skip();
        if (pos_ != s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_factor()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        const auto c = static_cast<unsigned char>(s_[pos_]);
        return std::isdigit(c) || std::isalpha(c) || c == '_' || c == '(';
    }

    Poly expr()
    {
        Poly acc(vars_.size());
        bool negate = false;
        if (peek('+') || peek('-')) {
            negate = s_[pos_] == '-';
            ++pos_;
        }
        Poly t = term();
        acc = negate ? -t : t;
        while (peek('+') || peek('-')) {
            const bool minus = s_[pos_] == '-';
            ++pos_;
            Poly u = term();
            acc = minus ? acc - u : acc + u;
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Poly factor()
    {
        if (peek('-')) {
            ++pos_;
            return -factor();
        }
        Poly base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a nonnegative integer exponent");
            const std::string digits = s_.substr(start, pos_ - start);
            if (digits.size() > 5 || std::stoul(digits) > kMaxExponent) {
                pos_ = start;
                fail("exponent too large");
            }
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Poly primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const auto c = static_cast<unsigned char>(s_[pos_]);
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!peek(')'))
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(c)) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Poly::constant(vars_.size(), Integer(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(c) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name)
                    return Poly::variable(vars_.size(), i);
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected '") + s_[pos_] + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

[[noreturn]] void field_error(const std::string& msg)
{
    throw ParseError(msg, 0);
}

std::size_t natural(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key))
        field_error(std::string("missing field \"") + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        field_error(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

bool valid_name(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

AlgebraDescriptor algebra_of(const PresentationDocument& doc, TruncationWindow window)
{
    AlgebraDescriptor a;
    a.prime = doc.prime;
    a.dimension = doc.dimension;
    a.variables = doc.variables;
    a.window = window;
    return a;
}

}  // namespace

Poly parse_polynomial(const std::string& text, const std::vector<std::string>& variables)
{
    return PolyParser(text, variables).parse();
}

PresentationDocument parse_document(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object())
        field_error("document must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::vector<std::string> known{"prime", "dimension", "variables", "generators",
                                                    "relations", "skew", "complex"};
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            field_error("unknown field \"" + it.key() + "\"");
    }

    PresentationDocument doc;
    const auto prime = natural(j, "prime");
    if (prime < 2 || prime > 1000000)
        field_error("prime out of range");
    for (std::size_t q = 2; q * q <= prime; ++q)
        if (prime % q == 0)
            field_error("\"prime\" is not prime");
    doc.prime = static_cast<unsigned>(prime);
    doc.dimension = natural(j, "dimension");
    if (!j.contains("variables") || !j["variables"].is_array())
        field_error("field \"variables\" must be an array of names");
    for (const auto& v : j["variables"]) {
        if (!v.is_string() || !valid_name(v.get<std::string>()))
            field_error("variable names must be identifiers");
        const auto name = v.get<std::string>();
        if (std::find(doc.variables.begin(), doc.variables.end(), name) != doc.variables.end())
            field_error("duplicate variable \"" + name + "\"");
        doc.variables.push_back(name);
    }
    if (doc.variables.size() != doc.dimension)
        field_error("\"dimension\" differs from the number of variables");
    doc.generators = natural(j, "generators");
    if (!j.contains("relations") || !j["relations"].is_array())
        field_error("field \"relations\" must be an array of rows");
    std::size_t ri = 0;
    for (const auto& row : j["relations"]) {
        if (!row.is_array() || row.size() != doc.generators)
            field_error("relations[" + std::to_string(ri) + "] must have " + std::to_string(doc.generators) +
                        " entries");
        std::vector<Poly> r;
        std::size_t ci = 0;
        for (const auto& e : row) {
            if (!e.is_string() && !e.is_number_integer())
                field_error("relations[" + std::to_string(ri) + "][" + std::to_string(ci) +
                            "] must be a polynomial string");
            const std::string s = e.is_string() ? e.get<std::string>() : e.dump();
            try {
                r.push_back(parse_polynomial(s, doc.variables));
            } catch (const ParseError& pe) {
                throw ParseError("relations[" + std::to_string(ri) + "][" + std::to_string(ci) + "]: " + pe.message(),
                                 pe.position());
            }
            ++ci;
        }
        doc.relations.push_back(std::move(r));
        ++ri;
    }
    if (j.contains("skew")) {
        const auto& s = j["skew"];
        if (!s.is_object() || !s.contains("chi"))
            field_error("field \"skew\" must be an object with \"chi\"");
        const auto& chi = s["chi"];
        if (chi.is_number_integer())
            doc.skew_chi = Integer(chi.dump());
        else if (chi.is_string() && !chi.get<std::string>().empty() &&
                 chi.get<std::string>().find_first_not_of("0123456789") == std::string::npos)
            doc.skew_chi = Integer(chi.get<std::string>());
        else
            field_error("\"chi\" must be a positive integer");
        if (doc.dimension != 2)
            field_error("skew documents have exactly two variables (t, then tau)");
    }
    if (j.contains("complex")) {
        if (!j["complex"].is_boolean())
            field_error("field \"complex\" must be a boolean");
        doc.complex = j["complex"].get<bool>();
    }
    if (doc.complex && doc.skew_chi)
        field_error("a document cannot be both skew and a complex");
    return doc;
}

nlohmann::json document_json(const PresentationDocument& doc)
{
    nlohmann::json j;
    j["prime"] = doc.prime;
    j["dimension"] = doc.dimension;
    j["variables"] = doc.variables;
    j["generators"] = doc.generators;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : doc.relations) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& f : row)
            r.push_back(f.to_string(doc.variables));
        rows.push_back(r);
    }
    j["relations"] = rows;
    if (doc.skew_chi) {
        if (doc.skew_chi->fits_slong_p())
            j["skew"] = {{"chi", doc.skew_chi->get_si()}};
        else
            j["skew"] = {{"chi", doc.skew_chi->get_str()}};
    }
    if (doc.complex)
        j["complex"] = true;
    return j;
}

std::string print_document(const PresentationDocument& doc)
{
    return document_json(doc).dump(2) + "\n";
}

PresentationDocument document_from(const ModulePresentation& m)
{
    PresentationDocument doc;
    doc.prime = m.algebra.prime;
    doc.dimension = m.algebra.dimension;
    doc.variables = m.algebra.variables;
    doc.generators = m.generators;
    doc.relations = m.relations;
    return doc;
}

PresentationDocument document_from(const SkewModulePresentation& m)
{
    PresentationDocument doc;
    doc.prime = m.algebra.prime;
    doc.dimension = 2;
    doc.variables = m.algebra.variables;
    doc.generators = m.generators;
    doc.relations = m.relations;
    doc.skew_chi = m.algebra.kappa0;
    return doc;
}

PresentationDocument document_from(const PerfectComplex& c)
{
    PresentationDocument doc = document_from(c.h2());
    doc.complex = true;
    return doc;
}

ModulePresentation to_module(const PresentationDocument& doc, TruncationWindow window)
{
    ModulePresentation m = ModulePresentation::free(algebra_of(doc, window), doc.generators);
    m.relations = doc.relations;
    m.validate();
    return m;
}

SkewModulePresentation to_skew_module(const PresentationDocument& doc, TruncationWindow window)
{
    if (!doc.skew_chi)
        throw ParseError("document has no \"skew\" block", 0);
    SkewAlgebraDescriptor a;
    a.prime = doc.prime;
    a.kappa0 = *doc.skew_chi;
    a.variables = doc.variables;
    a.window = window;
    SkewModulePresentation m = SkewModulePresentation::free(a, doc.generators);
    m.relations = doc.relations;
    m.validate();
    return m;
}

PerfectComplex to_complex(const PresentationDocument& doc, TruncationWindow window)
{
    PerfectComplex c;
    c.algebra = algebra_of(doc, window);
    c.differential = doc.relations;
    c.target_rank = doc.generators;
    c.h2();
    return c;
}

}  // namespace iwa
