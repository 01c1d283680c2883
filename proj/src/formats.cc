#include <bagcq/error.hh>
#include <bagcq/formats.hh>

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

using namespace bagcq;

using std::string;
using std::string_view;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    auto trim(string_view s) -> string
    {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == string_view::npos)
            return "";
        auto e = s.find_last_not_of(" \t\r\n");
        return string(s.substr(b, e - b + 1));
    }

    auto words(const string & s) -> vector<string>
    {
        std::istringstream in(s);
        vector<string> ws;
        string w;
        while (in >> w)
            ws.push_back(w);
        return ws;
    }

    auto parse_error(int line, const string & msg) -> Error
    {
        return Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
    }

    auto split_clauses(const string & text, bool allow_semicolons) -> vector<string>
    {
        vector<string> clauses;
        string cur;
        for (char c : text) {
            if (c == '\n' || (allow_semicolons && c == ';')) {
                clauses.push_back(cur);
                cur.clear();
            }
            else
                cur += c;
        }
        clauses.push_back(cur);
        return clauses;
    }

    struct Applied
    {
        string relation;
        vector<string> args;
    };

    auto parse_applied(const string & s, int line) -> Applied
    {
        auto open = s.find('('), close = s.rfind(')');
        if (open == string::npos || close == string::npos || close < open || ! trim(s.substr(close + 1)).empty())
            throw parse_error(line, "expected REL(args) in '" + s + "'");
        Applied a{trim(s.substr(0, open)), {}};
        if (a.relation.empty())
            throw parse_error(line, "missing relation name");
        string inner = s.substr(open + 1, close - open - 1);
        std::size_t from = 0;
        while (true) {
            auto comma = inner.find(',', from);
            auto arg = trim(inner.substr(from, comma == string::npos ? string::npos : comma - from));
            if (arg.empty())
                throw parse_error(line, "empty argument in '" + s + "'");
            a.args.push_back(arg);
            if (comma == string::npos)
                break;
            from = comma + 1;
        }
        return a;
    }

    auto parse_term(const string & s) -> Term
    {
        if (s.starts_with('@'))
            return Term::constant(s.substr(1));
        return Term::var(s);
    }

    auto show_term(const Term & t) -> string
    {
        return t.is_constant() ? "@" + t.name : t.name;
    }

    auto keyword_rest(const string & clause, string & keyword) -> string
    {
        auto sp = clause.find_first_of(" \t");
        keyword = clause.substr(0, sp);
        return sp == string::npos ? "" : trim(clause.substr(sp));
    }

    auto parse_arity(const string & s, int line) -> int
    {
        try {
            std::size_t used = 0;
            int k = std::stoi(s, &used);
            if (used != s.size())
                throw parse_error(line, "bad arity '" + s + "'");
            return k;
        }
        catch (const std::logic_error &) {
            throw parse_error(line, "bad arity '" + s + "'");
        }
    }

    auto parse_query_text(const string & text, bool allow_semicolons) -> Query
    {
        Query q;
        int line = 0;
        for (auto & raw : split_clauses(text, allow_semicolons)) {
            ++line;
            auto clause = trim(raw);
            if (clause.empty() || clause.starts_with('#'))
                continue;
            string kw;
            auto rest = keyword_rest(clause, kw);
            try {
                if (kw == "atom") {
                    auto a = parse_applied(rest, line);
                    vector<Term> args;
                    for (auto & s : a.args)
                        args.push_back(parse_term(s));
                    q.add_atom(a.relation, args);
                }
                else if (kw == "neq") {
                    auto ws = words(rest);
                    if (ws.size() != 2)
                        throw parse_error(line, "neq takes two terms");
                    q.add_inequality(parse_term(ws[0]), parse_term(ws[1]));
                }
                else if (kw == "rel") {
                    auto ws = words(rest);
                    if (ws.size() != 2)
                        throw parse_error(line, "rel takes a name and an arity");
                    q.declare_relation(ws[0], parse_arity(ws[1], line));
                }
                else if (kw == "var") {
                    for (auto & w : words(rest))
                        q.add_variable(w);
                }
                else
                    throw parse_error(line, "unknown clause '" + kw + "'");
            }
            catch (const Error & e) {
                if (e.kind() == ErrorKind::Parse)
                    throw;
                throw Error(e.kind(), "line " + std::to_string(line) + ": " + e.what());
            }
        }
        return q;
    }
}

auto bagcq::parse_query(const string & text) -> Query
{
    return parse_query_text(text, true);
}

auto bagcq::serialize_query(const Query & q, bool inline_form) -> string
{
    vector<string> clauses;
    std::set<string> used;
    for (auto & a : q.atoms())
        used.insert(a.relation);
    for (auto & [rel, arity] : q.schema().relations())
        if (! used.contains(rel))
            clauses.push_back("rel " + rel + " " + std::to_string(arity));
    for (auto & a : q.atoms()) {
        string s = "atom " + a.relation + "(";
        for (std::size_t i = 0; i < a.args.size(); ++i)
            s += (i ? "," : "") + show_term(a.args[i]);
        clauses.push_back(s + ")");
    }
    for (auto & ne : q.inequalities())
        clauses.push_back("neq " + show_term(ne.lhs) + " " + show_term(ne.rhs));
    if (! q.free_variables().empty()) {
        string s = "var";
        for (auto & v : q.free_variables())
            s += " " + v;
        clauses.push_back(s);
    }

    string out;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (inline_form)
            out += (i ? "; " : "") + clauses[i];
        else
            out += clauses[i] + "\n";
    }
    return out;
}

auto bagcq::parse_database(const string & text) -> Database
{
    Database d;
    int line = 0;
    for (auto & raw : split_clauses(text, false)) {
        ++line;
        auto clause = trim(raw);
        if (clause.empty() || clause.starts_with('#'))
            continue;
        string kw;
        auto rest = keyword_rest(clause, kw);
        try {
            if (kw == "elem") {
                for (auto & w : words(rest))
                    d.add_element(w);
            }
            else if (kw == "const") {
                auto eq = rest.find('=');
                if (eq == string::npos)
                    throw parse_error(line, "expected const @name = e");
                auto name = trim(rest.substr(0, eq)), elem = trim(rest.substr(eq + 1));
                if (! name.starts_with('@') || name.size() < 2 || elem.empty())
                    throw parse_error(line, "expected const @name = e");
                d.interpret(name.substr(1), d.add_element(elem));
            }
            else if (kw == "fact") {
                auto a = parse_applied(rest, line);
                d.add_fact(a.relation, a.args);
            }
            else if (kw == "rel") {
                auto ws = words(rest);
                if (ws.size() != 2)
                    throw parse_error(line, "rel takes a name and an arity");
                d.declare_relation(ws[0], parse_arity(ws[1], line));
            }
            else
                throw parse_error(line, "unknown clause '" + kw + "'");
        }
        catch (const Error & e) {
            if (e.kind() == ErrorKind::Parse)
                throw;
            throw Error(e.kind(), "line " + std::to_string(line) + ": " + e.what());
        }
    }
    return d;
}

auto bagcq::serialize_database(const Database & d) -> string
{
    string out;
    for (auto & [rel, arity] : d.schema().relations())
        out += "rel " + rel + " " + std::to_string(arity) + "\n";
    if (d.size() > 0) {
        out += "elem";
        for (auto & n : d.element_names())
            out += " " + n;
        out += "\n";
    }
    for (auto & [c, e] : d.const_interp())
        out += "const @" + c + " = " + d.element_name(e) + "\n";
    for (auto & [rel, facts] : d.all_facts())
        for (auto & t : facts) {
            out += "fact " + rel + "(";
            for (std::size_t i = 0; i < t.size(); ++i)
                out += (i ? "," : "") + d.element_name(t[i]);
            out += ")\n";
        }
    return out;
}

auto bagcq::parse_polynomial(const string & text) -> Polynomial
{
    Polynomial p;
    bool have_vars = false;
    int line = 0;
    std::map<OrderedMonomial, Integer> terms;
    for (auto & raw : split_clauses(text, false)) {
        ++line;
        auto clause = trim(raw);
        if (clause.empty() || clause.starts_with('#'))
            continue;
        auto ws = words(clause);
        if (ws[0] == "vars") {
            if (ws.size() != 2)
                throw parse_error(line, "vars takes one number");
            p.num_vars = parse_arity(ws[1], line);
            if (p.num_vars < 1)
                throw parse_error(line, "vars must be at least 1");
            have_vars = true;
        }
        else if (ws[0] == "term") {
            if (ws.size() < 2)
                throw parse_error(line, "term needs a coefficient");
            Integer c;
            if (c.set_str(ws[1], 10) != 0)
                throw parse_error(line, "bad coefficient '" + ws[1] + "'");
            OrderedMonomial m;
            for (std::size_t i = 2; i < ws.size(); ++i)
                m.vars.push_back(parse_arity(ws[i], line));
            std::sort(m.vars.begin(), m.vars.end());
            terms[m] += c;
        }
        else
            throw parse_error(line, "unknown clause '" + ws[0] + "'");
    }
    if (! have_vars)
        throw parse_error(line, "missing vars header");
    p = Polynomial::from_map(p.num_vars, terms);
    for (auto & t : p.terms)
        for (int v : t.monomial.vars)
            if (v < 1 || v > p.num_vars)
                throw Error(ErrorKind::Parse, "variable index " + std::to_string(v) + " out of range");
    return p;
}

auto bagcq::serialize_polynomial(const Polynomial & p) -> string
{
    string out = "vars " + std::to_string(p.num_vars) + "\n";
    for (auto & t : p.terms) {
        out += "term " + t.coefficient.get_str();
        for (int v : t.monomial.vars)
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

namespace
{
    struct SexprReader
    {
        const string & text;
        fs::path base_dir;
        std::size_t pos = 0;

        auto skip() -> void
        {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
        }

        auto expect(char c) -> void
        {
            skip();
            if (pos >= text.size() || text[pos] != c)
                throw Error(ErrorKind::Parse, string("expected '") + c + "' at offset " + std::to_string(pos));
            ++pos;
        }

        auto symbol() -> string
        {
            skip();
            auto start = pos;
            while (pos < text.size() && ! std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '('
                && text[pos] != ')' && text[pos] != '"')
                ++pos;
            if (start == pos)
                throw Error(ErrorKind::Parse, "expected a symbol at offset " + std::to_string(pos));
            return text.substr(start, pos - start);
        }

        auto quoted() -> string
        {
            expect('"');
            string s;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size())
                    ++pos;
                s += text[pos++];
            }
            if (pos >= text.size())
                throw Error(ErrorKind::Parse, "unterminated string");
            ++pos;
            return s;
        }

        auto peek_close() -> bool
        {
            skip();
            return pos < text.size() && text[pos] == ')';
        }

        auto expr() -> QueryExpr
        {
            expect('(');
            auto head = symbol();
            QueryExpr result = QueryExpr::leaf(Query{});
            if (head == "leaf") {
                auto body = quoted();
                if (body.empty() || body.find_first_of("(;") != string::npos)
                    result = QueryExpr::leaf(parse_query_text(body, true));
                else
                    result = QueryExpr::leaf(parse_query(read_file(base_dir / body)));
            }
            else if (head == "dand") {
                vector<QueryExpr> children;
                while (! peek_close())
                    children.push_back(expr());
                result = QueryExpr::disjoint_and(children);
            }
            else if (head == "pow") {
                auto base = expr();
                auto k = Count::parse(symbol());
                auto n = k.to_natural(1u << 20);
                if (! n)
                    throw Error(ErrorKind::Parse, "exponent too large");
                result = QueryExpr::power(base, *n);
            }
            else
                throw Error(ErrorKind::Parse, "unknown expression head '" + head + "'");
            expect(')');
            return result;
        }
    };

    auto escape(const string & s) -> string
    {
        string out;
        for (char c : s) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out;
    }
}

auto bagcq::parse_query_expr(const string & text, const fs::path & base_dir) -> QueryExpr
{
    SexprReader r{text, base_dir};
    auto e = r.expr();
    r.skip();
    if (r.pos != text.size())
        throw Error(ErrorKind::Parse, "trailing text after expression");
    return e;
}

auto bagcq::serialize_query_expr(const QueryExpr & e) -> string
{
    switch (e.kind()) {
    case QueryExpr::Kind::Leaf:
        return "(leaf \"" + escape(serialize_query(e.query(), true)) + "\")";
    case QueryExpr::Kind::DisjointAnd: {
        string s = "(dand";
        for (auto & c : e.children())
            s += " " + serialize_query_expr(c);
        return s + ")";
    }
    case QueryExpr::Kind::Power:
        return "(pow " + serialize_query_expr(e.children().front()) + " " + e.exponent().get_str() + ")";
    }
    return "";
}

auto bagcq::parse_count(const string & text) -> Count
{
    return Count::parse(trim(text));
}

auto bagcq::serialize_count(const Count & c) -> string
{
    return c.to_string() + "\n";
}

namespace
{
    auto poly_json(const string & name, const Polynomial & p) -> nlohmann::json
    {
        nlohmann::json terms = nlohmann::json::array();
        for (auto & t : p.terms)
            terms.push_back({t.coefficient.get_str(), t.monomial.vars});
        return {{"name", name}, {"vars", p.num_vars}, {"terms", terms}};
    }

    auto json_poly(const nlohmann::json & j) -> Polynomial
    {
        std::map<OrderedMonomial, Integer> m;
        for (auto & t : j.at("terms")) {
            OrderedMonomial mono{t.at(1).get<vector<int>>()};
            std::sort(mono.vars.begin(), mono.vars.end());
            m[mono] += Integer(t.at(0).get<string>());
        }
        return Polynomial::from_map(j.at("vars").get<int>(), m);
    }
}

auto bagcq::serialize_instance(const HilbertInstance & inst) -> string
{
    nlohmann::json header{{"c_frak", inst.c_frak.get_str()}, {"d", inst.d}, {"m", inst.m_count}, {"n", inst.n_count}};
    string out = header.dump() + "\n";
    out += poly_json("P_s", inst.p_s).dump() + "\n";
    out += poly_json("P_b", inst.p_b).dump() + "\n";
    out += poly_json("P1", inst.p1).dump() + "\n";
    out += poly_json("P2", inst.p2).dump() + "\n";
    out += poly_json("P1'", inst.p1_prime).dump() + "\n";
    out += poly_json("P2'", inst.p2_prime).dump() + "\n";
    return out;
}

auto bagcq::parse_instance(const string & text) -> HilbertInstance
{
    HilbertInstance inst;
    bool have_header = false;
    try {
        for (auto & raw : split_clauses(text, false)) {
            auto line = trim(raw);
            if (line.empty())
                continue;
            auto j = nlohmann::json::parse(line);
            if (j.contains("c_frak")) {
                inst.c_frak = Natural(j.at("c_frak").get<string>());
                inst.d = j.at("d").get<int>();
                inst.m_count = j.at("m").get<int>();
                inst.n_count = j.at("n").get<int>();
                have_header = true;
                continue;
            }
            auto name = j.at("name").get<string>();
            auto p = json_poly(j);
            if (name == "P_s")
                inst.p_s = p;
            else if (name == "P_b")
                inst.p_b = p;
            else if (name == "P1")
                inst.p1 = p;
            else if (name == "P2")
                inst.p2 = p;
            else if (name == "P1'")
                inst.p1_prime = p;
            else if (name == "P2'")
                inst.p2_prime = p;
        }
    }
    catch (const nlohmann::json::exception & e) {
        throw Error(ErrorKind::Parse, string("instance: ") + e.what());
    }
    catch (const std::invalid_argument & e) {
        throw Error(ErrorKind::Parse, string("instance: ") + e.what());
    }
    if (! have_header)
        throw Error(ErrorKind::Parse, "instance: missing header line");
    inst.position_rel = position_relation(inst.monomials());
    return inst;
}

auto bagcq::read_file(const fs::path & p) -> string
{
    std::ifstream in(p, std::ios::binary);
    if (! in)
        throw Error(ErrorKind::Io, "cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

auto bagcq::write_file(const fs::path & p, const string & content) -> void
{
    std::ofstream out(p, std::ios::binary);
    if (! out)
        throw Error(ErrorKind::Io, "cannot write " + p.string());
    out << content;
    if (! out)
        throw Error(ErrorKind::Io, "write failed for " + p.string());
}

auto bagcq::write_encoder_output(const fs::path & dir, const HilbertInstance & inst, const EncoderOutput & out) -> void
{
    fs::create_directories(dir);
    write_file(dir / "phi_s.cq", serialize_query(out.phi_s.flatten()));
    write_file(dir / "phi_b.qx", serialize_query_expr(out.phi_b) + "\n");
    write_file(dir / "c.count", serialize_count(out.c));
    write_file(dir / "arena.db", serialize_database(out.arena_db));
    write_file(dir / "instance.poly.json-lines", serialize_instance(inst));
}
