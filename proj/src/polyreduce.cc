#include <bagcq/error.hh>
#include <bagcq/polyreduce.hh>

#include <algorithm>
#include <functional>

using namespace bagcq;

using std::map;
using std::optional;
using std::set;
using std::string;
using std::tuple;
using std::vector;

auto Polynomial::from_map(int num_vars, const map<OrderedMonomial, Integer> & m) -> Polynomial
{
    Polynomial p;
    p.num_vars = num_vars;
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        if (it->second != 0)
            p.terms.push_back(PolyTerm{it->second, it->first});
    return p;
}

auto Polynomial::to_map() const -> map<OrderedMonomial, Integer>
{
    map<OrderedMonomial, Integer> m;
    for (auto & t : terms) {
        auto mono = t.monomial;
        std::sort(mono.vars.begin(), mono.vars.end());
        m[mono] += t.coefficient;
    }
    return m;
}

auto Polynomial::normalized() const -> Polynomial
{
    return from_map(num_vars, to_map());
}

auto Polynomial::max_degree() const -> int
{
    int d = 0;
    for (auto & t : terms)
        d = std::max(d, t.monomial.degree());
    return d;
}

auto Polynomial::to_string() const -> string
{
    if (terms.empty())
        return "0";
    string s;
    bool first = true;
    for (auto & t : terms) {
        Integer c = t.coefficient;
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (c < 0)
            c = -c;

        map<int, int> powers;
        for (int v : t.monomial.vars)
            ++powers[v];
        string mono;
        for (auto & [v, e] : powers) {
            if (! mono.empty())
                mono += "*";
            mono += "x" + std::to_string(v);
            if (e > 1)
                mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            s += c.get_str();
        else if (c == 1)
            s += mono;
        else
            s += c.get_str() + "*" + mono;
    }
    return s;
}

auto bagcq::operator+(const Polynomial & a, const Polynomial & b) -> Polynomial
{
    auto m = a.to_map();
    for (auto & t : b.terms) {
        auto mono = t.monomial;
        std::sort(mono.vars.begin(), mono.vars.end());
        m[mono] += t.coefficient;
    }
    return Polynomial::from_map(std::max(a.num_vars, b.num_vars), m);
}

auto bagcq::operator*(const Polynomial & a, const Polynomial & b) -> Polynomial
{
    map<OrderedMonomial, Integer> m;
    for (auto & s : a.terms)
        for (auto & t : b.terms) {
            OrderedMonomial mono;
            mono.vars = s.monomial.vars;
            mono.vars.insert(mono.vars.end(), t.monomial.vars.begin(), t.monomial.vars.end());
            std::sort(mono.vars.begin(), mono.vars.end());
            m[mono] += s.coefficient * t.coefficient;
        }
    return Polynomial::from_map(std::max(a.num_vars, b.num_vars), m);
}

auto bagcq::operator*(const Integer & c, const Polynomial & p) -> Polynomial
{
    auto m = p.to_map();
    for (auto & [_, v] : m)
        v *= c;
    return Polynomial::from_map(p.num_vars, m);
}

auto HilbertInstance::monomials() const -> vector<OrderedMonomial>
{
    vector<OrderedMonomial> ms;
    for (auto & t : p_s.terms)
        ms.push_back(t.monomial);
    return ms;
}

auto HilbertInstance::coefficients_s() const -> vector<Natural>
{
    vector<Natural> cs;
    for (auto & t : p_s.terms)
        cs.push_back(t.coefficient);
    return cs;
}

auto HilbertInstance::coefficients_b() const -> vector<Natural>
{
    vector<Natural> cs;
    for (auto & t : p_b.terms)
        cs.push_back(t.coefficient);
    return cs;
}

auto bagcq::position_relation(const vector<OrderedMonomial> & monomials) -> set<tuple<int, int, int>>
{
    set<tuple<int, int, int>> rel;
    for (std::size_t m = 0; m < monomials.size(); ++m)
        for (std::size_t pos = 0; pos < monomials[m].vars.size(); ++pos)
            rel.emplace(monomials[m].vars[pos], int(pos) + 1, int(m) + 1);
    return rel;
}

auto bagcq::normalize_hilbert(const Polynomial & q_in) -> HilbertInstance
{
    auto q = q_in.normalized();
    if (q.is_zero())
        throw Error(ErrorKind::InvalidArgument, "cannot normalize the zero polynomial");
    for (auto & t : q.terms)
        for (int v : t.monomial.vars)
            if (v < 2 || v > q.num_vars)
                throw Error(ErrorKind::InvalidArgument, "input variables must be indexed 2.." + std::to_string(q.num_vars));

    auto sq = q * q;
    map<OrderedMonomial, Integer> plus, minus;
    for (auto & t : sq.terms) {
        if (t.coefficient > 0)
            plus[t.monomial] = t.coefficient;
        else
            minus[t.monomial] = -t.coefficient;
    }
    minus[OrderedMonomial{}] += 1;

    HilbertInstance inst;
    int n = q.num_vars;
    inst.p1 = Polynomial::from_map(n, minus);
    inst.p2 = Polynomial::from_map(n, plus);

    map<OrderedMonomial, Integer> all;
    for (auto & t : inst.p1.terms)
        all[t.monomial] = 1;
    for (auto & t : inst.p2.terms)
        all[t.monomial] = 1;
    auto sum = Polynomial::from_map(n, all);
    inst.p1_prime = inst.p1 + sum;
    inst.p2_prime = inst.p2 + sum;

    int d = 1 + sum.max_degree();
    auto homogenize = [&](const Polynomial & p) {
        map<OrderedMonomial, Integer> m;
        for (auto & t : p.terms) {
            OrderedMonomial mono;
            mono.vars.assign(d - t.monomial.degree(), 1);
            mono.vars.insert(mono.vars.end(), t.monomial.vars.begin(), t.monomial.vars.end());
            m[mono] += t.coefficient;
        }
        return Polynomial::from_map(n, m);
    };
    auto p1h = homogenize(inst.p1_prime), p2h = homogenize(inst.p2_prime);

    inst.c_frak = 0;
    for (auto & t : p1h.terms)
        inst.c_frak = std::max<Natural>(inst.c_frak, t.coefficient);
    inst.p_s = p1h;
    inst.p_b = inst.c_frak * p2h;
    inst.d = d;
    inst.m_count = int(inst.p_s.terms.size());
    inst.n_count = n;
    inst.position_rel = position_relation(inst.monomials());
    return inst;
}

auto bagcq::validate_instance(const HilbertInstance & inst) -> vector<string>
{
    vector<string> problems;
    auto & s = inst.p_s.terms;
    auto & b = inst.p_b.terms;

    if (s.size() != b.size())
        problems.push_back("monomial lists: P_s has " + std::to_string(s.size()) + " terms, P_b has "
            + std::to_string(b.size()));
    if (int(s.size()) != inst.m_count)
        problems.push_back("monomial count: m = " + std::to_string(inst.m_count) + " but P_s has "
            + std::to_string(s.size()) + " terms");
    if (inst.c_frak < 2)
        problems.push_back("c_frak: " + inst.c_frak.get_str() + " < 2");

    for (std::size_t m = 0; m < s.size(); ++m) {
        auto label = "monomial " + std::to_string(m + 1);
        auto & mono = s[m].monomial;
        if (m < b.size() && b[m].monomial != mono)
            problems.push_back("monomial lists: " + label + " differs between P_s and P_b");
        if (mono.degree() != inst.d)
            problems.push_back("degree: " + label + " has degree " + std::to_string(mono.degree()) + ", expected "
                + std::to_string(inst.d));
        if (mono.vars.empty() || mono.vars.front() != 1)
            problems.push_back("first variable: " + label + " does not start with index 1");
        for (int v : mono.vars)
            if (v < 1 || v > inst.n_count)
                problems.push_back("variable range: " + label + " uses index " + std::to_string(v));
        if (s[m].coefficient < 1)
            problems.push_back("coefficient order: " + label + " has c_s < 1");
        if (m < b.size() && s[m].coefficient > b[m].coefficient)
            problems.push_back("coefficient order: " + label + " has c_s > c_b");
    }

    map<std::pair<int, int>, int> hits;
    for (auto & [n, pos, m] : inst.position_rel)
        ++hits[{pos, m}];
    for (int m = 1; m <= int(s.size()); ++m)
        for (int pos = 1; pos <= inst.d; ++pos) {
            int h = hits.contains({pos, m}) ? hits[{pos, m}] : 0;
            if (h != 1)
                problems.push_back("position relation: (" + std::to_string(pos) + ", " + std::to_string(m) + ") has "
                    + std::to_string(h) + " variables");
        }
    if (s.size() == b.size() && inst.position_rel != position_relation(inst.monomials()))
        problems.push_back("position relation: does not match the monomials");
    return problems;
}

auto bagcq::eval_poly(const Polynomial & p, const Valuation & v) -> Integer
{
    Integer total = 0;
    for (auto & t : p.terms) {
        Integer term = t.coefficient;
        for (int x : t.monomial.vars) {
            auto it = v.find(x);
            if (it == v.end())
                throw Error(ErrorKind::InvalidArgument, "valuation does not define x" + std::to_string(x));
            term *= it->second;
        }
        total += term;
    }
    return total;
}

auto bagcq::find_root_bruteforce(const Polynomial & q, unsigned long bound) -> optional<Valuation>
{
    Valuation v;
    for (int i = 2; i <= q.num_vars; ++i)
        v[i] = 0;
    while (true) {
        if (eval_poly(q, v) == 0)
            return v;
        int i = q.num_vars;
        for (; i >= 2; --i) {
            if (v[i] < bound) {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
        if (i < 2)
            return std::nullopt;
    }
}
