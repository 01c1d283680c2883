#include <bagcq/gadgets.hh>
#include <bagcq/qalgebra.hh>

#include <algorithm>

using namespace bagcq;

using std::optional;
using std::string;
using std::vector;

namespace
{
    auto numbered(const string & prefix, int from, int to) -> vector<Term>
    {
        vector<Term> ts;
        for (int i = from; i <= to; ++i)
            ts.push_back(Term::var(prefix + std::to_string(i)));
        return ts;
    }

    auto repeated(std::string_view constant, int count) -> vector<Term>
    {
        return vector<Term>(count, Term::constant(string(constant)));
    }

    auto shift(const Tuple & t, std::size_t k) -> Tuple
    {
        Tuple s(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            s[i] = t[(i + k) % t.size()];
        return s;
    }

    auto check_arity(int n, const char * what) -> void
    {
        if (n < 3)
            throw Error(ErrorKind::InvalidArgument, string(what) + " needs arity at least 3");
    }
}

auto bagcq::build_cycliq(int arity, const Term & head, const vector<Term> & tail, const string & relation) -> Query
{
    check_arity(arity, "CYCLIQ");
    if (int(tail.size()) != arity - 1)
        throw Error(ErrorKind::InvalidArgument, "CYCLIQ of arity " + std::to_string(arity) + " takes "
                + std::to_string(arity - 1) + " tail terms");
    vector<Term> args{head};
    args.insert(args.end(), tail.begin(), tail.end());

    Query q;
    q.declare_relation(relation, arity);
    for (int k = 0; k < arity; ++k) {
        vector<Term> shifted;
        for (int i = 0; i < arity; ++i)
            shifted.push_back(args[(i + k) % arity]);
        q.add_atom(relation, std::move(shifted));
    }
    return q;
}

auto bagcq::build_cycliq_unary(const string & relation, const string & unary, const vector<Term> & args) -> Query
{
    if (args.empty())
        throw Error(ErrorKind::InvalidArgument, "CYCLIQ needs arguments");
    Query q = build_cycliq(int(args.size()), args.front(), vector<Term>(args.begin() + 1, args.end()), relation);
    q.declare_relation(unary, 1);
    for (auto & t : args)
        q.add_atom(unary, {t});
    return q;
}

auto bagcq::build_beta(int n) -> GadgetPair
{
    check_arity(n, "beta");
    auto x = numbered("x", 1, n), y = numbered("y", 1, n);
    auto cyc_x = build_cycliq(n, x.front(), {x.begin() + 1, x.end()});
    auto cyc_y = build_cycliq(n, y.front(), {y.begin() + 1, y.end()});
    auto both = conjoin_shared(cyc_x, cyc_y);

    auto q_s = conjoin_shared(both, build_cycliq(n, Term::constant(string(venus)), repeated(venus, n - 1)));
    q_s = conjoin_shared(q_s, build_cycliq(n, Term::constant(string(mars)), repeated(venus, n - 1)));

    auto q_b = both;
    q_b.add_inequality(x.front(), y.front());

    Rational m{Natural((n + 1) * (n + 1)), Natural(2 * n)};
    m.canonicalize();
    return GadgetPair{q_s, q_b, m, Schema::merge(q_s.schema(), q_b.schema())};
}

auto bagcq::beta_witness(int n) -> Database
{
    check_arity(n, "beta");
    auto q = conjoin_shared(build_cycliq(n, Term::constant(string(venus)), repeated(venus, n - 1)),
        build_cycliq(n, Term::constant(string(mars)), repeated(venus, n - 1)));
    return canonical_structure(q);
}

namespace
{
    auto gamma_prime_s(int m) -> Query
    {
        vector<Term> args{Term::constant(string(mars))};
        auto tail = repeated(venus, m - 1);
        args.insert(args.end(), tail.begin(), tail.end());
        auto q = build_cycliq_unary(gamma_relation, gamma_unary_a, args);
        q.declare_relation(gamma_unary_b, 1);
        q.add_atom(gamma_unary_b, {Term::constant(string(mars))});
        return q;
    }
}

auto bagcq::build_gamma_parts(int m) -> GammaParts
{
    check_arity(m, "gamma");
    auto x = numbered("x", 1, m), y = numbered("y", 1, m);

    auto s_second = build_cycliq_unary(gamma_relation, gamma_unary_b, x);
    s_second.declare_relation(gamma_unary_a, 1);
    s_second.add_atom(gamma_unary_a, {x.front()});

    auto b_prime = build_cycliq_unary(gamma_relation, gamma_unary_a, y);
    b_prime.declare_relation(gamma_unary_b, 1);
    b_prime.add_atom(gamma_unary_b, {y.front()});

    return GammaParts{gamma_prime_s(m), s_second, b_prime, build_cycliq_unary(gamma_relation, gamma_unary_b, x)};
}

auto bagcq::build_gamma(int m) -> GadgetPair
{
    auto parts = build_gamma_parts(m);
    auto q_s = conjoin_shared(parts.s_prime, parts.s_second);
    auto q_b = conjoin_shared(parts.b_prime, parts.b_second);

    Rational mult{Natural(m - 1), Natural(m)};
    mult.canonicalize();
    return GadgetPair{q_s, q_b, mult, Schema::merge(q_s.schema(), q_b.schema())};
}

auto bagcq::gamma_witness(int m) -> Database
{
    check_arity(m, "gamma");
    auto x = numbered("x", 1, m);
    auto chain = build_cycliq_unary(gamma_relation, gamma_unary_b, x);
    chain.declare_relation(gamma_unary_a, 1);
    for (int i = 0; i < m - 1; ++i)
        chain.add_atom(gamma_unary_a, {x[i]});
    return database_union(canonical_structure(gamma_prime_s(m)), canonical_structure(chain));
}

auto bagcq::build_alpha(int c) -> GadgetPair
{
    if (c < 1)
        throw Error(ErrorKind::InvalidArgument, "alpha needs c >= 1");
    if (c == 1)
        return GadgetPair{Query{}, Query{}, Rational{1}, Schema{}};
    auto beta = build_beta(2 * c - 1);
    auto gamma = build_gamma(2 * c);
    auto q_s = conjoin_disjoint(beta.q_s, gamma.q_s);
    auto q_b = conjoin_disjoint(beta.q_b, gamma.q_b);
    Rational m = beta.multiplier * gamma.multiplier;
    m.canonicalize();
    return GadgetPair{q_s, q_b, m, Schema::merge(beta.schema, gamma.schema)};
}

auto bagcq::alpha_witness(int c) -> Database
{
    if (c < 1)
        throw Error(ErrorKind::InvalidArgument, "alpha needs c >= 1");
    if (c == 1) {
        Database d;
        d.interpret(string(mars), d.add_element(string(mars)));
        d.interpret(string(venus), d.add_element(string(venus)));
        return d;
    }
    return database_union(beta_witness(2 * c - 1), gamma_witness(2 * c));
}

auto bagcq::classify_cycliques(const Database & d, const string & relation, const optional<string> & filter)
    -> vector<CycliqueClass>
{
    auto arity = d.schema().arity(relation);
    if (! arity)
        return {};
    if (*arity < 3)
        throw Error(ErrorKind::Precondition, "cycliques need a relation of arity at least 3");

    auto & facts = d.facts(relation);
    auto in_filter = [&](ElementId e) { return ! filter || d.has_fact(*filter, Tuple{e}); };

    std::map<Tuple, CycliqueClass> by_rep;
    for (auto & t : facts) {
        if (! std::all_of(t.begin(), t.end(), in_filter))
            continue;
        std::set<Tuple> shifts;
        bool all_present = true;
        for (std::size_t k = 0; k < t.size(); ++k) {
            auto s = shift(t, k);
            if (! facts.contains(s)) {
                all_present = false;
                break;
            }
            shifts.insert(std::move(s));
        }
        if (! all_present)
            continue;
        auto rep = *shifts.begin();
        if (by_rep.contains(rep))
            continue;
        CycliqueKind kind = shifts.size() == 1 ? CycliqueKind::Homogeneous
            : int(shifts.size()) < *arity      ? CycliqueKind::Degenerate
                                               : CycliqueKind::Normal;
        by_rep.emplace(rep, CycliqueClass{rep, std::move(shifts), kind});
    }

    vector<CycliqueClass> result;
    for (auto & [_, cls] : by_rep)
        result.push_back(std::move(cls));
    return result;
}
