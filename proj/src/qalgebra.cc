#include <bagcq/qalgebra.hh>

#include <set>

using namespace bagcq;

using std::string;
using std::vector;

struct QueryExpr::Node
{
    Kind kind;
    Query query;
    vector<QueryExpr> children;
    Natural exponent;
};

QueryExpr::QueryExpr(std::shared_ptr<const Node> n) :
    _node(std::move(n))
{
}

auto QueryExpr::leaf(Query q) -> QueryExpr
{
    return QueryExpr{std::make_shared<const Node>(Node{Kind::Leaf, std::move(q), {}, 0})};
}

auto QueryExpr::disjoint_and(vector<QueryExpr> children) -> QueryExpr
{
    return QueryExpr{std::make_shared<const Node>(Node{Kind::DisjointAnd, Query{}, std::move(children), 0})};
}

auto QueryExpr::power(QueryExpr base, Natural exponent) -> QueryExpr
{
    if (exponent < 0)
        throw Error(ErrorKind::InvalidArgument, "negative power exponent");
    return QueryExpr{std::make_shared<const Node>(Node{Kind::Power, Query{}, {std::move(base)}, std::move(exponent)})};
}

auto QueryExpr::kind() const -> Kind
{
    return _node->kind;
}

auto QueryExpr::query() const -> const Query &
{
    if (_node->kind != Kind::Leaf)
        throw Error(ErrorKind::InvalidArgument, "not a leaf expression");
    return _node->query;
}

auto QueryExpr::children() const -> const vector<QueryExpr> &
{
    return _node->children;
}

auto QueryExpr::exponent() const -> const Natural &
{
    if (_node->kind != Kind::Power)
        throw Error(ErrorKind::InvalidArgument, "not a power expression");
    return _node->exponent;
}

auto QueryExpr::schema() const -> Schema
{
    if (kind() == Kind::Leaf)
        return query().schema();
    Schema s;
    for (auto & c : children())
        s = Schema::merge(s, c.schema());
    return s;
}

auto QueryExpr::has_inequalities() const -> bool
{
    if (kind() == Kind::Leaf)
        return ! query().inequalities().empty();
    for (auto & c : children())
        if (c.has_inequalities())
            return true;
    return false;
}

auto QueryExpr::eval(const HomCounter & counter) const -> Count
{
    switch (kind()) {
    case Kind::Leaf:
        return counter.count(query());
    case Kind::DisjointAnd: {
        Count result;
        for (auto & c : children()) {
            result *= c.eval(counter);
            if (result.is_zero())
                break;
        }
        return result;
    }
    case Kind::Power:
        if (exponent() == 0)
            return Count{};
        return children().front().eval(counter).pow(exponent());
    }
    throw Error(ErrorKind::InvalidArgument, "bad expression kind");
}

auto QueryExpr::eval(const Database & d) const -> Count
{
    return eval(HomCounter(d));
}

auto QueryExpr::materialized_variable_count() const -> Natural
{
    switch (kind()) {
    case Kind::Leaf:
        return static_cast<unsigned long>(query().variables().size());
    case Kind::DisjointAnd: {
        Natural n = 0;
        for (auto & c : children())
            n += c.materialized_variable_count();
        return n;
    }
    case Kind::Power:
        return children().front().materialized_variable_count() * exponent();
    }
    return 0;
}

auto QueryExpr::flatten(unsigned long cap) const -> Query
{
    if (materialized_variable_count() > cap)
        throw Error(ErrorKind::Precondition, "flattening would create " + materialized_variable_count().get_str()
                + " variables (cap " + std::to_string(cap) + ")");
    switch (kind()) {
    case Kind::Leaf:
        return query();
    case Kind::DisjointAnd: {
        Query q{schema()};
        for (auto & c : children())
            q = conjoin_disjoint(q, c.flatten(cap));
        return q;
    }
    case Kind::Power: {
        Query base = children().front().flatten(cap);
        Query q{base.schema()};
        for (Natural i = 0; i < exponent(); ++i)
            q = conjoin_disjoint(q, base);
        return q;
    }
    }
    return Query{};
}

auto bagcq::operator==(const QueryExpr & a, const QueryExpr & b) -> bool
{
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case QueryExpr::Kind::Leaf:
        return a.query() == b.query();
    case QueryExpr::Kind::Power:
        if (a.exponent() != b.exponent())
            return false;
        [[fallthrough]];
    case QueryExpr::Kind::DisjointAnd:
        return a.children() == b.children();
    }
    return false;
}

auto bagcq::conjoin_shared(const Query & q1, const Query & q2) -> Query
{
    Query q{Schema::merge(q1.schema(), q2.schema())};
    for (auto * src : {&q1, &q2}) {
        for (auto & a : src->atoms())
            q.add_atom(a);
        for (auto & i : src->inequalities())
            q.add_inequality(i.lhs, i.rhs);
        for (auto & v : src->free_variables())
            q.add_variable(v);
    }
    return q;
}

auto bagcq::conjoin_disjoint(const Query & q1, const Query & q2) -> Query
{
    auto v1 = q1.variables(), v2 = q2.variables();
    std::set<string> taken(v1.begin(), v1.end());
    bool clash = false;
    for (auto & v : v2)
        if (taken.contains(v))
            clash = true;
    if (! clash)
        return conjoin_shared(q1, q2);

    std::set<string> own(v2.begin(), v2.end());
    string suffix;
    for (unsigned i = 1;; ++i) {
        suffix = "·" + std::to_string(i);
        bool ok = true;
        for (auto & v : v2)
            if (taken.contains(v + suffix) || own.contains(v + suffix))
                ok = false;
        if (ok)
            break;
    }

    auto rename = [&](const Term & t) { return t.is_variable() ? Term::var(t.name + suffix) : t; };
    Query renamed{q2.schema()};
    for (auto & a : q2.atoms()) {
        Atom r{a.relation, {}};
        for (auto & t : a.args)
            r.args.push_back(rename(t));
        renamed.add_atom(std::move(r));
    }
    for (auto & i : q2.inequalities())
        renamed.add_inequality(rename(i.lhs), rename(i.rhs));
    for (auto & v : q2.free_variables())
        renamed.add_variable(v + suffix);
    return conjoin_shared(q1, renamed);
}

auto bagcq::power(const QueryExpr & e, const Natural & k) -> QueryExpr
{
    return QueryExpr::power(e, k);
}

auto bagcq::blowup(const Database & d, unsigned long k) -> Database
{
    if (k < 1)
        throw Error(ErrorKind::InvalidArgument, "blow-up factor must be at least 1");
    Database result{d.schema()};
    for (ElementId e = 0; e < d.size(); ++e)
        for (unsigned long i = 1; i <= k; ++i)
            result.add_element(d.element_name(e) + "#" + std::to_string(i));
    // copy i of element e has id e*k + (i-1)
    auto copy_id = [&](ElementId e, unsigned long i) { return ElementId(e * k + (i - 1)); };

    for (auto & [rel, tuples] : d.all_facts())
        for (auto & t : tuples) {
            // every choice of copy index per position
            vector<unsigned long> idx(t.size(), 1);
            while (true) {
                Tuple mapped;
                for (std::size_t p = 0; p < t.size(); ++p)
                    mapped.push_back(copy_id(t[p], idx[p]));
                result.add_fact(rel, mapped);
                std::size_t p = 0;
                while (p < idx.size() && idx[p] == k)
                    idx[p++] = 1;
                if (p == idx.size())
                    break;
                ++idx[p];
            }
        }
    for (auto & [c, e] : d.const_interp())
        result.interpret(c, copy_id(e, 1));
    return result;
}

auto bagcq::product(const Database & d1, const Database & d2) -> Database
{
    Database result{Schema::merge(d1.schema(), d2.schema())};
    auto n2 = d2.size();
    for (ElementId a = 0; a < d1.size(); ++a)
        for (ElementId b = 0; b < n2; ++b)
            result.add_element("[" + d1.element_name(a) + ";" + d2.element_name(b) + "]");
    auto pair_id = [&](ElementId a, ElementId b) { return ElementId(a * n2 + b); };

    for (auto & [rel, tuples1] : d1.all_facts()) {
        auto & tuples2 = d2.facts(rel);
        for (auto & t1 : tuples1)
            for (auto & t2 : tuples2) {
                Tuple mapped;
                for (std::size_t p = 0; p < t1.size(); ++p)
                    mapped.push_back(pair_id(t1[p], t2[p]));
                result.add_fact(rel, mapped);
            }
    }
    for (auto & [c, e1] : d1.const_interp())
        if (auto e2 = d2.interpretation(c))
            result.interpret(c, pair_id(e1, *e2));
    return result;
}

auto bagcq::power_product(const Database & d, unsigned long k) -> Database
{
    if (k == 0)
        throw Error(ErrorKind::InvalidArgument, "product power needs k >= 1");
    Database result = d;
    for (unsigned long i = 1; i < k; ++i)
        result = product(result, d);
    return result;
}

auto bagcq::strip_inequalities(const Query & q) -> Query
{
    Query stripped{q.schema(), q.atoms()};
    auto kept = stripped.variables();
    for (auto & v : q.variables())
        if (! std::binary_search(kept.begin(), kept.end(), v))
            stripped.add_variable(v);
    return stripped;
}

auto bagcq::inequality_elimination_witness(const Query & q_s, const Query & q_b, const Database & d0,
    unsigned long k_cap) -> InequalityWitness
{
    if (! q_b.inequalities().empty())
        throw Error(ErrorKind::Precondition, "q_b must be inequality-free");
    auto n = q_s.inequalities().size();
    if (n == 0)
        return InequalityWitness{d0, 0, 0};

    Query stripped = strip_inequalities(q_s);
    HomCounter counter(d0);
    Count s0 = counter.count(stripped), b0 = counter.count(q_b);
    if (compare_counts(s0, b0) != std::strong_ordering::greater)
        throw Error(ErrorKind::Precondition, "need strip(q_s)(d0) > q_b(d0)");

    // both sides are inequality-free, so their counts on d0^k are the k-th powers
    unsigned long factor = 2 * n;
    Count slack = Count::power(Natural(factor), Natural(static_cast<unsigned long>(q_b.variables().size() + 1)));
    for (unsigned long k = 1; k <= k_cap; ++k) {
        if (compare_counts(s0.pow(k), slack * b0.pow(k)) != std::strong_ordering::greater)
            continue;
        Database d = blowup(power_product(d0, k), factor);
        HomCounter c(d);
        if (compare_counts(c.count(q_s), c.count(q_b)) != std::strong_ordering::greater)
            throw Error(ErrorKind::Precondition, "witness check failed (constants in q_s break the blow-up bound)");
        return InequalityWitness{std::move(d), k, factor};
    }
    throw Error(ErrorKind::Precondition, "no product exponent up to " + std::to_string(k_cap) + " separates the counts");
}
