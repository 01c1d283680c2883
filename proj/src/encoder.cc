#include <bagcq/encoder.hh>
#include <bagcq/error.hh>
#include <bagcq/homcount.hh>

using namespace bagcq;

using std::pair;
using std::set;
using std::string;
using std::to_string;
using std::vector;

auto bagcq::s_relation(int m) -> string
{
    return "S" + to_string(m);
}

auto bagcq::r_relation(int d) -> string
{
    return "R" + to_string(d);
}

auto bagcq::monomial_constant(int m) -> string
{
    return "a" + to_string(m);
}

auto bagcq::variable_constant(int n) -> string
{
    return "b" + to_string(n);
}

auto bagcq::classification_name(DbClassification c) -> string
{
    switch (c) {
    case DbClassification::NotModel: return "not_model";
    case DbClassification::Correct: return "correct";
    case DbClassification::SlightlyIncorrect: return "slightly_incorrect";
    case DbClassification::SeriouslyIncorrect: return "seriously_incorrect";
    }
    return "?";
}

namespace
{
    auto small(const Natural & n, const char * what) -> unsigned long
    {
        if (! n.fits_ulong_p())
            throw Error(ErrorKind::UnsupportedInput, string(what) + " is too large to build");
        return n.get_ui();
    }

    auto star(const HilbertInstance & inst, const vector<Natural> & coefficients, bool extra_rays) -> Query
    {
        auto x = Term::var("x");
        Query q;
        for (int m = 1; m <= inst.m_count; ++m) {
            auto rel = s_relation(m);
            q.declare_relation(rel, 2);
            q.add_atom(rel, {x, x});
            auto c = small(coefficients.at(m - 1), "coefficient");
            auto ray = [&](unsigned long k) { return Term::var("x" + to_string(m) + "_" + to_string(k)); };
            if (c >= 2) {
                q.add_atom(rel, {x, ray(c - 1)});
                for (unsigned long k = 1; k + 1 < c; ++k)
                    q.add_atom(rel, {ray(k + 1), ray(k)});
            }
        }
        q.declare_relation(valuation_relation, 2);
        for (int d = 1; d <= inst.d; ++d) {
            auto y = Term::var("y" + to_string(d)), z = Term::var("z" + to_string(d));
            q.add_atom(r_relation(d), {x, y});
            q.add_atom(valuation_relation, {y, z});
        }
        if (extra_rays)
            for (int d = 1; d <= inst.d; ++d) {
                auto y = Term::var("y'" + to_string(d)), z = Term::var("z'" + to_string(d));
                q.add_atom(r_relation(1), {x, y});
                q.add_atom(valuation_relation, {y, z});
            }
        return q;
    }
}

auto bagcq::build_pi(const HilbertInstance & inst) -> pair<Query, Query>
{
    return {star(inst, inst.coefficients_s(), false), star(inst, inst.coefficients_b(), true)};
}

auto bagcq::build_arena(const HilbertInstance & inst) -> ArenaParts
{
    auto c = [](const string & name) { return Term::constant(name); };
    Query q;
    for (int m = 1; m <= inst.m_count; ++m)
        q.declare_relation(s_relation(m), 2);
    for (int d = 1; d <= inst.d; ++d)
        q.declare_relation(r_relation(d), 2);
    q.declare_relation(cycle_relation, 2);
    q.declare_relation(valuation_relation, 2);

    for (auto & [n, d, m] : inst.position_rel)
        q.add_atom(r_relation(d), {c(monomial_constant(m)), c(variable_constant(n))});
    for (int m = 1; m <= inst.m_count; ++m)
        for (int m2 = 1; m2 <= inst.m_count; ++m2)
            q.add_atom(s_relation(m2), {c(monomial_constant(m)), c(monomial_constant(m))});
    for (int m = 1; m <= inst.m_count; ++m) {
        q.add_atom(s_relation(m), {c(monomial_constant(m)), c(arena_hub)});
        q.add_atom(s_relation(m), {c(arena_hub), c(arena_hub)});
    }

    q.add_atom(cycle_relation, {c(string(mars)), c(string(mars))});
    vector<string> cycle{string(venus), arena_hub};
    for (int m = 1; m <= inst.m_count; ++m)
        cycle.push_back(monomial_constant(m));
    for (int n = 1; n <= inst.n_count; ++n)
        cycle.push_back(variable_constant(n));
    for (std::size_t i = 0; i < cycle.size(); ++i)
        q.add_atom(cycle_relation, {c(cycle[i]), c(cycle[(i + 1) % cycle.size()])});

    return ArenaParts{q, canonical_structure(q)};
}

auto bagcq::build_zeta(const HilbertInstance & inst, const ArenaParts & arena) -> ZetaParts
{
    vector<string> relations;
    for (int m = 1; m <= inst.m_count; ++m)
        relations.push_back(s_relation(m));
    for (int d = 1; d <= inst.d; ++d)
        relations.push_back(r_relation(d));

    unsigned long j = 0;
    for (auto & r : relations)
        j = std::max<unsigned long>(j, arena.database.facts(r).size());

    Natural k = 0, lhs = 1, rhs = inst.c_frak;
    while (lhs < rhs) {
        lhs *= j + 1;
        rhs *= j;
        ++k;
    }

    vector<QueryExpr> parts;
    Count c1;
    for (auto & r : relations) {
        Query q;
        q.add_atom(r, {Term::var("w"), Term::var("v")});
        parts.push_back(QueryExpr::power(QueryExpr::leaf(q), k));
        c1 *= Count::power(Natural(static_cast<unsigned long>(arena.database.facts(r).size())), k);
    }
    return ZetaParts{QueryExpr::disjoint_and(parts), k, c1};
}

auto bagcq::cycle_query(int length) -> Query
{
    if (length < 1)
        throw Error(ErrorKind::InvalidArgument, "cycle length must be positive");
    Query q;
    q.declare_relation(cycle_relation, 2);
    for (int i = 1; i <= length; ++i)
        q.add_atom(cycle_relation, {Term::var("z" + to_string(i)), Term::var("z" + to_string(i % length + 1))});
    return q;
}

auto bagcq::cycle_lengths(const HilbertInstance & inst) -> set<int>
{
    int l_len = inst.m_count + inst.n_count + 2;
    set<int> ls;
    for (int l = 1; l < l_len; ++l)
        ls.insert(l);
    ls.insert(l_len + 1);
    return ls;
}

auto bagcq::build_delta_base(const HilbertInstance & inst) -> QueryExpr
{
    vector<QueryExpr> parts;
    for (int l : cycle_lengths(inst))
        parts.push_back(QueryExpr::leaf(cycle_query(l)));
    return QueryExpr::disjoint_and(parts);
}

auto bagcq::build_delta(const HilbertInstance & inst, const Count & c) -> QueryExpr
{
    auto exponent = c.to_natural(1u << 20);
    if (! exponent)
        throw Error(ErrorKind::UnsupportedInput, "the constant c is too large to use as an exponent");
    return QueryExpr::power(build_delta_base(inst), *exponent);
}

auto bagcq::assemble(const HilbertInstance & inst) -> EncoderOutput
{
    auto [pi_s, pi_b] = build_pi(inst);
    auto arena = build_arena(inst);
    auto zeta = build_zeta(inst, arena);
    auto c = Count(inst.c_frak) * zeta.c1;
    auto delta = build_delta(inst, c);

    EncoderConstants constants;
    constants.k = zeta.k;
    constants.c1 = zeta.c1;
    constants.l_len = inst.m_count + inst.n_count + 2;
    constants.cycle_lengths = cycle_lengths(inst);
    for (auto & [rel, facts] : arena.database.all_facts())
        if (rel != cycle_relation && rel != valuation_relation) {
            constants.j_per_relation[rel] = facts.size();
            constants.j = std::max<unsigned long>(constants.j, facts.size());
        }

    auto phi_s = QueryExpr::disjoint_and({QueryExpr::leaf(arena.query), QueryExpr::leaf(pi_s)});
    auto phi_b = QueryExpr::disjoint_and({QueryExpr::leaf(pi_b), zeta.zeta_b, delta});
    return EncoderOutput{c, phi_s, phi_b, arena.query, arena.database, constants, pi_s, pi_b, zeta.zeta_b, delta};
}

auto bagcq::build_correct_database(const HilbertInstance & inst, const Valuation & v) -> Database
{
    return build_correct_database(build_arena(inst), inst, v);
}

auto bagcq::build_correct_database(const ArenaParts & arena, const HilbertInstance & inst, const Valuation & v) -> Database
{
    Database d = arena.database;
    for (int n = 1; n <= inst.n_count; ++n) {
        auto it = v.find(n);
        if (it == v.end())
            throw Error(ErrorKind::InvalidArgument, "valuation does not define x" + to_string(n));
        auto b = *d.interpretation(variable_constant(n));
        auto count = small(it->second, "valuation value");
        for (unsigned long i = 1; i <= count; ++i)
            d.add_fact(valuation_relation, Tuple{b, d.add_element("e" + to_string(n) + "_" + to_string(i))});
    }
    return d;
}

auto bagcq::extract_valuation(const Database & d, const HilbertInstance & inst) -> Valuation
{
    if (classify_database(d, inst) == DbClassification::NotModel)
        throw Error(ErrorKind::Precondition, "database does not satisfy the arena");
    Valuation v;
    auto & xs = d.facts(valuation_relation);
    for (int n = 1; n <= inst.n_count; ++n) {
        auto b = *d.interpretation(variable_constant(n));
        auto from = xs.lower_bound(Tuple{b});
        unsigned long count = 0;
        for (; from != xs.end() && from->front() == b; ++from)
            ++count;
        v[n] = count;
    }
    return v;
}

auto bagcq::classify_database(const Database & d, const HilbertInstance & inst) -> DbClassification
{
    return classify_database(d, inst, build_arena(inst));
}

auto bagcq::classify_database(const Database & d, const HilbertInstance &, const ArenaParts & arena) -> DbClassification
{
    auto constants = arena.query.constants_used();
    std::map<ElementId, ElementId> image;
    set<ElementId> targets;
    for (auto & c : constants) {
        auto e = d.interpretation(c);
        if (! e)
            return DbClassification::NotModel;
        image[*arena.database.interpretation(c)] = *e;
        targets.insert(*e);
    }
    for (auto & [rel, arity] : arena.query.schema().relations())
        if (d.schema().arity(rel) != arity)
            return DbClassification::NotModel;
    if (count_homomorphisms(arena.query, d).is_zero())
        return DbClassification::NotModel;

    if (targets.size() != constants.size())
        return DbClassification::SeriouslyIncorrect;

    for (auto & [rel, facts] : arena.database.all_facts()) {
        if (rel == valuation_relation)
            continue;
        set<Tuple> mapped;
        for (auto & t : facts) {
            Tuple u;
            for (auto e : t)
                u.push_back(image.at(e));
            mapped.insert(u);
        }
        if (mapped != d.facts(rel))
            return DbClassification::SlightlyIncorrect;
    }
    return DbClassification::Correct;
}

auto bagcq::alias_constants(const Database & d, const string & into, const string & from) -> Database
{
    auto target = d.interpretation(into), source = d.interpretation(from);
    if (! target || ! source)
        throw Error(ErrorKind::UninterpretedConstant, "alias needs both constants interpreted");
    Database result{d.schema()};
    for (auto & name : d.element_names())
        result.add_element(name);
    auto remap = [&](ElementId e) { return e == *source ? *target : e; };
    for (auto & [rel, facts] : d.all_facts()) {
        result.declare_relation(rel, d.schema().arity(rel).value_or(0));
        for (auto & t : facts) {
            Tuple u;
            for (auto e : t)
                u.push_back(remap(e));
            result.add_fact(rel, u);
        }
    }
    for (auto & [c, e] : d.const_interp())
        result.interpret(c, remap(e));
    return result;
}
