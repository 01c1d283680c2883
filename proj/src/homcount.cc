#include <bagcq/homcount.hh>

#include <algorithm>
#include <numeric>
#include <unordered_map>

using namespace bagcq;

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace bagcq
{
    struct RelationIndex
    {
        vector<Tuple> tuples;
        // by_position[p][e] = ids of tuples with element e at position p
        vector<vector<vector<std::uint32_t>>> by_position;
    };

    struct FactIndex
    {
        std::map<string, RelationIndex, std::less<>> relations;
        size_t domain_size = 0;
    };
}

namespace
{
    constexpr std::int64_t unassigned = -1;

    auto build_index(const Database & d) -> std::shared_ptr<const FactIndex>
    {
        auto index = std::make_shared<FactIndex>();
        index->domain_size = d.size();
        for (auto & [rel, arity] : d.schema().relations()) {
            auto & ri = index->relations[rel];
            auto & facts = d.facts(rel);
            ri.tuples.assign(facts.begin(), facts.end());
            ri.by_position.assign(arity, vector<vector<std::uint32_t>>(d.size()));
            for (std::uint32_t t = 0; t < ri.tuples.size(); ++t)
                for (int p = 0; p < arity; ++p)
                    ri.by_position[p][ri.tuples[t][p]].push_back(t);
        }
        return index;
    }

    struct Arg
    {
        bool is_var;
        std::uint32_t id; // variable index or element id
    };

    struct CompiledAtom
    {
        const RelationIndex * rel;
        vector<Arg> args;
    };

    struct CompiledInequality
    {
        Arg lhs, rhs;
    };

    /// A query resolved against one database: variables are numbered in name
    /// order, constants replaced by their elements.
    struct Compiled
    {
        vector<string> vars;
        vector<CompiledAtom> atoms;
        vector<CompiledInequality> inequalities;
        vector<vector<std::uint32_t>> var_atoms, var_inequalities, neighbours;
        bool ground_ok = true;
    };

    auto compile(const Query & q, const Database & d, const FactIndex & index) -> Compiled
    {
        Compiled c;
        c.vars = q.variables();
        std::map<string, std::uint32_t> var_id;
        for (std::uint32_t i = 0; i < c.vars.size(); ++i)
            var_id.emplace(c.vars[i], i);

        auto resolve = [&](const Term & t) -> Arg {
            if (t.is_variable())
                return Arg{true, var_id.at(t.name)};
            auto e = d.interpretation(t.name);
            if (! e)
                throw Error(ErrorKind::UninterpretedConstant, "constant " + t.name + " is not interpreted by the database");
            return Arg{false, *e};
        };

        c.var_atoms.resize(c.vars.size());
        c.var_inequalities.resize(c.vars.size());
        c.neighbours.resize(c.vars.size());
        vector<std::set<std::uint32_t>> nbrs(c.vars.size());

        for (auto & a : q.atoms()) {
            auto arity = d.schema().arity(a.relation);
            if (! arity || *arity != int(a.args.size()))
                throw Error(ErrorKind::SchemaMismatch, "relation " + a.relation + "/" + std::to_string(a.args.size())
                        + " is not in the database schema");
            CompiledAtom ca{&index.relations.find(a.relation)->second, {}};
            for (auto & t : a.args)
                ca.args.push_back(resolve(t));

            std::set<std::uint32_t> vs;
            for (auto & arg : ca.args)
                if (arg.is_var)
                    vs.insert(arg.id);
            if (vs.empty()) {
                Tuple t;
                for (auto & arg : ca.args)
                    t.push_back(arg.id);
                if (! d.has_fact(a.relation, t))
                    c.ground_ok = false;
                continue;
            }
            auto id = std::uint32_t(c.atoms.size());
            for (auto v : vs) {
                c.var_atoms[v].push_back(id);
                for (auto w : vs)
                    if (w != v)
                        nbrs[v].insert(w);
            }
            c.atoms.push_back(std::move(ca));
        }

        for (auto & i : q.inequalities()) {
            CompiledInequality ci{resolve(i.lhs), resolve(i.rhs)};
            if (! ci.lhs.is_var && ! ci.rhs.is_var) {
                if (ci.lhs.id == ci.rhs.id)
                    c.ground_ok = false;
                continue;
            }
            auto id = std::uint32_t(c.inequalities.size());
            if (ci.lhs.is_var)
                c.var_inequalities[ci.lhs.id].push_back(id);
            if (ci.rhs.is_var && ! (ci.lhs.is_var && ci.lhs.id == ci.rhs.id))
                c.var_inequalities[ci.rhs.id].push_back(id);
            if (ci.lhs.is_var && ci.rhs.is_var && ci.lhs.id != ci.rhs.id) {
                nbrs[ci.lhs.id].insert(ci.rhs.id);
                nbrs[ci.rhs.id].insert(ci.lhs.id);
            }
            c.inequalities.push_back(ci);
        }

        for (size_t v = 0; v < c.vars.size(); ++v)
            c.neighbours[v].assign(nbrs[v].begin(), nbrs[v].end());
        return c;
    }

    struct VectorHash
    {
        auto operator()(const vector<std::int64_t> & v) const -> size_t
        {
            size_t h = v.size();
            for (auto x : v)
                h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        }
    };

    /// Backtracking search over one compiled query. Candidate sets come from
    /// the fact index, filtered by every atom through the positions that are
    /// already bound.
    class Searcher
    {
    private:
        const Compiled & c;
        size_t domain;
        vector<std::int64_t> value;
        vector<std::uint32_t> hits, stamp;
        std::uint32_t generation = 0;
        std::unordered_map<vector<std::int64_t>, Natural, VectorHash> cache;

        auto bound(const Arg & a) const -> std::int64_t
        {
            return a.is_var ? value[a.id] : std::int64_t(a.id);
        }

    public:
        Searcher(const Compiled & comp, size_t domain_size) :
            c(comp),
            domain(domain_size),
            value(comp.vars.size(), unassigned),
            hits(domain_size, 0),
            stamp(domain_size, 0)
        {
        }

        auto assign(std::uint32_t v, std::int64_t e) -> void { value[v] = e; }
        auto values() const -> const vector<std::int64_t> & { return value; }

        /// Elements v can take given the current partial assignment, ascending.
        auto candidates(std::uint32_t v) -> vector<ElementId>
        {
            std::uint32_t required = 0;
            vector<ElementId> touched;
            for (auto ai : c.var_atoms[v]) {
                auto & atom = c.atoms[ai];
                ++generation;
                ++required;

                // narrowest bound position drives the scan
                const vector<std::uint32_t> * driver = nullptr;
                for (size_t p = 0; p < atom.args.size(); ++p) {
                    auto b = bound(atom.args[p]);
                    if (b == unassigned)
                        continue;
                    auto & list = atom.rel->by_position[p][b];
                    if (! driver || list.size() < driver->size())
                        driver = &list;
                }

                auto consider = [&](const Tuple & t) {
                    std::int64_t seen_v = unassigned;
                    for (size_t p = 0; p < atom.args.size(); ++p) {
                        auto & arg = atom.args[p];
                        if (arg.is_var && arg.id == v) {
                            if (seen_v != unassigned && seen_v != t[p])
                                return;
                            seen_v = t[p];
                            continue;
                        }
                        auto b = bound(arg);
                        if (b != unassigned && b != t[p])
                            return;
                    }
                    if (stamp[seen_v] == generation)
                        return;
                    stamp[seen_v] = generation;
                    if (hits[seen_v]++ == 0)
                        touched.push_back(ElementId(seen_v));
                };

                if (driver)
                    for (auto ti : *driver)
                        consider(atom.rel->tuples[ti]);
                else
                    for (auto & t : atom.rel->tuples)
                        consider(t);
            }

            vector<ElementId> result;
            if (required == 0) {
                result.resize(domain);
                std::iota(result.begin(), result.end(), 0);
            }
            else {
                for (auto e : touched)
                    if (hits[e] == required)
                        result.push_back(e);
                for (auto e : touched)
                    hits[e] = 0;
                std::sort(result.begin(), result.end());
            }

            for (auto ii : c.var_inequalities[v]) {
                auto & ineq = c.inequalities[ii];
                bool self_l = ineq.lhs.is_var && ineq.lhs.id == v, self_r = ineq.rhs.is_var && ineq.rhs.id == v;
                if (self_l && self_r)
                    return {};
                auto other = bound(self_l ? ineq.rhs : ineq.lhs);
                if (other == unassigned)
                    continue;
                std::erase(result, ElementId(other));
            }
            return result;
        }

        /// Connected pieces of vars under the neighbour relation, restricted
        /// to unassigned variables.
        auto split(const vector<std::uint32_t> & vars) -> vector<vector<std::uint32_t>>
        {
            vector<vector<std::uint32_t>> parts;
            std::set<std::uint32_t> left(vars.begin(), vars.end());
            while (! left.empty()) {
                vector<std::uint32_t> part, todo{*left.begin()};
                left.erase(left.begin());
                while (! todo.empty()) {
                    auto v = todo.back();
                    todo.pop_back();
                    part.push_back(v);
                    for (auto w : c.neighbours[v])
                        if (left.erase(w))
                            todo.push_back(w);
                }
                std::sort(part.begin(), part.end());
                parts.push_back(std::move(part));
            }
            return parts;
        }

        /// Number of extensions of the current assignment to the variables of
        /// one connected component of unassigned variables.
        auto count_component(const vector<std::uint32_t> & comp) -> Natural
        {
            vector<std::int64_t> key(comp.begin(), comp.end());
            key.push_back(-2);
            std::set<std::uint32_t> boundary;
            for (auto v : comp)
                for (auto w : c.neighbours[v])
                    if (value[w] != unassigned)
                        boundary.insert(w);
            for (auto w : boundary) {
                key.push_back(w);
                key.push_back(value[w]);
            }
            if (auto it = cache.find(key); it != cache.end())
                return it->second;

            // most constrained first; ties go to the earlier name
            std::uint32_t best = comp.front();
            vector<ElementId> best_candidates;
            bool first = true;
            for (auto v : comp) {
                auto cand = candidates(v);
                if (first || cand.size() < best_candidates.size()) {
                    best = v;
                    best_candidates = std::move(cand);
                    first = false;
                }
                if (best_candidates.empty())
                    break;
            }

            Natural total = 0;
            if (comp.size() == 1)
                total = static_cast<unsigned long>(best_candidates.size());
            else if (! best_candidates.empty()) {
                vector<std::uint32_t> rest;
                for (auto v : comp)
                    if (v != best)
                        rest.push_back(v);
                for (auto e : best_candidates) {
                    value[best] = e;
                    Natural product = 1;
                    for (auto & part : split(rest)) {
                        product *= count_component(part);
                        if (product == 0)
                            break;
                    }
                    total += product;
                }
                value[best] = unassigned;
            }
            cache.emplace(std::move(key), total);
            return total;
        }

        auto enumerate(std::uint32_t next, size_t limit, vector<vector<std::int64_t>> & out) -> void
        {
            if (out.size() >= limit)
                return;
            if (next == c.vars.size()) {
                out.push_back(value);
                return;
            }
            for (auto e : candidates(next)) {
                value[next] = e;
                enumerate(next + 1, limit, out);
                if (out.size() >= limit)
                    break;
            }
            value[next] = unassigned;
        }
    };
}

HomCounter::HomCounter(const Database & d) :
    _db(d),
    _index(build_index(d))
{
}

auto HomCounter::count(const Query & q) const -> Count
{
    auto compiled = compile(q, _db, *_index);
    if (! compiled.ground_ok)
        return Count::zero();

    Searcher searcher(compiled, _db.size());
    vector<std::uint32_t> all(compiled.vars.size());
    std::iota(all.begin(), all.end(), 0);

    Count result;
    for (auto & part : searcher.split(all)) {
        Natural n = searcher.count_component(part);
        if (n == 0)
            return Count::zero();
        result *= Count(n);
    }
    return result;
}

auto HomCounter::enumerate(const Query & q, size_t limit) const -> vector<Assignment>
{
    auto compiled = compile(q, _db, *_index);
    if (! compiled.ground_ok || limit == 0)
        return {};

    Searcher searcher(compiled, _db.size());
    vector<vector<std::int64_t>> raw;
    searcher.enumerate(0, limit, raw);

    vector<Assignment> result;
    for (auto & r : raw) {
        Assignment a;
        for (size_t v = 0; v < r.size(); ++v)
            a.emplace(compiled.vars[v], ElementId(r[v]));
        result.push_back(std::move(a));
    }
    return result;
}

auto bagcq::count_homomorphisms(const Query & q, const Database & d) -> Count
{
    return HomCounter(d).count(q);
}

auto bagcq::enumerate_homomorphisms(const Query & q, const Database & d, size_t limit) -> vector<Assignment>
{
    return HomCounter(d).enumerate(q, limit);
}

namespace
{
    class OntoSearch
    {
    private:
        const Compiled & c;
        Searcher searcher;
        const Database & target;
        vector<std::uint32_t> cover;      // how many source vars hit each target element
        vector<bool> must_cover;          // target elements that are variables of q_to
        size_t uncovered = 0;

    public:
        OntoSearch(const Compiled & comp, const Database & t, const vector<bool> & targets) :
            c(comp),
            searcher(comp, t.size()),
            target(t),
            cover(t.size(), 0),
            must_cover(targets)
        {
            uncovered = size_t(std::count(targets.begin(), targets.end(), true));
        }

        auto run(size_t assigned) -> bool
        {
            size_t remaining = c.vars.size() - assigned;
            if (remaining < uncovered)
                return false;
            if (remaining == 0)
                return true;

            std::uint32_t best = 0;
            vector<ElementId> best_candidates;
            bool first = true;
            for (std::uint32_t v = 0; v < c.vars.size(); ++v) {
                if (searcher.values()[v] != unassigned)
                    continue;
                auto cand = searcher.candidates(v);
                if (first || cand.size() < best_candidates.size()) {
                    best = v;
                    best_candidates = std::move(cand);
                    first = false;
                }
            }

            // try the same-named element first, then uncovered targets
            auto same = target.element_id(c.vars[best]);
            std::stable_sort(best_candidates.begin(), best_candidates.end(), [&](ElementId a, ElementId b) {
                auto rank = [&](ElementId e) { return (same && *same == e) ? 0 : (must_cover[e] && cover[e] == 0 ? 1 : 2); };
                return rank(a) < rank(b);
            });

            for (auto e : best_candidates) {
                searcher.assign(best, e);
                if (must_cover[e] && cover[e]++ == 0)
                    --uncovered;
                if (run(assigned + 1))
                    return true;
                if (must_cover[e] && --cover[e] == 0)
                    ++uncovered;
            }
            searcher.assign(best, unassigned);
            return false;
        }

        auto result() const -> VariableMap
        {
            VariableMap m;
            for (size_t v = 0; v < c.vars.size(); ++v)
                m.emplace(c.vars[v], target.element_name(ElementId(searcher.values()[v])));
            return m;
        }
    };
}

auto bagcq::exists_onto_homomorphism(const Query & q_from, const Query & q_to) -> optional<VariableMap>
{
    if (! q_from.inequalities().empty() || ! q_to.inequalities().empty())
        throw Error(ErrorKind::UnsupportedInput, "onto-homomorphism search takes inequality-free queries");

    Database target = canonical_structure(q_to);
    for (auto & [rel, arity] : q_from.schema().relations())
        if (auto other = target.schema().arity(rel); ! other)
            target.declare_relation(rel, arity);
        else if (*other != arity)
            return std::nullopt;
    for (auto & k : q_from.constants_used())
        if (! target.interpretation(k))
            return std::nullopt;

    auto index = build_index(target);
    auto compiled = compile(q_from, target, *index);
    if (! compiled.ground_ok)
        return std::nullopt;

    vector<bool> targets(target.size(), false);
    auto constants = q_to.constants_used();
    for (ElementId e = 0; e < target.size(); ++e) {
        bool is_constant = false;
        for (auto & k : constants)
            if (*target.interpretation(k) == e)
                is_constant = true;
        targets[e] = ! is_constant;
    }

    OntoSearch search(compiled, target, targets);
    if (! search.run(0))
        return std::nullopt;
    return search.result();
}
