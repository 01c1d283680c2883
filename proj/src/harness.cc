#include <bagcq/encoder.hh>
#include <bagcq/error.hh>
#include <bagcq/formats.hh>
#include <bagcq/gadgets.hh>
#include <bagcq/harness.hh>
#include <bagcq/homcount.hh>

#include <chrono>
#include <functional>

using namespace bagcq;

using std::optional;
using std::pair;
using std::string;
using std::uint64_t;
using std::vector;

auto bagcq::make_rng(uint64_t seed) -> Rng
{
    std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32)};
    return Rng(seq);
}

auto bagcq::uniform01(Rng & rng) -> double
{
    return double(rng() >> 11) * 0x1.0p-53;
}

namespace
{
    auto below(Rng & rng, uint64_t n) -> uint64_t
    {
        return n == 0 ? 0 : rng() % n;
    }

    auto all_tuples(std::size_t domain, int arity) -> vector<Tuple>
    {
        vector<Tuple> result;
        Tuple t(arity, 0);
        while (true) {
            result.push_back(t);
            int i = arity - 1;
            for (; i >= 0; --i) {
                if (++t[i] < domain)
                    break;
                t[i] = 0;
            }
            if (i < 0)
                return result;
        }
    }

    auto empty_database(const Schema & schema, std::size_t domain_size) -> Database
    {
        Database d{schema};
        for (std::size_t i = 0; i < domain_size; ++i)
            d.add_element("e" + std::to_string(i));
        return d;
    }
}

auto bagcq::random_database(const Schema & schema, std::size_t domain_size, double density, uint64_t seed,
    bool nontrivial) -> Database
{
    if (density < 0 || density > 1)
        throw Error(ErrorKind::InvalidArgument, "density must be in [0, 1]");
    if (nontrivial && domain_size < 2)
        throw Error(ErrorKind::InvalidArgument, "a non-trivial database needs at least two elements");
    if (domain_size == 0 && ! schema.constants().empty())
        throw Error(ErrorKind::InvalidArgument, "constants need at least one element");

    auto rng = make_rng(seed);
    Database d = empty_database(schema, domain_size);
    for (auto & c : schema.constants()) {
        if (nontrivial && c == mars)
            d.interpret(c, 0);
        else if (nontrivial && c == venus)
            d.interpret(c, 1);
        else
            d.interpret(c, ElementId(below(rng, domain_size)));
    }
    for (auto & [rel, arity] : schema.relations())
        for (auto & t : all_tuples(domain_size, arity))
            if (uniform01(rng) < density)
                d.add_fact(rel, t);
    return d;
}

auto bagcq::random_query(const Schema & schema, int max_vars, int max_atoms, int inequalities, Rng & rng) -> Query
{
    vector<pair<string, int>> relations(schema.relations().begin(), schema.relations().end());
    vector<string> constants(schema.constants().begin(), schema.constants().end());
    if (relations.empty())
        throw Error(ErrorKind::InvalidArgument, "random queries need at least one relation");

    Query q;
    for (auto & [rel, arity] : relations)
        q.declare_relation(rel, arity);

    auto atoms = 1 + int(below(rng, max_atoms));
    for (int i = 0; i < atoms; ++i) {
        auto & [rel, arity] = relations[below(rng, relations.size())];
        vector<Term> args;
        for (int k = 0; k < arity; ++k) {
            if (! constants.empty() && below(rng, 10) == 0)
                args.push_back(Term::constant(constants[below(rng, constants.size())]));
            else
                args.push_back(Term::var("x" + std::to_string(1 + below(rng, max_vars))));
        }
        q.add_atom(rel, args);
    }

    std::set<Term> terms;
    for (auto & a : q.atoms())
        terms.insert(a.args.begin(), a.args.end());
    vector<Term> pool(terms.begin(), terms.end());
    if (pool.size() >= 2)
        for (int i = 0; i < inequalities; ++i) {
            auto a = below(rng, pool.size()), b = below(rng, pool.size() - 1);
            if (b >= a)
                ++b;
            q.add_inequality(pool[a], pool[b]);
        }
    return q;
}

auto bagcq::naive_count(const Query & q, const Database & d) -> Natural
{
    auto vars = q.variables();
    auto value = [&](const Term & t, const vector<ElementId> & a) -> ElementId {
        if (t.is_constant()) {
            auto e = d.interpretation(t.name);
            if (! e)
                throw Error(ErrorKind::UninterpretedConstant, "constant " + t.name + " is not interpreted");
            return *e;
        }
        return a[std::lower_bound(vars.begin(), vars.end(), t.name) - vars.begin()];
    };

    Natural total = 0;
    if (! vars.empty() && d.size() == 0)
        return total;
    vector<ElementId> a(vars.size(), 0);
    while (true) {
        bool ok = true;
        for (auto & atom : q.atoms()) {
            Tuple t;
            for (auto & arg : atom.args)
                t.push_back(value(arg, a));
            if (! d.has_fact(atom.relation, t)) {
                ok = false;
                break;
            }
        }
        for (auto & ne : q.inequalities())
            if (ok && value(ne.lhs, a) == value(ne.rhs, a))
                ok = false;
        if (ok)
            total += 1;

        std::size_t i = 0;
        for (; i < a.size(); ++i) {
            if (++a[i] < d.size())
                break;
            a[i] = 0;
        }
        if (i == a.size())
            return total;
    }
}

auto bagcq::builtin_polynomials() -> vector<pair<string, Polynomial>>
{
    auto poly = [](int vars, vector<pair<long, vector<int>>> terms) {
        std::map<OrderedMonomial, Integer> m;
        for (auto & [c, v] : terms)
            m[OrderedMonomial{v}] += c;
        return Polynomial::from_map(vars, m);
    };
    return {
        {"x2-1", poly(2, {{1, {2}}, {-1, {}}})},
        {"1", poly(1, {{1, {}}})},
        {"2x2+1", poly(2, {{2, {2}}, {1, {}}})},
        {"x2*x3-6", poly(3, {{1, {2, 3}}, {-6, {}}})},
        {"x2^2+1", poly(2, {{1, {2, 2}}, {1, {}}})},
    };
}

namespace
{
    auto violates(const Count & lhs, const QueryExpr & phi_s, const QueryExpr & phi_b, const Count & rhs,
        const Database & d) -> bool
    {
        HomCounter h(d);
        auto l = lhs * phi_s.eval(h);
        if (l.is_zero())
            return false;
        return compare_counts(l, rhs * phi_b.eval(h)) == std::strong_ordering::greater;
    }

    auto minimize(const Count & lhs, const QueryExpr & phi_s, const QueryExpr & phi_b, const Count & rhs, Database d)
        -> Database
    {
        bool changed = true;
        while (changed) {
            changed = false;
            vector<pair<string, Tuple>> facts;
            for (auto & [rel, ts] : d.all_facts())
                for (auto & t : ts)
                    facts.emplace_back(rel, t);
            for (auto & [rel, t] : facts) {
                Database smaller = d;
                smaller.remove_fact(rel, t);
                if (violates(lhs, phi_s, phi_b, rhs, smaller)) {
                    d = std::move(smaller);
                    changed = true;
                }
            }
        }
        return d;
    }

    auto mutate(Database d, const Schema & schema, Rng & rng) -> Database
    {
        for (auto & [rel, arity] : schema.relations())
            if (! d.schema().arity(rel))
                d.declare_relation(rel, arity);
        vector<pair<string, int>> relations(schema.relations().begin(), schema.relations().end());
        if (relations.empty() || d.size() == 0)
            return d;
        auto edits = 1 + below(rng, 3);
        for (uint64_t i = 0; i < edits; ++i) {
            auto kind = below(rng, 3);
            if (kind == 0 && d.fact_count() > 0) {
                vector<pair<string, Tuple>> facts;
                for (auto & [rel, ts] : d.all_facts())
                    for (auto & t : ts)
                        facts.emplace_back(rel, t);
                auto & [rel, t] = facts[below(rng, facts.size())];
                d.remove_fact(rel, t);
            }
            else {
                if (kind == 2)
                    d.add_element("n" + std::to_string(d.size()));
                auto & [rel, arity] = relations[below(rng, relations.size())];
                Tuple t;
                for (int k = 0; k < arity; ++k)
                    t.push_back(ElementId(below(rng, d.size())));
                d.add_fact(rel, t);
            }
        }
        return d;
    }

    auto cap_facts(Database d, std::size_t cap) -> Database
    {
        auto all = d.all_facts();
        for (auto & [rel, ts] : all) {
            std::size_t kept = 0;
            for (auto & t : ts)
                if (++kept > cap)
                    d.remove_fact(rel, t);
        }
        return d;
    }
}

auto bagcq::search_counterexample(const Count & lhs, const QueryExpr & phi_s, const QueryExpr & phi_b,
    const SearchConfig & cfg, const Count & rhs) -> optional<Database>
{
    auto schema = Schema::merge(phi_s.schema(), phi_b.schema());
    auto found = [&](const Database & d) { return violates(lhs, phi_s, phi_b, rhs, d); };

    if (cfg.mode == SearchMode::Random) {
        for (auto & d : cfg.seeds)
            if (is_nontrivial(d) && found(d))
                return minimize(lhs, phi_s, phi_b, rhs, d);
        for (unsigned long t = 0; t < cfg.trials; ++t) {
            auto rng = make_rng(cfg.seed + t);
            if (! cfg.seeds.empty() && t % 2 == 1) {
                auto d = mutate(cfg.seeds[below(rng, cfg.seeds.size())], schema, rng);
                if (is_nontrivial(d) && found(d))
                    return minimize(lhs, phi_s, phi_b, rhs, d);
                continue;
            }
            auto domain = 2 + below(rng, cfg.max_domain >= 2 ? cfg.max_domain - 1 : 1);
            auto density = uniform01(rng);
            auto d = cap_facts(random_database(schema, domain, density, rng(), true), cfg.max_facts_per_relation);
            if (found(d))
                return minimize(lhs, phi_s, phi_b, rhs, d);
        }
        return std::nullopt;
    }

    unsigned long budget = cfg.max_states;
    for (std::size_t domain = 2; domain <= cfg.max_domain; ++domain) {
        vector<pair<string, Tuple>> universe;
        for (auto & [rel, arity] : schema.relations())
            for (auto & t : all_tuples(domain, arity))
                universe.emplace_back(rel, t);
        vector<string> free_constants;
        for (auto & c : schema.constants())
            if (c != mars && c != venus)
                free_constants.push_back(c);

        if (universe.size() >= 63)
            break;
        Natural states = Natural(1) << universe.size();
        for (std::size_t i = 0; i < free_constants.size(); ++i)
            states *= domain;
        if (states > budget)
            break;
        budget -= states.get_ui();

        vector<ElementId> interp(free_constants.size(), 0);
        while (true) {
            for (uint64_t mask = 0; mask < (uint64_t(1) << universe.size()); ++mask) {
                Database d = empty_database(schema, domain);
                d.interpret(string(mars), 0);
                d.interpret(string(venus), 1);
                for (std::size_t i = 0; i < free_constants.size(); ++i)
                    d.interpret(free_constants[i], interp[i]);
                std::map<string, std::size_t> per_relation;
                bool within = true;
                for (std::size_t i = 0; i < universe.size(); ++i)
                    if (mask >> i & 1) {
                        if (++per_relation[universe[i].first] > cfg.max_facts_per_relation)
                            within = false;
                        d.add_fact(universe[i].first, universe[i].second);
                    }
                if (within && found(d))
                    return minimize(lhs, phi_s, phi_b, rhs, d);
            }
            std::size_t i = 0;
            for (; i < interp.size(); ++i) {
                if (++interp[i] < domain)
                    break;
                interp[i] = 0;
            }
            if (i == interp.size())
                break;
        }
    }
    return std::nullopt;
}

namespace
{
    using Failure = optional<pair<string, string>>;

    struct Suite
    {
        std::function<Failure(const SuiteParams &)> setup;
        std::function<Failure(const SuiteParams &, uint64_t)> trial;
    };

    auto param(const SuiteParams & p, const string & key, long fallback) -> long
    {
        auto it = p.find(key);
        return it == p.end() ? fallback : it->second;
    }

    auto fail(const string & detail, const Database * d = nullptr) -> Failure
    {
        return pair{detail, d ? serialize_database(*d) : string()};
    }

    auto count_of(const Query & q, const Database & d) -> Natural
    {
        return *count_homomorphisms(q, d).to_natural(1u << 20);
    }

    auto close_under_shifts(Database d, const string & relation) -> Database
    {
        auto facts = d.facts(relation);
        for (auto & t : facts)
            for (std::size_t k = 1; k < t.size(); ++k) {
                Tuple s(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    s[i] = t[(i + k) % t.size()];
                d.add_fact(relation, s);
            }
        return d;
    }

    /// Random non-trivial database for a gadget schema, half of the time
    /// closed under cyclic shifts of the gadget relation so that cycliques
    /// actually occur.
    auto gadget_database(const Schema & schema, const string & relation, long max_domain, uint64_t seed) -> Database
    {
        auto rng = make_rng(seed);
        auto domain = 2 + below(rng, std::max<long>(max_domain - 1, 1));
        auto density = uniform01(rng);
        if (rng() & 1)
            density *= density;
        auto d = random_database(schema, domain, density, rng(), true);
        if (rng() & 1)
            d = close_under_shifts(std::move(d), relation);
        return d;
    }

    auto check_gadget_inequality(const GadgetPair & g, const Database & d) -> Failure
    {
        auto s = count_of(g.q_s, d), b = count_of(g.q_b, d);
        if (s * g.multiplier.get_den() > g.multiplier.get_num() * b)
            return fail("q_s = " + s.get_str() + " exceeds " + g.multiplier.get_str() + " * q_b = "
                    + g.multiplier.get_str() + " * " + b.get_str(),
                &d);
        return std::nullopt;
    }

    auto check_gadget_witness(const GadgetPair & g, const Database & w) -> Failure
    {
        auto s = count_of(g.q_s, w), b = count_of(g.q_b, w);
        if (s == 0 || s * g.multiplier.get_den() != g.multiplier.get_num() * b)
            return fail("witness gives q_s = " + s.get_str() + ", q_b = " + b.get_str() + ", multiplier "
                    + g.multiplier.get_str(),
                &w);
        return std::nullopt;
    }

    auto algebra_schema() -> Schema
    {
        Schema s;
        s.add_relation("R", 2).add_relation("U", 1).add_relation("T", 3);
        return s;
    }

    struct AlgebraTrial
    {
        Query q1, q2;
        Database d;
    };

    auto algebra_trial(uint64_t seed, int max_vars, std::size_t max_domain, int inequalities) -> AlgebraTrial
    {
        auto rng = make_rng(seed);
        auto schema = algebra_schema();
        auto q1 = random_query(schema, max_vars, 3, int(below(rng, inequalities + 1)), rng);
        auto q2 = random_query(schema, max_vars, 3, int(below(rng, inequalities + 1)), rng);
        auto domain = 2 + below(rng, max_domain - 1);
        auto d = random_database(schema, domain, uniform01(rng), rng(), true);
        return {q1, q2, d};
    }

    auto tiny_instance() -> HilbertInstance
    {
        return normalize_hilbert(builtin_polynomials().front().second);
    }

    auto pow_natural(const Natural & b, unsigned long e) -> Natural
    {
        Natural r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return r;
    }

    auto box_valuations(int from, int to, unsigned long box) -> vector<Valuation>
    {
        vector<Valuation> all{Valuation{}};
        for (int i = from; i <= to; ++i) {
            vector<Valuation> next;
            for (auto & v : all)
                for (unsigned long x = 0; x <= box; ++x) {
                    auto w = v;
                    w[i] = x;
                    next.push_back(w);
                }
            all = std::move(next);
        }
        return all;
    }

    auto show(const Valuation & v) -> string
    {
        string s = "{";
        for (auto & [i, x] : v)
            s += (s.size() > 1 ? ", x" : "x") + std::to_string(i) + "=" + x.get_str();
        return s + "}";
    }

    auto suites() -> const std::map<string, Suite> &
    {
        static const std::map<string, Suite> all{
            {"beta",
                {[](const SuiteParams & p) -> Failure {
                     auto n = int(param(p, "n", 3));
                     return check_gadget_witness(build_beta(n), beta_witness(n));
                 },
                    [](const SuiteParams & p, uint64_t seed) -> Failure {
                        auto g = build_beta(int(param(p, "n", 3)));
                        return check_gadget_inequality(g,
                            gadget_database(g.schema, beta_relation, param(p, "domain", 4), seed));
                    }}},
            {"gamma",
                {[](const SuiteParams & p) -> Failure {
                     auto m = int(param(p, "m", 4));
                     return check_gadget_witness(build_gamma(m), gamma_witness(m));
                 },
                    [](const SuiteParams & p, uint64_t seed) -> Failure {
                        auto g = build_gamma(int(param(p, "m", 4)));
                        return check_gadget_inequality(g,
                            gadget_database(g.schema, gamma_relation, param(p, "domain", 4), seed));
                    }}},
            {"alpha",
                {[](const SuiteParams & p) -> Failure {
                     auto c = int(param(p, "c", 2));
                     return check_gadget_witness(build_alpha(c), alpha_witness(c));
                 },
                    [](const SuiteParams & p, uint64_t seed) -> Failure {
                        auto c = int(param(p, "c", 2));
                        auto g = build_alpha(c);
                        auto rng = make_rng(seed);
                        auto d = gadget_database(g.schema, beta_relation, param(p, "domain", 3), rng());
                        if (c > 1)
                            d = close_under_shifts(std::move(d), gamma_relation);
                        return check_gadget_inequality(g, d);
                    }}},
            {"lemma1",
                {nullptr, [](const SuiteParams &, uint64_t seed) -> Failure {
                     auto [q1, q2, d] = algebra_trial(seed, 3, 3, 1);
                     auto c1 = count_homomorphisms(q1, d), c2 = count_homomorphisms(q2, d);
                     auto joint = count_homomorphisms(conjoin_disjoint(q1, q2), d);
                     auto expr = QueryExpr::disjoint_and({QueryExpr::leaf(q1), QueryExpr::leaf(q2)}).eval(d);
                     if (joint != c1 * c2 || expr != c1 * c2)
                         return fail("disjoint conjunction counts " + joint.to_string() + " / " + expr.to_string()
                                 + ", product of parts " + (c1 * c2).to_string() + "\n" + serialize_query(q1) + "--\n"
                                 + serialize_query(q2),
                             &d);
                     return std::nullopt;
                 }}},
            {"power",
                {nullptr, [](const SuiteParams &, uint64_t seed) -> Failure {
                     auto [q, _, d] = algebra_trial(seed, 3, 3, 1);
                     auto rng = make_rng(seed ^ 0x5eed);
                     auto k = below(rng, 4);
                     auto base = count_homomorphisms(q, d);
                     auto e = power(QueryExpr::leaf(q), Natural(static_cast<unsigned long>(k)));
                     auto expected = base.pow(Natural(static_cast<unsigned long>(k)));
                     auto structured = e.eval(d), flat = count_homomorphisms(e.flatten(), d);
                     if (structured != expected || flat != expected)
                         return fail("power " + std::to_string(k) + ": structured " + structured.to_string() + ", flattened "
                                 + flat.to_string() + ", expected " + expected.to_string() + "\n" + serialize_query(q),
                             &d);
                     return std::nullopt;
                 }}},
            {"blowup",
                {nullptr, [](const SuiteParams &, uint64_t seed) -> Failure {
                     auto [q, _, d] = algebra_trial(seed, 3, 3, 0);
                     auto rng = make_rng(seed ^ 0xb10);
                     auto k = 1 + below(rng, 3);
                     auto lhs = count_of(q, blowup(d, k));
                     Natural rhs = pow_natural(Natural(static_cast<unsigned long>(k)), q.variables().size()) * count_of(q, d);
                     if (lhs != rhs)
                         return fail("blowup " + std::to_string(k) + ": " + lhs.get_str() + " != " + rhs.get_str() + "\n"
                                 + serialize_query(q),
                             &d);
                     return std::nullopt;
                 }}},
            {"product",
                {nullptr, [](const SuiteParams &, uint64_t seed) -> Failure {
                     auto [q, _, d] = algebra_trial(seed, 3, 3, 0);
                     auto lhs = count_of(q, product(d, d));
                     auto base = count_of(q, d);
                     if (lhs != base * base)
                         return fail("product: " + lhs.get_str() + " != " + base.get_str() + "^2\n" + serialize_query(q), &d);
                     return std::nullopt;
                 }}},
            {"lemma4",
                {[](const SuiteParams &) -> Failure {
                     auto [pi_s, pi_b] = build_pi(tiny_instance());
                     if (! exists_onto_homomorphism(pi_b, pi_s))
                         return fail("no onto homomorphism from pi_b to pi_s");
                     return std::nullopt;
                 },
                    [](const SuiteParams & p, uint64_t seed) -> Failure {
                        static const auto pis = build_pi(tiny_instance());
                        auto & [pi_s, pi_b] = pis;
                        auto rng = make_rng(seed);
                        auto schema = Schema::merge(pi_s.schema(), pi_b.schema());
                        auto domain = 1 + below(rng, param(p, "domain", 4));
                        auto density = 0.2 + 0.8 * uniform01(rng);
                        auto d = random_database(schema, domain, density, rng(), false);
                        auto s = count_of(pi_s, d), b = count_of(pi_b, d);
                        if (s > b)
                            return fail("pi_s = " + s.get_str() + " > pi_b = " + b.get_str(), &d);
                        return std::nullopt;
                    }}},
            {"lemma7",
                {[](const SuiteParams & p) -> Failure {
                     auto family = builtin_polynomials();
                     auto which = std::size_t(param(p, "poly", 0));
                     if (which >= family.size())
                         return fail("no such polynomial");
                     auto inst = normalize_hilbert(family[which].second);
                     auto [pi_s, pi_b] = build_pi(inst);
                     auto arena = build_arena(inst);
                     for (auto & v : box_valuations(1, inst.n_count, param(p, "box", 3))) {
                         auto d = build_correct_database(arena, inst, v);
                         auto s = count_of(pi_s, d), b = count_of(pi_b, d);
                         auto want_s = eval_poly(inst.p_s, v);
                         Natural want_b = pow_natural(v.at(1), inst.d) * eval_poly(inst.p_b, v);
                         if (s != want_s || b != want_b)
                             return fail("at " + show(v) + ": pi_s = " + s.get_str() + " (P_s " + want_s.get_str()
                                     + "), pi_b = " + b.get_str() + " (x1^d P_b " + want_b.get_str() + ")",
                                 &d);
                     }
                     return std::nullopt;
                 },
                    nullptr}},
            {"encoder",
                {[](const SuiteParams &) -> Failure {
                     auto out = assemble(tiny_instance());
                     auto c1 = Count::power(5, 21) * Count::power(3, 21);
                     if (out.constants.j != 5 || out.constants.k != 7 || out.constants.c1 != c1 || out.c != Count(3) * c1)
                         return fail("j = " + std::to_string(out.constants.j) + ", k = " + out.constants.k.get_str()
                             + ", c1 = " + out.constants.c1.to_string() + ", c = " + out.c.to_string());
                     return std::nullopt;
                 },
                    nullptr}},
            {"zeta_delta",
                {[](const SuiteParams &) -> Failure {
                     auto inst = tiny_instance();
                     auto out = assemble(inst);
                     auto arena = ArenaParts{out.arena_query, out.arena_db};
                     if (out.zeta_b.eval(out.arena_db) != out.constants.c1)
                         return fail("zeta_b(arena) = " + out.zeta_b.eval(out.arena_db).to_string());
                     if (! out.delta_b.eval(out.arena_db).is_one())
                         return fail("delta_b(arena) = " + out.delta_b.eval(out.arena_db).to_string());

                     auto correct = build_correct_database(arena, inst, {{1, 1}, {2, 1}});
                     auto slight = correct;
                     slight.add_fact(s_relation(1), {arena_hub, monomial_constant(1)});
                     if (classify_database(slight, inst, arena) != DbClassification::SlightlyIncorrect)
                         return fail("extra fact not classified slightly incorrect", &slight);
                     if (compare_counts(out.zeta_b.eval(slight), out.c) == std::strong_ordering::less)
                         return fail("zeta_b(slightly incorrect) = " + out.zeta_b.eval(slight).to_string() + " < c", &slight);

                     auto serious = alias_constants(correct, variable_constant(1), variable_constant(2));
                     if (classify_database(serious, inst, arena) != DbClassification::SeriouslyIncorrect)
                         return fail("aliased constants not classified seriously incorrect", &serious);
                     auto base = build_delta_base(inst).eval(serious);
                     if (compare_counts(base, Count(2)) == std::strong_ordering::less)
                         return fail("delta base on seriously incorrect = " + base.to_string(), &serious);
                     auto full = out.delta_b.eval(serious);
                     auto bound = Count(2).pow(*out.c.to_natural(1u << 20));
                     if (compare_counts(full, bound) == std::strong_ordering::less)
                         return fail("delta_b on seriously incorrect below 2^c", &serious);
                     return std::nullopt;
                 },
                    nullptr}},
            {"end_to_end",
                {[](const SuiteParams & p) -> Failure {
                     auto family = builtin_polynomials();
                     auto inst = normalize_hilbert(family[0].second);
                     auto out = assemble(inst);
                     auto arena = ArenaParts{out.arena_query, out.arena_db};
                     auto d = build_correct_database(arena, inst, {{1, 1}, {2, 1}});
                     auto lhs = out.c * out.phi_s.eval(d), rhs = out.phi_b.eval(d);
                     if (compare_counts(lhs, rhs) != std::strong_ordering::greater)
                         return fail("root valuation does not separate: c phi_s = " + lhs.to_string() + ", phi_b = "
                                 + rhs.to_string(),
                             &d);

                     auto rootless = normalize_hilbert(family[2].second);
                     auto out2 = assemble(rootless);
                     auto arena2 = ArenaParts{out2.arena_query, out2.arena_db};
                     for (auto & v : box_valuations(1, rootless.n_count, param(p, "box", 3))) {
                         auto d2 = build_correct_database(arena2, rootless, v);
                         if (compare_counts(out2.c * out2.phi_s.eval(d2), out2.phi_b.eval(d2)) == std::strong_ordering::greater)
                             return fail("rootless instance separated at " + show(v), &d2);
                     }
                     return std::nullopt;
                 },
                    nullptr}},
            {"appendixB",
                {[](const SuiteParams & p) -> Failure {
                     auto box = param(p, "box", 4);
                     for (auto & [name, q] : builtin_polynomials()) {
                         auto inst = normalize_hilbert(q);
                         auto problems = validate_instance(inst);
                         if (! problems.empty())
                             return fail(name + ": " + problems.front());
                         bool any_root = false, any_separation = false;
                         for (auto & v : box_valuations(2, q.num_vars, box)) {
                             bool root = eval_poly(q, v) == 0;
                             bool wins = eval_poly(inst.p1, v) > eval_poly(inst.p2, v);
                             if (root != wins)
                                 return fail(name + ": at " + show(v) + " root " + std::to_string(root)
                                     + " but P1 > P2 is " + std::to_string(wins));
                             auto w = v;
                             w[1] = 1;
                             bool separates = inst.c_frak * eval_poly(inst.p_s, w) > eval_poly(inst.p_b, w);
                             if (root && ! separates)
                                 return fail(name + ": root " + show(v) + " does not separate the final instance");
                             any_root = any_root || root;
                             any_separation = any_separation || separates;
                         }
                         if (any_root != any_separation)
                             return fail(name + ": roots and separations disagree in the box");
                     }
                     return std::nullopt;
                 },
                    nullptr}},
            {"lemma18",
                {[](const SuiteParams &) -> Failure {
                     Query q_s, q_b;
                     q_s.add_atom("R", {Term::var("x"), Term::var("y")});
                     q_s.add_inequality(Term::var("x"), Term::var("y"));
                     q_b.add_atom("S", {Term::var("z"), Term::var("z")});
                     Database d0;
                     d0.declare_relation("S", 2);
                     d0.add_fact("R", vector<string>{"1", "2"});
                     auto w = inequality_elimination_witness(q_s, q_b, d0);
                     auto s = count_of(q_s, w.database), b = count_of(q_b, w.database);
                     if (w.product_exponent != 1 || w.blowup_factor != 2 || s != 4 || b != 0)
                         return fail("crafted example: k = " + std::to_string(w.product_exponent) + ", q_s = " + s.get_str()
                                 + ", q_b = " + b.get_str(),
                             &w.database);
                     return std::nullopt;
                 },
                    [](const SuiteParams &, uint64_t seed) -> Failure {
                        auto rng = make_rng(seed);
                        auto schema = algebra_schema();
                        auto q = random_query(schema, 3, 3, 1, rng);
                        auto domain = 2 + below(rng, 2);
                        auto d = blowup(random_database(schema, domain, uniform01(rng), rng(), true), 2);
                        auto with = count_of(q, d), without = count_of(strip_inequalities(q), d);
                        if (2 * with < without)
                            return fail("2 * " + with.get_str() + " < " + without.get_str() + "\n" + serialize_query(q), &d);
                        return std::nullopt;
                    }}},
            {"oracle",
                {nullptr, [](const SuiteParams &, uint64_t seed) -> Failure {
                     auto rng = make_rng(seed);
                     auto schema = algebra_schema();
                     auto q = random_query(schema, 4, 4, int(below(rng, 3)), rng);
                     auto domain = 1 + below(rng, 4);
                     auto d = random_database(schema, domain, uniform01(rng), rng(), domain >= 2);
                     auto fast = count_of(q, d), slow = naive_count(q, d);
                     if (fast != slow)
                         return fail("engine " + fast.get_str() + ", naive " + slow.get_str() + "\n" + serialize_query(q), &d);
                     return std::nullopt;
                 }}},
        };
        return all;
    }
}

auto bagcq::suite_names() -> vector<string>
{
    vector<string> names;
    for (auto & [name, _] : suites())
        names.push_back(name);
    return names;
}

auto bagcq::run_suite(const string & name, const SuiteParams & params, unsigned long trials, uint64_t seed) -> SuiteReport
{
    auto it = suites().find(name);
    if (it == suites().end())
        throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");

    auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = name;

    auto record = [&](uint64_t s, std::function<Failure()> f) {
        try {
            if (auto failure = f())
                report.failures.push_back({s, failure->first, failure->second});
        }
        catch (const std::exception & e) {
            report.failures.push_back({s, string("exception: ") + e.what(), ""});
        }
    };

    if (it->second.setup) {
        ++report.trials;
        record(seed, [&] { return it->second.setup(params); });
    }
    if (it->second.trial)
        for (unsigned long t = 0; t < trials; ++t) {
            ++report.trials;
            record(seed + t, [&] { return it->second.trial(params, seed + t); });
        }

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}
