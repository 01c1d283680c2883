#include <bagcq/encoder.hh>
#include <bagcq/error.hh>
#include <bagcq/harness.hh>
#include <bagcq/homcount.hh>

#include <doctest.h>

using namespace bagcq;

namespace
{
    auto tiny() -> HilbertInstance
    {
        return normalize_hilbert(builtin_polynomials().front().second);
    }

    auto natural(const Query & q, const Database & d) -> Natural
    {
        return *count_homomorphisms(q, d).to_natural();
    }
}

TEST_CASE("star queries")
{
    auto [pi_s, pi_b] = build_pi(tiny());
    CHECK(pi_s.atoms().size() == 12);
    CHECK(pi_b.atoms().size() == 27);
    CHECK(pi_s.inequalities().empty());
    CHECK(pi_b.inequalities().empty());
    CHECK(pi_s.schema().arity(valuation_relation) == 2);
    auto onto = exists_onto_homomorphism(pi_b, pi_s);
    REQUIRE(onto);
    CHECK(onto->at("x") == "x");
}

TEST_CASE("arena")
{
    auto inst = tiny();
    auto arena = build_arena(inst);
    CHECK(arena.query.variables().empty());
    auto & d = arena.database;
    for (int m = 1; m <= 3; ++m)
        CHECK(d.facts(s_relation(m)).size() == 5);
    for (int k = 1; k <= 3; ++k)
        CHECK(d.facts(r_relation(k)).size() == 3);
    CHECK(d.facts(cycle_relation).size() == 8);
    CHECK(d.facts(valuation_relation).empty());
    CHECK(is_nontrivial(d));
    CHECK(d.size() == 8);
    CHECK(count_homomorphisms(arena.query, d).is_one());
}

TEST_CASE("encoder constants")
{
    auto out = assemble(tiny());
    CHECK(out.constants.j == 5);
    CHECK(out.constants.k == 7);
    CHECK(out.constants.l_len == 7);
    CHECK(out.constants.cycle_lengths == std::set<int>{1, 2, 3, 4, 5, 6, 8});
    CHECK(out.constants.c1.to_string() == "3^21*5^21");
    CHECK(out.c.to_string() == "3^22*5^21");
    CHECK(out.phi_s.kind() == QueryExpr::Kind::DisjointAnd);
    CHECK(out.phi_b.children().size() == 3);
    CHECK(out.delta_b.kind() == QueryExpr::Kind::Power);
    CHECK(Count(out.delta_b.exponent()) == out.c);
    CHECK_FALSE(out.phi_s.has_inequalities());
    CHECK_FALSE(out.phi_b.has_inequalities());
}

TEST_CASE("cycles")
{
    auto q = cycle_query(3);
    CHECK(q.atoms().size() == 3);
    CHECK(q.variables().size() == 3);
    CHECK_THROWS_AS(cycle_query(0), Error);
    auto arena = build_arena(tiny());
    CHECK(natural(cycle_query(7), arena.database) == 8);
    CHECK(natural(cycle_query(6), arena.database) == 1);
    CHECK(natural(cycle_query(14), arena.database) == 8);
}

TEST_CASE("zeta and delta on the arena")
{
    auto out = assemble(tiny());
    CHECK(out.zeta_b.eval(out.arena_db) == out.constants.c1);
    CHECK(out.delta_b.eval(out.arena_db).is_one());
}

TEST_CASE("correct databases follow the polynomials")
{
    auto inst = tiny();
    auto [pi_s, pi_b] = build_pi(inst);
    auto d = build_correct_database(inst, {{1, 1}, {2, 2}});
    CHECK(natural(pi_s, d) == 12);
    CHECK(natural(pi_b, d) == 36);
    CHECK(d.facts(valuation_relation).size() == 3);
    CHECK(classify_database(d, inst) == DbClassification::Correct);
    CHECK(extract_valuation(d, inst) == Valuation{{1, 1}, {2, 2}});
    CHECK_THROWS_AS(build_correct_database(inst, {{1, 1}}), Error);

    auto out = assemble(inst);
    CHECK(out.phi_s.eval(d) == Count(12));
    CHECK(out.phi_b.eval(d) == Count(36) * out.constants.c1);
    CHECK(out.c * out.phi_s.eval(d) == out.phi_b.eval(d));

    auto root = build_correct_database(inst, {{1, 1}, {2, 1}});
    CHECK(compare_counts(out.c * out.phi_s.eval(root), out.phi_b.eval(root)) == std::strong_ordering::greater);
}

TEST_CASE("classification")
{
    auto inst = tiny();
    auto arena = build_arena(inst);
    auto correct = build_correct_database(arena, inst, {{1, 1}, {2, 1}});

    auto slight = correct;
    slight.add_fact(s_relation(1), std::vector<std::string>{arena_hub, monomial_constant(1)});
    CHECK(classify_database(slight, inst, arena) == DbClassification::SlightlyIncorrect);

    auto serious = alias_constants(correct, monomial_constant(1), monomial_constant(2));
    CHECK(classify_database(serious, inst, arena) == DbClassification::SeriouslyIncorrect);
    CHECK(is_nontrivial(serious));

    Database missing{correct.schema()};
    for (auto & n : correct.element_names())
        missing.add_element(n);
    for (auto & [c, e] : correct.const_interp())
        missing.interpret(c, e);
    for (auto & [rel, facts] : correct.all_facts())
        for (auto & t : facts)
            if (rel != cycle_relation || t[0] != t[1])
                missing.add_fact(rel, t);
    CHECK(classify_database(missing, inst, arena) == DbClassification::NotModel);
    CHECK_THROWS_AS(extract_valuation(missing, inst), Error);
    CHECK(classification_name(DbClassification::SlightlyIncorrect) == "slightly_incorrect");
}

TEST_CASE("valuation extraction counts successors")
{
    auto inst = tiny();
    auto d = build_arena(inst).database;
    auto b1 = *d.interpretation(variable_constant(1)), b2 = *d.interpretation(variable_constant(2));
    auto e = d.add_element("e"), f = d.add_element("f");
    d.add_fact(valuation_relation, Tuple{b1, e});
    d.add_fact(valuation_relation, Tuple{b1, f});
    d.add_fact(valuation_relation, Tuple{b2, e});
    CHECK(extract_valuation(d, inst) == Valuation{{1, 2}, {2, 1}});
}

TEST_CASE("incorrect databases are punished")
{
    auto inst = tiny();
    auto out = assemble(inst);
    auto arena = ArenaParts{out.arena_query, out.arena_db};
    auto correct = build_correct_database(arena, inst, {{1, 1}, {2, 1}});

    auto slight = correct;
    slight.add_fact(r_relation(2), std::vector<std::string>{arena_hub, monomial_constant(3)});
    CHECK(compare_counts(out.zeta_b.eval(slight), out.c) != std::strong_ordering::less);

    auto serious = alias_constants(correct, variable_constant(1), variable_constant(2));
    CHECK(compare_counts(build_delta_base(inst).eval(serious), Count(2)) != std::strong_ordering::less);
    CHECK(compare_counts(out.delta_b.eval(serious), Count(2).pow(*out.c.to_natural(1u << 20)))
        != std::strong_ordering::less);
}

TEST_CASE("star inequality on random databases")
{
    auto [pi_s, pi_b] = build_pi(tiny());
    auto schema = Schema::merge(pi_s.schema(), pi_b.schema());
    int nonzero = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto rng = make_rng(seed);
        auto domain = 1 + seed % 4;
        auto d = random_database(schema, domain, 0.2 + 0.8 * uniform01(rng), rng(), false);
        auto s = natural(pi_s, d);
        CHECK(s <= natural(pi_b, d));
        nonzero += s != 0;
    }
    CHECK(nonzero > 50);
}
