#include <bagcq/encoder.hh>
#include <bagcq/error.hh>
#include <bagcq/gadgets.hh>
#include <bagcq/harness.hh>
#include <bagcq/homcount.hh>

#include <doctest.h>

using namespace bagcq;

namespace
{
    auto v(const char * n) -> Term { return Term::var(n); }

    auto two_facts() -> Database
    {
        Database d;
        d.add_fact("R", std::vector<std::string>{"1", "2"});
        d.add_fact("R", std::vector<std::string>{"1", "3"});
        return d;
    }
}

TEST_CASE("counting simple queries")
{
    Query q;
    q.add_atom("R", {v("x"), v("y")});
    CHECK(count_homomorphisms(q, two_facts()) == Count(2));

    Database four;
    for (auto n : {"a", "b", "c", "d"})
        four.add_element(n);
    Query atomless;
    atomless.declare_relation("R", 2);
    CHECK(count_homomorphisms(atomless, four) == Count(1));
}

TEST_CASE("atomless query with three variables")
{
    Database four;
    for (auto n : {"a", "b", "c", "d"})
        four.add_element(n);
    Query q;
    q.add_variable("x").add_variable("y").add_variable("z");
    CHECK(count_homomorphisms(q, four) == Count(64));

    q.add_inequality(Term::var("x"), Term::var("y"));
    q.add_inequality(Term::var("y"), Term::var("z"));
    q.add_inequality(Term::var("x"), Term::var("z"));
    CHECK(count_homomorphisms(q, four) == Count(24));
    CHECK(count_homomorphisms(strip_inequalities(q), four) == Count(64));
    CHECK(naive_count(q, four) == 24);
}

TEST_CASE("beta witness counts")
{
    auto g = build_beta(3);
    auto w = beta_witness(3);
    CHECK(count_homomorphisms(g.q_s, w) == Count(16));
    CHECK(count_homomorphisms(g.q_b, w) == Count(6));
}

TEST_CASE("enumeration")
{
    Query q;
    q.add_atom("R", {v("x"), v("y")});
    Database d;
    d.add_fact("R", std::vector<std::string>{"1", "2"});
    auto hs = enumerate_homomorphisms(q, d, 10);
    REQUIRE(hs.size() == 1);
    CHECK(hs[0].at("x") == *d.element_id("1"));
    CHECK(hs[0].at("y") == *d.element_id("2"));

    Database loop;
    loop.add_fact("R", std::vector<std::string>{"1", "1"});
    q.add_inequality(v("x"), v("y"));
    CHECK(enumerate_homomorphisms(q, loop, 10).empty());

    auto arena = build_arena(normalize_hilbert(builtin_polynomials().front().second));
    auto only = enumerate_homomorphisms(cycle_query(1), arena.database, 10);
    REQUIRE(only.size() == 1);
    CHECK(only[0].at("z1") == *arena.database.interpretation(mars));

    CHECK(enumerate_homomorphisms(cycle_query(2), arena.database, 1).size() == 1);
}

TEST_CASE("errors")
{
    Query q;
    q.add_atom("S", {v("x")});
    CHECK_THROWS_AS(count_homomorphisms(q, two_facts()), Error);

    Query r;
    r.add_atom("R", {v("x"), Term::constant("k")});
    try {
        count_homomorphisms(r, two_facts());
        FAIL("expected an error");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::UninterpretedConstant);
    }
}

TEST_CASE("ground queries")
{
    Database d;
    d.interpret("mars", d.add_element("m"));
    d.interpret("venus", d.add_element("w"));
    d.add_fact("E", std::vector<std::string>{"m", "m"});
    Query yes, no;
    yes.add_atom("E", {Term::constant("mars"), Term::constant("mars")});
    no.add_atom("E", {Term::constant("mars"), Term::constant("venus")});
    CHECK(count_homomorphisms(yes, d) == Count(1));
    CHECK(count_homomorphisms(no, d).is_zero());
    yes.add_inequality(Term::constant("mars"), Term::constant("venus"));
    CHECK(count_homomorphisms(yes, d) == Count(1));
}

TEST_CASE("onto homomorphisms")
{
    Query q;
    q.add_atom("R", {v("x"), v("y")});
    q.add_atom("R", {v("y"), v("z")});
    auto id = exists_onto_homomorphism(q, q);
    REQUIRE(id);
    CHECK(id->at("x") == "x");

    Query s;
    s.add_atom("S", {v("x"), v("y")});
    Query r;
    r.add_atom("R", {v("x"), v("y")});
    CHECK_FALSE(exists_onto_homomorphism(r, s));

    auto [pi_s, pi_b] = build_pi(normalize_hilbert(builtin_polynomials().front().second));
    auto h = exists_onto_homomorphism(pi_b, pi_s);
    REQUIRE(h);
    CHECK(h->at("y'2") == "y1");
    CHECK(h->at("z'3") == "z1");

    Query ne = r;
    ne.add_inequality(v("x"), v("y"));
    CHECK_THROWS_AS(exists_onto_homomorphism(ne, r), Error);
}

TEST_CASE("engine agrees with brute force")
{
    Schema schema;
    schema.add_relation("R", 2).add_relation("U", 1).add_relation("T", 3);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto rng = make_rng(seed);
        auto q = random_query(schema, 4, 4, int(seed % 3), rng);
        auto d = random_database(schema, 1 + seed % 4, uniform01(rng), seed, seed % 4 != 0);
        CHECK(count_homomorphisms(q, d) == Count(naive_count(q, d)));
    }
}

TEST_CASE("star and path queries stay polynomial")
{
    Query star;
    for (int i = 0; i < 40; ++i)
        star.add_atom("R", {v("c"), Term::var("l" + std::to_string(i))});
    Query path;
    for (int i = 0; i < 40; ++i)
        path.add_atom("R", {Term::var("p" + std::to_string(i)), Term::var("p" + std::to_string(i + 1))});
    auto d = random_database([] {
        Schema s;
        s.add_relation("R", 2);
        return s;
    }(),
        6, 0.5, 9, true);
    bool both_zero = count_homomorphisms(star, d).is_zero() && count_homomorphisms(path, d).is_zero();
    CHECK_FALSE(both_zero);
    CHECK(count_homomorphisms(star, d) == count_homomorphisms(star, d));
}
