#include <bagcq/error.hh>
#include <bagcq/gadgets.hh>
#include <bagcq/qalgebra.hh>
#include <bagcq/relcore.hh>

#include <doctest.h>

using namespace bagcq;

namespace
{
    auto v(const char * n) -> Term { return Term::var(n); }
    auto c(const char * n) -> Term { return Term::constant(n); }
}

TEST_CASE("schema keeps arities and the two distinguished constants")
{
    Schema s;
    CHECK(s.has_constant(mars));
    CHECK(s.has_constant(venus));
    s.add_relation("R", 2);
    CHECK(s.arity("R") == 2);
    CHECK_FALSE(s.arity("S"));
    CHECK_THROWS_AS(s.add_relation("R", 3), Error);
    CHECK_THROWS_AS(s.add_relation("Z", 0), Error);

    Schema t;
    t.add_relation("S", 1);
    auto m = Schema::merge(s, t);
    CHECK(m.arity("R") == 2);
    CHECK(m.arity("S") == 1);
}

TEST_CASE("query arity is enforced and atoms are deduplicated")
{
    Query q;
    q.add_atom("R", {v("x"), v("y")});
    q.add_atom("R", {v("x"), v("y")});
    CHECK(q.atoms().size() == 1);
    CHECK_THROWS_AS(q.add_atom("R", {v("x")}), Error);
    q.add_inequality(v("y"), v("x"));
    REQUIRE(q.inequalities().size() == 1);
    CHECK(q.inequalities()[0].lhs == v("x"));
    CHECK(q.variables() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("canonical structure of a one-atom query")
{
    Query q;
    q.add_atom("R", {v("x"), v("y")});
    auto d = canonical_structure(q);
    CHECK(d.size() == 2);
    CHECK(d.has_fact("R", {*d.element_id("x"), *d.element_id("y")}));
    CHECK(d.fact_count() == 1);

    q.add_inequality(v("x"), v("y"));
    CHECK(canonical_structure(q) == d);
}

TEST_CASE("canonical structure of the beta witness query")
{
    auto q = conjoin_shared(build_cycliq(3, c("venus"), {c("venus"), c("venus")}),
        build_cycliq(3, c("mars"), {c("venus"), c("venus")}));
    auto d = canonical_structure(q);
    CHECK(d.size() == 2);
    CHECK(d.fact_count() == 4);
    auto m = *d.interpretation(mars), w = *d.interpretation(venus);
    CHECK(d.has_fact(beta_relation, {w, w, w}));
    CHECK(d.has_fact(beta_relation, {m, w, w}));
    CHECK(d.has_fact(beta_relation, {w, w, m}));
    CHECK(d.has_fact(beta_relation, {w, m, w}));
    CHECK(is_nontrivial(d));
}

TEST_CASE("variables clashing with constant names get fresh elements")
{
    Query q;
    q.add_atom("R", {v("a"), c("a")});
    auto d = canonical_structure(q);
    CHECK(d.size() == 2);
    CHECK(d.element_id("a'"));
}

TEST_CASE("non-triviality")
{
    Database d;
    auto e1 = d.add_element("e1"), e2 = d.add_element("e2");
    CHECK_THROWS_AS(is_nontrivial(d), Error);
    d.interpret("mars", e1).interpret("venus", e2);
    CHECK(is_nontrivial(d));
    d.interpret("venus", e1);
    CHECK_FALSE(is_nontrivial(d));
}

TEST_CASE("database facts, removal and union")
{
    Database a;
    a.add_fact("R", std::vector<std::string>{"p", "q"});
    CHECK(a.fact_count() == 1);
    CHECK_THROWS_AS(a.add_fact("R", Tuple{0}), Error);
    CHECK_THROWS_AS(a.add_fact("R", Tuple{0, 7}), Error);

    Database b;
    b.add_fact("R", std::vector<std::string>{"q", "r"});
    b.interpret("k", *b.element_id("q"));
    auto u = database_union(a, b);
    CHECK(u.size() == 3);
    CHECK(u.fact_count() == 2);
    CHECK(u.interpretation("k") == u.element_id("q"));

    Database clash;
    clash.interpret("k", clash.add_element("r"));
    CHECK_THROWS_AS(database_union(b, clash), Error);

    CHECK(a.remove_fact("R", {0, 1}));
    CHECK_FALSE(a.remove_fact("R", {0, 1}));
    CHECK(a.fact_count() == 0);
    CHECK(a.all_facts().empty());
}
