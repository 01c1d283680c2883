#include <bagcq/error.hh>
#include <bagcq/harness.hh>
#include <bagcq/polyreduce.hh>

#include <doctest.h>

using namespace bagcq;

namespace
{
    auto poly(int vars, std::vector<std::pair<long, std::vector<int>>> terms) -> Polynomial
    {
        std::map<OrderedMonomial, Integer> m;
        for (auto & [c, v] : terms)
            m[OrderedMonomial{v}] += c;
        return Polynomial::from_map(vars, m);
    }

    auto family(const std::string & name) -> Polynomial
    {
        for (auto & [n, p] : builtin_polynomials())
            if (n == name)
                return p;
        throw std::logic_error("no " + name);
    }
}

// expected values below were produced by tests/oracles/normalize_oracle.py

TEST_CASE("tiny instance")
{
    auto inst = normalize_hilbert(family("x2-1"));
    CHECK(inst.p1 == poly(2, {{2, {2}}, {1, {}}}));
    CHECK(inst.p2 == poly(2, {{1, {2, 2}}, {1, {}}}));
    CHECK(inst.p1_prime == poly(2, {{1, {2, 2}}, {3, {2}}, {2, {}}}));
    CHECK(inst.p2_prime == poly(2, {{2, {2, 2}}, {1, {2}}, {2, {}}}));
    CHECK(inst.d == 3);
    CHECK(inst.c_frak == 3);
    CHECK(inst.m_count == 3);
    CHECK(inst.n_count == 2);
    CHECK(inst.p_s == poly(2, {{1, {1, 2, 2}}, {3, {1, 1, 2}}, {2, {1, 1, 1}}}));
    CHECK(inst.p_b == poly(2, {{6, {1, 2, 2}}, {3, {1, 1, 2}}, {6, {1, 1, 1}}}));

    std::vector<Natural> cs{1, 3, 2}, cb{6, 3, 6};
    CHECK(inst.coefficients_s() == cs);
    CHECK(inst.coefficients_b() == cb);
    CHECK(inst.monomials()[0].vars == std::vector<int>{1, 2, 2});
    CHECK(validate_instance(inst).empty());

    CHECK(eval_poly(inst.p_s, {{1, 1}, {2, 1}}) == 6);
    CHECK(eval_poly(inst.p_b, {{1, 1}, {2, 1}}) == 15);
    CHECK(eval_poly(inst.p_s, {{1, 1}, {2, 2}}) == 12);
}

TEST_CASE("the rest of the builtin family")
{
    auto one = normalize_hilbert(family("1"));
    CHECK(one.d == 1);
    CHECK(one.c_frak == 2);
    CHECK(one.p_s == poly(1, {{2, {1}}}));
    CHECK(one.p_b == poly(1, {{4, {1}}}));

    auto lin = normalize_hilbert(family("2x2+1"));
    CHECK(lin.p1 == poly(2, {{1, {}}}));
    CHECK(lin.p2 == poly(2, {{4, {2, 2}}, {4, {2}}, {1, {}}}));
    CHECK(lin.d == 3);
    CHECK(lin.c_frak == 2);
    CHECK(lin.p_s == poly(2, {{2, {1, 1, 1}}, {1, {1, 1, 2}}, {1, {1, 2, 2}}}));
    CHECK(lin.p_b == poly(2, {{4, {1, 1, 1}}, {10, {1, 1, 2}}, {10, {1, 2, 2}}}));

    auto prod = normalize_hilbert(family("x2*x3-6"));
    CHECK(prod.p1 == poly(3, {{12, {2, 3}}, {1, {}}}));
    CHECK(prod.p2 == poly(3, {{1, {2, 2, 3, 3}}, {36, {}}}));
    CHECK(prod.d == 5);
    CHECK(prod.c_frak == 13);
    CHECK(prod.p_s == poly(3, {{2, {1, 1, 1, 1, 1}}, {13, {1, 1, 1, 2, 3}}, {1, {1, 2, 2, 3, 3}}}));
    CHECK(prod.p_b == poly(3, {{481, {1, 1, 1, 1, 1}}, {13, {1, 1, 1, 2, 3}}, {26, {1, 2, 2, 3, 3}}}));

    auto sq = normalize_hilbert(family("x2^2+1"));
    CHECK(sq.p2 == poly(2, {{1, {2, 2, 2, 2}}, {2, {2, 2}}, {1, {}}}));
    CHECK(sq.d == 5);
    CHECK(sq.c_frak == 2);
    CHECK(sq.p_b == poly(2, {{4, {1, 1, 1, 1, 1}}, {6, {1, 1, 1, 2, 2}}, {4, {1, 2, 2, 2, 2}}}));

    for (auto & [name, q] : builtin_polynomials()) {
        auto inst = normalize_hilbert(q);
        CHECK(validate_instance(inst).empty());
        for (auto & m : inst.monomials()) {
            CHECK(m.degree() == inst.d);
            CHECK(m.vars.front() == 1);
        }
    }
}

TEST_CASE("normalization is deterministic and rejects bad input")
{
    auto a = normalize_hilbert(family("x2*x3-6")), b = normalize_hilbert(family("x2*x3-6"));
    CHECK(a.p_s == b.p_s);
    CHECK(a.p_b == b.p_b);
    CHECK(a.position_rel == b.position_rel);
    CHECK_THROWS_AS(normalize_hilbert(poly(2, {})), Error);
    CHECK_THROWS_AS(normalize_hilbert(poly(2, {{1, {1}}})), Error);
}

TEST_CASE("validator reports violations")
{
    auto inst = normalize_hilbert(family("x2-1"));
    auto swapped = inst;
    swapped.p_s.terms[0].coefficient = 7;
    auto problems = validate_instance(swapped);
    REQUIRE_FALSE(problems.empty());
    CHECK(problems[0].starts_with("coefficient order"));

    auto wrong_lead = inst;
    wrong_lead.p_s.terms[0].monomial.vars = {2, 2, 2};
    wrong_lead.p_b.terms[0].monomial.vars = {2, 2, 2};
    bool first_variable = false;
    for (auto & p : validate_instance(wrong_lead))
        first_variable = first_variable || p.starts_with("first variable");
    CHECK(first_variable);
}

TEST_CASE("evaluation")
{
    auto p = poly(3, {{5, {}}, {2, {2, 3}}});
    CHECK(eval_poly(p, {{2, 0}, {3, 0}}) == 5);
    CHECK(eval_poly(p, {{2, 2}, {3, 3}}) == 17);
    CHECK_THROWS_AS(eval_poly(p, {{2, 1}}), Error);
}

TEST_CASE("boxed root search")
{
    auto r = find_root_bruteforce(family("x2-1"), 3);
    REQUIRE(r);
    CHECK(*r == Valuation{{2, 1}});
    CHECK_FALSE(find_root_bruteforce(family("x2^2+1"), 5));
    auto r2 = find_root_bruteforce(family("x2*x3-6"), 5);
    REQUIRE(r2);
    CHECK(*r2 == Valuation{{2, 2}, {3, 3}});
}

TEST_CASE("normalized pair separates roots on the family")
{
    for (auto & [name, q] : builtin_polynomials()) {
        auto inst = normalize_hilbert(q);
        std::vector<Valuation> box{{}};
        for (int i = 2; i <= q.num_vars; ++i) {
            std::vector<Valuation> next;
            for (auto & v : box)
                for (int x = 0; x <= 4; ++x) {
                    auto w = v;
                    w[i] = x;
                    next.push_back(w);
                }
            box = next;
        }
        for (auto & v : box)
            CHECK((eval_poly(q, v) == 0) == (eval_poly(inst.p1, v) > eval_poly(inst.p2, v)));
    }
}

TEST_CASE("printing")
{
    CHECK(normalize_hilbert(family("x2-1")).p_s.to_string() == "x1*x2^2 + 3*x1^2*x2 + 2*x1^3");
    CHECK(family("x2-1").to_string() == "x2 - 1");
}
