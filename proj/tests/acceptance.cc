#include <bagcq/encoder.hh>
#include <bagcq/gadgets.hh>
#include <bagcq/harness.hh>
#include <bagcq/homcount.hh>

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace bagcq;

namespace
{
    struct Outcome
    {
        bool ok = true;
        std::string detail;

        auto need(bool condition, const std::string & what) -> void
        {
            if (! condition && ok) {
                ok = false;
                detail = what;
            }
        }

        auto suite(const std::string & name, const SuiteParams & params, unsigned long trials, std::uint64_t seed) -> void
        {
            auto r = run_suite(name, params, trials, seed);
            if (! r.ok())
                need(false, name + " seed " + std::to_string(r.failures.front().seed) + ": " + r.failures.front().detail);
        }
    };

    auto natural(const Query & q, const Database & d) -> Natural
    {
        return *count_homomorphisms(q, d).to_natural();
    }

    auto tiny() -> HilbertInstance
    {
        return normalize_hilbert(builtin_polynomials().front().second);
    }
}

int main()
{
    std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
        {"beta witness equality",
            [](Outcome & o) {
                for (int n : {3, 5, 9}) {
                    auto g = build_beta(n);
                    auto w = beta_witness(n);
                    o.need(natural(g.q_s, w) == (n + 1) * (n + 1), "beta_s at n = " + std::to_string(n));
                    o.need(natural(g.q_b, w) == 2 * n, "beta_b at n = " + std::to_string(n));
                }
            }},
        {"beta inequality on 1000 databases", [](Outcome & o) { o.suite("beta", {{"n", 3}, {"domain", 4}}, 1000, 42); }},
        {"gamma witness and inequality",
            [](Outcome & o) {
                auto g = build_gamma(4);
                auto w = gamma_witness(4);
                o.need(natural(g.q_s, w) == 3 && natural(g.q_b, w) == 4, "gamma witness counts");
                o.suite("gamma", {{"m", 4}}, 1000, 42);
            }},
        {"alpha multiplies by c",
            [](Outcome & o) {
                for (long c : {2, 3}) {
                    auto g = build_alpha(int(c));
                    auto w = alpha_witness(int(c));
                    auto s = natural(g.q_s, w);
                    o.need(s != 0 && s == c * natural(g.q_b, w), "alpha witness at c = " + std::to_string(c));
                    o.suite("alpha", {{"c", c}}, 500, 11);
                }
            }},
        {"algebra identities",
            [](Outcome & o) {
                for (auto name : {"lemma1", "power", "blowup", "product"})
                    o.suite(name, {}, 500, 7);
            }},
        {"star queries: onto homomorphism and 1000 databases", [](Outcome & o) { o.suite("lemma4", {}, 1000, 5); }},
        {"correct databases evaluate the polynomials", [](Outcome & o) { o.suite("lemma7", {{"poly", 0}, {"box", 3}}, 0, 1); }},
        {"encoder constants",
            [](Outcome & o) {
                auto out = assemble(tiny());
                o.need(out.constants.j == 5, "j");
                o.need(out.constants.k == 7, "k");
                o.need(out.constants.c1 == Count::power(5, 21) * Count::power(3, 21), "c1 = " + out.constants.c1.to_string());
                o.need(out.c == Count(3) * out.constants.c1, "c = " + out.c.to_string());
                o.suite("encoder", {}, 0, 1);
            }},
        {"zeta and delta bounds", [](Outcome & o) { o.suite("zeta_delta", {}, 0, 1); }},
        {"end to end separation", [](Outcome & o) { o.suite("end_to_end", {{"box", 3}}, 0, 1); }},
        {"normalization equivalence on the builtin family", [](Outcome & o) { o.suite("appendixB", {{"box", 4}}, 0, 1); }},
        {"inequality elimination transform", [](Outcome & o) { o.suite("lemma18", {}, 200, 3); }},
        {"engine matches naive enumeration", [](Outcome & o) { o.suite("oracle", {}, 2000, 13); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        }
        catch (const std::exception & e) {
            o.need(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += ! o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << secs << " s)";
        if (! o.ok)
            std::cout << " -- " << o.detail;
        std::cout << "\n";
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
