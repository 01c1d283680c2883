#ifndef BAGCQ_HARNESS_HH
#define BAGCQ_HARNESS_HH

#include <bagcq/count.hh>
#include <bagcq/polyreduce.hh>
#include <bagcq/qalgebra.hh>
#include <bagcq/relcore.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace bagcq
{
    using Rng = std::mt19937_64;

    auto make_rng(std::uint64_t seed) -> Rng;

    /// Uniform in [0, 1), computed from the top 53 bits.
    auto uniform01(Rng & rng) -> double;

    /// Elements e0..e<n-1>; every fact over the schema is included with
    /// probability density. When nontrivial, mars is e0 and venus is e1;
    /// every other constant goes to a random element.
    auto random_database(const Schema & schema, std::size_t domain_size, double density, std::uint64_t seed,
        bool nontrivial) -> Database;

    /// Variables x1..x<max_vars>, 1..max_atoms atoms over the schema's
    /// relations, constants used with probability 1/10, and the given number
    /// of inequalities between distinct terms of the atoms.
    auto random_query(const Schema & schema, int max_vars, int max_atoms, int inequalities, Rng & rng) -> Query;

    /// Reference counter: tries all |V|^|Var| assignments.
    auto naive_count(const Query & q, const Database & d) -> Natural;

    /// The fixed test family {x2 - 1, 1, 2 x2 + 1, x2 x3 - 6, x2^2 + 1}.
    auto builtin_polynomials() -> std::vector<std::pair<std::string, Polynomial>>;

    enum class SearchMode
    {
        Exhaustive,
        Random
    };

    struct SearchConfig
    {
        std::size_t max_domain = 3;
        std::size_t max_facts_per_relation = 64;
        unsigned long trials = 200;
        std::uint64_t seed = 1;
        SearchMode mode = SearchMode::Random;
        unsigned long max_states = 1u << 16;
        /// Random mode also tries these, unchanged and with a few random
        /// fact edits, on every other trial.
        std::vector<Database> seeds;
    };

    /// A non-trivial D with lhs phi_s(D) > rhs phi_b(D), greedily shrunk by
    /// single-fact removal; none when the budget runs out.
    auto search_counterexample(const Count & lhs, const QueryExpr & phi_s, const QueryExpr & phi_b,
        const SearchConfig & cfg, const Count & rhs = Count{1}) -> std::optional<Database>;

    struct SuiteFailure
    {
        std::uint64_t seed;
        std::string detail;
        std::string witness;
    };

    struct SuiteReport
    {
        std::string suite;
        unsigned long trials = 0;
        std::vector<SuiteFailure> failures;
        double wall_seconds = 0;

        auto ok() const -> bool { return failures.empty(); }
    };

    using SuiteParams = std::map<std::string, long>;

    auto suite_names() -> std::vector<std::string>;

    /// Trial i runs with seed + i, so a failure replays as
    /// run_suite(name, params, 1, failure.seed).
    auto run_suite(const std::string & name, const SuiteParams & params, unsigned long trials, std::uint64_t seed)
        -> SuiteReport;
}

#endif
