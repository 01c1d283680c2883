#ifndef BAGCQ_GADGETS_HH
#define BAGCQ_GADGETS_HH

#include <bagcq/count.hh>
#include <bagcq/relcore.hh>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bagcq
{
    inline const std::string beta_relation = "R_beta";
    inline const std::string gamma_relation = "P_gamma";
    inline const std::string gamma_unary_a = "A";
    inline const std::string gamma_unary_b = "B";

    /// A query pair that should multiply by `multiplier`: q_s(D) <= m q_b(D)
    /// on every non-trivial D, with equality (nonzero) on some witness.
    struct GadgetPair
    {
        Query q_s, q_b;
        Rational multiplier;
        Schema schema;
    };

    enum class CycliqueKind
    {
        Homogeneous,
        Degenerate,
        Normal
    };

    struct CycliqueClass
    {
        Tuple representative; // lexicographically least member
        std::set<Tuple> members;
        CycliqueKind kind;
    };

    /// All cyclic shifts of (head, tail...) as atoms of `relation`, whose
    /// arity is 1 + |tail| and at least 3.
    auto build_cycliq(int arity, const Term & head, const std::vector<Term> & tail,
        const std::string & relation = beta_relation) -> Query;

    /// build_cycliq over `relation` plus unary(t) for every argument.
    auto build_cycliq_unary(const std::string & relation, const std::string & unary, const std::vector<Term> & args) -> Query;

    auto build_beta(int n) -> GadgetPair;
    auto beta_witness(int n) -> Database;

    struct GammaParts
    {
        Query s_prime, s_second, b_prime, b_second;
    };

    auto build_gamma_parts(int m) -> GammaParts;
    auto build_gamma(int m) -> GadgetPair;
    auto gamma_witness(int m) -> Database;

    /// beta(2c-1) disjointly conjoined with gamma(2c); multiplies by c.
    /// c = 1 gives the pair of empty queries.
    auto build_alpha(int c) -> GadgetPair;
    auto alpha_witness(int c) -> Database;

    /// Tuples all of whose cyclic shifts are facts of `relation` (and whose
    /// elements all satisfy `filter`, when given), grouped by shift-equivalence.
    auto classify_cycliques(const Database & d, const std::string & relation,
        const std::optional<std::string> & filter = std::nullopt) -> std::vector<CycliqueClass>;
}

#endif
