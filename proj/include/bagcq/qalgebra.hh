#ifndef BAGCQ_QALGEBRA_HH
#define BAGCQ_QALGEBRA_HH

#include <bagcq/count.hh>
#include <bagcq/homcount.hh>
#include <bagcq/relcore.hh>

#include <memory>
#include <vector>

namespace bagcq
{
    /// Expression over conjunctive queries with disjoint conjunction and
    /// power nodes. Evaluation multiplies and exponentiates counts, so a
    /// Power with an astronomically large exponent is never materialized.
    class QueryExpr
    {
    public:
        enum class Kind
        {
            Leaf,
            DisjointAnd,
            Power
        };

    private:
        struct Node;
        std::shared_ptr<const Node> _node;

        explicit QueryExpr(std::shared_ptr<const Node> n);

    public:
        static auto leaf(Query q) -> QueryExpr;
        static auto disjoint_and(std::vector<QueryExpr> children) -> QueryExpr;
        static auto power(QueryExpr base, Natural exponent) -> QueryExpr;

        auto kind() const -> Kind;
        auto query() const -> const Query &;                     // Leaf only
        auto children() const -> const std::vector<QueryExpr> &; // DisjointAnd; Power has one child
        auto exponent() const -> const Natural &;                // Power only

        /// Merged schema of all leaves.
        auto schema() const -> Schema;
        auto has_inequalities() const -> bool;

        auto eval(const HomCounter & counter) const -> Count;
        auto eval(const Database & d) const -> Count;

        /// Number of variables the flattened query would have.
        auto materialized_variable_count() const -> Natural;

        /// The single query this expression denotes; refused when it would
        /// have more than cap variables.
        auto flatten(unsigned long cap = 10000) const -> Query;

        friend auto operator==(const QueryExpr & a, const QueryExpr & b) -> bool;
    };

    auto operator==(const QueryExpr & a, const QueryExpr & b) -> bool;

    /// Shared-variable conjunction: atoms and inequalities unioned, equal
    /// variable names identified.
    auto conjoin_shared(const Query & q1, const Query & q2) -> Query;

    /// Disjoint conjunction: q2's variables get the smallest suffix "·i" that
    /// makes them fresh with respect to q1; constants are shared.
    auto conjoin_disjoint(const Query & q1, const Query & q2) -> Query;

    auto power(const QueryExpr & e, const Natural & k) -> QueryExpr;

    /// Copies (s, 1..k) of every element, named "s#i"; a fact holds on copies
    /// iff it holds on the originals. Constants go to copy 1.
    auto blowup(const Database & d, unsigned long k) -> Database;

    /// Tensor product; elements named "[s;t]", constants paired.
    auto product(const Database & d1, const Database & d2) -> Database;

    /// d × d × ... × d (k factors); k >= 1.
    auto power_product(const Database & d, unsigned long k) -> Database;

    auto strip_inequalities(const Query & q) -> Query;

    struct InequalityWitness
    {
        Database database;
        unsigned long product_exponent = 0; // the k in blowup(d0^k, 2n)
        unsigned long blowup_factor = 0;    // 2n, or 0 when nothing was done
    };

    /// Given q_s (with n >= 1 inequalities) and inequality-free q_b with
    /// strip(q_s)(d0) > q_b(d0), finds the least k with
    /// strip(q_s)(d0^k) > (2n)^(j+1) q_b(d0^k), j = |Var(q_b)|, and returns
    /// blowup(d0^k, 2n), on which q_s beats q_b.
    auto inequality_elimination_witness(const Query & q_s, const Query & q_b, const Database & d0,
        unsigned long k_cap = 16) -> InequalityWitness;
}

#endif
