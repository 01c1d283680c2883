#ifndef BAGCQ_ENCODER_HH
#define BAGCQ_ENCODER_HH

#include <bagcq/count.hh>
#include <bagcq/polyreduce.hh>
#include <bagcq/qalgebra.hh>
#include <bagcq/relcore.hh>

#include <map>
#include <set>
#include <string>
#include <utility>

namespace bagcq
{
    inline const std::string arena_hub = "a";
    inline const std::string cycle_relation = "E";
    inline const std::string valuation_relation = "X";

    auto s_relation(int m) -> std::string;
    auto r_relation(int d) -> std::string;
    auto monomial_constant(int m) -> std::string;
    auto variable_constant(int n) -> std::string;

    struct EncoderConstants
    {
        Natural k;
        Count c1;
        int l_len = 0;
        std::set<int> cycle_lengths;
        std::map<std::string, unsigned long> j_per_relation;
        unsigned long j = 0;
    };

    struct ArenaParts
    {
        Query query;
        Database database;
    };

    struct ZetaParts
    {
        QueryExpr zeta_b;
        Natural k;
        Count c1;
    };

    struct EncoderOutput
    {
        Count c;
        QueryExpr phi_s, phi_b;
        Query arena_query;
        Database arena_db;
        EncoderConstants constants;

        Query pi_s, pi_b;
        QueryExpr zeta_b, delta_b;
    };

    enum class DbClassification
    {
        NotModel,
        Correct,
        SlightlyIncorrect,
        SeriouslyIncorrect
    };

    auto classification_name(DbClassification) -> std::string;

    /// The two star queries; S_m-rays carry c - 1 edges beyond the loop at x.
    auto build_pi(const HilbertInstance & inst) -> std::pair<Query, Query>;

    /// Arena_pi and Arena_delta as one ground query, with X declared (but
    /// unused) so that the canonical structure lives over the full schema.
    auto build_arena(const HilbertInstance & inst) -> ArenaParts;

    auto build_zeta(const HilbertInstance & inst, const ArenaParts & arena) -> ZetaParts;

    auto cycle_query(int length) -> Query;
    auto cycle_lengths(const HilbertInstance & inst) -> std::set<int>;

    /// The conjunction of cycle queries over L, before raising to c.
    auto build_delta_base(const HilbertInstance & inst) -> QueryExpr;
    auto build_delta(const HilbertInstance & inst, const Count & c) -> QueryExpr;

    auto assemble(const HilbertInstance & inst) -> EncoderOutput;

    /// The arena database plus v(n) fresh X-successors e<n>_<i> of each b_n.
    auto build_correct_database(const HilbertInstance & inst, const Valuation & v) -> Database;
    auto build_correct_database(const ArenaParts & arena, const HilbertInstance & inst, const Valuation & v) -> Database;

    auto extract_valuation(const Database & d, const HilbertInstance & inst) -> Valuation;

    auto classify_database(const Database & d, const HilbertInstance & inst) -> DbClassification;
    auto classify_database(const Database & d, const HilbertInstance & inst, const ArenaParts & arena) -> DbClassification;

    /// Sends constant `from` to the element of constant `into`, rewriting
    /// facts; the orphaned element stays, without facts.
    auto alias_constants(const Database & d, const std::string & into, const std::string & from) -> Database;
}

#endif
