#ifndef BAGCQ_RELCORE_HH
#define BAGCQ_RELCORE_HH

#include <bagcq/error.hh>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bagcq
{
    inline constexpr std::string_view mars = "mars";
    inline constexpr std::string_view venus = "venus";

    /// Relation symbols with arities, plus constant symbols. Every schema
    /// knows mars and venus.
    class Schema
    {
    private:
        std::map<std::string, int, std::less<>> _relations;
        std::set<std::string, std::less<>> _constants;

    public:
        Schema();

        auto add_relation(const std::string & name, int arity) -> Schema &;
        auto add_constant(const std::string & name) -> Schema &;

        auto arity(std::string_view relation) const -> std::optional<int>;
        auto has_constant(std::string_view name) const -> bool;

        auto relations() const -> const std::map<std::string, int, std::less<>> & { return _relations; }
        auto constants() const -> const std::set<std::string, std::less<>> & { return _constants; }

        /// Union of two schemas; a relation declared with two different arities
        /// is a schema mismatch.
        static auto merge(const Schema & a, const Schema & b) -> Schema;

        auto operator==(const Schema &) const -> bool = default;
    };

    struct Term
    {
        enum class Kind
        {
            Variable,
            Constant
        };

        Kind kind = Kind::Variable;
        std::string name;

        static auto var(std::string n) -> Term { return Term{Kind::Variable, std::move(n)}; }
        static auto constant(std::string n) -> Term { return Term{Kind::Constant, std::move(n)}; }

        auto is_variable() const -> bool { return kind == Kind::Variable; }
        auto is_constant() const -> bool { return kind == Kind::Constant; }

        auto operator<=>(const Term &) const = default;
    };

    struct Atom
    {
        std::string relation;
        std::vector<Term> args;

        auto operator<=>(const Atom &) const = default;
    };

    /// Unordered pair; stored with lhs <= rhs.
    struct Inequality
    {
        Term lhs, rhs;

        Inequality() = default;
        Inequality(Term a, Term b);

        auto operator<=>(const Inequality &) const = default;
    };

    /// A conjunctive query with inequalities. Atoms and inequalities are kept
    /// duplicate-free in insertion order, so a query is also its own canonical
    /// structure description.
    class Query
    {
    private:
        Schema _schema;
        std::vector<Atom> _atoms;
        std::vector<Inequality> _inequalities;
        std::vector<std::string> _free_variables;

        auto check_term(const Term &) -> void;

    public:
        Query() = default;
        explicit Query(Schema s);
        Query(Schema s, const std::vector<Atom> & atoms, const std::vector<Inequality> & inequalities = {});

        /// Adds an atom. If the relation is unknown to the schema it is
        /// declared with the atom's arity; a constant unknown to the schema is
        /// declared too.
        auto add_atom(Atom a) -> Query &;
        auto add_atom(const std::string & relation, std::vector<Term> args) -> Query &;
        auto add_inequality(Term a, Term b) -> Query &;
        auto declare_relation(const std::string & name, int arity) -> Query &;
        /// A variable that need not occur in any atom or inequality.
        auto add_variable(const std::string & name) -> Query &;

        auto schema() const -> const Schema & { return _schema; }
        auto free_variables() const -> const std::vector<std::string> & { return _free_variables; }
        auto atoms() const -> const std::vector<Atom> & { return _atoms; }
        auto inequalities() const -> const std::vector<Inequality> & { return _inequalities; }

        /// Var(q), sorted.
        auto variables() const -> std::vector<std::string>;
        /// Constants occurring in atoms or inequalities, sorted.
        auto constants_used() const -> std::vector<std::string>;

        auto operator==(const Query &) const -> bool = default;
    };

    using ElementId = std::uint32_t;
    using Tuple = std::vector<ElementId>;

    /// A finite relational structure with named elements, a set of facts per
    /// relation, and an interpretation of constants (not necessarily injective).
    class Database
    {
    private:
        Schema _schema;
        std::vector<std::string> _names;
        std::map<std::string, ElementId, std::less<>> _ids;
        std::map<std::string, std::set<Tuple>, std::less<>> _facts;
        std::map<std::string, ElementId, std::less<>> _const_interp;

    public:
        Database() = default;
        explicit Database(Schema s);

        /// Idempotent: returns the existing id for a known name.
        auto add_element(const std::string & name) -> ElementId;
        auto add_fact(const std::string & relation, const Tuple & t) -> Database &;
        auto add_fact(const std::string & relation, const std::vector<std::string> & element_names) -> Database &;
        auto remove_fact(const std::string & relation, const Tuple & t) -> bool;
        auto interpret(const std::string & constant, ElementId e) -> Database &;
        auto interpret(const std::string & constant, const std::string & element_name) -> Database &;
        auto declare_relation(const std::string & name, int arity) -> Database &;

        auto schema() const -> const Schema & { return _schema; }
        auto size() const -> std::size_t { return _names.size(); }
        auto element_name(ElementId e) const -> const std::string & { return _names.at(e); }
        auto element_names() const -> const std::vector<std::string> & { return _names; }
        auto element_id(std::string_view name) const -> std::optional<ElementId>;
        auto facts(std::string_view relation) const -> const std::set<Tuple> &;
        auto all_facts() const -> const std::map<std::string, std::set<Tuple>, std::less<>> & { return _facts; }
        auto has_fact(std::string_view relation, const Tuple & t) const -> bool;
        auto fact_count() const -> std::size_t;
        auto const_interp() const -> const std::map<std::string, ElementId, std::less<>> & { return _const_interp; }
        auto interpretation(std::string_view constant) const -> std::optional<ElementId>;

        auto operator==(const Database &) const -> bool = default;
    };

    /// Elements are V_q (variables keep their names, constants use the
    /// constant's name); facts are q's relational atoms. Inequalities are
    /// dropped.
    auto canonical_structure(const Query & q) -> Database;

    /// Whether mars and venus are interpreted as different elements.
    auto is_nontrivial(const Database & d) -> bool;

    /// Union over merged schemas. Elements are identified by name; the two
    /// constant interpretations must agree where both are defined.
    auto database_union(const Database & a, const Database & b) -> Database;

    /// The restriction of d to the given relations (elements and constants kept).
    auto restrict_to(const Database & d, const std::set<std::string, std::less<>> & relations) -> Database;
}

#endif
