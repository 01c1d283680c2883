#ifndef BAGCQ_HOMCOUNT_HH
#define BAGCQ_HOMCOUNT_HH

#include <bagcq/count.hh>
#include <bagcq/relcore.hh>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bagcq
{
    /// Variable name to element.
    using Assignment = std::map<std::string, ElementId>;

    /// Variable name to a term name of the target query (a variable, or a
    /// constant name).
    using VariableMap = std::map<std::string, std::string>;

    struct FactIndex;

    /// Counts homomorphisms into one fixed database. The per-(relation,
    /// position, element) fact index is built once, so evaluating many
    /// queries against the same database should reuse one HomCounter.
    class HomCounter
    {
    private:
        const Database & _db;
        std::shared_ptr<const FactIndex> _index;

    public:
        explicit HomCounter(const Database & d);

        auto database() const -> const Database & { return _db; }

        /// |Hom(q, D)|: assignments of Var(q) such that every atom is a fact
        /// and every inequality holds, constants sent through const_interp.
        auto count(const Query & q) const -> Count;

        /// As count, with lexicographic order over sorted variable names and
        /// element ids, truncated to limit.
        auto enumerate(const Query & q, std::size_t limit) const -> std::vector<Assignment>;
    };

    auto count_homomorphisms(const Query & q, const Database & d) -> Count;

    auto enumerate_homomorphisms(const Query & q, const Database & d, std::size_t limit) -> std::vector<Assignment>;

    /// A homomorphism from q_from into the canonical structure of q_to that
    /// fixes constants and hits every variable of q_to, if one exists. Both
    /// queries must be inequality-free.
    auto exists_onto_homomorphism(const Query & q_from, const Query & q_to) -> std::optional<VariableMap>;
}

#endif
