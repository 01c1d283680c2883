#ifndef BAGCQ_POLYREDUCE_HH
#define BAGCQ_POLYREDUCE_HH

#include <bagcq/count.hh>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace bagcq
{
    /// Variable indices of a monomial, ascending (so the homogenizer, index 1,
    /// comes first). Empty is the constant monomial.
    struct OrderedMonomial
    {
        std::vector<int> vars;

        auto degree() const -> int { return int(vars.size()); }
        auto operator<=>(const OrderedMonomial &) const = default;
    };

    struct PolyTerm
    {
        Integer coefficient;
        OrderedMonomial monomial;

        auto operator==(const PolyTerm &) const -> bool = default;
    };

    /// Terms are kept merged, nonzero, and in descending lexicographic order
    /// of their monomials.
    struct Polynomial
    {
        int num_vars = 1;
        std::vector<PolyTerm> terms;

        static auto from_map(int num_vars, const std::map<OrderedMonomial, Integer> &) -> Polynomial;
        auto to_map() const -> std::map<OrderedMonomial, Integer>;
        auto normalized() const -> Polynomial;
        auto is_zero() const -> bool { return terms.empty(); }
        auto max_degree() const -> int;
        auto to_string() const -> std::string;

        auto operator==(const Polynomial &) const -> bool = default;
    };

    auto operator+(const Polynomial & a, const Polynomial & b) -> Polynomial;
    auto operator*(const Polynomial & a, const Polynomial & b) -> Polynomial;
    auto operator*(const Integer & c, const Polynomial & p) -> Polynomial;

    using Valuation = std::map<int, Natural>;

    struct HilbertInstance
    {
        Polynomial p_s, p_b;
        Natural c_frak;
        int d = 0;
        int m_count = 0;
        int n_count = 0;
        /// (n, position, m), 1-based: the position-th variable of monomial m is n.
        std::set<std::tuple<int, int, int>> position_rel;

        // pipeline intermediates
        Polynomial p1, p2, p1_prime, p2_prime;

        auto monomials() const -> std::vector<OrderedMonomial>;
        auto coefficients_s() const -> std::vector<Natural>;
        auto coefficients_b() const -> std::vector<Natural>;
    };

    auto normalize_hilbert(const Polynomial & q) -> HilbertInstance;

    /// Empty when the instance is well formed; otherwise one line per problem.
    auto validate_instance(const HilbertInstance & inst) -> std::vector<std::string>;

    auto eval_poly(const Polynomial & p, const Valuation & v) -> Integer;

    /// Lexicographically least (index 2 most significant) valuation of
    /// indices 2..num_vars, values in 0..bound, that is a root of q.
    auto find_root_bruteforce(const Polynomial & q, unsigned long bound) -> std::optional<Valuation>;

    auto position_relation(const std::vector<OrderedMonomial> & monomials) -> std::set<std::tuple<int, int, int>>;
}

#endif
