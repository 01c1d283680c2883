#ifndef BAGCQ_COUNT_HH
#define BAGCQ_COUNT_HH

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace bagcq
{
    using Natural = mpz_class;
    using Integer = mpz_class;
    using Rational = mpq_class;

    /// An exact natural number held as a product of powers, so that values
    /// such as b^c with c around 10^25 stay representable.
    ///
    /// Normal form: bases <= 2^64 are split into primes, larger bases are kept
    /// composite but refined so that all bases are pairwise coprime, equal
    /// bases are merged. The empty product is 1; zero is a separate state.
    class Count
    {
    private:
        bool _zero = false;
        std::map<Natural, Natural> _factors;

        auto absorb(const Natural & base, const Natural & exponent) -> void;
        auto refine() -> void;

    public:
        Count() = default;
        Count(unsigned long v);
        explicit Count(const Natural & v);

        static auto zero() -> Count;
        static auto power(const Natural & base, const Natural & exponent) -> Count;

        auto is_zero() const -> bool { return _zero; }
        auto is_one() const -> bool { return ! _zero && _factors.empty(); }
        auto factors() const -> const std::map<Natural, Natural> & { return _factors; }

        auto pow(const Natural & exponent) const -> Count;

        /// Upper bound on log2 of the value; 0 for zero.
        auto bit_length_bound() const -> Natural;

        /// Materializes the value when it has at most max_bits bits.
        auto to_natural(unsigned long max_bits = 256) const -> std::optional<Natural>;

        /// "0", "1", or "b^e*b^e*..." with ascending bases.
        auto to_string() const -> std::string;

        /// Accepts "0", a decimal, or a '*'-separated product of "b^e" / "b".
        static auto parse(std::string_view) -> Count;

        friend auto operator*(const Count & a, const Count & b) -> Count;
        auto operator*=(const Count & b) -> Count &;
        friend auto operator==(const Count & a, const Count & b) -> bool;
    };

    /// Exact three-way comparison. Identical normal forms (over a common
    /// coprime basis) are equal; otherwise the sign of the log-ratio is
    /// decided by interval evaluation at increasing precision.
    auto compare_counts(const Count & a, const Count & b) -> std::strong_ordering;

    auto operator*(const Count & a, const Count & b) -> Count;
    auto operator==(const Count & a, const Count & b) -> bool;

    auto operator<=>(const Count & a, const Count & b) -> std::strong_ordering;

    /// Prime factorization of a 64-bit value, ascending with multiplicity
    /// collapsed. factor_u64(1) is empty.
    auto factor_u64(unsigned long long n) -> std::map<unsigned long long, unsigned>;
}

#endif
