#include <bagcq/count.hh>
#include <bagcq/error.hh>

#include <mpfr.h>

#include <algorithm>
#include <cctype>

#include <numeric>
#include <random>
#include <vector>

using namespace bagcq;

using std::map;
using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    using u64 = unsigned long long;
    using u128 = unsigned __int128;

    auto mulmod(u64 a, u64 b, u64 m) -> u64
    {
        return u64((u128(a) * b) % m);
    }

    auto powmod(u64 a, u64 e, u64 m) -> u64
    {
        u64 r = 1 % m;
        a %= m;
        while (e) {
            if (e & 1)
                r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    }

    // deterministic for all 64-bit n with these witnesses
    auto is_prime_u64(u64 n) -> bool
    {
        if (n < 2)
            return false;
        for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
            if (n % p == 0)
                return n == p;
        }
        u64 d = n - 1;
        int s = 0;
        while ((d & 1) == 0) {
            d >>= 1;
            ++s;
        }
        for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
            u64 x = powmod(a, d, n);
            if (x == 1 || x == n - 1)
                continue;
            bool composite = true;
            for (int r = 1; r < s; ++r) {
                x = mulmod(x, x, n);
                if (x == n - 1) {
                    composite = false;
                    break;
                }
            }
            if (composite)
                return false;
        }
        return true;
    }

    // Brent's variant of Pollard rho; n is odd, composite
    auto rho(u64 n) -> u64
    {
        std::mt19937_64 rng(n);
        while (true) {
            u64 c = rng() % (n - 1) + 1, y = rng() % n, m = 128, g = 1, q = 1, r = 1, x = 0, ys = 0;
            auto f = [&](u64 v) { return u64((u128(v) * v + c) % n); };
            do {
                x = y;
                for (u64 i = 0; i < r; ++i)
                    y = f(y);
                u64 k = 0;
                do {
                    ys = y;
                    for (u64 i = 0; i < std::min(m, r - k); ++i) {
                        y = f(y);
                        q = mulmod(q, x > y ? x - y : y - x, n);
                    }
                    g = std::gcd(q, n);
                    k += m;
                } while (k < r && g == 1);
                r *= 2;
            } while (g == 1);
            if (g == n) {
                do {
                    ys = f(ys);
                    g = std::gcd(x > ys ? x - ys : ys - x, n);
                } while (g == 1);
            }
            if (g != n)
                return g;
        }
    }

    auto factor_into(u64 n, map<u64, unsigned> & out) -> void
    {
        if (n == 1)
            return;
        for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
            while (n % p == 0) {
                ++out[p];
                n /= p;
            }
        }
        if (n == 1)
            return;
        if (is_prime_u64(n)) {
            ++out[n];
            return;
        }
        u64 d = rho(n);
        factor_into(d, out);
        factor_into(n / d, out);
    }

    const Natural two_to_64 = Natural(1) << 64;

    auto fits_u64(const Natural & n) -> bool
    {
        return n < two_to_64;
    }

    auto to_u64(const Natural & n) -> u64
    {
        return mpz_get_ui(n.get_mpz_t());
    }

    auto bits(const Natural & n) -> unsigned long
    {
        return mpz_sizeinbase(n.get_mpz_t(), 2);
    }

    // exponent k with base^k | n exactly maximal; base > 1
    auto valuation(Natural n, const Natural & base) -> Natural
    {
        Natural k = 0;
        while (n % base == 0) {
            n /= base;
            ++k;
        }
        return k;
    }

    // pairwise coprime basis whose products generate every input
    auto coprime_basis(vector<Natural> xs) -> vector<Natural>
    {
        vector<Natural> basis;
        for (auto & x : xs)
            if (x > 1)
                basis.push_back(x);
        bool changed = true;
        while (changed) {
            changed = false;
            std::sort(basis.begin(), basis.end());
            basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
            for (std::size_t i = 0; i < basis.size() && ! changed; ++i)
                for (std::size_t j = i + 1; j < basis.size() && ! changed; ++j) {
                    Natural g = gcd(basis[i], basis[j]);
                    if (g > 1) {
                        Natural a = basis[i] / g, b = basis[j] / g;
                        basis.erase(basis.begin() + j);
                        basis.erase(basis.begin() + i);
                        for (auto v : {g, a, b})
                            if (v > 1)
                                basis.push_back(v);
                        changed = true;
                    }
                }
        }
        return basis;
    }

    // rewrites a factor map over a coprime basis that generates all its bases
    auto over_basis(const map<Natural, Natural> & factors, const vector<Natural> & basis) -> map<Natural, Natural>
    {
        map<Natural, Natural> result;
        for (auto & [b, e] : factors)
            for (auto & c : basis) {
                if (b % c != 0)
                    continue;
                Natural k = valuation(b, c);
                result[c] += k * e;
            }
        return result;
    }
}

auto bagcq::factor_u64(unsigned long long n) -> map<unsigned long long, unsigned>
{
    map<u64, unsigned> out;
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "cannot factor zero");
    factor_into(n, out);
    return out;
}

Count::Count(unsigned long v)
{
    if (v == 0)
        _zero = true;
    else
        absorb(Natural(v), 1);
}

Count::Count(const Natural & v)
{
    if (v < 0)
        throw Error(ErrorKind::InvalidArgument, "counts are natural numbers");
    if (v == 0)
        _zero = true;
    else {
        absorb(v, 1);
        refine();
    }
}

auto Count::zero() -> Count
{
    Count c;
    c._zero = true;
    return c;
}

auto Count::power(const Natural & base, const Natural & exponent) -> Count
{
    if (base < 0 || exponent < 0)
        throw Error(ErrorKind::InvalidArgument, "power of naturals expected");
    if (exponent == 0)
        return Count{};
    if (base == 0)
        return zero();
    Count c;
    c.absorb(base, exponent);
    c.refine();
    return c;
}

auto Count::absorb(const Natural & base, const Natural & exponent) -> void
{
    if (base == 1 || exponent == 0)
        return;
    if (fits_u64(base)) {
        for (auto [p, k] : factor_u64(to_u64(base)))
            _factors[Natural(static_cast<unsigned long>(p))] += exponent * k;
        return;
    }
    // strip small primes, factor what is left if it became small
    Natural rest = base;
    for (unsigned long p = 2; p < 1000; ++p) {
        if (rest % p != 0)
            continue;
        Natural k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        _factors[Natural(p)] += k * exponent;
    }
    if (rest == 1)
        return;
    if (fits_u64(rest))
        absorb(rest, exponent);
    else
        _factors[rest] += exponent;
}

auto Count::refine() -> void
{
    bool has_large = false;
    for (auto & [b, _] : _factors)
        if (! fits_u64(b))
            has_large = true;
    if (! has_large)
        return;
    vector<Natural> bases;
    for (auto & [b, _] : _factors)
        bases.push_back(b);
    _factors = over_basis(_factors, coprime_basis(bases));
}

auto Count::pow(const Natural & exponent) const -> Count
{
    if (exponent < 0)
        throw Error(ErrorKind::InvalidArgument, "negative exponent");
    if (exponent == 0)
        return Count{};
    if (_zero)
        return zero();
    Count c = *this;
    for (auto & [_, e] : c._factors)
        e *= exponent;
    return c;
}

auto bagcq::operator*(const Count & a, const Count & b) -> Count
{
    Count c = a;
    c *= b;
    return c;
}

auto Count::operator*=(const Count & b) -> Count &
{
    if (_zero || b._zero) {
        _zero = true;
        _factors.clear();
        return *this;
    }
    for (auto & [base, e] : b._factors)
        _factors[base] += e;
    refine();
    return *this;
}

auto Count::bit_length_bound() const -> Natural
{
    if (_zero)
        return 0;
    Natural total = 0;
    for (auto & [b, e] : _factors)
        total += Natural(bits(b)) * e;
    return total;
}

auto Count::to_natural(unsigned long max_bits) const -> optional<Natural>
{
    if (_zero)
        return Natural(0);
    Natural r = 1;
    for (auto & [b, e] : _factors) {
        // b >= 2^(bits(b)-1), so this lower bound already rules it out
        if (Natural(bits(b) - 1) * e > Natural(max_bits) || ! e.fits_ulong_p())
            return std::nullopt;
        Natural p;
        mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), e.get_ui());
        r *= p;
        if (bits(r) > max_bits + 1)
            return std::nullopt;
    }
    if (bits(r) > max_bits)
        return std::nullopt;
    return r;
}

auto Count::to_string() const -> string
{
    if (_zero)
        return "0";
    if (_factors.empty())
        return "1";
    string s;
    for (auto & [b, e] : _factors) {
        if (! s.empty())
            s += "*";
        s += b.get_str() + "^" + e.get_str();
    }
    return s;
}

auto Count::parse(string_view text) -> Count
{
    string compact;
    for (char c : text)
        if (! std::isspace(static_cast<unsigned char>(c)))
            compact += c;
    if (compact.empty())
        throw Error(ErrorKind::Parse, "empty count literal");

    auto parse_natural = [&](const string & digits) -> Natural {
        if (digits.empty() || ! std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw Error(ErrorKind::Parse, "bad natural '" + digits + "' in count literal '" + string(text) + "'");
        return Natural(digits);
    };

    Count result;
    std::size_t pos = 0;
    while (pos <= compact.size()) {
        auto star = compact.find('*', pos);
        string factor = compact.substr(pos, star == string::npos ? string::npos : star - pos);
        auto caret = factor.find('^');
        if (caret == string::npos)
            result *= Count(parse_natural(factor));
        else
            result *= Count::power(parse_natural(factor.substr(0, caret)), parse_natural(factor.substr(caret + 1)));
        if (star == string::npos)
            break;
        pos = star + 1;
    }
    return result;
}

auto bagcq::operator==(const Count & a, const Count & b) -> bool
{
    return compare_counts(a, b) == std::strong_ordering::equal;
}

auto bagcq::operator<=>(const Count & a, const Count & b) -> std::strong_ordering
{
    return compare_counts(a, b);
}

namespace
{
    struct Mpfr
    {
        mpfr_t v;
        explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v, p); }
        ~Mpfr() { mpfr_clear(v); }
        Mpfr(const Mpfr &) = delete;
        auto operator=(const Mpfr &) -> Mpfr & = delete;
    };

    // sign of sum diff_i * ln(base_i), known to be nonzero
    auto sign_of_log_sum(const vector<std::pair<Natural, Integer>> & terms) -> int
    {
        for (mpfr_prec_t prec = 128;; prec *= 2) {
            Mpfr lo(prec), hi(prec), ln_lo(prec), ln_hi(prec), t_lo(prec), t_hi(prec), b(prec);
            mpfr_set_zero(lo.v, 1);
            mpfr_set_zero(hi.v, 1);
            for (auto & [base, diff] : terms) {
                mpfr_set_z(b.v, base.get_mpz_t(), MPFR_RNDD);
                mpfr_log(ln_lo.v, b.v, MPFR_RNDD);
                mpfr_set_z(b.v, base.get_mpz_t(), MPFR_RNDU);
                mpfr_log(ln_hi.v, b.v, MPFR_RNDU);
                if (diff > 0) {
                    mpfr_mul_z(t_lo.v, ln_lo.v, diff.get_mpz_t(), MPFR_RNDD);
                    mpfr_mul_z(t_hi.v, ln_hi.v, diff.get_mpz_t(), MPFR_RNDU);
                }
                else {
                    mpfr_mul_z(t_lo.v, ln_hi.v, diff.get_mpz_t(), MPFR_RNDD);
                    mpfr_mul_z(t_hi.v, ln_lo.v, diff.get_mpz_t(), MPFR_RNDU);
                }
                mpfr_add(lo.v, lo.v, t_lo.v, MPFR_RNDD);
                mpfr_add(hi.v, hi.v, t_hi.v, MPFR_RNDU);
            }
            if (mpfr_sgn(lo.v) > 0)
                return 1;
            if (mpfr_sgn(hi.v) < 0)
                return -1;
            if (prec > (mpfr_prec_t(1) << 24))
                throw Error(ErrorKind::Precondition, "count comparison did not converge");
        }
    }
}

auto bagcq::compare_counts(const Count & a, const Count & b) -> std::strong_ordering
{
    if (a.is_zero() || b.is_zero()) {
        if (a.is_zero() && b.is_zero())
            return std::strong_ordering::equal;
        return a.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    vector<Natural> bases;
    for (auto & [base, _] : a.factors())
        bases.push_back(base);
    for (auto & [base, _] : b.factors())
        bases.push_back(base);
    auto basis = coprime_basis(bases);
    auto ea = over_basis(a.factors(), basis), eb = over_basis(b.factors(), basis);

    vector<std::pair<Natural, Integer>> diffs;
    Natural size_bits = 0;
    for (auto & c : basis) {
        Integer d = (ea.contains(c) ? ea[c] : Natural(0)) - (eb.contains(c) ? eb[c] : Natural(0));
        if (d != 0) {
            diffs.emplace_back(c, d);
            size_bits += abs(d) * bits(c);
        }
    }
    if (diffs.empty())
        return std::strong_ordering::equal;

    if (size_bits <= 1 << 16) {
        Natural lhs = 1, rhs = 1;
        for (auto & [c, d] : diffs) {
            Natural p;
            mpz_pow_ui(p.get_mpz_t(), c.get_mpz_t(), Natural(abs(d)).get_ui());
            (d > 0 ? lhs : rhs) *= p;
        }
        return cmp(lhs, rhs) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return sign_of_log_sum(diffs) > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}
