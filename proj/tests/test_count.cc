#include <bagcq/count.hh>

#include <doctest.h>

using namespace bagcq;

TEST_CASE("factored counts multiply and normalize")
{
    auto a = Count::power(5, 21) * Count::power(3, 21);
    auto b = Count::power(15, 21);
    CHECK(a == b);
    CHECK(a.to_string() == "3^21*5^21");
    CHECK((Count(3) * a).to_string() == "3^22*5^21");
    CHECK(Count(12).to_string() == "2^2*3^1");
    CHECK(Count(1).is_one());
    CHECK(Count().is_one());
    CHECK(Count(0).is_zero());
    CHECK((Count(0) * a).is_zero());
}

TEST_CASE("materialization")
{
    CHECK(Count(1024).to_natural() == Natural(1024));
    CHECK(Count::power(2, 300).to_natural(256) == std::nullopt);
    CHECK(Count::power(2, 300).to_natural(400) == Natural(1) << 300);
    CHECK(Count::zero().to_natural() == Natural(0));
}

TEST_CASE("parse round trip")
{
    for (auto s : {"0", "1", "2^3*7^1", "3^22*5^21"})
        CHECK(Count::parse(s).to_string() == Count::parse(Count::parse(s).to_string()).to_string());
    CHECK(Count::parse("3^22*5^21") == Count(3) * Count::power(5, 21) * Count::power(3, 21));
    CHECK(Count::parse("360") == Count(360));
    CHECK(Count::parse(" 2^3 * 9 ") == Count(72));
    CHECK_THROWS(Count::parse("2^"));
    CHECK_THROWS(Count::parse("x"));
}

TEST_CASE("exact comparison")
{
    CHECK(compare_counts(Count::power(2, 10), Count::power(3, 6)) == std::strong_ordering::greater);
    auto c = Count::power(5, 21) * Count::power(3, 21);
    CHECK(compare_counts(c, c) == std::strong_ordering::equal);
    CHECK(compare_counts(Count::power(2, 3000000), Count::power(3, 2000000)) == std::strong_ordering::less);
    CHECK(compare_counts(Count::zero(), Count(1)) == std::strong_ordering::less);
    CHECK(compare_counts(Count::zero(), Count::zero()) == std::strong_ordering::equal);

    Natural huge = Natural(10);
    mpz_pow_ui(huge.get_mpz_t(), huge.get_mpz_t(), 25);
    auto big_a = Count::power(2, huge) * Count(3);
    auto big_b = Count::power(2, huge) * Count(2);
    CHECK(compare_counts(big_a, big_b) == std::strong_ordering::greater);
    CHECK(big_a > big_b);
}

TEST_CASE("large composite bases are kept coprime")
{
    Natural p = Natural("340282366920938463463374607431768211507"); // > 2^64
    auto a = Count(p * 6) * Count(p);
    auto b = Count(p) .pow(2) * Count(6);
    CHECK(a == b);
    CHECK(compare_counts(Count(p * 7), Count(p * 6)) == std::strong_ordering::greater);
}

TEST_CASE("factor_u64")
{
    CHECK(factor_u64(1).empty());
    auto f = factor_u64(360);
    CHECK(f == std::map<unsigned long long, unsigned>{{2, 3}, {3, 2}, {5, 1}});
    auto big = factor_u64(18446744073709551557ull); // largest 64-bit prime
    CHECK(big.size() == 1);
    auto semi = factor_u64(4294967291ull * 4294967279ull);
    CHECK(semi == std::map<unsigned long long, unsigned>{{4294967279ull, 1}, {4294967291ull, 1}});
}
