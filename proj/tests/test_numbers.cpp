#include <doctest.h>
#include <cmath>

#include "rforge/numbers.hpp"

using namespace rforge;

TEST_CASE("gaussian rational field operations") {
    GaussianRational a(rat(1, 2), rat(3));
    GaussianRational b(rat(-2), rat(1, 5));
    CHECK(a + b == GaussianRational(rat(-3, 2), rat(16, 5)));
    CHECK(a * b == GaussianRational(rat(1, 2) * rat(-2) - rat(3) * rat(1, 5),
                                    rat(1, 2) * rat(1, 5) + rat(3) * rat(-2)));
    CHECK((a / b) * b == a);
    CHECK(a.conj().conj() == a);
    CHECK((GaussianRational::i() * GaussianRational::i()) == GaussianRational(-1));
}

TEST_CASE("scalar tau arithmetic") {
    Scalar x(GaussianRational(rat(3, 4)), 2);
    Scalar y(GaussianRational(rat(1, 4)), 2);
    CHECK((x + y) == Scalar(GaussianRational(1), 2));
    CHECK((x * Scalar::tau()) == Scalar(GaussianRational(rat(3, 4)), 3));
    CHECK_THROWS_AS(x + Scalar::tau(5), argument_error);
    // conj(tau) = -tau
    CHECK(Scalar::tau(1).conj() == Scalar(GaussianRational(-1), 1));
    CHECK(Scalar::tau(2).conj() == Scalar::tau(2));
}

TEST_CASE("scalar sum collects tau powers") {
    ScalarSum s;
    s.add(Scalar(GaussianRational(1), 0));
    s.add(Scalar(GaussianRational(2), 1));
    s.add(Scalar(GaussianRational(-1), 0));
    s.add(Scalar(GaussianRational(-2), 1));
    CHECK(s.is_zero());

    ScalarSum t;
    t.add(Scalar::tau(2));
    auto [re, im] = t.to_complex();
    CHECK(re == doctest::Approx(-4.0 * M_PI * M_PI));
    CHECK(im == doctest::Approx(0.0));
}

TEST_CASE("string serialization round-trips bit-exactly") {
    std::vector<GaussianRational> cases = {
        GaussianRational(rat(0)),
        GaussianRational(rat(5, 3)),
        GaussianRational(rat(-7, 11)),
        GaussianRational(rat(0), rat(1)),
        GaussianRational(rat(0), rat(-1)),
        GaussianRational(rat(2, 7), rat(-9, 4)),
        GaussianRational(rat(-1), rat(1, 1000000007)),
    };
    for (const auto& z : cases) CHECK(gaussian_from_string(z.str()) == z);

    std::vector<Scalar> scases = {
        Scalar(),
        Scalar(GaussianRational(rat(3, 2)), 0),
        Scalar(GaussianRational(rat(-1, 6), rat(2)), -3),
        Scalar::tau(4),
    };
    for (const auto& s : scases) CHECK(scalar_from_string(s.str()) == s);
}
