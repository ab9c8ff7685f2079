#include <doctest.h>

#include <cmath>
#include <limits>

#include "sgossip/errors.hpp"
#include "sgossip/schedule.hpp"

using namespace sgossip;

TEST_CASE("GainSequence::parse") {
    const auto c = GainSequence::parse("0.5");
    CHECK(c.is_constant());
    CHECK(c(0) == 0.5);
    CHECK(c(1000000) == 0.5);
    CHECK(c.supremum() == 0.5);

    const auto t = GainSequence::parse("table:0.1,0.2,0.3");
    CHECK_FALSE(t.is_constant());
    CHECK(t(0) == 0.1);
    CHECK(t(2) == 0.3);
    CHECK(t(50) == 0.3);
    CHECK(t.supremum() == 0.3);

    const auto h = GainSequence::parse("harmonic:1,2");
    CHECK(h(0) == doctest::Approx(0.5));
    CHECK(h(8) == doctest::Approx(0.1));
    CHECK(h.supremum() == doctest::Approx(0.5));

    const auto p = GainSequence::parse("power:2,1,0.5");
    CHECK(p(3) == doctest::Approx(1.0));
    const auto grow = GainSequence::parse("power:1,1,-1");
    CHECK(grow(4) == doctest::Approx(5.0));
    CHECK(std::isinf(grow.supremum()));

    for (const char* bad : {"", "abc", "table:", "table:0.1,x", "harmonic:1", "power:1,2", "0.5x",
                            "harmonic:1,0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(GainSequence::parse(bad), std::invalid_argument);
    }
}

TEST_CASE("GainSequence::describe round-trips") {
    for (const char* spec : {"0.25", "table:0.5,1", "harmonic:1,2", "power:2,1,0.5"}) {
        const auto g = GainSequence::parse(spec);
        const auto again = GainSequence::parse(g.describe());
        for (std::size_t k = 0; k < 5; ++k) CHECK(g(k) == again(k));
    }
}

TEST_CASE("Schedule range checks") {
    const auto s = Schedule::constant(0.5, 2.0);
    CHECK(s.alpha_at(3) == 0.5);
    CHECK(s.beta_at(3) == 2.0);
    CHECK(s.is_constant());
    CHECK(s.beta_bounded());

    const Schedule bad{GainSequence::constant(1.5), GainSequence::constant(-1.0)};
    CHECK_THROWS_AS(bad.alpha_at(0), GainRangeError);
    CHECK_THROWS_AS(bad.beta_at(0), GainRangeError);

    const Schedule growing{GainSequence::constant(0.5), GainSequence::parse("power:1,1,-1")};
    CHECK_FALSE(growing.beta_bounded());
    CHECK_FALSE(growing.is_constant());

    CHECK_NOTHROW(check_gains(0.0, 0.0));
    CHECK_NOTHROW(check_gains(1.0, 1e6));
    CHECK_THROWS_AS(check_gains(-0.1, 0.0), GainRangeError);
    CHECK_THROWS_AS(check_gains(0.5, std::numeric_limits<double>::infinity()), GainRangeError);
    CHECK_THROWS_AS(check_gains(std::nan(""), 0.0), GainRangeError);
}
