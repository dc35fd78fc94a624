#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <jetgeom/jet.hpp>

using namespace jetgeom;

namespace {

ScalarJet<double> random_jet(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    ScalarJet<double> j(order);
    for (double& c : j.c) c = d(rng);
    return j;
}

void check_close(const ScalarJet<double>& a, const ScalarJet<double>& b, double tol = 1e-12) {
    REQUIRE(a.order == b.order);
    for (std::size_t s = 0; s < a.size(); ++s) CHECK(a.c[s] == doctest::Approx(b.c[s]).epsilon(tol));
}

}  // namespace

TEST_CASE("order-1 product is the dual-number rule") {
    ScalarJet<double> a(1), b(1);
    a.c = {1, 2};
    b.c = {5, 6};
    auto r = jet_mul(a, b);
    CHECK(r.c == std::vector<double>{5, 16});
}

TEST_CASE("order-2 product convolves over disjoint level sets") {
    ScalarJet<double> a(2), b(2);
    a.c = {1, 2, 3, 4};
    b.c = {5, 6, 7, 8};
    auto r = jet_mul(a, b);
    CHECK(r.c == std::vector<double>{5, 16, 22, 60});
}

TEST_CASE("squaring an order-2 jet gives the second-order chain data") {
    ScalarJet<double> a(2);
    a.c = {1, 2, 3, 4};
    auto r = jet_mul(a, a);
    CHECK(r.c == std::vector<double>{1, 4, 6, 20});
}

TEST_CASE("ring laws hold at every order") {
    std::mt19937_64 rng(11);
    for (int order = 0; order <= kMaxOrder; ++order) {
        auto a = random_jet(rng, order), b = random_jet(rng, order), c = random_jet(rng, order);
        check_close(jet_mul(a, b), jet_mul(b, a));
        check_close(jet_mul(jet_mul(a, b), c), jet_mul(a, jet_mul(b, c)), 1e-9);
        check_close(jet_mul(a, jet_add(b, c)), jet_add(jet_mul(a, b), jet_mul(a, c)), 1e-9);
        check_close(jet_add(jet_sub(a, b), b), a);
        check_close(jet_scale(a, 3.0), jet_add(a, jet_add(a, a)));
    }
}

TEST_CASE("reciprocal and division invert multiplication") {
    std::mt19937_64 rng(12);
    for (int order = 0; order <= kMaxOrder; ++order) {
        auto a = random_jet(rng, order);
        a.c[0] = 1.5;  // keep the base invertible
        check_close(jet_mul(a, jet_recip(a)), ScalarJet<double>::constant(order, 1.0), 1e-9);
        auto b = random_jet(rng, order);
        check_close(jet_mul(jet_div(b, a), a), b, 1e-9);
    }
    ScalarJet<double> zero_base(2);
    CHECK_THROWS_AS((void)jet_recip(zero_base), eval_error);
}

TEST_CASE("integer powers agree with repeated multiplication") {
    std::mt19937_64 rng(13);
    auto a = random_jet(rng, 3);
    a.c[0] = 1.25;
    check_close(jet_pow(a, 0), ScalarJet<double>::constant(3, 1.0));
    check_close(jet_pow(a, 1), a);
    check_close(jet_pow(a, 4), jet_mul(jet_mul(a, a), jet_mul(a, a)), 1e-9);
    check_close(jet_mul(jet_pow(a, -2), jet_mul(a, a)), ScalarJet<double>::constant(3, 1.0), 1e-9);
}

TEST_CASE("primitive lifts carry exact first derivatives") {
    auto x = ScalarJet<double>::seeded(1, 0.7, 0);
    CHECK(jet_primitive(Prim::Sin, x).c[1] == doctest::Approx(std::cos(0.7)));
    CHECK(jet_primitive(Prim::Cos, x).c[1] == doctest::Approx(-std::sin(0.7)));
    CHECK(jet_primitive(Prim::Exp, x).c[1] == doctest::Approx(std::exp(0.7)));
    CHECK(jet_primitive(Prim::Log, x).c[1] == doctest::Approx(1.0 / 0.7));
    CHECK(jet_primitive(Prim::Sqrt, x).c[1] == doctest::Approx(0.5 / std::sqrt(0.7)));
    const double t = std::tanh(0.7);
    CHECK(jet_primitive(Prim::Tanh, x).c[1] == doctest::Approx(1.0 - t * t));
}

TEST_CASE("second derivatives match finite differences") {
    const double x0 = 0.4, h = 1e-5;
    ScalarJet<double> x(2, x0);
    x.c[1] = 1.0;
    x.c[2] = 1.0;
    auto s = jet_primitive(Prim::Sin, x);
    double fd = (std::sin(x0 + h) - 2 * std::sin(x0) + std::sin(x0 - h)) / (h * h);
    CHECK(s.c[3] == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("domain violations report the offending base value") {
    auto bad = ScalarJet<double>::constant(1, -3.0);
    CHECK_THROWS_WITH_AS((void)jet_primitive(Prim::Log, bad),
                         doctest::Contains("log domain violation"), eval_error);
    CHECK_THROWS_AS((void)jet_primitive(Prim::Sqrt, bad), eval_error);
}

TEST_CASE("jet order is capped") {
    CHECK_THROWS_AS(ScalarJet<double>(kMaxOrder + 1), dim_error);
    CHECK_THROWS_AS(JetPoint<double>(kMaxOrder + 1, 1), dim_error);
}

TEST_CASE("swap_levels is an involutive block permutation") {
    std::mt19937_64 rng(14);
    JetPoint<double> j(3, 2);
    std::uniform_real_distribution<double> d(-1, 1);
    for (double& v : j.data) v = d(rng);
    auto once = swap_levels(j, 0, 2);
    auto twice = swap_levels(once, 0, 2);
    CHECK(twice.data == j.data);
    // moving block {0} to block {2} explicitly
    for (int i = 0; i < 2; ++i) CHECK(once.at(0b100, i) == j.at(0b001, i));
    CHECK_THROWS_AS((void)swap_levels(j, 0, 3), dim_error);
}

TEST_CASE("lift packing round-trips and targets the top level") {
    JetPoint<double> in(1, 4);
    in.data = {1, 2, 3, 4, 5, 6, 7, 8};
    auto packed = pack_lift_input(in);
    CHECK(packed.order == 2);
    CHECK(packed.dim == 2);
    // base pair occupies the original levels, tangent pair the new top
    CHECK(packed.at(0b00, 0) == 1);
    CHECK(packed.at(0b10, 0) == 3);  // second half of dim-4 input
    CHECK(packed.at(0b01, 1) == 6);
    CHECK(packed.at(0b11, 1) == 8);
    auto back = unpack_lift_output(packed);
    CHECK(back.data == in.data);
}

TEST_CASE("coordinate extraction matches flat storage") {
    JetPoint<double> j(2, 3);
    for (std::size_t i = 0; i < j.data.size(); ++i) j.data[i] = double(i);
    auto c1 = j.coordinate(1);
    for (LevelSet s = 0; s < 4; ++s) CHECK(c1.c[s] == j.at(s, 1));
}
