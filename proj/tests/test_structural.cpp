#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <jetgeom/structural.hpp>

using namespace jetgeom;

namespace {

const LawReport* find_law(const LawReport& rep, const std::string& name) {
    if (rep.name == name) return &rep;
    for (const auto& c : rep.children)
        if (const LawReport* r = find_law(c, name)) return r;
    return nullptr;
}

}  // namespace

TEST_CASE("structural maps have the documented coordinate forms") {
    CHECK(proj_p<double>(1)(std::vector<double>{1, 2}) == std::vector<double>{1});
    CHECK(zero_section<double>(1)(std::vector<double>{3}) == std::vector<double>{3, 0});
    CHECK(plus_map<double>(1)(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 5});
    CHECK(ell_map<double>(1)(std::vector<double>{1, 2}) == std::vector<double>{1, 0, 0, 2});
    CHECK(flip_map<double>(1)(std::vector<double>{1, 2, 3, 4}) == std::vector<double>{1, 3, 2, 4});
    CHECK(mu_map<double>(1)(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 3, 0, 2});
    CHECK(pi_map<double>(2, 1, 0)(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 2});
    CHECK(pi_map<double>(2, 1, 1)(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 3});
    CHECK(flip_n_map<double>(2, 1)(std::vector<double>{1, 2, 3, 4, 5, 6}) ==
          std::vector<double>{1, 3, 5, 2, 4, 6});
    CHECK(flip_pair_map<double>(1)(std::vector<double>{1, 2, 3, 4, 5, 6}) ==
          std::vector<double>{1, 3, 5, 2, 4, 6});
    CHECK_THROWS_AS((void)pi_map<double>(2, 1, 2), dim_error);
}

TEST_CASE("flip agrees with the level transposition on jet points") {
    JetPoint<double> j(2, 2);
    for (std::size_t i = 0; i < j.data.size(); ++i) j.data[i] = double(i + 1);
    auto via_map = flip_map<double>(2).eval(JetPoint<double>::point(j.data));
    auto via_swap = swap_levels(j, 0, 1);
    CHECK(via_map.data == via_swap.data);
}

TEST_CASE("axiom suite passes for n = 1 and n = 2 with nonlinear test maps") {
    for (int n : {1, 2}) {
        CheckContext ctx(100 + n, 60, 1e-9);
        std::vector<SmoothMap<double>> maps;
        if (n == 1) {
            maps.push_back(parse_map("sin(x0)", 1, 1));
            maps.push_back(parse_map("x0^3 - x0; exp(x0)", 1, 2));
        } else {
            maps.push_back(parse_map("exp(x0)*x1; sin(x0 - x1)", 2, 2));
            maps.push_back(parse_map("x0*x1^2", 2, 1));
        }
        auto rep = verify_tangent_axioms(n, maps, ctx);
        INFO("n = ", n);
        CHECK(rep.status == Status::Pass);
        CHECK(rep.max_residual < 1e-9);
    }
}

TEST_CASE("structural-only laws hold with zero residual") {
    CheckContext ctx(7, 60, 1e-9);
    auto rep = verify_tangent_axioms(2, {}, ctx);
    REQUIRE(rep.status == Status::Pass);
    for (const char* name :
         {"bundle-zero-section", "bundle-plus-assoc", "bundle-plus-comm", "flip-involution",
          "flip-braid", "ell-coherence", "ell-flip", "flip2-pi0", "flip2-pi1",
          "lift-universality-into", "lift-universality-back", "lift-universality-kernel"}) {
        const LawReport* law = find_law(rep, name);
        REQUIRE_MESSAGE(law != nullptr, name);
        CHECK_MESSAGE(law->max_residual == 0.0, name);
    }
}

TEST_CASE("a non-functorial 'lift' breaks naturality and is reported with a witness") {
    CheckContext ctx(8, 40, 1e-9);
    // Corrupt naturality deliberately: compare T(f) p against p f for the
    // wrong f on one side.
    auto f = parse_map("x0^2", 1, 1);
    auto g = parse_map("x0^2 + 1", 1, 1);
    auto lhs = compose(tangent_lift(f), proj_p<double>(1));
    auto rhs = compose(proj_p<double>(1), g);
    auto rep = compare_maps("broken-naturality", lhs, rhs, ctx, 1e-9);
    CHECK(rep.status == Status::Fail);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->input.size() == 2);
}

TEST_CASE("fiber_pair shares the base and concatenates fibers") {
    auto f = parse_map("x0; x0^2", 1, 2);
    auto g = parse_map("x0; x0 + 1", 1, 2);
    auto fp = fiber_pair(f, g, 1);
    CHECK(fp(std::vector<double>{2}) == std::vector<double>{2, 4, 3});
}
