#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <jetgeom/geometry.hpp>

using namespace jetgeom;

namespace {

GeometricSpace space_1d(const std::string& gamma) {
    return make_space(connection_from_christoffel(ChristoffelField::parse(1, {gamma})));
}

const LawReport* find_law(const LawReport& rep, const std::string& name) {
    if (rep.name == name) return &rep;
    for (const auto& c : rep.children)
        if (const LawReport* r = find_law(c, name)) return r;
    return nullptr;
}

}  // namespace

TEST_CASE("affine maps are morphisms of zero spaces") {
    CheckContext ctx(61, 100, 1e-9);
    auto z = zero_space(1);
    auto rep = is_geometric_morphism(parse_map("3*x0 + 7", 1, 1), z, z, ctx);
    CHECK(rep.status == Status::Pass);
    CHECK(rep.max_residual < 1e-12);
}

TEST_CASE("x^2 fails the morphism square with the Hessian cross term as witness") {
    CheckContext ctx(62, 100, 1e-9);
    auto z = zero_space(1);
    auto rep = is_geometric_morphism(parse_map("x0^2", 1, 1), z, z, ctx);
    CHECK(rep.status == Status::Fail);
    REQUIRE(rep.witness.has_value());
    const auto& w = *rep.witness;
    REQUIRE(w.input.size() == 4);
    const double v = w.input[1], wslot = w.input[2];
    // T^2(f)K0 - K0 T(f) = (0, 2vw) at (x,v,w,a)
    CHECK(w.lhs[1] - w.rhs[1] == doctest::Approx(2 * v * wslot).epsilon(1e-9));
}

TEST_CASE("exp is a morphism from the unit field to the zero field") {
    CheckContext ctx(63, 200, 1e-6);
    auto rep = is_geometric_morphism(parse_map("exp(x0)", 1, 1), space_1d("1"), space_1d("0"), ctx);
    CHECK(rep.status == Status::Pass);
    CHECK(rep.max_residual < 1e-6);
}

TEST_CASE("morphism dimensions are validated") {
    CheckContext ctx(64, 10, 1e-9);
    CHECK_THROWS_AS(
        (void)is_geometric_morphism(parse_map("x0", 1, 1), zero_space(2), zero_space(1), ctx),
        dim_error);
}

TEST_CASE("local affineness detection") {
    CheckContext ctx(65, 60, 1e-9);
    SUBCASE("affine maps pass") {
        auto f = parse_map("2*x0 - 0.5*x1 + 1; x0 + x1 - 3", 2, 2);
        CHECK(is_locally_affine(f, ctx).status == Status::Pass);
    }
    SUBCASE("x^2 fails with second partial 2") {
        auto rep = is_locally_affine(parse_map("x0^2", 1, 1), ctx);
        CHECK(rep.status == Status::Fail);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->lhs[0] == doctest::Approx(2.0));
    }
    SUBCASE("the failing component is named") {
        auto rep = is_locally_affine(parse_map("x0 + x1; x0*x1", 2, 2), ctx);
        CHECK(rep.status == Status::Fail);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->note.find("component 1") != std::string::npos);
    }
}

TEST_CASE("locally affine agrees with the zero-space morphism square") {
    CheckContext ctx(66, 60, 1e-7);
    const char* sources[] = {"3*x0 + 7", "x0^2", "sin(x0)", "x0 - 1", "tanh(x0)"};
    auto z = zero_space(1);
    for (const char* src : sources) {
        auto f = parse_map(src, 1, 1);
        CheckContext c1(66, 60, 1e-7), c2(67, 60, 1e-7);
        bool affine = is_locally_affine(f, c1).status == Status::Pass;
        bool morph = is_geometric_morphism(f, z, z, c2).status == Status::Pass;
        INFO("map: ", src);
        CHECK(affine == morph);
    }
}

TEST_CASE("tangent space: projection is a geometric morphism") {
    CheckContext ctx(68, 100, 1e-6);
    for (const char* gamma : {"0", "1", "x0"}) {
        auto g = space_1d(gamma);
        auto tg = tangent_space(g);
        CHECK(tg.n == 2);
        auto rep = is_geometric_morphism(proj_p<double>(1), tg, g, ctx);
        INFO("gamma: ", gamma);
        CHECK(rep.status == Status::Pass);
    }
}

TEST_CASE("double tangent space still carries a vertical connection") {
    CheckContext ctx(69, 60, 1e-9);
    auto ttg = tangent_space(tangent_space(zero_space(1)));
    CHECK(ttg.n == 4);
    CHECK(verify_vertical_connection(ttg.conn, ctx).status == Status::Pass);
}

TEST_CASE("self-morphism theorem") {
    SUBCASE("zero field, n = 1 and n = 2") {
        for (int n : {1, 2}) {
            CheckContext ctx(70 + n, 40, 1e-6);
            auto rep = check_self_morphism(zero_space(n), ctx);
            INFO("n = ", n);
            CHECK(rep.status == Status::Pass);
        }
    }
    SUBCASE("unit field, n = 1") {
        CheckContext ctx(73, 40, 1e-6);
        auto rep = check_self_morphism(space_1d("1"), ctx);
        CHECK(rep.status == Status::Pass);
        CHECK(find_law(rep, "self-morphism-square") != nullptr);
        CHECK(find_law(rep, "naturality-square") != nullptr);
    }
    SUBCASE("torsion gates the check as skipped") {
        CheckContext ctx(74, 40, 1e-6);
        auto torsion = make_space(connection_from_christoffel(
            ChristoffelField::parse(2, {"0", "1", "0", "0", "0", "0", "0", "0"})));
        auto rep = check_self_morphism(torsion, ctx);
        CHECK(rep.status == Status::Skipped);
        REQUIRE(rep.witness.has_value());
        CHECK(!rep.witness->note.empty());
    }
}

TEST_CASE("horizontal preservation agrees with the K-square") {
    SUBCASE("exp passes both squares") {
        CheckContext ctx(75, 100, 1e-6);
        auto rep = is_horizontal_preserving(parse_map("exp(x0)", 1, 1), space_1d("1"),
                                            space_1d("0"), ctx);
        CHECK(rep.status == Status::Pass);
    }
    SUBCASE("x^2 fails both squares consistently") {
        CheckContext ctx(76, 100, 1e-9);
        auto rep = is_horizontal_preserving(parse_map("x0^2", 1, 1), zero_space(1), zero_space(1),
                                            ctx);
        CHECK(rep.status == Status::Fail);
        const LawReport* agree = find_law(rep, "square-agreement");
        REQUIRE(agree != nullptr);
        CHECK(agree->status == Status::Pass);
    }
    SUBCASE("identity passes on any space") {
        CheckContext ctx(77, 60, 1e-6);
        auto s = space_1d("x0");
        auto rep = is_horizontal_preserving(SmoothMap<double>::identity(1), s, s, ctx);
        CHECK(rep.status == Status::Pass);
    }
}

TEST_CASE("geometric morphisms compose") {
    CheckContext ctx(78, 100, 1e-6);
    auto s1 = space_1d("1"), s0 = space_1d("0");
    auto f = parse_map("exp(x0)", 1, 1);      // (R, 1) -> (R, 0)
    auto g = parse_map("2*x0 + 1", 1, 1);     // (R, 0) -> (R, 0)
    REQUIRE(is_geometric_morphism(f, s1, s0, ctx).status == Status::Pass);
    REQUIRE(is_geometric_morphism(g, s0, s0, ctx).status == Status::Pass);
    CHECK(is_geometric_morphism(compose(f, g), s1, s0, ctx).status == Status::Pass);
}
