#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <jetgeom/jubin.hpp>

using namespace jetgeom;

namespace {

std::vector<Rat> rats(std::initializer_list<long long> vals) {
    std::vector<Rat> out;
    for (long long v : vals) out.emplace_back(v);
    return out;
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("5/3") == Rat(5, 3));
    CHECK(parse_rational("-2") == Rat(-2));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(parse_rational("-1/2") == Rat(-1, 2));
    CHECK(rational_to_string(Rat(5, 3)) == "5/3");
    CHECK(rational_to_string(Rat(4)) == "4");
    CHECK_THROWS_AS((void)parse_rational("1/0"), eval_error);
    CHECK_THROWS_AS((void)parse_rational("x"), eval_error);
}

TEST_CASE("structure maps at frozen points") {
    CHECK(jubin_mu(Rat(2), 1)(rats({0, 1, 1, 1})) == rats({0, 4}));
    CHECK(jubin_delta(Rat(3), 1)(rats({1, 2})) == rats({1, 2, 2, 6}));
    CHECK(jubin_delta(Rat(0), 1)(rats({1, 2})) == rats({1, 2, 2, 0}));
    CHECK(jubin_lambda(Rat(1), Rat(2), 1)(rats({0, 1, 2, 3})) == rats({0, 2, 6, 1}));
    CHECK(jubin_eta(1)(rats({5})) == rats({5, 0}));
    CHECK(jubin_eps(1)(rats({5, 7})) == rats({5}));
}

TEST_CASE("the parameter-free multiplication is (x,v,xdot,vdot) -> (x, v + xdot)") {
    auto mu0 = jubin_mu(Rat(0), 1);
    for (long long x = -2; x <= 2; ++x)
        for (long long v = -2; v <= 2; ++v)
            for (long long xd = -2; xd <= 2; ++xd)
                for (long long vd = -2; vd <= 2; ++vd)
                    CHECK(mu0(rats({x, v, xd, vd})) == rats({x, v + xd}));
}

TEST_CASE("monad, comonad, and mixed laws are exact across the parameter grid") {
    const Rat as[] = {Rat(0), Rat(1), Rat(-1), Rat(5, 3)};
    const Rat bs[] = {Rat(0), Rat(1), Rat(-1), Rat(-2)};
    for (int n : {1, 2, 3})
        for (const Rat& a : as)
            for (const Rat& b : bs) {
                auto inst = build_instance(a, b, n);
                INFO("a=", rational_to_string(a), " b=", rational_to_string(b), " n=", n);
                auto m = verify_monad_laws(inst);
                CHECK(m.status == Status::Pass);
                CHECK(m.max_residual == 0.0);
                auto c = verify_comonad_laws(inst);
                CHECK(c.status == Status::Pass);
                CHECK(c.max_residual == 0.0);
                auto x = verify_mixed_law(inst);
                CHECK(x.status == Status::Pass);
                CHECK(x.max_residual == 0.0);
                CHECK(verify_affine_structure(inst).status == Status::Pass);
            }
}

TEST_CASE("unit laws at a concrete point for a = 0") {
    auto inst = build_instance(Rat(0), Rat(0), 1);
    auto unit_then_mu = compose(jubin_eta(2), inst.mu);
    CHECK(unit_then_mu(rats({1, 2})) == rats({1, 2}));
}

TEST_CASE("dropping the a-term from mu breaks associativity exactly") {
    auto inst = build_instance(Rat(1), Rat(0), 1);
    inst.mu = jubin_mu(Rat(0), 1);  // corrupted: bookkeeping still uses a = 1
    auto rep = verify_monad_laws(inst);
    CHECK(rep.status == Status::Fail);
    const LawReport* assoc = nullptr;
    for (const auto& c : rep.children)
        if (c.name == "monad-assoc") assoc = &c;
    REQUIRE(assoc != nullptr);
    CHECK(assoc->status == Status::Fail);
    CHECK(assoc->max_residual > 0.0);
    REQUIRE(assoc->witness.has_value());
}

TEST_CASE("zeroing the v-slot of delta breaks the counit law") {
    auto inst = build_instance(Rat(0), Rat(2), 1);
    LinMat<Rat> bad(4, 2);
    bad.at(0, 0) = Rat(1);
    // v-slot dropped; duplicate and scaled slots kept
    bad.at(2, 1) = Rat(1);
    bad.at(3, 1) = Rat(2);
    inst.delta = SmoothMap<Rat>::linear(std::move(bad));
    auto rep = verify_comonad_laws(inst);
    CHECK(rep.status == Status::Fail);
    REQUIRE(rep.witness.has_value());
}

TEST_CASE("flipping the sign of the d-slot in lambda breaks a pentagon") {
    auto inst = build_instance(Rat(1), Rat(2), 1);
    LinMat<Rat> bad(4, 4);
    bad.at(0, 0) = Rat(1);
    bad.at(1, 2) = Rat(1);
    bad.at(2, 1) = Rat(1);
    bad.at(2, 2) = Rat(1);
    bad.at(2, 3) = Rat(1);
    bad.at(3, 2) = Rat(2);
    bad.at(3, 3) = Rat(1);  // should be -1
    inst.lambda = SmoothMap<Rat>::linear(std::move(bad));
    auto rep = verify_mixed_law(inst);
    CHECK(rep.status == Status::Fail);
    bool pentagon_failed = false;
    for (const auto& c : rep.children)
        if (c.name.find("pentagon") != std::string::npos && c.status == Status::Fail)
            pentagon_failed = true;
    CHECK(pentagon_failed);
    REQUIRE(rep.witness.has_value());
}
