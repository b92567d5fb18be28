#include <catch2/catch_amalgamated.hpp>

#include "hwcat/builtins.hpp"
#include "hwcat/endo.hpp"

#include <cstddef>
#include <string>
#include <vector>

using namespace hwcat;

namespace {

using Alg = PathAlgebra<Rat>::Ptr;

Alg rational_builtin(const std::string& name) {
    return make_builtin<Rat>(name, FieldCtx<Rat>{});
}

std::vector<Module<Rat>> all_projectives(const Alg& a) {
    std::vector<Module<Rat>> out;
    for (std::size_t v = 0; v < a->quiver().vertex_count(); ++v)
        out.push_back(Module<Rat>::projective(a, static_cast<int>(v)));
    return out;
}

// count arrows i -> j in a quiver
std::size_t arrows_between(const Quiver& q, int i, int j) {
    std::size_t n = 0;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (q.arrow(static_cast<int>(a)).src == i && q.arrow(static_cast<int>(a)).tgt == j) ++n;
    return n;
}

} // namespace

TEST_CASE("opposite endomorphisms of the regular module reproduce the algebra") {
    // End of the direct sum of all vertex projectives, taken opposite, is the
    // algebra itself; the presentation must recover quiver shape and dimension.
    for (const char* name : {"a2", "a3", "z2", "kalck", "pt"}) {
        INFO("builtin " << name);
        Alg a = rational_builtin(name);
        EndoPresentation<Rat> pres = present_opposite_endomorphisms(all_projectives(a));
        CHECK(pres.alg->dim() == a->dim());
        REQUIRE(pres.alg->quiver().vertex_count() == a->quiver().vertex_count());
        REQUIRE(pres.alg->quiver().arrow_count() == a->quiver().arrow_count());
        for (std::size_t i = 0; i < a->quiver().vertex_count(); ++i)
            for (std::size_t j = 0; j < a->quiver().vertex_count(); ++j) {
                CHECK(arrows_between(pres.alg->quiver(), static_cast<int>(i),
                                     static_cast<int>(j)) ==
                      arrows_between(a->quiver(), static_cast<int>(i), static_cast<int>(j)));
                // path counts agree in every block
                CHECK(pres.alg->ids_from_to(static_cast<int>(i), static_cast<int>(j)).size() ==
                      a->ids_from_to(static_cast<int>(i), static_cast<int>(j)).size());
            }
    }
}

TEST_CASE("transport sends summands to vertex projectives") {
    Alg a = rational_builtin("kalck");
    EndoPresentation<Rat> pres = present_opposite_endomorphisms(all_projectives(a));
    for (int v = 0; v < 3; ++v) {
        Module<Rat> moved = pres.transport(Module<Rat>::projective(a, v));
        Module<Rat> expect = Module<Rat>::projective(pres.alg, v);
        CHECK(moved.dims() == expect.dims());
        CHECK(is_isomorphic(moved, expect));
    }
    // simples transport to simples when the summands are the projectives
    for (int v = 0; v < 3; ++v) {
        Module<Rat> moved = pres.transport(Module<Rat>::simple(a, v));
        CHECK(moved.dims() == Module<Rat>::simple(pres.alg, v).dims());
    }
}

TEST_CASE("presentation with a non-projective summand") {
    Alg a = rational_builtin("a2");
    Module<Rat> p1 = Module<Rat>::projective(a, 0);
    Module<Rat> s1 = Module<Rat>::simple(a, 0);
    EndoPresentation<Rat> pres = present_opposite_endomorphisms(std::vector<Module<Rat>>{p1, s1});
    CHECK(pres.alg->dim() == 3);
    REQUIRE(pres.alg->quiver().arrow_count() == 1);
    // the only radical map goes P_1 -> S_1, so the presented arrow runs 2 -> 1
    CHECK(pres.alg->quiver().arrow(0).src == 1);
    CHECK(pres.alg->quiver().arrow(0).tgt == 0);
    CHECK(is_isomorphic(pres.transport(s1), Module<Rat>::projective(pres.alg, 1)));

    SECTION("functorial action on maps") {
        std::vector<ModuleMap<Rat>> maps = hom_space(p1, s1);
        REQUIRE(maps.size() == 1);
        ModuleMap<Rat> moved = pres.transport_map(maps[0]);
        CHECK_FALSE(moved.is_zero());
        CHECK(moved.rank() == 1);
    }
}

TEST_CASE("a local endomorphism algebra presents with a loop") {
    // one vertex, one loop with square zero: End of the regular module keeps
    // the loop and its relation
    FieldCtx<Rat> ctx;
    Quiver q({"1"}, {Arrow{"x", 0, 0}});
    Relation<Rat> sq;
    Path loop = Path::of_arrows(q, {0});
    sq.terms.push_back({ctx.one(), compose(loop, loop)});
    auto a = PathAlgebra<Rat>::build(q, {sq}, ctx, 6);
    REQUIRE(a->dim() == 2);

    Module<Rat> reg = Module<Rat>::projective(a, 0);
    EndoPresentation<Rat> pres = present_opposite_endomorphisms(std::vector<Module<Rat>>{reg});
    CHECK(pres.alg->dim() == 2);
    CHECK(pres.alg->quiver().vertex_count() == 1);
    REQUIRE(pres.alg->quiver().arrow_count() == 1);
    CHECK(pres.alg->quiver().arrow(0).src == 0);
    CHECK(pres.alg->quiver().arrow(0).tgt == 0);
}

TEST_CASE("non-basic input is refused honestly") {
    Alg a = rational_builtin("a2");
    Module<Rat> p1 = Module<Rat>::projective(a, 0);
    bool threw = false;
    try {
        present_opposite_endomorphisms(std::vector<Module<Rat>>{p1, p1});
    } catch (const EngineError& e) {
        threw = true;
        CHECK(e.kind() == ErrorKind::Undecided);
    }
    CHECK(threw);
}

TEST_CASE("presentation works over a prime field") {
    FieldCtx<Fp> f7{7};
    auto a = make_builtin<Fp>("kalck", f7);
    std::vector<Module<Fp>> projs;
    for (int v = 0; v < 3; ++v) projs.push_back(Module<Fp>::projective(a, v));
    EndoPresentation<Fp> pres = present_opposite_endomorphisms(projs);
    CHECK(pres.alg->dim() == 9);
    CHECK(pres.alg->quiver().arrow_count() == 4);
}
