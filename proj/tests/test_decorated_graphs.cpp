#include "doctest.h"

#include "generators.hpp"
#include "ncm/decorated_graphs.hpp"
#include "ncm/errors.hpp"

using namespace ncm;

namespace {

std::vector<DecoratedGraph> single_colored(std::size_t k) {
    std::vector<DecoratedGraph> out;
    for (const auto& h : enumerate_subgroups(k)) out.push_back(from_subgroup(h));
    return out;
}

}  // namespace

TEST_CASE("graphs from subgroups") {
    auto g = from_subgroup(SubgroupTable({0}, {0}));
    CHECK(g.vertex_count() == 1);
    CHECK(g.is_colored(0));
    CHECK(g.act(0, Letter::a) == 0);
    auto h = from_subgroup(SubgroupTable({1, 0}, {0, 1}));
    CHECK(h.vertex_count() == 2);
    CHECK(h.colored_vertices() == std::vector<Vertex>{0});
    CHECK_THROWS_AS(DecoratedGraph({1, 0}, {0, 1}, {2}), PreconditionError);
    CHECK_THROWS_AS(DecoratedGraph({1, 1}, {0, 1}), PreconditionError);
}

TEST_CASE("all colorings of a Schreier graph") {
    auto h = enumerate_subgroups(3).back();
    std::size_t variants = 0;
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<Vertex> colored;
        for (Vertex v = 0; v < 3; ++v) {
            if (mask >> v & 1) colored.push_back(v);
        }
        from_subgroup(h, colored);
        ++variants;
    }
    CHECK(variants == 8);
}

TEST_CASE("isomorphism") {
    auto g = single_colored(2);
    CHECK(is_isomorphic(g[0], g[0]));
    CHECK_FALSE(is_isomorphic(g[0], g[1]));
    // a 3-cycle under a with trivial b is vertex transitive
    DecoratedGraph c0({1, 2, 0}, {0, 1, 2}, {0}), c1({1, 2, 0}, {0, 1, 2}, {1});
    CHECK(is_isomorphic(c0, c1));
    CHECK_FALSE(is_isomorphic(c0, c0.with_coloring({0, 1})));
    // disconnected graphs match component by component
    DecoratedGraph two_loops({0, 1}, {0, 1}, {1}), other({0, 1}, {0, 1}, {0});
    CHECK(is_isomorphic(two_loops, other));
}

TEST_CASE("isomorphism classes coincide with subgroups") {
    for (std::size_t k = 1; k <= 4; ++k) {
        auto g = single_colored(k);
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = 0; j < g.size(); ++j) REQUIRE(is_isomorphic(g[i], g[j]) == (i == j));
        }
    }
}

TEST_CASE("isomorphism is an equivalence relation on random relabelings") {
    auto g = single_colored(4);
    for (int t = 0; t < 200; ++t) {
        const auto& x = g[static_cast<std::size_t>(gen::integer(0, static_cast<long>(g.size()) - 1))];
        Permutation sigma(4);
        for (Vertex v = 0; v < 4; ++v) sigma[v] = v;
        std::shuffle(sigma.begin(), sigma.end(), gen::rng());
        Permutation a(4), b(4);
        for (Vertex v = 0; v < 4; ++v) {
            a[sigma[v]] = sigma[x.perm_a()[v]];
            b[sigma[v]] = sigma[x.perm_b()[v]];
        }
        DecoratedGraph y(a, b, {sigma[0]});
        REQUIRE(is_isomorphic(x, y));
        REQUIRE(is_isomorphic(y, x));
    }
}

TEST_CASE("covers") {
    DecoratedGraph point({0}, {0}, {0});
    DecoratedGraph dbl({1, 0}, {1, 0}, {0, 1});
    CHECK(check_cover(point, point, {{0}}));
    CHECK(check_cover(dbl, dbl, {{0, 1}}));
    CHECK(check_cover(dbl, point, {{0, 0}}));
    CHECK_FALSE(check_cover(dbl.with_coloring({0}), point, {{0, 0}}));
    CHECK_FALSE(check_cover(dbl, dbl, {{0, 0}}));  // commutes but not onto
}

TEST_CASE("fiber products") {
    auto g = single_colored(2);
    auto fp = fiber_product(g[0], g[1]);
    CHECK(fp.graph.vertex_count() == 4);
    CHECK(check_cover(fp.graph, g[0].with_coloring({}), fp.projection1));
    CHECK(check_cover(fp.graph, g[1].with_coloring({}), fp.projection2));
    auto diag = fiber_product(g[2], g[2]);
    bool found = false;
    for (const auto& comp : diag.components) {
        if (comp.size() == 2 && comp[0] == 0 && comp[1] == 3) found = true;
    }
    CHECK(found);
    for (std::size_t k = 1; k <= 3; ++k) {
        auto gs = single_colored(k);
        for (const auto& x : gs) {
            for (const auto& y : gs) {
                auto f = fiber_product(x, y);
                REQUIRE(f.graph.vertex_count() == x.vertex_count() * y.vertex_count());
                for (const auto& comp : f.components) {
                    auto sub = f.graph.restricted_to(comp);
                    std::vector<Vertex> m1, m2;
                    for (Vertex v : comp) {
                        m1.push_back(f.projection1.vertex_map[v]);
                        m2.push_back(f.projection2.vertex_map[v]);
                    }
                    REQUIRE(check_cover(sub, x.with_coloring({}), {m1}));
                    REQUIRE(check_cover(sub, y.with_coloring({}), {m2}));
                }
            }
        }
    }
}

TEST_CASE("common decorated covers") {
    auto g = single_colored(2);
    CHECK_FALSE(has_common_decorated_cover(g[0], g[1]));
    auto self = has_common_decorated_cover(g[1], g[1]);
    REQUIRE(self);
    CHECK(check_cover(self->graph, g[1], self->to_first));
    CHECK(check_cover(self->graph, g[1], self->to_second));
    for (std::size_t k = 1; k <= 3; ++k) {
        auto tables = enumerate_subgroups(k);
        for (const auto& h1 : tables) {
            for (const auto& h2 : tables) {
                std::vector<Vertex> all1, all2;
                for (Vertex v = 0; v < k; ++v) {
                    all1.push_back(v);
                    all2.push_back(v);
                }
                REQUIRE(has_common_decorated_cover(from_subgroup(h1, all1), from_subgroup(h2, all2)));
            }
        }
    }
    DecoratedGraph disconnected({0, 1}, {0, 1}, {0});
    CHECK_THROWS_AS(has_common_decorated_cover(disconnected, disconnected), PreconditionError);
}

TEST_CASE("no common cover exactly for distinct subgroups up to index 4") {
    std::vector<DecoratedGraph> all;
    for (std::size_t k = 1; k <= 4; ++k) {
        for (auto& g : single_colored(k)) all.push_back(g);
    }
    REQUIRE(all.size() == 88);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < all.size(); ++j) {
            REQUIRE(has_common_decorated_cover(all[i], all[j]).has_value() == (i == j));
        }
    }
}

TEST_CASE("distinguishing words exhibit the color clash") {
    auto tables = enumerate_subgroups(4);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            auto g1 = from_subgroup(tables[i]), g2 = from_subgroup(tables[j]);
            REQUIRE_FALSE(has_common_decorated_cover(g1, g2));
            auto w = distinguishing_word(tables[i], tables[j]);
            REQUIRE(w);
            REQUIRE(g1.is_colored(g1.trace(0, *w)) != g2.is_colored(g2.trace(0, *w)));
        }
    }
}

TEST_CASE("text format") {
    DecoratedGraph g({1, 2, 0}, {0, 2, 1}, {0, 2});
    std::string text = to_text(g);
    CHECK(text == "3\n1 2 0\n0 2 1\n0 2\n");
    CHECK(parse_graph_text(text) == g);
    DecoratedGraph plain({0}, {0});
    CHECK(to_text(plain) == "1\n0\n0\n\n");
    CHECK(parse_graph_text(to_text(plain)) == plain);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (const auto& x : single_colored(k)) REQUIRE(to_text(parse_graph_text(to_text(x))) == to_text(x));
    }
    CHECK_THROWS_AS(parse_graph_text("2\n1 0\n0 1\n"), PreconditionError);
    CHECK_THROWS_AS(parse_graph_text("2\n1  0\n0 1\n0\n"), PreconditionError);
    CHECK_THROWS_AS(parse_graph_text("2\n1 0\n0 1\n1 0\n"), PreconditionError);
    CHECK_THROWS_AS(parse_graph_text("2\n01 0\n0 1\n0\n"), PreconditionError);
    CHECK_THROWS_AS(parse_graph_text("2\n1 1\n0 1\n0\n"), PreconditionError);
    CHECK_THROWS_AS(parse_graph_text("x\n"), PreconditionError);
}
