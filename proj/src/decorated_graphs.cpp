#include "ncm/decorated_graphs.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ncm/errors.hpp"

namespace ncm {

namespace {

constexpr Vertex kUnmapped = std::numeric_limits<Vertex>::max();

// The unique label-respecting map of connected g1 into g2 with 0 -> anchor,
// if it is a color-preserving bijection.
bool anchored_isomorphism(const DecoratedGraph& g1, const DecoratedGraph& g2, Vertex anchor) {
    const std::size_t n = g1.vertex_count();
    std::vector<Vertex> map(n, kUnmapped);
    std::vector<bool> used(n, false);
    std::vector<Vertex> order{0};
    map[0] = anchor;
    used[anchor] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        Vertex u = order[head];
        for (Letter x : kLetters) {
            Vertex w1 = g1.act(u, x);
            Vertex w2 = g2.act(map[u], x);
            if (map[w1] == kUnmapped) {
                if (used[w2]) return false;
                map[w1] = w2;
                used[w2] = true;
                order.push_back(w1);
            } else if (map[w1] != w2) {
                return false;
            }
        }
    }
    if (order.size() != n) return false;
    for (Vertex v = 0; v < n; ++v) {
        if (g1.is_colored(v) != g2.is_colored(map[v])) return false;
    }
    return true;
}

bool connected_isomorphic(const DecoratedGraph& g1, const DecoratedGraph& g2) {
    if (g1.vertex_count() != g2.vertex_count()) return false;
    if (g1.colored_vertices().size() != g2.colored_vertices().size()) return false;
    for (Vertex v = 0; v < g2.vertex_count(); ++v) {
        if (g2.is_colored(v) == g1.is_colored(0) && anchored_isomorphism(g1, g2, v)) return true;
    }
    return false;
}

std::vector<std::vector<Vertex>> components_of(const DecoratedGraph& g) {
    auto label = g.component_labels();
    std::vector<std::vector<Vertex>> comps(g.component_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) comps[label[v]].push_back(v);
    return comps;
}

}  // namespace

DecoratedGraph::DecoratedGraph(Permutation perm_a, Permutation perm_b, std::vector<Vertex> colored)
    : perm_a_(std::move(perm_a)), perm_b_(std::move(perm_b)) {
    require(!perm_a_.empty(), "decorated graph needs at least one vertex");
    require(perm_a_.size() == perm_b_.size(), "permutations of different size");
    require(is_permutation(perm_a_) && is_permutation(perm_b_), "edge labels are not admissible permutations");
    inv_a_ = inverse(perm_a_);
    inv_b_ = inverse(perm_b_);
    colored_.assign(perm_a_.size(), false);
    for (Vertex v : colored) {
        require(v < perm_a_.size(), "colored vertex " + std::to_string(v) + " out of range");
        colored_[v] = true;
    }
}

std::vector<Vertex> DecoratedGraph::colored_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < vertex_count(); ++v) {
        if (colored_[v]) out.push_back(v);
    }
    return out;
}

Vertex DecoratedGraph::trace(Vertex start, const Word& w) const {
    Vertex v = start;
    for (Letter x : w.letters()) v = act(v, x);
    return v;
}

std::vector<std::size_t> DecoratedGraph::component_labels() const {
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(vertex_count(), unset);
    std::size_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex root = 0; root < vertex_count(); ++root) {
        if (label[root] != unset) continue;
        label[root] = next;
        stack.push_back(root);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Letter x : kLetters) {
                Vertex w = act(u, x);
                if (label[w] == unset) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

std::size_t DecoratedGraph::component_count() const {
    auto label = component_labels();
    return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
}

DecoratedGraph DecoratedGraph::with_coloring(std::vector<Vertex> colored) const {
    return {perm_a_, perm_b_, std::move(colored)};
}

DecoratedGraph DecoratedGraph::restricted_to(const std::vector<Vertex>& vertices) const {
    std::vector<Vertex> index(vertex_count(), kUnmapped);
    for (Vertex i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
    Permutation a(vertices.size()), b(vertices.size());
    std::vector<Vertex> colored;
    for (Vertex i = 0; i < vertices.size(); ++i) {
        Vertex v = vertices[i];
        require(index[perm_a_[v]] != kUnmapped && index[perm_b_[v]] != kUnmapped,
                "vertex set is not a union of components");
        a[i] = index[perm_a_[v]];
        b[i] = index[perm_b_[v]];
        if (colored_[v]) colored.push_back(i);
    }
    return {std::move(a), std::move(b), std::move(colored)};
}

DecoratedGraph from_subgroup(const SubgroupTable& h, const std::vector<Vertex>& colored) {
    return {h.perm_a(), h.perm_b(), colored};
}

bool is_isomorphic(const DecoratedGraph& g1, const DecoratedGraph& g2) {
    if (g1.vertex_count() != g2.vertex_count()) return false;
    if (g1.is_connected() && g2.is_connected()) return connected_isomorphic(g1, g2);

    // Isomorphism of connected graphs is an equivalence relation, so a
    // greedy matching of components is exact.
    auto c1 = components_of(g1);
    auto c2 = components_of(g2);
    if (c1.size() != c2.size()) return false;
    std::vector<bool> taken(c2.size(), false);
    for (const auto& comp : c1) {
        DecoratedGraph part = g1.restricted_to(comp);
        bool matched = false;
        for (std::size_t j = 0; j < c2.size() && !matched; ++j) {
            if (taken[j] || c2[j].size() != comp.size()) continue;
            if (connected_isomorphic(part, g2.restricted_to(c2[j]))) {
                taken[j] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

bool check_cover(const DecoratedGraph& cover, const DecoratedGraph& base, const GraphMorphism& m) {
    if (m.vertex_map.size() != cover.vertex_count()) return false;
    std::vector<bool> hit(base.vertex_count(), false);
    for (Vertex x = 0; x < cover.vertex_count(); ++x) {
        Vertex y = m.vertex_map[x];
        if (y >= base.vertex_count()) return false;
        hit[y] = true;
    }
    for (Vertex x = 0; x < cover.vertex_count(); ++x) {
        Vertex y = m.vertex_map[x];
        if (m.vertex_map[cover.perm_a()[x]] != base.perm_a()[y]) return false;
        if (m.vertex_map[cover.perm_b()[x]] != base.perm_b()[y]) return false;
        if (cover.is_colored(x) != base.is_colored(y)) return false;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

FiberProduct fiber_product(const DecoratedGraph& g1, const DecoratedGraph& g2) {
    const std::size_t n1 = g1.vertex_count();
    const std::size_t n2 = g2.vertex_count();
    Permutation a(n1 * n2), b(n1 * n2);
    std::vector<Vertex> p1(n1 * n2), p2(n1 * n2);
    for (Vertex u = 0; u < n1; ++u) {
        for (Vertex v = 0; v < n2; ++v) {
            Vertex s = static_cast<Vertex>(u * n2 + v);
            a[s] = static_cast<Vertex>(g1.perm_a()[u] * n2 + g2.perm_a()[v]);
            b[s] = static_cast<Vertex>(g1.perm_b()[u] * n2 + g2.perm_b()[v]);
            p1[s] = u;
            p2[s] = v;
        }
    }
    DecoratedGraph graph(std::move(a), std::move(b));
    auto components = components_of(graph);
    return {std::move(graph), std::move(components), {std::move(p1)}, {std::move(p2)}};
}

std::optional<CommonCover> has_common_decorated_cover(const DecoratedGraph& g1, const DecoratedGraph& g2) {
    require(g1.is_connected() && g2.is_connected(), "common-cover test needs connected graphs");
    FiberProduct fp = fiber_product(g1, g2);
    for (const auto& comp : fp.components) {
        bool consistent = std::all_of(comp.begin(), comp.end(), [&](Vertex s) {
            return g1.is_colored(fp.projection1.vertex_map[s]) == g2.is_colored(fp.projection2.vertex_map[s]);
        });
        if (!consistent) continue;
        std::vector<Vertex> colored;
        GraphMorphism to1, to2;
        for (Vertex i = 0; i < comp.size(); ++i) {
            Vertex u = fp.projection1.vertex_map[comp[i]];
            to1.vertex_map.push_back(u);
            to2.vertex_map.push_back(fp.projection2.vertex_map[comp[i]]);
            if (g1.is_colored(u)) colored.push_back(i);
        }
        DecoratedGraph witness = fp.graph.restricted_to(comp).with_coloring(std::move(colored));
        ensure(check_cover(witness, g1, to1) && check_cover(witness, g2, to2),
               "fiber-product component failed to cover a factor");
        return CommonCover{std::move(witness), std::move(to1), std::move(to2)};
    }
    return std::nullopt;
}

std::string to_text(const DecoratedGraph& g) {
    std::ostringstream out;
    auto row = [&](const std::vector<Vertex>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
        out << '\n';
    };
    out << g.vertex_count() << '\n';
    row(g.perm_a());
    row(g.perm_b());
    row(g.colored_vertices());
    return out.str();
}

DecoratedGraph parse_graph_text(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        require(end != std::string::npos, "graph text must end with a newline");
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    require(lines.size() == 4, "graph text needs exactly 4 lines, got " + std::to_string(lines.size()));

    auto parse_row = [](const std::string& line) {
        std::vector<Vertex> xs;
        std::size_t i = 0;
        while (i < line.size()) {
            std::size_t j = i;
            while (j < line.size() && line[j] >= '0' && line[j] <= '9') ++j;
            require(j > i && j - i <= 9 && (line[i] != '0' || j - i == 1),
                    "malformed number in graph text: '" + line + "'");
            xs.push_back(static_cast<Vertex>(std::stoul(line.substr(i, j - i))));
            require(j == line.size() || (line[j] == ' ' && j + 1 < line.size()),
                    "graph text rows are single-space separated: '" + line + "'");
            i = j + 1;
        }
        return xs;
    };

    auto count = parse_row(lines[0]);
    require(count.size() == 1, "first line must hold the vertex count");
    auto a = parse_row(lines[1]);
    auto b = parse_row(lines[2]);
    auto colored = parse_row(lines[3]);
    require(a.size() == count[0] && b.size() == count[0], "row length does not match vertex count");
    require(std::is_sorted(colored.begin(), colored.end()) &&
                std::adjacent_find(colored.begin(), colored.end()) == colored.end(),
            "colored vertices must be strictly ascending");
    return {std::move(a), std::move(b), std::move(colored)};
}

}  // namespace ncm
