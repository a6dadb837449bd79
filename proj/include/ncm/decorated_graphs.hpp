#pragma once

// Decorated graphs: 4-regular graphs whose oriented edges carry the labels
// a^{+-1}, b^{+-1} admissibly, with a 2-coloring of the vertices. The
// labeling is exactly a pair of permutations of the vertex set.

#include <optional>
#include <string>
#include <vector>

#include "ncm/free_groups.hpp"

namespace ncm {

class DecoratedGraph {
public:
    DecoratedGraph(Permutation perm_a, Permutation perm_b, std::vector<Vertex> colored = {});

    std::size_t vertex_count() const { return perm_a_.size(); }
    const Permutation& perm_a() const { return perm_a_; }
    const Permutation& perm_b() const { return perm_b_; }
    bool is_colored(Vertex v) const { return colored_[v]; }
    /// Ascending.
    std::vector<Vertex> colored_vertices() const;

    Vertex act(Vertex v, Letter x) const { return step(perm_a_, perm_b_, inv_a_, inv_b_, v, x); }
    Vertex trace(Vertex start, const Word& w) const;

    /// Component index of every vertex, numbered by smallest member.
    std::vector<std::size_t> component_labels() const;
    std::size_t component_count() const;
    bool is_connected() const { return component_count() == 1; }

    DecoratedGraph with_coloring(std::vector<Vertex> colored) const;
    /// Induced subgraph on a union of components, relabeled in the given order.
    DecoratedGraph restricted_to(const std::vector<Vertex>& vertices) const;

    friend bool operator==(const DecoratedGraph& x, const DecoratedGraph& y) {
        return x.perm_a_ == y.perm_a_ && x.perm_b_ == y.perm_b_ && x.colored_ == y.colored_;
    }

private:
    Permutation perm_a_, perm_b_, inv_a_, inv_b_;
    std::vector<bool> colored_;
};

/// Schreier graph of h with the given colored vertices.
DecoratedGraph from_subgroup(const SubgroupTable& h, const std::vector<Vertex>& colored);

/// The single-colored-basepoint decoration.
inline DecoratedGraph from_subgroup(const SubgroupTable& h) { return from_subgroup(h, {SubgroupTable::basepoint()}); }

/// Color- and label-preserving isomorphism.
bool is_isomorphic(const DecoratedGraph& g1, const DecoratedGraph& g2);

struct GraphMorphism {
    std::vector<Vertex> vertex_map;
};

/// Commutes with both permutations, preserves colors, and is onto.
bool check_cover(const DecoratedGraph& cover, const DecoratedGraph& base, const GraphMorphism& m);

struct FiberProduct {
    DecoratedGraph graph;  // uncolored; vertex (u, v) is u * |V2| + v
    std::vector<std::vector<Vertex>> components;
    GraphMorphism projection1;
    GraphMorphism projection2;
};

FiberProduct fiber_product(const DecoratedGraph& g1, const DecoratedGraph& g2);

struct CommonCover {
    DecoratedGraph graph;
    GraphMorphism to_first;
    GraphMorphism to_second;
};

/// A color-consistent component of the fiber product, if one exists.
/// Both inputs must be connected.
std::optional<CommonCover> has_common_decorated_cover(const DecoratedGraph& g1, const DecoratedGraph& g2);

// Line-based text format:
//   <vertex count>
//   <perm_a images, space separated>
//   <perm_b images, space separated>
//   <colored vertices, ascending, space separated; may be empty>
std::string to_text(const DecoratedGraph& g);
DecoratedGraph parse_graph_text(const std::string& text);

}  // namespace ncm
