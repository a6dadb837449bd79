#pragma once

// Graph-of-spaces assembly. A decorated graph with k vertices becomes a
// closed manifold descriptor built from 5k block instances: one V0/V1
// block per vertex and an ordered pair (X-, X+) per edge, glued along
// boundary slots that all model the same codimension-one manifold N.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncm/decorated_graphs.hpp"
#include "ncm/exact_arith.hpp"
#include "ncm/form_families.hpp"

namespace ncm {

enum class BlockKind { V0, V1, A_plus, A_minus, B_plus, B_minus };

inline constexpr BlockKind kBlockKinds[6] = {BlockKind::V0,     BlockKind::V1,     BlockKind::A_plus,
                                             BlockKind::A_minus, BlockKind::B_plus, BlockKind::B_minus};

std::string to_string(BlockKind kind);
BlockKind parse_block_kind(const std::string& text);
int boundary_slots(BlockKind kind);

struct BuildingBlock {
    BlockKind kind;
    int boundary_slots;
    Rational volume;  // abstract volume units
    std::string form_id;
    QuadraticForm form;
    bool compact;
};

struct Parcel {
    std::string id;
    int dimension = 0;
    bool compact = false;
    std::vector<BuildingBlock> blocks;  // in kBlockKinds order
    QuadraticForm boundary_form;        // shared hyperplane restriction, models N
    /// certificates[i][j] separates blocks i and j; diagonal is empty.
    std::vector<std::vector<std::optional<NonCommensurabilityCertificate>>> certificates;
    /// Torsion-freeness of the congruence lattices is assumed, never computed.
    bool torsion_free_assumed = true;

    const BuildingBlock& block(BlockKind kind) const;
    Rational max_volume() const;
};

/// Six blocks on q_{5}, ..., q_{61} (non-compact) or r_{17}, ..., r_{241}
/// (compact), all of volume 1.
Parcel default_parcel(int n, bool compact);

/// Copy of `parcel` with per-block volumes in kBlockKinds order.
Parcel with_volumes(Parcel parcel, const std::vector<Rational>& volumes);

/// Throws InvariantViolation if any parcel invariant fails.
void validate(const Parcel& parcel);

enum class ElementKind { vertex, a_edge, b_edge };

/// A vertex, or the edge leaving `index` with the given label.
struct GraphElement {
    ElementKind kind;
    Vertex index;
    friend bool operator==(const GraphElement&, const GraphElement&) = default;
};

struct BlockInstance {
    std::size_t id;
    BlockKind kind;
    GraphElement serves;
    friend bool operator==(const BlockInstance&, const BlockInstance&) = default;
};

struct SlotRef {
    std::size_t instance;
    int slot;
    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct Gluing {
    SlotRef first;
    SlotRef second;
    friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Vertex block slots: 0 a-out, 1 a-in, 2 b-out, 3 b-in.
/// Edge u -> w: X- slot 0 meets u, X- slot 1 meets X+ slot 0, X+ slot 1 meets w.
inline constexpr const char* kGluingRule = "vertex-slots:a-out,a-in,b-out,b-in;edge:minus0-source,minus1-plus0,plus1-target";

struct ManifoldDescriptor {
    DecoratedGraph source_graph;
    std::string parcel_id;
    std::vector<BlockInstance> instances;
    std::vector<Gluing> gluings;
    Rational volume_bound;
    std::string gluing_rule = kGluingRule;

    friend bool operator==(const ManifoldDescriptor& x, const ManifoldDescriptor& y) {
        return x.source_graph == y.source_graph && x.parcel_id == y.parcel_id && x.instances == y.instances &&
               x.gluings == y.gluings && x.volume_bound == y.volume_bound && x.gluing_rule == y.gluing_rule;
    }
};

/// Every slot of every instance in exactly one gluing.
bool is_closed(const ManifoldDescriptor& d);

ManifoldDescriptor assemble(const DecoratedGraph& graph, const Parcel& parcel);

/// Exact total volume; throws if it exceeds 5k times the parcel's max volume.
Rational volume_bound(const ManifoldDescriptor& d, const Parcel& parcel);

struct TraceResult {
    std::vector<BlockKind> kinds;  // every block visited, start included
    BlockKind terminal;
    std::size_t crossings = 0;
};

/// Follows a reduced word from the block of the unique colored vertex
/// through the gluings.
TraceResult trace_word(const ManifoldDescriptor& d, const Word& w);

struct CommensurabilityVerdict {
    bool commensurable = false;
    bool graphs_isomorphic = false;
    std::optional<bool> common_decorated_cover;  // when both graphs are connected
    bool parcel_certified = false;
    std::string basis;
};

/// Declared verdict: commensurable exactly when the source graphs are
/// isomorphic. The supporting facts are recomputed and reported.
CommensurabilityVerdict descriptor_commensurability(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                                                    const Parcel& parcel);

struct CountReport {
    std::size_t k = 0;
    Integer descriptor_count;
    Integer floor_bound;  // ceil(k^{k/2})
};

/// ceil(k^{k/2}) exactly.
Integer ceil_half_power(std::size_t k);

CountReport count_lower_bound(const Rational& v, const Parcel& parcel);

inline constexpr std::size_t kMaxEmissionIndex = 5;

/// Descriptors for every single-colored-basepoint Schreier graph of index k,
/// in enumeration order.
std::vector<ManifoldDescriptor> assemble_all(std::size_t k, const Parcel& parcel);

/// Writes descriptor_NNNNN.json for every index-k descriptor into `dir`
/// (created if missing) and returns how many were written.
/// Throws CapacityError beyond kMaxEmissionIndex.
std::size_t emit_descriptors(const std::filesystem::path& dir, std::size_t k, const Parcel& parcel);

nlohmann::ordered_json to_json(const ManifoldDescriptor& d);
ManifoldDescriptor descriptor_from_json(const nlohmann::ordered_json& j);

}  // namespace ncm
