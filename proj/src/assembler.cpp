#include "ncm/assembler.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "ncm/errors.hpp"

namespace ncm {

namespace {

std::size_t kind_index(BlockKind kind) { return static_cast<std::size_t>(kind); }

const char* element_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::vertex: return "vertex";
        case ElementKind::a_edge: return "a_edge";
        case ElementKind::b_edge: return "b_edge";
    }
    return "?";
}

ElementKind parse_element(const std::string& s) {
    if (s == "vertex") return ElementKind::vertex;
    if (s == "a_edge") return ElementKind::a_edge;
    if (s == "b_edge") return ElementKind::b_edge;
    throw PreconditionError("unknown graph element '" + s + "'");
}

int exit_slot(Letter x) { return static_cast<int>(x); }  // a-out, a-in, b-out, b-in

std::map<std::pair<std::size_t, int>, SlotRef> partner_map(const ManifoldDescriptor& d) {
    std::map<std::pair<std::size_t, int>, SlotRef> partner;
    for (const auto& g : d.gluings) {
        partner[{g.first.instance, g.first.slot}] = g.second;
        partner[{g.second.instance, g.second.slot}] = g.first;
    }
    return partner;
}

}  // namespace

std::string to_string(BlockKind kind) {
    static const char* names[] = {"V0", "V1", "A_plus", "A_minus", "B_plus", "B_minus"};
    return names[kind_index(kind)];
}

BlockKind parse_block_kind(const std::string& text) {
    for (BlockKind k : kBlockKinds) {
        if (to_string(k) == text) return k;
    }
    throw PreconditionError("unknown block kind '" + text + "'");
}

int boundary_slots(BlockKind kind) { return (kind == BlockKind::V0 || kind == BlockKind::V1) ? 4 : 2; }

// --- parcels ----------------------------------------------------------------------

const BuildingBlock& Parcel::block(BlockKind kind) const { return blocks.at(kind_index(kind)); }

Rational Parcel::max_volume() const {
    Rational m = blocks.front().volume;
    for (const auto& b : blocks) m = std::max(m, b.volume);
    return m;
}

void validate(const Parcel& parcel) {
    ensure(parcel.blocks.size() == 6, "parcel must hold six blocks");
    ensure(parcel.certificates.size() == 6, "certificate matrix must be 6x6");
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& b = parcel.blocks[i];
        ensure(b.kind == kBlockKinds[i], "parcel blocks out of order");
        ensure(b.boundary_slots == boundary_slots(b.kind), "wrong boundary slot count for " + to_string(b.kind));
        ensure(sgn(b.volume) > 0, "block volumes must be positive");
        ensure(b.compact == parcel.compact, "blocks must be all compact or all non-compact");
        ensure(restrict_to_hyperplane(b.form) == parcel.boundary_form, "boundary type differs for " + b.form_id);
        ensure(parcel.certificates[i].size() == 6, "certificate matrix must be 6x6");
        for (std::size_t j = 0; j < 6; ++j) {
            ensure((i == j) != parcel.certificates[i][j].has_value(),
                   "missing non-commensurability certificate between blocks " + std::to_string(i) + " and " +
                       std::to_string(j));
        }
    }
}

Parcel default_parcel(int n, bool compact) {
    require(n >= 3, "dimension n must be at least 3");
    const auto& params = compact ? kAnisotropicPrimes : kIsotropicPrimes;
    std::vector<BuildingBlock> blocks;
    for (std::size_t i = 0; i < 6; ++i) {
        Integer a = static_cast<unsigned long>(params[i]);
        QuadraticForm f = compact ? make_r(a, n) : make_q(a, n);
        std::string id = (compact ? "r_" : "q_") + std::to_string(params[i]);
        blocks.push_back({kBlockKinds[i], boundary_slots(kBlockKinds[i]), Rational(1), id, f, compact});
    }
    QuadraticForm boundary = restrict_to_hyperplane(blocks.front().form);
    std::vector<std::vector<std::optional<NonCommensurabilityCertificate>>> certs(
        6, std::vector<std::optional<NonCommensurabilityCertificate>>(6));
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (i != j) certs[i][j] = noncommensurability_certificate(blocks[i].form, blocks[j].form);
        }
    }
    Parcel parcel{(compact ? "compact-n" : "noncompact-n") + std::to_string(n), n, compact, std::move(blocks),
                  boundary, std::move(certs), true};
    validate(parcel);
    return parcel;
}

Parcel with_volumes(Parcel parcel, const std::vector<Rational>& volumes) {
    require(volumes.size() == 6, "need one volume per block");
    for (std::size_t i = 0; i < 6; ++i) {
        require(sgn(volumes[i]) > 0, "block volumes must be positive");
        parcel.blocks[i].volume = volumes[i];
    }
    parcel.id += "-custom-volumes";
    return parcel;
}

// --- assembly ---------------------------------------------------------------------

bool is_closed(const ManifoldDescriptor& d) {
    std::vector<std::vector<int>> uses(d.instances.size());
    for (std::size_t i = 0; i < d.instances.size(); ++i) {
        if (d.instances[i].id != i) return false;
        uses[i].assign(static_cast<std::size_t>(boundary_slots(d.instances[i].kind)), 0);
    }
    for (const auto& g : d.gluings) {
        for (const SlotRef& s : {g.first, g.second}) {
            if (s.instance >= uses.size() || s.slot < 0 || static_cast<std::size_t>(s.slot) >= uses[s.instance].size())
                return false;
            ++uses[s.instance][static_cast<std::size_t>(s.slot)];
        }
    }
    for (const auto& u : uses) {
        if (!std::all_of(u.begin(), u.end(), [](int c) { return c == 1; })) return false;
    }
    return true;
}

ManifoldDescriptor assemble(const DecoratedGraph& graph, const Parcel& parcel) {
    require(graph.is_connected(), "assembly needs a connected decorated graph");
    const std::size_t k = graph.vertex_count();
    ManifoldDescriptor d{graph, parcel.id, {}, {}, Rational(0), kGluingRule};
    d.instances.reserve(5 * k);
    d.gluings.reserve(6 * k);

    for (Vertex v = 0; v < k; ++v) {
        d.instances.push_back({v, graph.is_colored(v) ? BlockKind::V1 : BlockKind::V0, {ElementKind::vertex, v}});
    }
    for (Vertex u = 0; u < k; ++u) {
        for (int label = 0; label < 2; ++label) {
            bool is_a = label == 0;
            GraphElement edge{is_a ? ElementKind::a_edge : ElementKind::b_edge, u};
            std::size_t minus = d.instances.size();
            d.instances.push_back({minus, is_a ? BlockKind::A_minus : BlockKind::B_minus, edge});
            d.instances.push_back({minus + 1, is_a ? BlockKind::A_plus : BlockKind::B_plus, edge});

            Vertex w = is_a ? graph.perm_a()[u] : graph.perm_b()[u];
            int out_slot = is_a ? 0 : 2;
            d.gluings.push_back({{u, out_slot}, {minus, 0}});
            d.gluings.push_back({{minus, 1}, {minus + 1, 0}});
            d.gluings.push_back({{minus + 1, 1}, {w, out_slot + 1}});
        }
    }
    for (const auto& inst : d.instances) d.volume_bound += parcel.block(inst.kind).volume;

    ensure(d.instances.size() == 5 * k, "descriptor must have 5k block instances");
    ensure(is_closed(d), "assembled descriptor has a free or doubly glued slot");
    return d;
}

Rational volume_bound(const ManifoldDescriptor& d, const Parcel& parcel) {
    Rational total = 0;
    for (const auto& inst : d.instances) total += parcel.block(inst.kind).volume;
    Rational cap = Rational(5 * static_cast<long>(d.source_graph.vertex_count())) * parcel.max_volume();
    ensure(total <= cap, "total volume " + to_string(total) + " exceeds 5k times the max block volume");
    return total;
}

TraceResult trace_word(const ManifoldDescriptor& d, const Word& w) {
    auto colored = d.source_graph.colored_vertices();
    require(colored.size() == 1, "path tracing needs exactly one colored vertex");
    require(w.is_reduced(), "path tracing needs a freely reduced word");
    auto partner = partner_map(d);

    TraceResult r;
    std::size_t current = colored.front();
    r.kinds.push_back(d.instances[current].kind);
    auto cross = [&](std::size_t instance, int slot) {
        SlotRef next = partner.at({instance, slot});
        ++r.crossings;
        r.kinds.push_back(d.instances[next.instance].kind);
        return next;
    };
    for (Letter x : w.letters()) {
        SlotRef s = cross(current, exit_slot(x));
        s = cross(s.instance, 1 - s.slot);  // through the first edge block
        s = cross(s.instance, 1 - s.slot);  // through the second edge block
        current = s.instance;
        ensure(boundary_slots(d.instances[current].kind) == 4, "edge pair did not lead to a vertex block");
    }
    r.terminal = d.instances[current].kind;
    return r;
}

CommensurabilityVerdict descriptor_commensurability(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                                                    const Parcel& parcel) {
    CommensurabilityVerdict v;
    v.graphs_isomorphic = is_isomorphic(d1.source_graph, d2.source_graph);
    if (d1.source_graph.is_connected() && d2.source_graph.is_connected()) {
        v.common_decorated_cover = has_common_decorated_cover(d1.source_graph, d2.source_graph).has_value();
    }
    try {
        validate(parcel);
        v.parcel_certified = true;
    } catch (const InvariantViolation&) {
        v.parcel_certified = false;
    }
    v.commensurable = v.graphs_isomorphic;
    v.basis = v.graphs_isomorphic
                  ? "isomorphic source graphs give isometric descriptors"
                  : "non-isomorphic source graphs; geometric non-commensurability is assumed from the "
                    "parcel certificates and the block-type tracing argument, not computed";
    return v;
}

// --- counting -----------------------------------------------------------------------

Integer ceil_half_power(std::size_t k) {
    require(k >= 1, "k must be positive");
    Integer kk;
    mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
    Integer root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), kk.get_mpz_t());
    if (sgn(rem) != 0) root += 1;
    return root;
}

CountReport count_lower_bound(const Rational& v, const Parcel& parcel) {
    Rational unit = 5 * parcel.max_volume();
    require(v >= unit, "volume " + to_string(v) + " is below one vertex block scale " + to_string(unit));
    Rational q = v / unit;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    require(mpz_fits_ulong_p(k.get_mpz_t()), "volume too large");
    CountReport r;
    r.k = k.get_ui();
    r.descriptor_count = hall_count(r.k);
    r.floor_bound = ceil_half_power(r.k);
    ensure(r.descriptor_count >= r.floor_bound, "subgroup growth bound a_k >= k^{k/2} failed");
    return r;
}

std::vector<ManifoldDescriptor> assemble_all(std::size_t k, const Parcel& parcel) {
    std::vector<ManifoldDescriptor> out;
    for (const auto& h : enumerate_subgroups(k)) out.push_back(assemble(from_subgroup(h), parcel));
    return out;
}

std::size_t emit_descriptors(const std::filesystem::path& dir, std::size_t k, const Parcel& parcel) {
    if (k > kMaxEmissionIndex) {
        throw CapacityError("descriptor emission is capped at k = " + std::to_string(kMaxEmissionIndex) +
                            " (requested k = " + std::to_string(k) + ")");
    }
    std::filesystem::create_directories(dir);
    std::size_t written = 0;
    for (const auto& d : assemble_all(k, parcel)) {
        char name[32];
        std::snprintf(name, sizeof name, "descriptor_%05zu.json", written);
        std::ofstream out(dir / name, std::ios::binary);
        out << to_json(d).dump(2) << '\n';
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        ++written;
    }
    return written;
}

// --- serialization -------------------------------------------------------------------

nlohmann::ordered_json to_json(const ManifoldDescriptor& d) {
    using nlohmann::ordered_json;
    ordered_json graph;
    graph["vertex_count"] = d.source_graph.vertex_count();
    graph["perm_a"] = d.source_graph.perm_a();
    graph["perm_b"] = d.source_graph.perm_b();
    graph["colored"] = d.source_graph.colored_vertices();

    ordered_json instances = ordered_json::array();
    for (const auto& inst : d.instances) {
        ordered_json j;
        j["id"] = inst.id;
        j["kind"] = to_string(inst.kind);
        j["serves"] = ordered_json{{"element", element_name(inst.serves.kind)}, {"index", inst.serves.index}};
        instances.push_back(std::move(j));
    }
    ordered_json gluings = ordered_json::array();
    for (const auto& g : d.gluings) {
        gluings.push_back(ordered_json::array({ordered_json::array({g.first.instance, g.first.slot}),
                                               ordered_json::array({g.second.instance, g.second.slot})}));
    }

    ordered_json out;
    out["graph"] = std::move(graph);
    out["parcel_id"] = d.parcel_id;
    out["instances"] = std::move(instances);
    out["gluings"] = std::move(gluings);
    out["volume_bound"] = to_string(d.volume_bound);
    out["gluing_rule"] = d.gluing_rule;
    return out;
}

ManifoldDescriptor descriptor_from_json(const nlohmann::ordered_json& j) {
    try {
        const auto& g = j.at("graph");
        DecoratedGraph graph(g.at("perm_a").get<Permutation>(), g.at("perm_b").get<Permutation>(),
                             g.at("colored").get<std::vector<Vertex>>());
        require(graph.vertex_count() == g.at("vertex_count").get<std::size_t>(), "vertex_count mismatch");
        ManifoldDescriptor d{graph, j.at("parcel_id").get<std::string>(), {}, {},
                             parse_rational(j.at("volume_bound").get<std::string>()),
                             j.at("gluing_rule").get<std::string>()};
        for (const auto& inst : j.at("instances")) {
            d.instances.push_back({inst.at("id").get<std::size_t>(),
                                   parse_block_kind(inst.at("kind").get<std::string>()),
                                   {parse_element(inst.at("serves").at("element").get<std::string>()),
                                    inst.at("serves").at("index").get<Vertex>()}});
        }
        for (const auto& gl : j.at("gluings")) {
            d.gluings.push_back({{gl.at(0).at(0).get<std::size_t>(), gl.at(0).at(1).get<int>()},
                                 {gl.at(1).at(0).get<std::size_t>(), gl.at(1).at(1).get<int>()}});
        }
        require(is_closed(d), "descriptor is not closed");
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("malformed descriptor: ") + e.what());
    }
}

}  // namespace ncm
