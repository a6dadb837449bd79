#include "ncm/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "criteria.hpp"
#include "json.hpp"
#include "ncm/assembler.hpp"
#include "ncm/decorated_graphs.hpp"
#include "ncm/errors.hpp"
#include "ncm/form_families.hpp"
#include "ncm/free_groups.hpp"

namespace ncm::cli {

namespace {

using Json = nlohmann::ordered_json;

// Pairwise graph commands grow quadratically in a_k.
constexpr std::size_t kMaxPairwiseIndex = 6;

struct Options {
    std::string family = "isotropic";
    std::size_t count = 6;
    int n = 4;
    std::string v;
    bool compact = false;
    bool json = false;
    bool verify = false;
    std::string emit_dir;
    std::size_t k = 1;
    std::string graph_subcommand;
    std::string graph_file;
    std::optional<std::size_t> assemble_k;
    std::size_t assemble_index = 0;
};

CommandResult ok(std::string payload) { return {CommandResult::Status::ok, ExitCode::ok, std::move(payload)}; }

CommandResult finish(std::string payload, const std::vector<std::string>& problems, std::ostream& err) {
    for (const auto& p : problems) err << "verification failed: " << p << '\n';
    if (problems.empty()) return ok(std::move(payload));
    return {CommandResult::Status::error, ExitCode::verification_failure, std::move(payload)};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json conditions_json(const PrimeSearchReport& r) {
    Json c = Json::object();
    for (const auto& [key, value] : r.conditions) c[key] = value;
    return c;
}

std::string permutation_text(const Permutation& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    return s + "]";
}

// --- primes ------------------------------------------------------------------------

CommandResult cmd_primes(const Options& o, std::ostream& err) {
    require(o.count >= 1, "count must be at least 1");
    const bool aniso = o.family == "anisotropic";
    auto reports = aniso ? search_primes_anisotropic(o.count) : search_primes_isotropic(o.count);
    const auto& expected = aniso ? kAnisotropicPrimes : kIsotropicPrimes;

    std::vector<std::string> problems;
    if (o.verify) {
        for (std::size_t i = 0; i < reports.size() && i < expected.size(); ++i) {
            if (reports[i].prime != expected[i]) {
                problems.push_back("prime " + std::to_string(i + 1) + " is " + std::to_string(reports[i].prime) +
                                   ", expected " + std::to_string(expected[i]));
            }
        }
        for (const auto& r : reports) {
            bool good = r.conditions.at("(-1/p)") == 1 && r.conditions.at("(2/p)") == (aniso ? 1 : -1);
            if (aniso) good = good && r.conditions.at("(sqrt2/p)") == -1 && !r.gauss_representation;
            if (!good) problems.push_back("conditions fail at p = " + std::to_string(r.prime));
        }
    }

    if (o.json) {
        Json j;
        j["family"] = o.family;
        j["primes"] = Json::array();
        for (const auto& r : reports) {
            Json e;
            e["p"] = r.prime;
            e["conditions"] = conditions_json(r);
            if (aniso) e["gauss_representation"] = nullptr;
            j["primes"].push_back(e);
        }
        return finish(dump(j), problems, err);
    }
    std::ostringstream s;
    s << std::left << std::setw(8) << "p";
    for (const auto& [key, value] : reports.front().conditions) s << std::setw(12) << key;
    s << '\n';
    for (const auto& r : reports) {
        s << std::setw(8) << r.prime;
        for (const auto& [key, value] : r.conditions) s << std::setw(12) << (value > 0 ? "+1" : "-1");
        s << '\n';
    }
    return finish(s.str(), problems, err);
}

// --- forms -------------------------------------------------------------------------

CommandResult cmd_forms(const Options& o, std::ostream& err) {
    require(o.count >= 1, "count must be at least 1");
    const bool aniso = o.family == "anisotropic";
    auto reports = aniso ? search_primes_anisotropic(o.count) : search_primes_isotropic(o.count);
    std::vector<QuadraticForm> forms;
    for (const auto& r : reports) {
        Integer a = static_cast<unsigned long>(r.prime);
        forms.push_back(aniso ? make_r(a, o.n) : make_q(a, o.n));
    }
    const bool odd_rank = (o.n + 1) % 2 == 1;

    std::vector<std::string> problems;
    std::vector<std::vector<std::optional<NonCommensurabilityCertificate>>> matrix(o.count);
    for (std::size_t i = 0; i < o.count; ++i) {
        for (std::size_t j = 0; j < o.count; ++j) {
            if (i == j) {
                matrix[i].emplace_back();
                continue;
            }
            matrix[i].push_back(noncommensurability_certificate(forms[i], forms[j]));
            std::string at = "(" + std::to_string(reports[i].prime) + ", " + std::to_string(reports[j].prime) + ")";
            const auto& c = matrix[i][j];
            if (!c) {
                problems.push_back("inconclusive entry " + at);
            } else if (o.verify) {
                if (odd_rank && c->witness_prime != reports[i].prime) problems.push_back("witness is not the row prime " + at);
                if (!odd_rank && c->method != CertificateMethod::discriminant_ratio) problems.push_back("unexpected method " + at);
            }
        }
    }

    auto entry_text = [](const std::optional<NonCommensurabilityCertificate>& c) -> std::string {
        if (!c) return "?";
        if (c->method == CertificateMethod::epsilon_at_prime) return "eps@" + std::to_string(*c->witness_prime);
        return "disc:" + c->ratio_class.get_str();
    };

    if (o.json) {
        Json j;
        j["family"] = o.family;
        j["n"] = o.n;
        j["parameters"] = Json::array();
        for (const auto& r : reports) j["parameters"].push_back(r.prime);
        j["forms"] = Json::array();
        for (const auto& f : forms) j["forms"].push_back(to_string(f));
        j["matrix"] = Json::array();
        for (std::size_t i = 0; i < o.count; ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < o.count; ++k) {
                const auto& c = matrix[i][k];
                if (i == k || !c) {
                    row.push_back(nullptr);
                    continue;
                }
                Json e;
                e["method"] = to_string(c->method);
                if (c->witness_prime) e["witness_prime"] = *c->witness_prime;
                if (c->method == CertificateMethod::epsilon_at_prime) {
                    e["epsilon"] = {c->detail.first.get_si(), c->detail.second.get_si()};
                } else {
                    e["square_classes"] = {c->detail.first.get_str(), c->detail.second.get_str()};
                    e["ratio_class"] = c->ratio_class.get_str();
                }
                row.push_back(e);
            }
            j["matrix"].push_back(row);
        }
        j["certified"] = problems.empty();
        return finish(dump(j), problems, err);
    }

    std::ostringstream s;
    s << std::left << std::setw(8) << "a";
    for (const auto& r : reports) s << std::setw(10) << r.prime;
    s << '\n';
    for (std::size_t i = 0; i < o.count; ++i) {
        s << std::setw(8) << reports[i].prime;
        for (std::size_t j = 0; j < o.count; ++j) s << std::setw(10) << (i == j ? "-" : entry_text(matrix[i][j]));
        s << '\n';
    }
    return finish(s.str(), problems, err);
}

// --- subgroups ---------------------------------------------------------------------

CommandResult cmd_subgroups(const Options& o, std::ostream& err) {
    require(o.k >= 1, "index must be at least 1");
    if (o.k > kMaxEnumerationIndex) {
        throw CapacityError("subgroup enumeration is capped at k = " + std::to_string(kMaxEnumerationIndex));
    }
    std::vector<std::string> problems;
    Json rows = Json::array();
    std::ostringstream s;
    s << std::left << std::setw(4) << "k" << std::setw(12) << "enumerated" << std::setw(12) << "hall" << "ceil(k^(k/2))\n";
    for (std::size_t k = 1; k <= o.k; ++k) {
        std::size_t enumerated = enumerate_subgroups(k).size();
        Integer hall = hall_count(k);
        Integer bound = ceil_half_power(k);
        if (hall != enumerated) problems.push_back("enumeration and Hall recursion differ at k = " + std::to_string(k));
        if (hall < bound) problems.push_back("a_k < k^(k/2) at k = " + std::to_string(k));
        s << std::setw(4) << k << std::setw(12) << enumerated << std::setw(12) << hall.get_str() << bound.get_str() << '\n';
        Json r;
        r["k"] = k;
        r["enumerated"] = enumerated;
        r["hall"] = hall.get_str();
        r["bound"] = bound.get_str();
        rows.push_back(r);
    }
    if (o.json) {
        Json j;
        j["subgroups"] = rows;
        return finish(dump(j), problems, err);
    }
    return finish(s.str(), problems, err);
}

// --- graphs ------------------------------------------------------------------------

CommandResult cmd_graphs(const Options& o, std::ostream& err) {
    require(o.k >= 1, "index must be at least 1");
    if (o.k > kMaxEnumerationIndex) {
        throw CapacityError("subgroup enumeration is capped at k = " + std::to_string(kMaxEnumerationIndex));
    }
    if (o.graph_subcommand != "enumerate" && o.k > kMaxPairwiseIndex) {
        throw CapacityError("pairwise graph commands are capped at k = " + std::to_string(kMaxPairwiseIndex));
    }
    auto tables = enumerate_subgroups(o.k);
    std::vector<std::string> problems;
    std::ostringstream s;
    Json j;
    j["k"] = o.k;

    if (o.graph_subcommand == "enumerate") {
        j["tables"] = Json::array();
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const auto& t = tables[i];
            s << i << ' ' << "a=" << permutation_text(t.perm_a()) << " b=" << permutation_text(t.perm_b()) << '\n';
            Json e;
            e["perm_a"] = t.perm_a();
            e["perm_b"] = t.perm_b();
            j["tables"].push_back(e);
        }
    } else if (o.graph_subcommand == "covers") {
        std::vector<DecoratedGraph> graphs;
        for (const auto& t : tables) graphs.push_back(from_subgroup(t));
        j["matrix"] = Json::array();
        std::size_t common = 0;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            std::string row;
            Json jrow = Json::array();
            for (std::size_t k = 0; k < graphs.size(); ++k) {
                bool c = has_common_decorated_cover(graphs[i], graphs[k]).has_value();
                if (i != k && c) {
                    ++common;
                    problems.push_back("common decorated cover for distinct subgroups " + std::to_string(i) + ", " +
                                       std::to_string(k));
                }
                if (i == k && !c) problems.push_back("no witness cover for subgroup " + std::to_string(i));
                row += c ? '1' : '0';
                jrow.push_back(c);
            }
            s << row << '\n';
            j["matrix"].push_back(jrow);
        }
        s << "off-diagonal common covers: " << common << '\n';
        j["off_diagonal_common_covers"] = common;
    } else {
        j["words"] = Json::array();
        for (std::size_t i = 0; i < tables.size(); ++i) {
            for (std::size_t k = i + 1; k < tables.size(); ++k) {
                auto w = distinguishing_word(tables[i], tables[k]);
                if (!w) {
                    problems.push_back("no distinguishing word for " + std::to_string(i) + ", " + std::to_string(k));
                    continue;
                }
                int in = word_membership(tables[i], *w) ? static_cast<int>(i) : static_cast<int>(k);
                s << i << ' ' << k << ' ' << to_string(*w) << " in " << in << '\n';
                Json e;
                e["first"] = i;
                e["second"] = k;
                e["word"] = to_string(*w);
                e["member_of"] = in;
                j["words"].push_back(e);
            }
        }
    }
    return finish(o.json ? dump(j) : s.str(), problems, err);
}

// --- assemble ----------------------------------------------------------------------

DecoratedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read graph file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str());
}

CommandResult cmd_assemble(const Options& o, std::ostream& err) {
    require(o.graph_file.empty() != !o.assemble_k.has_value(), "give either a graph file or --k with --index");
    Parcel parcel = default_parcel(o.n, o.compact);
    std::optional<DecoratedGraph> graph;
    if (o.assemble_k) {
        require(*o.assemble_k >= 1, "index must be at least 1");
        auto tables = enumerate_subgroups(*o.assemble_k);
        require(o.assemble_index < tables.size(),
                "--index out of range: index-" + std::to_string(*o.assemble_k) + " has " +
                    std::to_string(tables.size()) + " subgroups");
        graph = from_subgroup(tables[o.assemble_index]);
    } else {
        graph = load_graph(o.graph_file);
    }
    ManifoldDescriptor d = assemble(*graph, parcel);

    std::vector<std::string> problems;
    const std::size_t k = graph->vertex_count();
    if (o.verify) {
        if (!is_closed(d)) problems.push_back("descriptor is not closed");
        if (d.instances.size() != 5 * k) problems.push_back("instance count is not 5k");
        if (d.gluings.size() != 6 * k) problems.push_back("gluing count is not 6k");
        if (volume_bound(d, parcel) > Rational(static_cast<long>(5 * k)) * parcel.max_volume()) {
            problems.push_back("volume exceeds 5k times the parcel maximum");
        }
        if (!(descriptor_from_json(to_json(d)) == d)) problems.push_back("JSON round trip changed the descriptor");
    }
    if (o.json) return finish(dump(to_json(d)), problems, err);

    std::ostringstream s;
    s << "parcel        " << d.parcel_id << '\n'
      << "vertices      " << k << '\n'
      << "instances     " << d.instances.size() << '\n'
      << "gluings       " << d.gluings.size() << '\n'
      << "volume bound  " << to_string(d.volume_bound) << '\n'
      << "closed        " << (is_closed(d) ? "yes" : "no") << '\n';
    std::size_t counts[6] = {};
    for (const auto& inst : d.instances) ++counts[static_cast<int>(inst.kind)];
    for (BlockKind kind : kBlockKinds) {
        s << std::left << std::setw(14) << to_string(kind) << counts[static_cast<int>(kind)] << '\n';
    }
    return finish(s.str(), problems, err);
}

// --- count -------------------------------------------------------------------------

CommandResult cmd_count(const Options& o, std::ostream& err) {
    require(!o.v.empty(), "--v is required");
    Rational v = parse_rational(o.v);
    Parcel parcel = default_parcel(o.n, o.compact);
    CountReport r = count_lower_bound(v, parcel);

    std::vector<std::string> problems;
    std::optional<std::size_t> emitted;
    if (!o.emit_dir.empty()) {
        emitted = emit_descriptors(o.emit_dir, r.k, parcel);
        if (*emitted != r.descriptor_count) problems.push_back("emitted descriptor count differs from a_k");
        if (o.verify) {
            std::size_t checked = 0;
            for (const auto& entry : std::filesystem::directory_iterator(o.emit_dir)) {
                if (entry.path().extension() != ".json") continue;
                std::ifstream in(entry.path());
                auto d = descriptor_from_json(Json::parse(in));
                if (!is_closed(d)) problems.push_back("not closed: " + entry.path().filename().string());
                if (volume_bound(d, parcel) != d.volume_bound) problems.push_back("volume mismatch: " + entry.path().filename().string());
                ++checked;
            }
            if (checked != *emitted) problems.push_back("directory holds a different number of descriptors");
        }
    }
    if (o.verify && r.k <= kMaxEnumerationIndex && r.k >= 1) {
        if (enumerate_subgroups(r.k).size() != r.descriptor_count) problems.push_back("enumeration differs from a_k");
    }

    if (o.json) {
        Json j;
        j["v"] = to_string(v);
        j["parcel"] = parcel.id;
        j["k"] = r.k;
        j["descriptors"] = r.descriptor_count.get_str();
        j["lower_bound"] = r.floor_bound.get_str();
        if (emitted) j["emitted"] = *emitted;
        return finish(dump(j), problems, err);
    }
    std::ostringstream s;
    s << "k=" << r.k << ", " << r.descriptor_count.get_str() << " >= " << r.floor_bound.get_str() << '\n';
    if (emitted) s << "emitted " << *emitted << " descriptors to " << o.emit_dir << '\n';
    return finish(s.str(), problems, err);
}

// --- selftest ----------------------------------------------------------------------

CommandResult cmd_selftest(const Options& o, std::ostream& err) {
    std::vector<std::string> problems;
    std::ostringstream s;
    Json j = Json::array();
    for (const auto& c : selftest::criteria()) {
        auto r = selftest::run(c);
        if (!r.passed()) problems.push_back("criterion " + std::to_string(r.id) + " (" + r.name + ")");
        s << selftest::format_line(r) << '\n';
        Json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["passed"] = r.passed();
        e["seconds"] = r.seconds;
        e["budget_seconds"] = r.budget_seconds;
        e["detail"] = r.detail;
        j.push_back(e);
    }
    return finish(o.json ? dump(j) : s.str(), problems, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Arithmetic building blocks, decorated graphs and manifold descriptor counts", "ncm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ncm 1.0");

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "Structured output");
        sub->add_flag("--verify", o.verify, "Turn expected values into exit-code assertions");
    };
    auto family = [&](CLI::App* sub) {
        sub->add_option("family", o.family, "isotropic or anisotropic")
            ->required()
            ->check(CLI::IsMember({"isotropic", "anisotropic"}));
    };

    auto* primes = app.add_subcommand("primes", "Prime parameter searches");
    family(primes);
    primes->add_option("count,--count", o.count, "Number of primes");
    add_common(primes);

    auto* forms = app.add_subcommand("forms", "Pairwise non-commensurability certificates");
    family(forms);
    forms->add_option("--n", o.n, "Hyperbolic dimension");
    forms->add_option("--count", o.count, "Number of forms");
    add_common(forms);

    auto* subgroups = app.add_subcommand("subgroups", "Index-k subgroup counts of F2");
    subgroups->add_option("k", o.k, "Largest index")->required();
    add_common(subgroups);

    auto* graphs = app.add_subcommand("graphs", "Decorated Schreier graphs");
    graphs->add_option("k", o.k, "Index")->required();
    graphs->add_option("command", o.graph_subcommand, "enumerate, covers or distinguish")
        ->required()
        ->check(CLI::IsMember({"enumerate", "covers", "distinguish"}));
    add_common(graphs);

    auto* assemble_cmd = app.add_subcommand("assemble", "Assemble a manifold descriptor from a graph");
    assemble_cmd->add_option("graph", o.graph_file, "Graph text file");
    assemble_cmd->add_option("--k", o.assemble_k, "Subgroup index");
    assemble_cmd->add_option("--index", o.assemble_index, "Position in the index-k enumeration");
    assemble_cmd->add_option("--n", o.n, "Hyperbolic dimension");
    assemble_cmd->add_flag("--compact", o.compact, "Use the compact parcel");
    add_common(assemble_cmd);

    auto* count = app.add_subcommand("count", "Descriptor count lower bound at volume v");
    count->add_option("--v", o.v, "Volume, integer or a/b")->required();
    count->add_option("--n", o.n, "Hyperbolic dimension");
    count->add_flag("--compact", o.compact, "Use the compact parcel");
    count->add_option("--emit-descriptors", o.emit_dir, "Write every descriptor as JSON into DIR");
    add_common(count);

    auto* selftest_cmd = app.add_subcommand("selftest", "Run every acceptance criterion");
    selftest_cmd->add_flag("--json", o.json, "Structured output");

    std::vector<std::string> argv_storage{"ncm"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage_error);
    }

    CommandResult result;
    try {
        if (primes->parsed()) result = cmd_primes(o, err);
        else if (forms->parsed()) result = cmd_forms(o, err);
        else if (subgroups->parsed()) result = cmd_subgroups(o, err);
        else if (graphs->parsed()) result = cmd_graphs(o, err);
        else if (assemble_cmd->parsed()) result = cmd_assemble(o, err);
        else if (count->parsed()) result = cmd_count(o, err);
        else result = cmd_selftest(o, err);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage_error);
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage_error);
    } catch (const InvariantViolation& e) {
        err << "verification failed: " << e.what() << '\n';
        return static_cast<int>(ExitCode::verification_failure);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage_error);
    }
    out << result.payload;
    return static_cast<int>(result.code);
}

}  // namespace ncm::cli
