#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "triramsey/colorings.hpp"
#include "triramsey/hypergraph.hpp"
#include "triramsey/trifference.hpp"
#include "triramsey/verify.hpp"

namespace triramsey::io {

using json = nlohmann::json; // objects serialize with sorted keys

inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// Edge-list format: "p 3graph <num_vertices> <num_edges>" then one edge per
// line. Arbitrary integer labels are renumbered densely in sorted order.

inline std::string serialize_three_graph(const ThreeGraph& g) {
    std::ostringstream os;
    os << "p 3graph " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) os << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
    return os.str();
}

inline ThreeGraph parse_three_graph(const std::string& text) {
    std::istringstream in(text);
    std::string p, kind;
    int n = 0;
    std::size_t m = 0;
    if (!(in >> p >> kind >> n >> m) || p != "p" || kind != "3graph")
        throw std::runtime_error("edge list: bad header (want 'p 3graph N M')");
    std::vector<std::array<long long, 3>> raw(m);
    std::vector<long long> labels;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(in >> raw[i][0] >> raw[i][1] >> raw[i][2]))
            throw std::runtime_error("edge list: truncated");
        for (long long v : raw[i]) labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    bool dense = labels.empty() || (labels.front() >= 0 && labels.back() < n);
    std::vector<Edge> edges;
    for (const auto& r : raw) {
        Edge e;
        for (int j = 0; j < 3; ++j) {
            long long v = r[j];
            if (dense)
                e[j] = static_cast<int>(v);
            else
                e[j] = static_cast<int>(
                    std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
        }
        edges.push_back(e);
    }
    if (!dense) n = std::max(n, static_cast<int>(labels.size()));
    return ThreeGraph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Code format: "trifcode <N> <ell> <r>" then one word per line.

inline std::string serialize_code(const TrifferenceCode& code) {
    std::ostringstream os;
    os << "trifcode " << code.size() << ' ' << code.ell() << ' ' << code.r() << '\n';
    for (const auto& w : code.words()) os << w.to_string() << '\n';
    return os.str();
}

inline TrifferenceCode parse_code(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    int n = 0, ell = 0, r = 0;
    if (!(in >> magic >> n >> ell >> r) || magic != "trifcode")
        throw std::runtime_error("code file: bad header (want 'trifcode N ell r')");
    std::vector<TrifWord> words;
    std::string line;
    for (int i = 0; i < n; ++i) {
        if (!(in >> line)) throw std::runtime_error("code file: truncated");
        if (static_cast<int>(line.size()) != ell)
            throw std::runtime_error("code file: word length mismatch");
        words.push_back(TrifWord::from_string(line));
    }
    return TrifferenceCode(ell, r, std::move(words));
}

// ---------------------------------------------------------------------------
// Triple colorings: "tripcol <N> <tag> <seed> <params...>" then the red bit
// array hex-encoded, one 64-triple word (16 hex digits) per line. Pair
// colorings: "paircol <N> <tag> <seed> <palette> <params...>" then 8-hex
// color ids, 16 per line.

inline std::string serialize_triple_coloring(const TripleColoring& chi) {
    std::ostringstream os;
    os << "tripcol " << chi.num_vertices() << ' '
       << (chi.tag.empty() ? "untagged" : chi.tag) << ' ' << chi.seed;
    for (const auto& p : chi.params) os << ' ' << p;
    os << '\n' << std::hex << std::setfill('0');
    for (auto w : chi.raw()) os << std::setw(16) << w << '\n';
    return os.str();
}

inline TripleColoring parse_triple_coloring(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, tag;
    int n = 0;
    std::uint64_t seed = 0;
    if (!(hs >> magic >> n >> tag >> seed) || magic != "tripcol")
        throw std::runtime_error("coloring file: bad header (want 'tripcol N tag seed ...')");
    TripleColoring chi(n);
    chi.tag = tag;
    chi.seed = seed;
    std::string param;
    while (hs >> param) chi.params.push_back(param);
    for (auto& w : chi.raw()) {
        std::string line;
        if (!(in >> line)) throw std::runtime_error("coloring file: truncated");
        w = std::stoull(line, nullptr, 16);
    }
    return chi;
}

inline std::string serialize_pair_coloring(const PairColoring& pc) {
    std::ostringstream os;
    os << "paircol " << pc.num_vertices() << ' '
       << (pc.tag.empty() ? "untagged" : pc.tag) << ' ' << pc.seed << ' '
       << pc.palette_size();
    for (const auto& p : pc.params) os << ' ' << p;
    os << '\n' << std::hex << std::setfill('0');
    const auto& colors = pc.raw();
    for (std::size_t i = 0; i < colors.size(); ++i) {
        os << std::setw(8) << colors[i];
        os << (((i + 1) % 16 == 0 || i + 1 == colors.size()) ? '\n' : ' ');
    }
    return os.str();
}

inline PairColoring parse_pair_coloring(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, tag;
    int n = 0;
    std::uint64_t seed = 0;
    std::uint32_t palette = 0;
    if (!(hs >> magic >> n >> tag >> seed >> palette) || magic != "paircol")
        throw std::runtime_error(
            "coloring file: bad header (want 'paircol N tag seed palette ...')");
    PairColoring pc(n, palette);
    pc.tag = tag;
    pc.seed = seed;
    std::string param;
    while (hs >> param) pc.params.push_back(param);
    for (auto& c : pc.raw()) {
        std::string tok;
        if (!(in >> tok)) throw std::runtime_error("coloring file: truncated");
        c = static_cast<std::uint32_t>(std::stoul(tok, nullptr, 16));
    }
    return pc;
}

// ---------------------------------------------------------------------------
// Certificates, reports, manifests.

inline json certificate_node_to_json(const IteratedTripartiteCertificate::Node& node) {
    json j;
    j["vertices"] = node.vertices;
    if (!node.is_leaf()) {
        j["parts"] = {node.parts[0], node.parts[1], node.parts[2]};
        json children = json::array();
        for (const auto& c : node.children) children.push_back(certificate_node_to_json(c));
        j["children"] = children;
    }
    return j;
}

inline json certificate_to_json(const IteratedTripartiteCertificate& cert) {
    return certificate_node_to_json(cert.root);
}

inline json report_to_json(const CheckReport& report, const std::string& instance_hash,
                           double timing_ms) {
    json j;
    j["check"] = report.check;
    j["instance_hash"] = instance_hash;
    j["parameters"] = report.parameters;
    json v = json::array();
    for (const auto& viol : report.violations)
        v.push_back({{"what", viol.what}, {"witness", viol.witness}});
    j["violations"] = v;
    j["timing_ms"] = static_cast<std::int64_t>(timing_ms);
    return j;
}

inline std::string report_to_csv(const CheckReport& report,
                                 const std::string& instance_hash) {
    std::ostringstream os;
    os << "check,instance_hash,what,witness\n";
    if (report.violations.empty()) {
        os << report.check << ',' << instance_hash << ",,\n";
    } else {
        for (const auto& v : report.violations) {
            os << report.check << ',' << instance_hash << ",\"" << v.what << "\",\"";
            for (std::size_t i = 0; i < v.witness.size(); ++i)
                os << (i ? " " : "") << v.witness[i];
            os << "\"\n";
        }
    }
    return os.str();
}

inline const char* tool_version() { return "triramsey 1.0.0"; }

/// One manifest per run. The deterministic block (everything except
/// timings) is hashed so reruns with the same seed can be byte-compared.
struct RunManifest {
    std::string command;
    json parameters;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> input_hashes;
    std::map<std::string, std::string> output_hashes;
    std::int64_t timing_ms = 0;

    json to_json() const {
        json det;
        det["command"] = command;
        det["parameters"] = parameters;
        det["seed"] = seed;
        det["inputs"] = input_hashes;
        det["outputs"] = output_hashes;
        det["version"] = tool_version();
        json j = det;
        j["manifest_hash"] = fnv1a64_hex(det.dump());
        j["timing_ms"] = timing_ms;
        return j;
    }
};

} // namespace triramsey::io
