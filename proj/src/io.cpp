#include "hriesz/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hriesz {

static_assert(std::endian::native == std::endian::little, "payloads are written in host order");

using nlohmann::json;

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) { return fnv1a(s.data(), s.size(), h); }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace {

json axis_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

Axis axis_from(const json& j) { return {j.at("min").get<double>(), j.at("max").get<double>(), j.at("count").get<std::size_t>()}; }

json grid_json(const Grid& g) {
    json axes = json::array();
    bool trapezoid = true;
    for (std::size_t d = 0; d < g.dims(); ++d) {
        axes.push_back(axis_json(g.axis(d)));
        if (g.weights(d) != g.axis(d).trapezoid()) trapezoid = false;
    }
    json out = {{"axes", axes}};
    if (trapezoid) {
        out["weights"] = "trapezoid";
    } else {
        json w = json::array();
        for (std::size_t d = 0; d < g.dims(); ++d) w.push_back(g.weights(d));
        out["weights"] = w;
    }
    return out;
}

Grid grid_from(const json& j) {
    std::vector<Axis> axes;
    for (const auto& a : j.at("axes")) axes.push_back(axis_from(a));
    if (j.at("weights").is_string()) return Grid(axes);
    return Grid(axes, j.at("weights").get<std::vector<std::vector<double>>>());
}

std::string read_all(std::ifstream& in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Splits "<header>\n<payload>" and verifies size and checksum.
std::pair<json, std::string> read_framed(const std::string& path, const char* format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::string all = read_all(in);
    auto nl = all.find('\n');
    if (nl == std::string::npos) throw FormatError(path + ": missing header line");
    json h;
    try {
        h = json::parse(all.substr(0, nl));
    } catch (const json::exception& e) {
        throw FormatError(path + ": bad header: " + e.what());
    }
    if (h.value("format", "") != format) throw FormatError(path + ": not a " + std::string(format) + " file");
    std::string payload = all.substr(nl + 1);
    if (payload.size() != h.at("payload_bytes").get<std::size_t>())
        throw FormatError(path + ": payload has " + std::to_string(payload.size()) + " bytes, header says " +
                          h.at("payload_bytes").dump());
    if ("fnv1a64:" + hex64(fnv1a(payload.data(), payload.size())) != h.at("checksum").get<std::string>())
        throw FormatError(path + ": checksum mismatch");
    return {h, payload};
}

void write_framed(const std::string& path, json header, const std::string& payload) {
    header["payload_bytes"] = payload.size();
    header["checksum"] = "fnv1a64:" + hex64(fnv1a(payload.data(), payload.size()));
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << header.dump() << '\n';
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw FormatError("write failed: " + path);
}

void append_values(std::string& buf, const std::vector<cplx>& v) {
    std::size_t off = buf.size();
    buf.resize(off + v.size() * 2 * sizeof(double));
    std::memcpy(buf.data() + off, v.data(), v.size() * sizeof(cplx));
}

std::vector<cplx> take_values(const std::string& buf, std::size_t& off, std::size_t count) {
    std::vector<cplx> v(count);
    std::size_t bytes = count * sizeof(cplx);
    if (off + bytes > buf.size()) throw FormatError("payload truncated");
    std::memcpy(v.data(), buf.data() + off, bytes);
    off += bytes;
    return v;
}

}  // namespace

void write_field(const std::string& path, const SampledField& f) {
    json h = {{"format", "hriesz-field"}, {"version", 1}, {"n", f.n()}, {"grid", grid_json(f.grid())},
              {"layout", "row-major, last axis fastest; (re, im) float64 little-endian"}};
    std::string payload;
    append_values(payload, f.values());
    write_framed(path, h, payload);
}

SampledField read_field(const std::string& path) {
    auto [h, payload] = read_framed(path, "hriesz-field");
    Grid g = grid_from(h.at("grid"));
    std::size_t off = 0;
    auto v = take_values(payload, off, g.size());
    return SampledField(h.at("n").get<int>(), g, std::move(v));
}

void write_coefficients(const std::string& path, const SpectralCoefficients& c, const std::string& key) {
    json nodes = json::array();
    for (const auto& nd : c.spectral().nodes()) nodes.push_back({nd.k, nd.lambda, nd.weight});
    json h = {{"format", "hriesz-coefficients"},
              {"version", 1},
              {"key", key},
              {"n", c.spectral().n()},
              {"kmax", c.spectral().kmax()},
              {"rule", c.spectral().rule()},
              {"nodes", nodes},
              {"planar", grid_json(c.planar())},
              {"t_axis", axis_json(c.t_axis())}};
    std::string payload;
    for (std::size_t i = 0; i < c.size(); ++i) append_values(payload, c.at(i));
    write_framed(path, h, payload);
}

SpectralCoefficients read_coefficients(const std::string& path, const std::string& key) {
    auto [h, payload] = read_framed(path, "hriesz-coefficients");
    if (!key.empty() && h.at("key").get<std::string>() != key) throw FormatError(path + ": cache key mismatch");
    std::vector<SpectralNode> nodes;
    for (const auto& a : h.at("nodes")) nodes.push_back({a.at(0).get<int>(), a.at(1).get<double>(), a.at(2).get<double>()});
    SpectralGrid s(h.at("n").get<int>(), h.at("kmax").get<int>(), std::move(nodes), h.at("rule").get<std::string>());
    Grid planar = grid_from(h.at("planar"));
    std::size_t off = 0;
    std::vector<std::vector<cplx>> data;
    for (std::size_t i = 0; i < s.size(); ++i) data.push_back(take_values(payload, off, planar.size()));
    if (off != payload.size()) throw FormatError(path + ": trailing payload bytes");
    return SpectralCoefficients(std::move(s), std::move(planar), axis_from(h.at("t_axis")), std::move(data));
}

std::string coefficient_key(const std::string& function_desc, const Grid& grid, const SpectralGrid& s) {
    json j = {{"f", function_desc}, {"grid", grid_json(grid)}, {"kmax", s.kmax()}, {"rule", s.rule()},
              {"nodes", s.size()}};
    std::uint64_t h = fnv1a(j.dump());
    for (const auto& nd : s.nodes()) {
        h = fnv1a(&nd.k, sizeof nd.k, h);
        h = fnv1a(&nd.lambda, sizeof nd.lambda, h);
        h = fnv1a(&nd.weight, sizeof nd.weight, h);
    }
    return hex64(h);
}

CacheResult cached_analysis(const std::string& path, const std::string& key,
                            const std::function<SpectralCoefficients()>& compute) {
    std::string warning;
    if (std::filesystem::exists(path)) {
        try {
            return {read_coefficients(path, key), true, ""};
        } catch (const std::exception& e) {
            warning = std::string("cache rejected, recomputing: ") + e.what();
        }
    }
    SpectralCoefficients c = compute();
    write_coefficients(path, c, key);
    return {std::move(c), false, warning};
}

void write_kernel_table(const std::string& path, const KernelTable& t) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw FormatError("cannot write " + path);
    std::fprintf(f, "r1,t1,r2,t2,re,im,tail_est\n");
    for (std::size_t a = 0; a < t.r1.size(); ++a)
        for (std::size_t b = 0; b < t.t1.size(); ++b)
            for (std::size_t c = 0; c < t.r2.size(); ++c)
                for (std::size_t d = 0; d < t.t2.size(); ++d) {
                    std::size_t i = t.index(a, b, c, d);
                    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.6g\n", t.r1[a], t.t1[b], t.r2[c], t.t2[d],
                                 t.values[i].real(), t.values[i].imag(), t.tail[i]);
                }
    std::fclose(f);
    json side = {{"n", t.n},
                 {"alpha", t.alpha},
                 {"R", t.R},
                 {"kmax", t.kmax},
                 {"lmax", t.kmax},
                 {"u_nodes", t.u_nodes},
                 {"lambda_rule", t.lambda_rule},
                 {"max_tail_estimate", t.max_tail},
                 {"rows", t.size()},
                 {"columns", {"r1", "t1", "r2", "t2", "re", "im", "tail_est"}}};
    std::ofstream js(path + ".json");
    js << side.dump(2) << '\n';
}

}  // namespace hriesz
