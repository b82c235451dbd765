#include "speclab/io.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace speclab {

namespace fs = std::filesystem;

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line without '=': " + line);
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

Config Config::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

bool Config::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> Config::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return std::nullopt;
}

std::optional<double> Config::get_double(const std::string& key) const {
    const auto v = get(key);
    if (!v) return std::nullopt;
    return std::stod(*v);
}

std::optional<std::int64_t> Config::get_int(const std::string& key) const {
    const auto v = get(key);
    if (!v) return std::nullopt;
    return std::stoll(*v);
}

std::optional<std::uint64_t> Config::get_uint(const std::string& key) const {
    const auto v = get(key);
    if (!v) return std::nullopt;
    return std::stoull(*v);
}

void Config::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Config::set_double(const std::string& key, double value) { set(key, format_float(value)); }
void Config::set_uint(const std::string& key, std::uint64_t value) {
    set(key, std::to_string(value));
}

std::string Config::serialize() const {
    std::ostringstream out;
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
    return out.str();
}

void RunManifest::write(const fs::path& path) const {
    Config full;
    full.set("command", command);
    full.set("tool_version", tool_version);
    full.set("started", started);
    full.set("finished", finished);
    for (const auto& [k, v] : config.entries()) full.set(k, v);
    for (std::size_t i = 0; i < outputs.size(); ++i)
        full.set("output." + std::to_string(i), outputs[i]);
    write_file_atomic(path, full.serialize());
}

RunManifest RunManifest::load(const fs::path& path) {
    const Config full = Config::load(path);
    RunManifest m;
    m.command = full.get("command").value_or("");
    m.tool_version = full.get("tool_version").value_or("");
    m.started = full.get("started").value_or("");
    m.finished = full.get("finished").value_or("");
    for (const auto& [k, v] : full.entries()) {
        if (k.rfind("output.", 0) == 0)
            m.outputs.push_back(v);
        else if (k != "command" && k != "tool_version" && k != "started" && k != "finished")
            m.config.set(k, v);
    }
    return m;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string tool_version() { return "0.1.0"; }

void write_file_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, path);
}

namespace {

constexpr char kMagic[5] = {'S', 'P', 'L', 'B', '1'};

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}
void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
}

struct Reader {
    const std::string& data;
    std::size_t pos = 0;
    std::uint64_t u64() {
        if (pos + 8 > data.size()) throw std::runtime_error("container truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(data[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    std::uint32_t u32() {
        if (pos + 4 > data.size()) throw std::runtime_error("container truncated");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(data[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    double f64() {
        const std::uint64_t bits = u64();
        double d;
        std::memcpy(&d, &bits, 8);
        return d;
    }
};

void write_container(const fs::path& path, ContainerTag tag, std::uint64_t n,
                     const std::string& payload) {
    std::string out;
    out.reserve(14 + payload.size());
    out.append(kMagic, 5);
    out.push_back(char(tag));
    put_u64(out, n);
    out += payload;
    write_file_atomic(path, out);
}

}  // namespace

void write_adjacency(const fs::path& path, std::uint64_t n,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::string payload;
    payload.reserve(8 + edges.size() * 8);
    put_u64(payload, edges.size());
    for (auto [u, v] : edges) {
        put_u32(payload, u);
        put_u32(payload, v);
    }
    write_container(path, ContainerTag::adjacency, n, payload);
}

void write_dense(const fs::path& path, const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("container stores square matrices");
    std::string payload;
    payload.reserve(std::size_t(m.size()) * 8);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) put_f64(payload, m(i, j));
    write_container(path, ContainerTag::dense_real, std::uint64_t(m.rows()), payload);
}

MatrixContainer read_container(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open container: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    if (data.size() < 14 || std::memcmp(data.data(), kMagic, 5) != 0)
        throw std::runtime_error("not a SPLB1 container: " + path.string());
    MatrixContainer c;
    c.tag = ContainerTag(std::uint8_t(data[5]));
    Reader r{data, 6};
    c.n = r.u64();
    if (c.tag == ContainerTag::adjacency) {
        const std::uint64_t count = r.u64();
        c.edges.reserve(count);
        for (std::uint64_t k = 0; k < count; ++k) {
            const std::uint32_t u = r.u32();
            const std::uint32_t v = r.u32();
            c.edges.emplace_back(u, v);
        }
    } else if (c.tag == ContainerTag::dense_real) {
        c.dense.resize(Eigen::Index(c.n), Eigen::Index(c.n));
        for (Eigen::Index j = 0; j < c.dense.cols(); ++j)
            for (Eigen::Index i = 0; i < c.dense.rows(); ++i) c.dense(i, j) = r.f64();
    } else {
        throw std::runtime_error("unknown container tag");
    }
    return c;
}

void write_edge_list(const fs::path& path,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::ostringstream out;
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    write_file_atomic(path, out.str());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> read_edge_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path.string());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint32_t u, v;
    while (in >> u >> v) edges.emplace_back(u, v);
    return edges;
}

}  // namespace speclab
