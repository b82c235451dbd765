#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace speclab {

// 17 significant digits: doubles round-trip bit-exactly through the text
// formats.
std::string format_float(double v);

// Flat "key = value" config text. '#' starts a comment; keys are unique;
// unknown keys are ignored by consumers, which is what lets a run manifest
// double as a config file.
class Config {
  public:
    Config() = default;
    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<std::int64_t> get_int(const std::string& key) const;
    std::optional<std::uint64_t> get_uint(const std::string& key) const;

    void set(const std::string& key, const std::string& value);
    void set_double(const std::string& key, double value);
    void set_uint(const std::string& key, std::uint64_t value);

    // deterministic serialization: keys in insertion order
    std::string serialize() const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Run manifest: the fully resolved parameter set plus bookkeeping. Written
// atomically next to the outputs; feeding it back through --config reproduces
// the data files byte for byte.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::string started;
    std::string finished;
    Config config;
    std::vector<std::string> outputs;  // paths relative to the output dir

    void write(const std::filesystem::path& path) const;
    static RunManifest load(const std::filesystem::path& path);
};

std::string iso8601_utc_now();
std::string tool_version();

// Atomic text write: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// ---- matrix container ("SPLB1", little-endian) -----------------------------
//
//   bytes 0..4   magic "SPLB1"
//   byte  5      format tag: 1 = adjacency edge list, 2 = dense real f64
//   bytes 6..13  u64 N (matrix dimension)
//   payload      tag 1: u64 edge count, then (u32 u, u32 v) per edge, u < v
//                tag 2: N*N f64, column-major

enum class ContainerTag : std::uint8_t { adjacency = 1, dense_real = 2 };

struct MatrixContainer {
    ContainerTag tag = ContainerTag::adjacency;
    std::uint64_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // tag adjacency
    Eigen::MatrixXd dense;                                       // tag dense_real
};

void write_adjacency(const std::filesystem::path& path, std::uint64_t n,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
void write_dense(const std::filesystem::path& path, const Eigen::MatrixXd& m);
MatrixContainer read_container(const std::filesystem::path& path);

// ---- edge list text ("u v" per line, 0-indexed) ----------------------------

void write_edge_list(const std::filesystem::path& path,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
std::vector<std::pair<std::uint32_t, std::uint32_t>> read_edge_list(
    const std::filesystem::path& path);

}  // namespace speclab
