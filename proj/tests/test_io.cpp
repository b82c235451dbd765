#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "speclab/io.hpp"
#include "speclab/rng.hpp"

using namespace speclab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("speclab_io_test_" + std::to_string(splitmix64(std::random_device{}())));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("float formatting round-trips doubles") {
    SequentialRng rng(1);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::exp(rng.uniform(-300.0, 300.0)) * (rng.uniform() < 0.5 ? -1 : 1);
        CHECK(std::stod(format_float(v)) == v);
    }
    CHECK(std::stod(format_float(0.1)) == 0.1);
    CHECK(std::stod(format_float(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("config parse, lookup and serialization") {
    const Config cfg = Config::parse("a = 1\n# comment\nb = hello  \n c=2.5 # trailing\n");
    CHECK(cfg.get_uint("a") == 1);
    CHECK(cfg.get("b") == "hello");
    CHECK(cfg.get_double("c") == 2.5);
    CHECK_FALSE(cfg.has("missing"));

    const Config round = Config::parse(cfg.serialize());
    CHECK(round.serialize() == cfg.serialize());
    CHECK_THROWS(Config::parse("not a key value line\n"));
}

TEST_CASE("manifest write/load") {
    TempDir tmp;
    RunManifest m;
    m.command = "sample";
    m.tool_version = tool_version();
    m.started = "2026-01-01T00:00:00Z";
    m.finished = "2026-01-01T00:00:01Z";
    m.config.set_uint("N", 500);
    m.config.set_double("d", 12.5);
    m.outputs = {"edges.txt", "adjacency.splb"};
    m.write(tmp.path / "manifest.txt");

    const RunManifest loaded = RunManifest::load(tmp.path / "manifest.txt");
    CHECK(loaded.command == "sample");
    CHECK(loaded.config.get_uint("N") == 500);
    CHECK(loaded.config.get_double("d") == 12.5);
    CHECK(loaded.outputs == m.outputs);
    CHECK_FALSE(loaded.config.has("command"));  // meta keys are split out
}

TEST_CASE("adjacency container round trip") {
    TempDir tmp;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges{{0, 1}, {0, 4}, {2, 3}};
    write_adjacency(tmp.path / "a.splb", 5, edges);
    const MatrixContainer c = read_container(tmp.path / "a.splb");
    CHECK(c.tag == ContainerTag::adjacency);
    CHECK(c.n == 5);
    CHECK(c.edges == edges);

    // magic check
    std::ofstream bad(tmp.path / "bad.splb", std::ios::binary);
    bad << "NOPE!";
    bad.close();
    CHECK_THROWS(read_container(tmp.path / "bad.splb"));
}

TEST_CASE("dense container round trip is bit exact") {
    TempDir tmp;
    SequentialRng rng(9);
    Eigen::MatrixXd m(7, 7);
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 7; ++i) m(i, j) = rng.uniform(-1e10, 1e10) * 1e-7;
    write_dense(tmp.path / "m.splb", m);
    const MatrixContainer c = read_container(tmp.path / "m.splb");
    CHECK(c.tag == ContainerTag::dense_real);
    CHECK(c.n == 7);
    CHECK((c.dense - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("edge list text round trip") {
    TempDir tmp;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges{{0, 2}, {1, 3}, {4, 5}};
    write_edge_list(tmp.path / "e.txt", edges);
    CHECK(read_edge_list(tmp.path / "e.txt") == edges);
    std::ifstream in(tmp.path / "e.txt");
    std::string first;
    std::getline(in, first);
    CHECK(first == "0 2");
}

TEST_CASE("atomic writes leave no temp files behind") {
    TempDir tmp;
    write_file_atomic(tmp.path / "x.txt", "payload");
    CHECK(fs::exists(tmp.path / "x.txt"));
    CHECK_FALSE(fs::exists(tmp.path / "x.txt.tmp"));
}

}  // TEST_SUITE
