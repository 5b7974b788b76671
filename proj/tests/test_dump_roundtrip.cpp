// The dump layer: config validation, deterministic canonical JSON, lossless
// round trips, CSV, rebuilding verified bases from a dump, and the named
// verification suites.  The "cli" suite spawns the installed binary (path in
// GCENTER_CLI_PATH) and is selected with --cli-smoke; it is excluded from the
// plain run so the library tests stay self-contained.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "gcenter/dump.hpp"

using namespace gcenter;

namespace {

RunConfig small_kbproj() {
    RunConfig cfg;
    cfg.window = 4;
    cfg.deg_lo = 0;
    cfg.deg_hi = 4;
    return cfg;
}

RunConfig small_stable() {
    RunConfig cfg;
    cfg.category = "stable-serial";
    cfg.n = 5;
    cfg.deg_lo = -2;
    cfg.deg_hi = 2;
    return cfg;
}

} // namespace

TEST_CASE("config validation names the violated constraint") {
    CHECK(validate_config(small_kbproj()).empty());
    CHECK(validate_config(small_stable()).empty());

    RunConfig bad = small_kbproj();
    bad.n = 3;
    CHECK(validate_config(bad) == "category kbproj-serial requires n = 2");

    bad = small_kbproj();
    bad.category = "borel";
    CHECK(validate_config(bad).find("unknown category") == 0);

    bad = small_kbproj();
    bad.field = "zz";
    CHECK(validate_config(bad).find("bad field") == 0);

    bad = small_kbproj();
    bad.deg_lo = 3;
    bad.deg_hi = 1;
    CHECK(validate_config(bad) == "empty degree range");

    RunConfig tube;
    tube.category = "tube";
    tube.n = 3;
    tube.window = 10;
    tube.deg_lo = 0;
    tube.deg_hi = 3;
    CHECK(validate_config(tube).find("limited to [-2, 2]") != std::string::npos);
    tube.deg_hi = 1;
    CHECK(validate_config(tube).empty());
    tube.window = 0;
    CHECK_FALSE(validate_config(tube).empty());
    tube.window = 10;
    tube.n = 0;
    CHECK_FALSE(validate_config(tube).empty());

    RunConfig st = small_stable();
    st.n = 1;
    CHECK(validate_config(st) == "category stable-serial requires n >= 2");

    CHECK_THROWS_AS((void)build_window(st), std::invalid_argument);
}

TEST_CASE("identical configs produce byte-identical dumps, single- or multi-threaded") {
    RunConfig cfg = small_kbproj();
    std::string a = dump_to_json(compute_dump(cfg));
    std::string b = dump_to_json(compute_dump(cfg));
    CHECK(a == b);

    setenv("GCENTER_THREADS", "1", 1);
    CHECK(thread_budget() == 1);
    std::string serial = dump_to_json(compute_dump(cfg));
    setenv("GCENTER_THREADS", "7", 1);
    CHECK(thread_budget() == 7);
    std::string parallel = dump_to_json(compute_dump(cfg));
    unsetenv("GCENTER_THREADS");
    CHECK(thread_budget() >= 1);
    CHECK(serial == a);
    CHECK(parallel == a);
}

TEST_CASE("JSON round trip is lossless for every category") {
    std::vector<RunConfig> configs;
    configs.push_back(small_kbproj());
    configs.push_back(small_stable());
    RunConfig tube;
    tube.category = "tube";
    tube.n = 2;
    tube.window = 6;
    tube.deg_lo = 0;
    tube.deg_hi = 1;
    configs.push_back(tube);
    RunConfig line;
    line.category = "line";
    line.n = 3;
    line.field = "q";
    line.deg_lo = 0;
    line.deg_hi = 1;
    line.with_sign = false;
    configs.push_back(line);

    for (const RunConfig& cfg : configs) {
        CAPTURE(cfg.category);
        CenterDump d = compute_dump(cfg);
        std::string text = dump_to_json(d);
        CenterDump back = dump_from_json(text);
        CHECK(back == d);
        CHECK(dump_to_json(back) == text);
    }
}

TEST_CASE("malformed dump text is rejected") {
    CHECK_THROWS_AS((void)dump_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS((void)dump_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS((void)dump_from_json(R"({"schema_version": 1})"), std::invalid_argument);
}

TEST_CASE("dump contents agree with direct solves and products") {
    RunConfig cfg = small_stable();
    CenterDump d = compute_dump(cfg);
    auto w = build_window(cfg);

    REQUIRE(static_cast<int>(d.degrees.size()) == cfg.deg_hi - cfg.deg_lo + 1);
    std::map<int, CenterBasis> direct;
    for (int t = cfg.deg_lo; t <= cfg.deg_hi; ++t)
        direct.emplace(t, solve_center(*w, t, cfg.with_sign));

    for (const DegreeBlock& blk : d.degrees) {
        const CenterBasis& bt = direct.at(blk.degree);
        CHECK(blk.dimension == bt.dim());
        REQUIRE(blk.basis.size() == bt.elements.size());
        for (size_t k = 0; k < blk.basis.size(); ++k)
            CHECK(blk.basis[k] == bt.elements[k].comps);
        for (const MultTable& mt : blk.mult) {
            CHECK(mt.target_degree == blk.degree + mt.right_degree);
            const CenterBasis& b2 = direct.at(mt.right_degree);
            const CenterBasis& b3 = direct.at(mt.target_degree);
            REQUIRE(static_cast<int>(mt.table.size()) == bt.dim());
            for (int i = 0; i < bt.dim(); ++i) {
                REQUIRE(static_cast<int>(mt.table[static_cast<size_t>(i)].size()) ==
                        b2.dim());
                for (int j = 0; j < b2.dim(); ++j)
                    CHECK(mt.table[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                          multiply(*w, bt, i, b2, j, b3));
            }
        }
    }

    // Every product pair inside the degree range appears exactly once.
    for (const DegreeBlock& blk : d.degrees) {
        int expected = 0;
        for (int u = cfg.deg_lo; u <= cfg.deg_hi; ++u)
            if (blk.degree + u >= cfg.deg_lo && blk.degree + u <= cfg.deg_hi) ++expected;
        CHECK(static_cast<int>(blk.mult.size()) == expected);
    }
}

TEST_CASE("CSV table lists the dimensions in degree order") {
    RunConfig cfg = small_kbproj();
    CenterDump d = compute_dump(cfg);
    CHECK(dump_to_csv(d) == "degree,dimension\n0,6\n1,0\n2,1\n3,0\n4,1\n");
}

TEST_CASE("bases rebuilt from a dump are verified against the window") {
    RunConfig cfg = small_stable();
    CenterDump d = compute_dump(cfg);
    auto w = build_window(cfg);

    std::map<int, CenterBasis> bases = bases_from_dump(*w, d);
    for (const DegreeBlock& blk : d.degrees) {
        const CenterBasis& cb = bases.at(blk.degree);
        CHECK(cb.dim() == blk.dimension);
        for (const CenterElement& e : cb.elements) CHECK(verify_center_element(*w, e));
    }

    // Tampering with a coordinate breaks the naturality verification.
    CenterDump broken = d;
    const Field& F = w->field();
    for (DegreeBlock& blk : broken.degrees) {
        if (blk.degree != 1 || blk.basis.empty()) continue;
        blk.basis[0][0][0] = F.from_int(7); // socle coefficient mismatch
        blk.basis[0][1][0] = F.from_int(1);
    }
    CHECK_THROWS_AS((void)bases_from_dump(*w, broken), std::invalid_argument);

    // A repeated row is flagged as linearly dependent.
    CenterDump dup = d;
    for (DegreeBlock& blk : dup.degrees)
        if (blk.degree == 0) blk.basis.push_back(blk.basis[0]);
    CHECK_THROWS_AS((void)bases_from_dump(*w, dup), std::invalid_argument);
}

TEST_CASE("emitted JSON stays in sync with the shipped schema file") {
    const char* schema_path = std::getenv("GCENTER_SCHEMA_PATH");
    if (!schema_path) {
        MESSAGE("GCENTER_SCHEMA_PATH not set; skipping schema sync check");
        return;
    }
    std::ifstream is(schema_path);
    REQUIRE(is.good());
    nlohmann::json schema = nlohmann::json::parse(is);

    auto keys = [](const nlohmann::json& obj) {
        std::set<std::string> out;
        for (auto it = obj.begin(); it != obj.end(); ++it) out.insert(it.key());
        return out;
    };
    // additionalProperties is false throughout, and every property is
    // required, so the emitted key sets must equal the schema's exactly.
    auto schema_keys = [&](const nlohmann::json& node) {
        std::set<std::string> props = keys(node.at("properties"));
        std::set<std::string> req(node.at("required").begin(), node.at("required").end());
        CHECK(props == req);
        return props;
    };

    std::regex scalar_pat(
        schema.at("definitions").at("scalar").at("pattern").get<std::string>());

    for (const RunConfig& cfg : {small_kbproj(), small_stable()}) {
        nlohmann::json j = nlohmann::json::parse(dump_to_json(compute_dump(cfg)));
        CHECK(keys(j) == schema_keys(schema));
        CHECK(keys(j.at("config")) ==
              schema_keys(schema.at("properties").at("config")));
        CHECK(keys(j.at("ring_report")) ==
              schema_keys(schema.at("properties").at("ring_report")));

        const nlohmann::json& defs = schema.at("definitions");
        bool cat_listed = false;
        for (const auto& c :
             schema.at("properties").at("config").at("properties").at("category").at("enum"))
            cat_listed = cat_listed || c.get<std::string>() == cfg.category;
        CHECK(cat_listed);

        for (const nlohmann::json& blk : j.at("degrees")) {
            CHECK(keys(blk) == schema_keys(defs.at("degree_block")));
            for (const nlohmann::json& elem : blk.at("basis"))
                for (const nlohmann::json& comps : elem)
                    for (const nlohmann::json& s : comps)
                        CHECK(std::regex_match(s.get<std::string>(), scalar_pat));
            for (const nlohmann::json& mt : blk.at("mult")) {
                CHECK(keys(mt) == schema_keys(defs.at("mult_table")));
                for (const nlohmann::json& row : mt.at("table"))
                    for (const nlohmann::json& coords : row)
                        for (const nlohmann::json& s : coords)
                            CHECK(std::regex_match(s.get<std::string>(), scalar_pat));
            }
        }
    }
}

TEST_CASE("suite runner accepts exactly the six names") {
    SuiteReport rep = run_suite("line");
    CHECK(rep.pass);
    CHECK(rep.suite == "line");
    CHECK(rep.lines.size() == 5);
    for (const std::string& l : rep.lines) CHECK(l.find("ok") == 0);
    CHECK_THROWS_AS((void)run_suite("lines"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// End-to-end checks against the installed binary.
// ---------------------------------------------------------------------------

TEST_SUITE("cli") {

namespace {

std::filesystem::path temp_file(const std::string& stem) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    const char* cli = std::getenv("GCENTER_CLI_PATH");
    REQUIRE_MESSAGE(cli != nullptr, "GCENTER_CLI_PATH must point at the binary");
    std::filesystem::path cap = temp_file("gcenter_out");
    std::string cmd = std::string("\"") + cli + "\" " + args + " > " + cap.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream is(cap);
        std::stringstream buf;
        buf << is.rdbuf();
        *output = buf.str();
    }
    std::filesystem::remove(cap);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("compute is deterministic and matches the in-process dump") {
    std::filesystem::path f1 = temp_file("dump_a"), f2 = temp_file("dump_b");
    std::string flags = "compute --category stable-serial --n 4 --field f101 "
                        "--degrees 0..2 --out ";
    CHECK(run_cli(flags + f1.string()) == 0);
    CHECK(run_cli(flags + f2.string()) == 0);
    std::string text = slurp(f1);
    CHECK(text == slurp(f2));

    RunConfig cfg;
    cfg.category = "stable-serial";
    cfg.n = 4;
    cfg.deg_lo = 0;
    cfg.deg_hi = 2;
    CHECK(text == dump_to_json(compute_dump(cfg)));

    std::filesystem::remove(f1);
    std::filesystem::remove(f2);
}

TEST_CASE("compute rejects out-of-contract configs with exit code 2") {
    std::string out;
    CHECK(run_cli("compute --category kbproj-serial --n 3 --field f101", &out) == 2);
    CHECK(out.find("requires n = 2") != std::string::npos);
    CHECK(run_cli("compute --category tube --n 3 --field f101 --window 10 "
                  "--degrees 0..3") == 2);
    CHECK(run_cli("compute") == 2);
    CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("csv flag writes the dimension table beside the dump") {
    std::filesystem::path dump = temp_file("dump_csv"), csv = temp_file("table_csv");
    CHECK(run_cli("compute --category line --n 3 --field f101 --degrees 0..1 --out " +
                  dump.string() + " --csv " + csv.string()) == 0);
    CHECK(slurp(csv) == "degree,dimension\n0,1\n1,0\n");
    std::filesystem::remove(dump);
    std::filesystem::remove(csv);
}

TEST_CASE("verify prints one line per check and sets the exit code") {
    std::string out;
    CHECK(run_cli("verify --suite line", &out) == 0);
    CHECK(out.find("PASS suite line") != std::string::npos);
    CHECK(run_cli("verify --suite nope", &out) == 2);
    CHECK(out.find("unknown suite") != std::string::npos);
}

TEST_CASE("mult prints product coordinates and the commutator verdict") {
    std::filesystem::path dump = temp_file("dump_mult");
    CHECK(run_cli("compute --category kbproj-serial --n 2 --field f101 --window 4 "
                  "--degrees 0..4 --out " +
                  dump.string()) == 0);
    std::string out;
    CHECK(run_cli("mult --in " + dump.string() + " --i 2:0 --j 2:0", &out) == 0);
    CHECK(out.find("degree-4 basis") != std::string::npos);
    CHECK(out.find("commutator check") != std::string::npos);
    CHECK(out.find("ok") != std::string::npos);

    CHECK(run_cli("mult --in " + dump.string() + " --i 2:0 --j 4:0", &out) == 2);
    CHECK(out.find("no degree-6 basis") != std::string::npos);
    CHECK(run_cli("mult --in " + dump.string() + " --i 0:99 --j 0:0") == 2);
    CHECK(run_cli("mult --in " + dump.string() + " --i zero --j 0:0") == 2);
    CHECK(run_cli("mult --in /nonexistent.json --i 0:0 --j 0:0") == 2);
    std::filesystem::remove(dump);
}

} // TEST_SUITE("cli")

int main(int argc, char** argv) {
    bool cli_smoke = false;
    std::vector<char*> args;
    for (int i = 0; i < argc; ++i) {
        if (std::string(argv[i]) == "--cli-smoke")
            cli_smoke = true;
        else
            args.push_back(argv[i]);
    }
    doctest::Context ctx(static_cast<int>(args.size()), args.data());
    if (cli_smoke)
        ctx.addFilter("test-suite", "cli");
    else
        ctx.addFilter("test-suite-exclude", "cli");
    return ctx.run();
}
