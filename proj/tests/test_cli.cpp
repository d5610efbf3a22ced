#include "cli_runner.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using cli::model;
using cli::run;

TEST(Cli, CohomologyOfZ2) {
    auto r = run("cohomology --cutoff 5 --in " + model("z2.json"));
    ASSERT_EQ(r.status, 0) << r.out;
    auto j = r.json();
    const auto& deg = j["result"]["degrees"];
    ASSERT_EQ(deg.size(), 5u);
    EXPECT_EQ(deg[0]["z_rank"], 1);
    EXPECT_EQ(deg[1]["text"], "0");
    EXPECT_EQ(deg[2]["torsion"], nlohmann::json::array({2}));
    EXPECT_EQ(deg[4]["torsion"], nlohmann::json::array({2}));
    EXPECT_EQ(j["cutoff"]["guaranteed_through_degree"], 4);
}

TEST(Cli, QZCoefficients) {
    auto j = run("cohomology --coeff Q/Z --in " + model("z3.json")).json();
    EXPECT_EQ(j["result"]["degrees"][0]["text"], "Q/Z");
    EXPECT_EQ(j["result"]["degrees"][1]["text"], "Z/3");
}

TEST(Cli, CircleFromCoverAndFromLevels) {
    for (const char* f : {"circle-cover.json", "circle-minimal.json", "circle.json"}) {
        auto j = run("cohomology --in " + model(f)).json();
        EXPECT_EQ(j["result"]["degrees"][0]["text"], "Z") << f;
        EXPECT_EQ(j["result"]["degrees"][1]["text"], "Z") << f;
        EXPECT_EQ(j["result"]["degrees"][2]["text"], "0") << f;
    }
}

TEST(Cli, SameSeedSameBytes) {
    const std::string cmd = "stokes --k 2 --q 2 --trials 5 --seed 17 --in " + model("circle-cover.json") + " --cutoff 5";
    auto a = run(cmd), b = run(cmd);
    ASSERT_EQ(a.status, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    auto c = run(cmd, "GRPD_SEED=17");
    EXPECT_EQ(a.out, c.out);
    auto d = run("stokes --k 2 --q 2 --trials 5 --seed 18 --in " + model("circle-cover.json") + " --cutoff 5");
    EXPECT_NE(a.out, d.out);
}

TEST(Cli, EnvironmentSeedOverridesFlag) {
    const std::string base = "theta --k 1 --q 1 --in " + model("z2.json");
    auto a = run(base + " --seed 3", "GRPD_SEED=9");
    auto b = run(base + " --seed 9");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CutoffStability) {
    auto lo = run("cohomology --in " + model("z3.json") + " --cutoff 4").json();
    auto hi = run("cohomology --in " + model("z3.json") + " --cutoff 6").json();
    for (int k = 0; k < 4; ++k) EXPECT_EQ(lo["result"]["degrees"][k], hi["result"]["degrees"][k]) << k;
}

TEST(Cli, ExitCodes) {
    auto dir = std::filesystem::temp_directory_path() / "grpd_cli_test";
    std::filesystem::create_directories(dir);
    auto broken = (dir / "broken.json").string();
    std::ofstream(broken) << "{\"kind\": \"groupoid\", \"objects\": [";
    auto r = run("cohomology --in " + broken);
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;
    auto bad = (dir / "bad.json").string();
    std::ofstream(bad) << R"({"kind": "groupoid", "name": "not associative", "objects": ["o"],
      "arrows": [{"id": "e", "source": "o", "target": "o"}, {"id": "a", "source": "o", "target": "o"}],
      "composition": [["e", "e", "e"], ["e", "a", "a"], ["a", "e", "a"], ["a", "a", "a"]]})";
    EXPECT_EQ(run("validate --in " + bad).status, 3);
    EXPECT_EQ(run("cohomology --in " + model("z2.json") + " --degree-window 0..9").status, 4);
    EXPECT_EQ(run("cohomology --no-such-flag").status, 2);
    EXPECT_EQ(run("cohomology --in " + (dir / "missing.json").string()).status, 2);
    EXPECT_EQ(run("classify --in " + model("circle-cover.json")).status, 3);
}

TEST(Cli, OutputFile) {
    auto path = (std::filesystem::temp_directory_path() / "grpd_cli_out.json").string();
    std::filesystem::remove(path);
    auto r = run("nerve --in " + model("z2.json") + " -o " + path);
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["command"], "nerve");
}

TEST(Cli, FlatBundleHolonomy) {
    auto r = run("classify --k 1 --in " + model("circle-cover.json") + " --bundle " + model("circle-flat-third.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = r.json()["result"];
    EXPECT_TRUE(j["invariants"]["flat"].get<bool>());
    std::set<std::string> values;
    for (const auto& h : j["invariants"]["holonomy"]) values.insert(h["value"].dump());
    EXPECT_TRUE(values.count("\"1/3\"") || values.count("\"2/3\""));
    EXPECT_EQ(j["class"]["character_on_cycles"].size(), j["invariants"]["holonomy"].size());
    for (size_t i = 0; i < j["class"]["character_on_cycles"].size(); ++i)
        EXPECT_EQ(j["class"]["character_on_cycles"][i], j["invariants"]["holonomy"][i]["value"]);
}

TEST(Cli, GaugeRelatedBundlesAreIsomorphic) {
    auto r = run("iso --in " + model("circle-cover.json") + " --lhs " + model("circle-flat-third.json") + " --rhs " +
                 model("circle-flat-third-gauged.json") + " --gauge " + model("circle-gauge.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(r.json()["result"]["isomorphic"].get<bool>());
}

TEST(Cli, CheckAllPassesOnModels) {
    for (const char* f : {"point.json", "z2.json", "circle-cover.json", "pair2.json"}) {
        auto r = run("check-all --in " + model(f));
        EXPECT_EQ(r.status, 0) << f << "\n" << r.out << r.err;
        EXPECT_TRUE(r.json()["result"]["all_passed"].get<bool>()) << f;
    }
}

TEST(Cli, SecondaryCommands) {
    auto xi = run("xi --in " + model("z2.json") + " --r 1 --n 0").json()["result"];
    EXPECT_TRUE(xi["surjective"].get<bool>());
    auto les = run("les --in " + model("circle-cover.json") + " --r 1");
    EXPECT_EQ(les.status, 0) << les.err;
    auto mh = run("mh --in " + model("z2.json") + " --r 1 --n 0").json()["result"];
    EXPECT_EQ(mh["group"]["text"], "Z/2");
}
