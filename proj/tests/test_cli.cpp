#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "dimerbfz/io.hpp"
#include "support.hpp"

using namespace dimerbfz;
using testing::fixture_path;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(DIMERBFZ_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args, int expected) {
  const Run r = run(args);
  CHECK(r.code == expected);
  const Json j = Json::parse(r.out, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  return j;
}

std::string fx(const std::string& name) { return "\"" + fixture_path(name) + "\""; }

}  // namespace

TEST_CASE("cli build") {
  const Json e36 = run_json(R"(build --type A3 --u "3 2 1 2 3" --v "" --frozen-arrows close --format json)", 0);
  CHECK(e36["quiver"]["vertices"].size() == 8);
  CHECK(e36["quiver"]["arrows"].size() == 13);
  CHECK(run_json(R"(build --type A3 --u "3 2 1 2 3" --v "")", 0)["quiver"]["arrows"].size() == 11);

  const Json a1 = run_json(R"(build --type A1 --u "" --v "")", 0);
  CHECK(a1["quiver"]["vertices"].size() == 1);
  CHECK(a1["quiver"]["arrows"].empty());

  const Json d4 = run_json(R"(build --type D4 --u "2 1 3 4 2" --v "")", 0);
  const Run dot = run(R"(build --type D4 --u "2 1 3 4 2" --v "" --format dot)");
  CHECK(dot.code == 0);
  CHECK(dot.out == to_dot(instance_from_json(d4).quiver));

  const Run tikz = run(R"(build --type D4 --u "2 1 3 4 2" --format tikz)");
  CHECK(tikz.code == 0);
  CHECK(tikz.out == to_tikz(instance_from_json(d4)));

  const Json explicit_matrix = run_json(R"(build --type "[[2,-1,0],[-1,2,-1],[0,-1,2]]" --u "3 2 1 2 3")", 0);
  CHECK(explicit_matrix["quiver"] == run_json(R"(build --type A3 --u "3 2 1 2 3")", 0)["quiver"]);
}

TEST_CASE("cli outputs are byte-identical across runs") {
  for (const std::string args : {R"(build --type E6 --u "1 3 4 2 5 6 4 3")", R"(verify --type D4 --u "2 1 3 4 2 1")",
                                 R"(rigidity --type A4 --u "1 2 3 4 1 2 3 1" --certificates)"}) {
    CAPTURE(args);
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli verify") {
  const Json ok = run_json("verify --quiver " + fx("a3_32123_close.json"), 0);
  CHECK(ok["pass"] == true);
  CHECK(ok["faces"] == run_json(R"(verify --type A3 --u "3 2 1 2 3" --frozen-arrows close)", 0)["faces"]);

  const Json bad = run_json("verify --quiver " + fx("corrupted_skip.json"), 1);
  CHECK(bad["arrow_projection"]["pass"] == false);
  CHECK(bad["arrow_projection"]["violations"] == Json::array({99}));

  const Json empty = run_json(R"(verify --type D5 --u "" --v "")", 0);
  CHECK(empty["pass"] == true);
  CHECK(empty["faces"].empty());
}

TEST_CASE("cli rigidity") {
  const Json e36 = run_json(R"(rigidity --type A3 --u "3 2 1 2 3" --v "")", 0);
  CHECK(e36["rigid"] == true);
  CHECK(e36["failures"].empty());

  const Json s1 = run_json("rigidity --quiver " + fx("two_triangles.json") + " --potential " + fx("two_triangles_abc.json"), 1);
  CHECK(s1["rigid"] == false);
  REQUIRE(s1["failures"].size() == 1);
  CHECK(s1["failures"][0]["cycle"] == Json::array({testing::c, testing::d, testing::e}));
  CHECK(s1["failures"][0]["oracle"] == "not_member_exact");

  const Json s2 = run_json("rigidity --quiver " + fx("two_triangles.json") + " --potential " + fx("two_triangles_abc_cde.json"), 0);
  CHECK(s2["rigid"] == true);
  CHECK(s2["certified"] == 2);

  const Json a2 = run_json("rigidity --quiver " + fx("a2.json") + " --certificates", 0);
  CHECK(a2["verdict"]["cycles_total"] == 1);
  CHECK(a2["certificates"].size() == 1);

  CHECK(run("rigidity --quiver " + fx("two_triangles.json")).code == 2);
  // A 7-cycle exceeds a cap of 3: a property failure, not an input error.
  CHECK(run(R"(rigidity --type A4 --u "2 1 3 2 4 3 2 1" --cap 3)").code == 1);
}

TEST_CASE("cli mutate with save and load") {
  const Json r = run_json("mutate --quiver " + fx("triangle.json") + " --at 2", 0);
  CHECK(r["variables"][1]["value"] == "(x1+x3)/x2");

  const auto state = std::filesystem::temp_directory_path() / "dimerbfz_cli_state.json";
  const Json twice = run_json("mutate --quiver " + fx("triangle.json") + " --at 2 --save \"" + state.string() + "\"", 0);
  const Json back = run_json("mutate --load \"" + state.string() + "\" --at 2", 0);
  CHECK(back["history"] == Json::array({2, 2}));
  CHECK(back["variables"] == run_json("mutate --quiver " + fx("triangle.json"), 0)["variables"]);
  std::filesystem::remove(state);

  CHECK(run(R"(mutate --type A3 --u "3 2 1 2 3" --at 4)").code == 2);
}

TEST_CASE("cli input errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("build").code == 2);
  CHECK(run("build --type Q7").code == 2);
  CHECK(run(R"(build --type A3 --u "3 3")").code == 2);
  CHECK(run(R"(build --type A3 --u "1 x")").code == 2);
  CHECK(run(R"(build --type A3 --format svg)").code == 2);
  CHECK(run("build --quiver /nonexistent.json").code == 2);
  CHECK(run("verify --quiver " + fx("triangle.json")).code == 2);
  CHECK(run("build --help").code == 0);
  CHECK(run("build --type A1", "DIMERBFZ_LOG=loud").code == 2);
  CHECK(run("build --type A1", "DIMERBFZ_LOG=debug").code == 0);
}
