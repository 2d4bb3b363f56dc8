#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "congrusep/cli.hpp"

using congrusep::run_cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"congrusep"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(CONGRUSEP_FIXTURE_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "congrusep_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

const std::string kU = R"({"n":2,"entries":[["1","1"],["0","1"]]})";
const std::string kMinusI = R"({"n":2,"entries":[["-1","0"],["0","-1"]]})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("jordan") {
    const Run r = cli({"jordan", R"([["-1","1"],["0","-1"]])"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["semisimple"]["entries"] == json::parse(R"([["-1","0"],["0","-1"]])"));
    CHECK(j["unipotent"]["entries"] == json::parse(R"([["1","-1"],["0","1"]])"));
    CHECK(j["torsion_order"] == "infinite");
    CHECK(j["is_semisimple"] == false);

    CHECK(cli({"jordan", R"([["1","2"],["2","4"]])"}).code == congrusep::kExitPrecondition);
    CHECK(cli({"jordan", R"([[1.5, 0],[0, 1]])"}).code == congrusep::kExitInput);
    CHECK(cli({"jordan", R"([["1","1"]])"}).code == congrusep::kExitInput);
    CHECK(cli({"jordan", "/nonexistent/file.json"}).code == congrusep::kExitInput);
    CHECK(cli({"frobnicate"}).code == congrusep::kExitInput);
    CHECK(cli({}).code == congrusep::kExitInput);
  }

  TEST_CASE("avoid and verify round trip") {
    const Run r = cli({"avoid", "[" + kU + "]", kMinusI});
    REQUIRE(r.code == 0);
    const json cert = json::parse(r.out);
    CHECK(cert["m"] == 3);
    CHECK(cert["kind"] == "separation");
    CHECK(cert["version"] == 1);
    CHECK(r.err.find("consistent up to word length") != std::string::npos);
    CHECK(r.err.find("not a proof") != std::string::npos);

    const auto path = scratch("sep.json");
    CHECK(cli({"avoid", "[" + kU + "]", kMinusI, "--output", path.string()}).code == 0);
    CHECK(slurp(path) == r.out);

    const Run v = cli({"verify", path.string()});
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["status"] == "verified");
    CHECK(cli({"avoid", "--verify-only", path.string()}).code == 0);

    json tampered = cert;
    tampered["m"] = 2;
    const Run t = cli({"verify", tampered.dump()});
    CHECK(t.code == congrusep::kExitVerification);
    CHECK(json::parse(t.out)["status"] == "failed");
    CHECK(t.err.find("verification failed") != std::string::npos);

    tampered = cert;
    tampered["image_digest"] = std::string(64, '0');
    CHECK(cli({"verify", tampered.dump()}).code == congrusep::kExitVerification);

    tampered = cert;
    tampered.erase("class_digest");
    CHECK(cli({"verify", tampered.dump()}).code == congrusep::kExitInput);
  }

  TEST_CASE("determinism") {
    const Run a = cli({"avoid", "[" + kU + "]", kMinusI});
    const Run b = cli({"avoid", "[" + kU + "]", kMinusI});
    CHECK(a.out == b.out);
    const Run c = cli({"torsion-free", "[" + kU + "]"});
    const Run d = cli({"torsion-free", "[" + kU + "]"});
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
    CHECK(cli({"semifactors", fixture("klein_bottle.json")}).out == cli({"semifactors", fixture("klein_bottle.json")}).out);
  }

  TEST_CASE("torsion-free") {
    const Run r = cli({"torsion-free", "[" + kU + "]"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["kind"] == "torsion-free");
    CHECK(j["table_version"] == "glnz-torsion-v1");
    CHECK(j.contains("assumption"));

    const std::string u4 = R"([{"n":4,"entries":[["1","1","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}])";
    CHECK(cli({"torsion-free", u4}).code == congrusep::kExitInput);
    const Run custom = cli({"torsion-free", u4, "--reps", R"([{"n":4,"entries":[["-1","0","0","0"],["0","-1","0","0"],["0","0","-1","0"],["0","0","0","-1"]]}])"});
    CHECK(custom.code == 0);
    CHECK(json::parse(custom.out)["table_version"] == "custom");
    CHECK(cli({"torsion-free", "[" + kU + "]", "--reps", R"([[["2","1"],["1","1"]]])"}).code == congrusep::kExitInput);
    CHECK(cli({"torsion-free", "[]", "--n", "2"}).code == 0);
    CHECK(cli({"torsion-free", "[]"}).code == congrusep::kExitInput);
  }

  TEST_CASE("schedule options") {
    CHECK(cli({"avoid", "[" + kU + "]", kMinusI, "--modulus-schedule", "5,3"}).code == congrusep::kExitInput);
    CHECK(cli({"avoid", "[" + kU + "]", kMinusI, "--modulus-schedule", "2,x"}).code == congrusep::kExitInput);
    CHECK(cli({"avoid", "[" + kU + "]", kMinusI, "--element-cap", "0"}).code == congrusep::kExitInput);
    const Run r = cli({"avoid", "[" + kU + "]", kMinusI, "--modulus-schedule", "2,4,5"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["m"] == 4);
    const Run e = cli({"avoid", "[" + kU + "]", kMinusI, "--modulus-schedule", "2"});
    CHECK(e.code == congrusep::kExitResource);
    const json j = json::parse(e.out);
    CHECK(j["status"] == "exhausted");
    CHECK(j["largest_modulus"] == 2);
    CHECK(e.err.find("no certificate found below budget") != std::string::npos);
  }

  TEST_CASE("negative control fixture") {
    const Run r = cli({"avoid", fixture("negative_control_gens.json"), fixture("negative_control_eta.json"),
                       "--modulus-schedule", "2,3,4,5,7,8,9,11"});
    CHECK(r.code == congrusep::kExitResource);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(json::parse(r.out)["status"] == "exhausted");
  }

  TEST_CASE("witness-prime") {
    const Run a = cli({"witness-prime", kMinusI, "[" + kU + "]"});
    REQUIRE(a.code == 0);
    const json j = json::parse(a.out);
    CHECK(j["p"] == 3);
    CHECK(j["level"] == 1);
    CHECK(j["reason"] == "image-escape");
    const Run d = cli({"witness-prime", R"([["1/2","0"],["0","2"]])"});
    REQUIRE(d.code == 0);
    CHECK(json::parse(d.out)["reason"] == "denominator");
    CHECK(cli({"witness-prime", R"([["1","0"],["0","1"]])", "[" + kU + "]"}).code == congrusep::kExitResource);
  }

  TEST_CASE("image and torsion-table") {
    const Run r = cli({"image", "[" + kU + "]", "--modulus", "4"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["size"] == 4);
    CHECK(j["m"] == 4);
    CHECK(j["elements_digest"].get<std::string>().size() == 64);
    CHECK(cli({"image", "[" + kU + "]", "--modulus", "4", "--full"}).code == 0);
    CHECK(cli({"image", "[" + kU + "]"}).code == congrusep::kExitInput);
    CHECK(cli({"image", "[" + kU + "]", "--modulus", "1"}).code == congrusep::kExitInput);

    const Run t = cli({"torsion-table", "--n", "2"});
    REQUIRE(t.code == 0);
    CHECK(json::parse(t.out)["representatives"].size() == 7);
    CHECK(cli({"torsion-table", "--n", "4"}).code == congrusep::kExitInput);
  }

  TEST_CASE("crystallographic commands") {
    const Run k = cli({"semifactors", fixture("klein_bottle.json")});
    REQUIRE(k.code == 0);
    CHECK(json::parse(k.out)["total"] == 3);
    CHECK(cli({"semifactors", fixture("z2.json")}).code == 0);
    const Run s = cli({"semifactors", fixture("step2_nilpotent.json")});
    CHECK(s.code == congrusep::kExitInput);
    CHECK(s.err.find("base case only") != std::string::npos);

    const Run e = cli({"embed", fixture("klein_bottle.json")});
    REQUIRE(e.code == 0);
    const json g = json::parse(e.out)["generators"];
    REQUIRE(g.size() == 3);
    CHECK(g[0]["entries"] == json::parse(R"([["1","0","1"],["0","-1","0"],["0","0","1"]])"));
    const Run l = cli({"embed", fixture("klein_bottle.json"), "--lift"});
    REQUIRE(l.code == 0);
    CHECK(json::parse(l.out)["semisimple_factors"].size() == 3);
  }
}
