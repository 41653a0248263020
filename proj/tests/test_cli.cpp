#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "finmet/json_io.hpp"
#include "finmet/random.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;
using finmet::io::json;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "finmet_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd =
      std::string(FINMET_BIN) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)), {});
}

fs::path write_file(const std::string& name, const json& j) {
  const auto p = work_dir() / name;
  finmet::io::write_json(j, p);
  return p;
}

json metric_json(const std::vector<std::vector<double>>& rows,
                 bool pseudo = false) {
  json labels = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i)
    labels.push_back("p" + std::to_string(i));
  return json{{"labels", labels}, {"d", rows}, {"pseudo", pseudo}};
}

}  // namespace

TEST_CASE("cli: validate exits 0 on a clean metric, 1 on a dirty one") {
  const auto clean = write_file(
      "clean.json", metric_json({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  CHECK(run("validate " + clean.string()) == 0);

  const auto dirty = write_file(
      "dirty.json", metric_json({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
  CHECK(run("validate " + dirty.string()) == 1);

  const auto out = work_dir() / "validate_report.json";
  CHECK(run("validate " + dirty.string() + " --out " + out.string()) == 1);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("clean") == false);
  CHECK(rep.at("triangle_violations").size() == 1);
}

TEST_CASE("cli: malformed input and unknown subcommands exit 2") {
  const auto bad = work_dir() / "broken.json";
  std::ofstream(bad) << "{not json";
  CHECK(run("validate " + bad.string()) == 2);
  CHECK(run("no-such-subcommand") == 2);
  CHECK(run("validate " + (work_dir() / "missing.json").string()) == 2);
}

TEST_CASE("cli: chain-number reports the unlinked witness with exit 1") {
  // two clusters 10 apart, C well above the gap
  const auto m = write_file(
      "clusters.json",
      metric_json({{0, 0.5, 10, 10.5},
                   {0.5, 0, 9.5, 10},
                   {10, 9.5, 0, 0.5},
                   {10.5, 10, 0.5, 0}}));
  const auto out = work_dir() / "cn.json";
  CHECK(run("chain-number " + m.string() + " --eps 1 --C 20 --out " +
            out.string()) == 1);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("linked") == false);
  CHECK(rep.contains("witness"));
  CHECK(rep.at("scope") == "sampled link(C)");
}

TEST_CASE("cli: net and chain round-trip over files") {
  const auto line = finmet::FiniteMetricSpace::line(
      std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto mpath = write_file("line_ok.json", finmet::io::metric_to_json(line));
  const auto net_out = work_dir() / "net.json";
  CHECK(run("net " + mpath.string() + " --eps 0.6 --out " + net_out.string()) ==
        0);
  const auto net_rep = json::parse(slurp(net_out));
  CHECK(net_rep.at("members").size() == 2);

  const auto chain_out = work_dir() / "chain.json";
  CHECK(run("chain " + mpath.string() + " --eps 0.3 --from 0 --to 1 --out " +
            chain_out.string()) == 0);
  CHECK(json::parse(slurp(chain_out)).at("steps") == 4);

  CHECK(run("chain " + mpath.string() + " --eps 0.1 --from 0 --to 1 --out " +
            chain_out.string()) == 1);
}

TEST_CASE("cli: embed without a seed is a structural error; env seed works") {
  const auto m = write_file("tri.json",
                            metric_json({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  const auto out = work_dir() / "embed.json";
  CHECK(run("embed " + m.string() + " --alpha 1 --q 2 --dim 2 --out " +
            out.string()) == 2);
  const std::string env_cmd = "FINMET_SEED=5 " + std::string(FINMET_BIN) +
                              " embed " + m.string() +
                              " --alpha 1 --q 2 --dim 2 --out " + out.string() +
                              " 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
  CHECK(json::parse(slurp(out)).at("seed") == 5);
}

TEST_CASE("cli: embed reports are byte-identical across reruns with one seed") {
  const auto m = write_file("tri2.json",
                            metric_json({{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}}));
  const auto out1 = work_dir() / "e1.json";
  const auto out2 = work_dir() / "e2.json";
  const std::string flags = " --alpha 0.5 --q 2 --dim 2 --restarts 3 --seed 77";
  CHECK(run("embed " + m.string() + flags + " --out " + out1.string()) == 0);
  CHECK(run("embed " + m.string() + flags + " --out " + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("cli: quotient/snowflake emit loadable metric files and csv") {
  const auto m = write_file(
      "pseudo.json", metric_json({{0, 0, 2}, {0, 0, 2}, {2, 2, 0}}, true));
  const auto out = work_dir() / "quotient.json";
  CHECK(run("quotient " + m.string() + " --out " + out.string() + " --csv") ==
        0);
  const auto q = finmet::io::load_metric(out);
  CHECK(q.size() == 2);
  CHECK(slurp(work_dir() / "quotient.csv").rfind("label,", 0) == 0);

  const auto sf_out = work_dir() / "snow.json";
  CHECK(run("snowflake " + out.string() + " --alpha 0.5 --out " +
            sf_out.string()) == 0);
  CHECK(finmet::io::load_metric(sf_out).d(0, 1) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(run("snowflake " + out.string() + " --alpha 1.5 --out " +
            sf_out.string()) == 2);
}

TEST_CASE("cli: embed-l2 flags the star metric as a finding") {
  const auto star = write_file(
      "star.json", metric_json({{0, 1, 1, 1},
                                {1, 0, 2, 2},
                                {1, 2, 0, 2},
                                {1, 2, 2, 0}}));
  const auto out = work_dir() / "l2.json";
  CHECK(run("embed-l2 " + star.string() + " --out " + out.string()) == 1);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("ok") == false);
  CHECK(rep.at("min_eigenvalue").get<double>() < -1e-9);
}

TEST_CASE("cli: pairfn goes both ways") {
  const auto out = work_dir() / "pair.json";
  CHECK(run("pairfn --n 0 --m 1 --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("k") == 2);
  CHECK(run("pairfn --k 2 --out " + out.string()) == 0);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("n") == 0);
  CHECK(rep.at("m") == 1);
  CHECK(run("pairfn --out " + out.string()) == 2);
}

TEST_CASE("cli: partition matches the worked example") {
  const auto out = work_dir() / "part.json";
  CHECK(run("partition --dvals 0.05 3.0 1.0 --eps 0.1 --C 2 --out " +
            out.string()) == 0);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("I1") == json::array({0}));
  CHECK(rep.at("I2") == json::array({1}));
  CHECK(rep.at("I3") == json::array({2}));
}

TEST_CASE("cli: classify handles all model kinds") {
  const auto out = work_dir() / "cls.json";
  CHECK(run("classify --kind power --c 1 --s 0.6 --p 2 --out " + out.string()) ==
        0);
  CHECK(json::parse(slurp(out)).at("classification") == "convergent");
  CHECK(run("classify --kind power --c 1 --s 0.5 --p 2 --out " + out.string()) ==
        0);
  CHECK(json::parse(slurp(out)).at("classification") == "divergent");
  CHECK(run("classify --kind finite_support --values 5 7 --p 1 --out " +
            out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("classification") == "convergent");
  CHECK(run("classify --kind zeta --p 1 --out " + out.string()) == 2);
}

namespace {

fs::path write_power_instance(const std::string& name) {
  finmet::RandomSource rng(9);
  const auto inst = finmet::testgen::power_instance({2.0, 2.0, 1.0, 4, false}, rng);
  json levels = json::array();
  for (const auto& lv : inst.levels())
    levels.push_back(
        {{"metric", finmet::io::metric_to_json(lv.space)},
         {"embedding", finmet::io::embedding_to_json(lv.map, lv.space)}});
  return write_file(name, json{{"p", inst.p()},
                               {"q", inst.q()},
                               {"A", inst.A()},
                               {"C", inst.C()},
                               {"D", inst.D()},
                               {"eps", inst.eps()},
                               {"eta", inst.eta()},
                               {"levels", levels}});
}

}  // namespace

TEST_CASE("cli: reduce-verify, theta, dense-snap and simulate run end to end") {
  const auto ipath = write_power_instance("inst.json");
  const auto out = work_dir() / "rv.json";
  CHECK(run("reduce-verify --instance " + ipath.string() + " --out " +
            out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("pass") == true);

  const auto xpath = write_file("x.json", json::array({"a", "b", "a", "b"}));
  const auto ypath = write_file("y.json", json::array({"a", "a", "a", "a"}));
  CHECK(run("reduce-verify --instance " + ipath.string() + " --x " +
            xpath.string() + " --y " + ypath.string() + " --out " +
            out.string() + " --csv") == 0);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("inequalities").size() == 6);
  CHECK(slurp(work_dir() / "rv.csv").rfind("name,", 0) == 0);

  CHECK(run("theta --instance " + ipath.string() + " --x " + xpath.string() +
            " --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("entries").size() == 4);

  CHECK(run("dense-snap --instance " + ipath.string() + " --x " +
            xpath.string() + " --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("ok") == true);

  const auto models = write_file(
      "models.json",
      json::array({json{{"kind", "geometric"}, {"c", 1.0}, {"r", 0.5}}}));
  const auto sim_out1 = work_dir() / "sim1.json";
  const auto sim_out2 = work_dir() / "sim2.json";
  const std::string sim_flags = "simulate --instance " + ipath.string() +
                                " --models " + models.string() +
                                " --prefix 8 --samples 5 --seed 3 --out ";
  // geometric targets will not match this instance's distances: exit 1 with
  // flagged samples, still fully reported and deterministic
  const int rc1 = run(sim_flags + sim_out1.string());
  const int rc2 = run(sim_flags + sim_out2.string());
  CHECK(rc1 == rc2);
  CHECK(slurp(sim_out1) == slurp(sim_out2));
}

TEST_CASE("cli: net-snap reproduces the worked constant substitution") {
  // build an instance with eps = 0.01, A = 2, C = 1, p = q = 2
  const auto two = finmet::FiniteMetricSpace({"a", "b"}, {0, 0.5, 0.5, 0}, false);
  finmet::Embedding map;
  map.q = 2.0;
  map.dim = 1;
  map.coords = {{0.0}, {0.5}};
  const auto ipath = write_file(
      "snap_inst.json",
      json{{"p", 2.0},
           {"q", 2.0},
           {"A", 2.0},
           {"C", 1.0},
           {"D", 0.05},
           {"eps", json::array({0.01})},
           {"eta", json::array({0.0})},
           {"levels", json::array({json{
                          {"metric", finmet::io::metric_to_json(two)},
                          {"embedding", finmet::io::embedding_to_json(map, two)}}})}});
  const auto out = work_dir() / "ns.json";
  CHECK(run("net-snap --instance " + ipath.string() + " --out " + out.string()) ==
        0);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("constants").at("eps_prime")[0] == 0.03);
  CHECK(rep.at("constants").at("eta_prime")[0] == 0.1);
  CHECK(rep.at("constants").at("A_prime") == 6.0);
  CHECK(rep.at("constants").at("C_prime") == 0.98);
  CHECK(rep.at("pass") == true);
}

TEST_CASE("cli: transfer and round-dense failure paths carry witnesses") {
  const auto line = finmet::FiniteMetricSpace::line(
      std::vector<double>{0.0, 1.0, 0.3});
  const auto mpath = write_file("pool_line.json", finmet::io::metric_to_json(line));
  const auto fpath = write_file("F.json", json::array({"0", "1"}));
  const auto ppath = write_file("pool.json", json::array({"0.3"}));
  const auto out = work_dir() / "transfer.json";
  CHECK(run("transfer " + mpath.string() + " --f " + fpath.string() +
            " --pool " + ppath.string() + " --out " + out.string()) == 1);
  const auto rep = json::parse(slurp(out));
  CHECK(rep.at("ok") == false);
  CHECK(rep.at("failed_at") == "0");
  // invalid k is structural
  CHECK(run("round-dense " + mpath.string() + " --f " + fpath.string() +
            " --pool " + ppath.string() + " --k 0") == 2);
}
