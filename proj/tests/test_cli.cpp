#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilcert/cache.hpp"
#include "nilcert/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("nilcert-cli-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    setenv(nilcert::kCacheEnv, (d / "cache").c_str(), 1);
    return d;
  }();
  return dir;
}

Run cli(std::vector<std::string> args) {
  scratch();
  args.insert(args.begin(), "nilcert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = nilcert::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string without_timing(const Run& r) {
  json j = r.j();
  j.erase("timing");
  return j.dump();
}

void collect_paths(const json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "certificate_path") out.push_back(it->get<std::string>());
      collect_paths(*it, out);
    }
  } else if (j.is_array()) {
    for (const auto& x : j) collect_paths(x, out);
  }
}

json read(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

void write(const fs::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump();
}

}  // namespace

TEST_CASE("zero-test decisions and exit codes") {
  Run a = cli({"zero-test", "--char", "3", "--expr", "x1^2 x2^2 x1 x2"});
  CHECK(a.code == 0);
  CHECK(a.j()["result"]["outcome"] == "nonzero");
  CHECK(a.j()["schema_version"] == 1);
  Run b = cli({"zero-test", "--char", "5", "--expr", "x1^2 x2^2 x1 x2"});
  CHECK(b.code == 0);
  CHECK(b.j()["result"]["outcome"] == "zero");
  Run c = cli({"zero-test", "--char", "0", "--expr", "x1^3"});
  CHECK(c.code == 0);
  CHECK(c.j()["result"]["is_zero"] == true);
  Run t = cli({"zero-test", "--char", "3", "--cyclic", "--expr", "x1 x2 x1 - x1^2 x2"});
  CHECK(t.code == 0);
  CHECK(t.j()["result"]["outcome"] == "zero");
}

TEST_CASE("zero-test input errors") {
  Run a = cli({"zero-test", "--char", "0", "--expr", "x1^2 + * x2"});
  CHECK(a.code == 1);
  CHECK(a.err.find("position") != std::string::npos);
  CHECK(a.err.find('^') != std::string::npos);
  CHECK(cli({"zero-test", "--char", "4", "--expr", "x1"}).code == 1);
  CHECK(cli({"zero-test", "--char", "0", "--expr", "x1 + x2^2"}).code == 1);
  CHECK(cli({"zero-test", "--char", "0", "--letters", "1", "--expr", "x1 x2"}).code == 1);
  CHECK(cli({"zero-test", "--char", "0"}).code == 1);
  CHECK(cli({"zero-test", "--bogus"}).code == 1);
  CHECK(cli({}).code == 1);
}

TEST_CASE("zero-test reads files and reports undecided at budget") {
  fs::path f = scratch() / "expr.txt";
  {
    std::ofstream out(f);
    out << "x1^2 x2^2\n  x1 x2\n";
  }
  Run a = cli({"zero-test", "--char", "5", "--file", f.string()});
  CHECK(a.code == 0);
  CHECK(a.j()["result"]["outcome"] == "zero");
  Run u = cli({"zero-test", "--char", "5", "--budget-cols", "3", "--expr", "x1^2 x2^2 x1 x2 x3"});
  CHECK(u.code == 2);
  CHECK(u.j()["result"]["outcome"] == "undecided");
}

TEST_CASE("verify accepts emitted certificates and rejects tampering") {
  Run z = cli({"zero-test", "--char", "5", "--expr", "x1^2 x2^2 x1 x2"});
  std::string path = z.j()["result"]["certificate_path"];
  CHECK(cli({"verify", path}).code == 0);

  json cert = read(path);
  REQUIRE(cert["kind"] == "zero");
  json tampered = cert;
  auto& coeff = tampered["rows"][0]["coeff"];
  coeff = std::to_string((std::stoi(coeff.get<std::string>()) + 1) % 5);
  write(scratch() / "tampered.json", tampered);
  Run t = cli({"verify", (scratch() / "tampered.json").string()});
  CHECK(t.code == 3);
  CHECK(t.j()["ok"] == false);

  json wrong = cert;
  wrong["system"]["char"] = 7;
  write(scratch() / "wrong.json", wrong);
  CHECK(cli({"verify", (scratch() / "wrong.json").string()}).code == 3);

  {
    std::ofstream out(scratch() / "broken.json");
    out << "{\"kind\": ";
  }
  CHECK(cli({"verify", (scratch() / "broken.json").string()}).code == 1);
  write(scratch() / "shape.json", json{{"kind", "zero"}});
  CHECK(cli({"verify", (scratch() / "shape.json").string()}).code == 1);
  CHECK(cli({"verify", (scratch() / "missing.json").string()}).code == 1);

  Run f = cli({"functional-check", "--char", "0", "--name", "DEGREE_3_2"});
  CHECK(f.code == 0);
  std::string fpath = f.j()["result"]["certificate_path"];
  CHECK(cli({"verify", fpath}).code == 0);
  json fc = read(fpath);
  fc["functional"][0]["value"] = "12345";
  write(scratch() / "ftampered.json", fc);
  CHECK(cli({"verify", (scratch() / "ftampered.json").string()}).code == 3);
}

TEST_CASE("other commands") {
  Run d = cli({"dim", "--char", "3", "--mdeg", "3,3"});
  CHECK(d.code == 0);
  CHECK(d.j()["result"]["dimension"] == 1);
  CHECK(cli({"dim", "--char", "3", "--mdeg", "3,x"}).code == 1);

  Run n = cli({"nildeg", "--char", "5", "--letters", "2"});
  CHECK(n.code == 0);
  CHECK(n.j()["result"]["value"] == 6);

  Run f = cli({"functional-check", "--char", "3", "--name", "SUBWORD_COUNT_F", "--letters", "4"});
  CHECK(f.code == 3);
  CHECK(f.j()["result"]["annihilates"] == false);
  CHECK(cli({"functional-check", "--char", "2", "--name", "SUBWORD_COUNT_F", "--letters", "4"}).code == 0);
  CHECK(cli({"functional-check", "--char", "2", "--name", "NOPE"}).code == 1);

  Run a = cli({"amitsur", "--k", "3", "--expr", "x1 x2 + x2 + x1^2", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.j()["result"]["numeric_check"]["agree"] == 20);

  Run t = cli({"trace-decompose", "--char", "2", "--form", "s2", "--expr", "x1 x2"});
  CHECK(t.code == 0);
  CHECK(t.j()["result"]["decision"] == "indecomposable");
  Run t2 = cli({"trace-decompose", "--char", "2", "--expr", "x1^2"});
  CHECK(t2.j()["result"]["decision"] == "decomposable");
  CHECK(cli({"trace-decompose", "--char", "2", "--form", "det", "--expr", "x1 x2"}).code == 1);

  Run r1 = cli({"report", "--theorem", "1", "--char", "2", "--letters-range", "2..3"});
  CHECK(r1.code == 0);
  auto rows = r1.j()["result"]["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["computed"] == 6);
  CHECK(rows[1]["computed"] == 6);
  CHECK(rows[1]["status"] == "match");
  Run r2 = cli({"report", "--theorem", "2", "--char", "5", "--letters-range", "1..2"});
  CHECK(r2.code == 0);
  CHECK(r2.j()["result"]["rows"][1]["D"]["lower"] == 6);
  CHECK(cli({"report", "--theorem", "3"}).code == 1);
}

TEST_CASE("cold and warm cache outputs agree") {
  const std::vector<std::vector<std::string>> commands = {
      {"zero-test", "--char", "2", "--expr", "x1^2 x2^2 x1 + x1 x2^2 x1^2"},
      {"zero-test", "--char", "3", "--expr", "x1^2 x2^2 x1 x3 x2"},
      {"dim", "--char", "0", "--mdeg", "3,2,1"},
      {"nildeg", "--char", "0", "--letters", "2"},
      {"functional-check", "--char", "5", "--name", "DEGREE_3_2"},
      {"amitsur", "--k", "2", "--expr", "x1 + x2 x1"},
      {"trace-decompose", "--char", "5", "--expr", "x1^2 x2^2 x1 x2"},
      {"report", "--theorem", "2", "--char", "3", "--letters-range", "2"},
  };
  for (const auto& c : commands) {
    Run cold = cli(c);
    Run warm = cli(c);
    CHECK(cold.j()["timing"]["cache"] == "miss");
    CHECK(warm.j()["timing"]["cache"] == "hit");
    CHECK_MESSAGE(without_timing(cold) == without_timing(warm), c[0]);
    CHECK(cold.code == warm.code);
    std::vector<std::string> paths;
    collect_paths(warm.j(), paths);
    for (const auto& p : paths) CHECK_MESSAGE(cli({"verify", p}).code == 0, p);
  }
  // a removed certificate forces recomputation
  Run z = cli(commands[0]);
  fs::remove(z.j()["result"]["certificate_path"].get<std::string>());
  Run again = cli(commands[0]);
  CHECK(again.j()["timing"]["cache"] == "miss");
  CHECK(without_timing(again) == without_timing(z));
  for (const auto& e : fs::recursive_directory_iterator(scratch() / "cache"))
    CHECK(e.path().string().find(".tmp") == std::string::npos);
}

TEST_CASE("json output file and disabled cache") {
  fs::path out = scratch() / "out.json";
  Run a = cli({"--json", out.string(), "zero-test", "--char", "0", "--expr", "x1^3"});
  CHECK(read(out.string()) == a.j());
  setenv(nilcert::kCacheEnv, "off", 1);
  Run b = cli({"--cert-dir", (scratch() / "certs").string(), "zero-test", "--char", "0", "--expr", "x1^2 x2 x1"});
  CHECK(b.j()["timing"]["cache"] == "off");
  std::string p = b.j()["result"]["certificate_path"];
  CHECK(p.rfind((scratch() / "certs").string(), 0) == 0);
  CHECK(cli({"verify", p}).code == 0);
  setenv(nilcert::kCacheEnv, (scratch() / "cache").c_str(), 1);
}

TEST_CASE("sha256") {
  CHECK(nilcert::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
