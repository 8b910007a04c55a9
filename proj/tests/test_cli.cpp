#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "esp/export.hpp"

#ifndef ESP_SPECTRA_BIN
#error "ESP_SPECTRA_BIN must point at the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ESP_SPECTRA_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "esp_spectra_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("member verdicts and exit codes") {
  auto r = run("member --n 3 --k 1 --point 1,1,1");
  CHECK(r.code == 0);
  CHECK(r.out == "INTERIOR\n");
  r = run("member --n 3 --k 1 --point 1,1,-1");
  CHECK(r.code == 1);
  CHECK(r.out == "OUTSIDE\n");
  r = run("member --n 3 --k 1 --point 1,1,-1/2");
  CHECK(r.code == 0);
  CHECK(r.out == "BOUNDARY\n");
  r = run("member --n 3 --k 1 --point 1,1,-1 --explain");
  CHECK(r.code == 1);
  CHECK(r.out.find("witness") != std::string::npos);
  CHECK(r.out.find("e_2 = -1") != std::string::npos);
}

TEST_CASE("member input errors exit 2") {
  CHECK(run("member --n 3 --k 1 --point 1,1").code == 2);
  CHECK(run("member --n 3 --k 1 --point 1,x,1").code == 2);
  CHECK(run("member --n 3 --k 3 --point 1,1,1").code == 2);
  CHECK(run("member --point 1,1,1").code == 2);
  CHECK(run("member --pencil /nonexistent/file.json --point 1,1,1").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("build writes canonical files") {
  const fs::path a = scratch("p31.json");
  const fs::path b = scratch("p31_again.json");
  REQUIRE(run("build --n 3 --k 1 --format json --out " + a.string()).code == 0);
  REQUIRE(run("build --n 3 --k 1 --format json --out " + b.string()).code == 0);
  const std::string text = esp::read_file(a.string());
  CHECK(text == esp::read_file(b.string()));
  const auto p = esp::read_pencil_json(text);
  CHECK(p.m == 4);
  CHECK(p.matrices.size() == 3);
  CHECK(run("build --n 4 --k 2").out.find("\"m\": 17") != std::string::npos);
  CHECK(run("build --n 2 --k 2").code == 2);
  CHECK(run("build --n 3 --k 1 --out /nonexistent/dir/p.json").code == 2);
  const auto sdpa = run("build --n 3 --k 1 --format sdpa --objective 1,0.5,-2");
  CHECK(sdpa.code == 0);
  CHECK(sdpa.out.find("\n1 0.5 -2\n") != std::string::npos);
  CHECK(run("build --n 3 --k 1 --format json --objective 1,1,1").code == 2);

  const auto member = run("member --pencil " + a.string() + " --point 1,1,-1/2");
  CHECK(member.code == 0);
  CHECK(member.out == "BOUNDARY\n");
}

TEST_CASE("verify exit codes") {
  const auto hkk = run("verify --suite hkk --n 4 --k 2 --trials 20");
  CHECK(hkk.code == 0);
  CHECK(hkk.out.find("C=96") != std::string::npos);
  CHECK(run("verify --suite matrix-tree --n 3 --k 2").code == 0);
  CHECK(run("verify --suite matrix-tree --n 4 --k 2").code == 3);
  CHECK(run("verify --suite step --n 4 --k 2 --range 10").code == 2);
  CHECK(run("verify --suite cone --n 3 --k 3").code == 2);
  const auto all = run("verify --suite all --n 4 --k 2 --trials 20 --json");
  CHECK(all.code == 0);
  const auto j = nlohmann::json::parse(all.out);
  CHECK(j["result"] == "PASS");
  CHECK(j["reports"][0]["status"] == "SKIPPED");
  CHECK(run("verify --suite cone --n 3 --k 2 --trials 50 --seed 4").out ==
        run("verify --suite cone --n 3 --k 2 --trials 50 --seed 4").out);
}

TEST_CASE("derivative-cone command") {
  const fs::path identity = scratch("identity.txt");
  write_text(identity, "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n1 1 1 1\n");
  const auto derived = run("derivative-cone --forms " + identity.string() + " --kderiv 1");
  REQUIRE(derived.code == 0);
  const auto built = run("build --n 4 --k 2");
  auto d = nlohmann::ordered_json::parse(derived.out);
  auto b = nlohmann::ordered_json::parse(built.out);
  CHECK(d["matrices"] == b["matrices"]);
  d.erase("provenance");
  b.erase("provenance");
  CHECK(d.dump(2) == b.dump(2));

  const fs::path bad = scratch("bad.txt");
  write_text(bad, "3 2\n1 0\n1 -1\n0 1\n1 1\n");
  CHECK(run("derivative-cone --forms " + bad.string() + " --kderiv 1").code == 2);
  CHECK(run("derivative-cone --forms " + identity.string() + " --kderiv 4").code == 2);
  CHECK(run("derivative-cone --forms " + identity.string() + " --kderiv 2 --format sdpa").code == 0);
}
