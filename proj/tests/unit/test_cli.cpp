#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "paths.hpp"
#include "polsat/generators.hpp"
#include "polsat/syntax.hpp"
#include "polsat/trace.hpp"
#include "shell.hpp"

namespace fs = std::filesystem;

namespace {

// Every CLI run gets its own registry and working directory.
struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("polsat-cli-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  shell::Result polsat(const std::string& args, const std::string& stdin_text = "") const {
    std::string cmd = "cd " + shell::quote(dir.string()) + " && ";
    if (!stdin_text.empty()) cmd += "printf '%s\\n' " + shell::quote(stdin_text) + " | ";
    cmd += "POLSAT_REGISTRY=" + shell::quote((dir / "solvers").string()) + " " +
           shell::quote(paths::polsat_bin().string()) + " " + args + " 2>/dev/null";
    if (stdin_text.empty()) cmd += " </dev/null";
    return shell::run(cmd);
  }
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("one-shot mode prints three lines") {
  Sandbox box;
  auto r = box.polsat("'a U b'");
  CHECK(r.status == 0);
  auto lines = r.lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "sat");
  CHECK(starts_with(lines[1], "from "));
  CHECK(starts_with(lines[2], "eclipse time: "));
  CHECK(lines[2].back() == 's');

  auto u = box.polsat("'(G c) & (X !c)'").lines();
  REQUIRE(u.size() == 3);
  CHECK(u[0] == "unsat");
}

TEST_CASE("prompt mode") {
  Sandbox box;
  auto r = box.polsat("", "a U b");
  auto lines = r.lines();
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "please input the formula:");
  CHECK(lines[1] == "sat");
}

TEST_CASE("-e adds a valid evidence line") {
  Sandbox box;
  auto lines = box.polsat("-e 'a U b'").lines();
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "sat");
  CHECK(polsat::eval(polsat::parse_evidence(lines[1]), polsat::parse("a U b")));
  CHECK(starts_with(lines[2], "from "));
  // ignored for unsat
  auto u = box.polsat("-e 'p & !p'").lines();
  REQUIRE(u.size() == 3);
  CHECK(u[0] == "unsat");
}

TEST_CASE("-s lists every solver") {
  Sandbox box;
  auto r = box.polsat("-s 'a U b'");
  CHECK(r.status == 0);
  auto lines = r.lines();
  REQUIRE(lines.size() == 3);
  for (const auto& l : lines) {
    CHECK(l.find(": sat\t") != std::string::npos);
    CHECK(l.back() == 's');
  }
}

TEST_CASE("-s reports disagreement") {
  Sandbox box;
  REQUIRE(box.polsat("-add " + shell::quote(paths::stub("wrong").string()) + " 'a U b'").status == 0);
  auto lines = box.polsat("-s 'a U b'").lines();
  REQUIRE(lines.size() == 5);
  CHECK(starts_with(lines[4], "conflict: sat from "));
  CHECK(lines[4].ends_with("; unsat from wrong;"));
}

TEST_CASE("-sm on an empty file") {
  Sandbox box;
  std::ofstream(box.dir / "empty.txt");
  auto r = box.polsat("-sm empty.txt");
  CHECK(r.status == 0);
  auto lines = r.lines();
  REQUIRE(lines.size() == 4);
  for (int i = 0; i < 3; ++i) CHECK(lines[i].substr(lines[i].find('\t')) == "\t0s");
  CHECK(lines[3] == "The generated file is output.txt.");
  CHECK(fs::exists(box.dir / "output.txt"));
}

TEST_CASE("-add registers, then prompts") {
  Sandbox box;
  const auto stub = paths::stub("fastsat").string();
  auto r = box.polsat("-add " + shell::quote(stub), "a U b");
  CHECK(r.status == 0);
  auto lines = r.lines();
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == stub + " is added.");
  CHECK(lines[1] == "please input the formula:");
  // survives into the next process
  auto s = box.polsat("-s 'a U b'").lines();
  bool seen = false;
  for (const auto& l : s) seen = seen || starts_with(l, "fastsat: sat\t");
  CHECK(seen);
  CHECK(box.polsat("-add /no/such/solver 'a'").status == 1);
}

TEST_CASE("exit codes") {
  Sandbox box;
  CHECK(box.polsat("'a U'").status == 1);
  CHECK(box.polsat("-q 'a'").status == 1);
  CHECK(box.polsat("-sm").status == 1);
  CHECK(box.polsat("-sm x.txt 'a'").status == 1);
  CHECK(box.polsat("-t 0 'a'").status == 1);
  // a conjunction none of the internal solvers gets through quickly
  auto slow = box.polsat("-t 0.001 " + shell::quote(polsat::render(polsat::gen_conjunction(17, 536))));
  CHECK(slow.status == 2);
  auto lines = slow.lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "unknown");
  CHECK(lines[1] == "from none");
  CHECK(lines[2] == "eclipse time: 0.001s");
}
