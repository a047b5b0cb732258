#include <doctest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "paths.hpp"
#include "polsat/external.hpp"
#include "polsat/portfolio.hpp"

using namespace polsat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("polsat-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("register a stub solver") {
  TempDir tmp("reg");
  const auto file = tmp.path / "solvers";
  const auto stub = paths::stub("fastsat").string();

  auto first = register_solver(stub, file);
  CHECK(first.added);
  CHECK(first.message == stub + " is added.");
  REQUIRE(first.registry.solvers().size() == 1);
  CHECK(first.registry.solvers()[0].name == "fastsat");
  CHECK(fs::exists(file));

  // a fresh load sees it, and the default solver set includes it
  auto loaded = Registry::load(file);
  CHECK(loaded == first.registry);
  auto solvers = default_solvers(loaded);
  REQUIRE(solvers.size() == 4);
  CHECK(solvers[3].name == "fastsat");

  auto again = register_solver(stub, file);
  CHECK_FALSE(again.added);
  CHECK(again.registry == first.registry);
  CHECK(Registry::load(file) == first.registry);

  CHECK_THROWS_AS(register_solver("/no/such", file), RegistryError);
  // exists but is not executable
  std::ofstream(tmp.path / "plain") << "x";
  CHECK_THROWS_AS(register_solver((tmp.path / "plain").string(), file), RegistryError);
}

TEST_CASE("relative paths are stored absolute but echoed as typed") {
  TempDir tmp("rel");
  const auto file = tmp.path / "solvers";
  const auto old = fs::current_path();
  fs::current_path(paths::stub("fastsat").parent_path());
  auto reg = register_solver("./fastsat", file);
  fs::current_path(old);
  CHECK(reg.message == "./fastsat is added.");
  REQUIRE(reg.registry.solvers().size() == 1);
  CHECK(reg.registry.solvers()[0].path.is_absolute());
  CHECK(fs::equivalent(reg.registry.solvers()[0].path, paths::stub("fastsat")));
}

TEST_CASE("registry file is one absolute path per line") {
  TempDir tmp("fmt");
  const auto file = tmp.path / "solvers";
  Registry r;
  CHECK(r.add(ExternalSolverSpec::from_path("/opt/a/alaska")));
  CHECK(r.add(ExternalSolverSpec::from_path("/opt/b/alaska")));
  CHECK_FALSE(r.add(ExternalSolverSpec::from_path("/opt/a/alaska")));
  r.save(file);
  CHECK(paths::slurp(file) == "/opt/a/alaska\n/opt/b/alaska\n");
  // basenames collide; the portfolio keeps names unique
  auto solvers = default_solvers(r);
  CHECK(solvers[3].name == "alaska");
  CHECK(solvers[4].name == "alaska#2");
}

TEST_CASE("registry round trip, up to 100 entries") {
  TempDir tmp("rt");
  for (int n : {0, 1, 7, 100}) {
    Registry r;
    for (int i = 0; i < n; ++i) r.add(ExternalSolverSpec::from_path("/solvers/s" + std::to_string(i) + "/bin"));
    const auto file = tmp.path / ("r" + std::to_string(n));
    r.save(file);
    CHECK(Registry::load(file) == r);
  }
  CHECK(Registry::load(tmp.path / "missing").solvers().empty());
}

TEST_CASE("registry location") {
  ::setenv("POLSAT_REGISTRY", "/tmp/custom-registry", 1);
  CHECK(default_registry_path() == "/tmp/custom-registry");
  ::unsetenv("POLSAT_REGISTRY");
  ::setenv("XDG_CONFIG_HOME", "/tmp/xdg", 1);
  CHECK(default_registry_path() == "/tmp/xdg/polsat/solvers");
  ::unsetenv("XDG_CONFIG_HOME");
}
