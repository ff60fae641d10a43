#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return std::getenv("QLZSM_CLI"); }

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qlzsm_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("subcommands run and write their files") {
  REQUIRE_MESSAGE(cli_path() != nullptr,
                  "QLZSM_CLI must point at the built binary");

  SUBCASE("simulate") {
    const auto dir = fresh_dir("simulate");
    CHECK(run("simulate --out-dir " + dir.string() +
              " --samples 31 --tol 1e-8") == 0);
    CHECK(fs::exists(dir / "trajectory.csv"));
  }

  SUBCASE("simulate with the other engines") {
    const auto dir = fresh_dir("engines");
    CHECK(run("simulate --engine lindblad --samples 21 --tol 1e-8 --out-dir " +
              dir.string()) == 0);
    CHECK(run("simulate --engine effective --samples 21 --tol 1e-8 "
              "--format json --out-dir " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "trajectory.json"));
  }

  SUBCASE("eigen") {
    const auto dir = fresh_dir("eigen");
    CHECK(run("eigen --samples 51 --out-dir " + dir.string()) == 0);
    CHECK(fs::exists(dir / "eigen.csv"));
  }

  SUBCASE("majorana needs the qutrit model") {
    const auto dir = fresh_dir("majorana");
    CHECK(run("majorana --samples 31 --tol 1e-8 --out-dir " + dir.string()) ==
          1);  // default model has four levels
    const auto cfg = dir / "cfg.ini";
    write_file(cfg, "[system]\nn_levels = 3\n");
    CHECK(run("majorana --samples 31 --tol 1e-8 --config " + cfg.string() +
              " --out-dir " + dir.string()) == 0);
    CHECK(fs::exists(dir / "majorana.csv"));
  }

  SUBCASE("sweep with a small configured grid") {
    const auto dir = fresh_dir("sweep");
    const auto cfg = dir / "cfg.ini";
    write_file(cfg, R"(
[sweep]
amp_min = 50 MHz
amp_max = 56 MHz
amp_step = 3 MHz
offset_min = 0
offset_max = 1 MHz
offset_step = 0.5 MHz
)");
    CHECK(run("sweep --config " + cfg.string() + " --tol 1e-8 --out-dir " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "fig3_map.csv"));
    CHECK(fs::exists(dir / "fig3_contours.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
  }

  SUBCASE("lzsm-fit with a compact grid") {
    const auto dir = fresh_dir("fit");
    const auto cfg = dir / "cfg.ini";
    write_file(cfg, R"(
[scaling]
mod_depths = -20 MHz
amplitudes = 30, 36, 42 MHz
)");
    CHECK(run("lzsm-fit --config " + cfg.string() + " --out-dir " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "fig4_fits.csv"));
  }

  SUBCASE("preset dispatch") {
    const auto dir = fresh_dir("preset");
    CHECK(run("preset fig2-majorana --samples 41 --tol 1e-8 --out-dir " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "fig2_majorana.csv"));
    CHECK(run("preset fig9-dreams --out-dir " + dir.string()) == 1);
  }
}

TEST_CASE("exit codes") {
  REQUIRE(cli_path() != nullptr);
  const auto dir = fresh_dir("exitcodes");

  // validation problems exit 1
  CHECK(run("") == 1);
  CHECK(run("simulate --config /missing/file.ini") == 1);
  CHECK(run("simulate --engine heisenberg") == 1);
  const auto bad = dir / "bad.ini";
  write_file(bad, "[system]\nomega_ge = 7.24\n");  // missing unit
  CHECK(run("simulate --config " + bad.string()) == 1);

  // numerical failure exits 2
  CHECK(run("simulate --tol 1e-16 --samples 11 --out-dir " + dir.string()) ==
        2);

  // flags override the file: the file asks for four levels, the flag for a
  // tolerance the stepper cannot meet, proving both were applied
  const auto good = dir / "good.ini";
  write_file(good, "[run]\ntol = 1e-8\n");
  CHECK(run("simulate --config " + good.string() + " --samples 11 "
            "--out-dir " + dir.string()) == 0);
  CHECK(run("simulate --config " + good.string() + " --tol 1e-16 "
            "--samples 11 --out-dir " + dir.string()) == 2);
}

}  // TEST_SUITE
