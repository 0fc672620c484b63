// Byte-level determinism check for every CLI subcommand: each command runs
// twice with identical flags and the outputs must match exactly; the sweep
// additionally runs across thread counts.  argv[1] names the CLI binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cedyn/io.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_dir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

// Runs the command once per output-tag substitution of "%", then compares the
// produced files byte for byte.
void expect_identical(const std::string& label, const std::string& args_template,
                      const std::vector<std::string>& out_names) {
  std::vector<std::vector<std::string>> produced;
  for (const char* tag : {"a", "b"}) {
    std::string args = args_template;
    for (std::size_t pos = args.find('%'); pos != std::string::npos; pos = args.find('%'))
      args.replace(pos, 1, tag);
    if (!run(args)) {
      std::printf("FAIL %s: command exited nonzero\n", label.c_str());
      ++g_failures;
      return;
    }
    std::vector<std::string> contents;
    for (const auto& name : out_names) {
      std::string file = name;
      for (std::size_t pos = file.find('%'); pos != std::string::npos; pos = file.find('%'))
        file.replace(pos, 1, tag);
      contents.push_back(slurp(g_dir / file));
      if (contents.back().empty()) {
        std::printf("FAIL %s: %s is empty\n", label.c_str(), file.c_str());
        ++g_failures;
        return;
      }
    }
    produced.push_back(std::move(contents));
  }
  for (std::size_t i = 0; i < out_names.size(); ++i) {
    if (produced[0][i] != produced[1][i]) {
      std::printf("FAIL %s: %s differs between identical runs\n", label.c_str(),
                  out_names[i].c_str());
      ++g_failures;
      return;
    }
  }
  std::printf("ok   %s\n", label.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::printf("usage: determinism <cli>\n");
    return 1;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / "cedyn_determinism";
  fs::create_directories(g_dir);
  const std::string fam = (g_dir / "logistic.json").string();
  cedyn::write_atomic(fam, "{\"kind\":\"logistic\"}\n");
  const std::string d = g_dir.string() + "/";

  expect_identical("orbit", "orbit --family " + fam + " --t 3.83 --n 500 --out " + d + "orb_%.csv",
                   {"orb_%.csv"});

  expect_identical("returns",
                   "returns --family " + fam + " --t 3.99 --eps 0.01 --n 2000 --theta0 0.1 --out " +
                       d + "ret_%.csv",
                   {"ret_%.csv"});

  expect_identical("classify",
                   "classify --family " + fam +
                       " --t 3.831874055283 --eps 1e-3 --totaldepth --n-max 600 --n-min 30"
                       " --n-nv 30 --const-samples 40 --seed 4 --out " +
                       d + "cls_%.json",
                   {"cls_%.json"});

  expect_identical("sweep",
                   "sweep --family " + fam +
                       " --center 3.9 --eps 1e-3,1e-2 --grid 32 --n-max 600 --n-min 30 --n-nv 30"
                       " --const-samples 30 --seed 12 --out " +
                       d + "rows_%.csv --summary " + d + "sum_%.csv",
                   {"rows_%.csv", "sum_%.csv"});

  // Same sweep pinned to one output pair per thread count; all must agree.
  {
    const std::string base = "sweep --family " + fam +
                             " --center 3.9 --eps 1e-3,1e-2 --grid 32 --n-max 600 --n-min 30"
                             " --n-nv 30 --const-samples 30 --seed 12";
    bool ok = true;
    for (int threads : {1, 2, 4}) {
      const std::string tag = "t" + std::to_string(threads);
      if (!run(base + " --threads " + std::to_string(threads) + " --out " + d + "rows_" + tag +
               ".csv --summary " + d + "sum_" + tag + ".csv")) {
        std::printf("FAIL sweep-threads: command exited nonzero\n");
        ++g_failures;
        ok = false;
        break;
      }
    }
    if (ok) {
      const std::string rows = slurp(g_dir / "rows_t1.csv");
      const std::string sum = slurp(g_dir / "sum_t1.csv");
      if (rows.empty() || rows != slurp(g_dir / "rows_t2.csv") ||
          rows != slurp(g_dir / "rows_t4.csv") || sum != slurp(g_dir / "sum_t2.csv") ||
          sum != slurp(g_dir / "sum_t4.csv")) {
        std::printf("FAIL sweep-threads: output depends on thread count\n");
        ++g_failures;
      } else {
        std::printf("ok   sweep-threads\n");
      }
    }
  }

  expect_identical("constants",
                   "constants --family " + fam + " --eps 1e-3 --samples 80 --seed 6 --out " + d +
                       "con_%.json",
                   {"con_%.json"});

  expect_identical("boxes-find",
                   "boxes find --family " + fam +
                       " --range 3:4 --m-max 1 --n-cap 5 --eps 0.01 --lambda 2 --theta 0.01"
                       " --out " +
                       d + "box_%.json",
                   {"box_%.json"});

  expect_identical("balls-random",
                   "balls random --seed 21 --count 30 --height 3 --out " + d + "bfam_%.json",
                   {"bfam_%.json"});

  // Downstream ball commands read the generated family back in.
  if (fs::exists(g_dir / "bfam_a.json")) {
    const std::string in = (g_dir / "bfam_a.json").string();
    expect_identical("balls-verify",
                     "balls verify --in " + in + " --N 6 --kappa 0.5 --out " + d + "bver_%.json",
                     {"bver_%.json"});
    expect_identical("balls-deepset",
                     "balls deepset --in " + in + " --N 4 --out " + d + "bdeep_%.csv",
                     {"bdeep_%.csv"});
  }

  if (g_failures) std::printf("%d determinism check(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
