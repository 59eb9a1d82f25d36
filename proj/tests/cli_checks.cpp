// End-to-end checks of the command-line tool: files, exit codes, overrides.
// argv[1] is the path to the randsum-zeros binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;
std::string g_cli;
std::filesystem::path g_dir;

void check(const std::string& label, bool ok) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", label.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

int main(int argc, char** argv) {
    g_cli = argc > 1 ? argv[1] : "./randsum-zeros";
    g_dir = std::filesystem::path("cli_checks_tmp");
    std::filesystem::create_directories(g_dir);
    const std::string out = (g_dir / "t").string();

    // density: image plus axis profile, 440x440 by default
    check("density exits 0",
          run("density --family power --n 10 --out " + out) == 0);
    {
        const std::string pgm = slurp(out + ".pgm");
        check("pgm header is 440x440", pgm.substr(0, 15) == "P5\n440 440\n255\n");
        check("pgm payload size", pgm.size() == 15 + 440 * 440);
        const std::string csv = slurp(out + "_g.csv");
        check("g profile has one row per column", line_count(csv) == 441);
    }

    // cosine family adds the imaginary-axis profile
    check("cosine density exits 0",
          run("density --family cosine --n 10 --out " + out + "_cos") == 0);
    check("imaginary-axis profile written",
          std::filesystem::exists(out + "_cos_g_imag.csv"));

    // config file with flag overrides
    {
        const std::string cfg_path = (g_dir / "cfg.json").string();
        std::ofstream cfg(cfg_path);
        cfg << R"({"family":"rootbinomial","n":10,
                   "window":{"xmin":-2,"xmax":2,"ymin":-2,"ymax":2},
                   "grid":{"nx":64,"ny":64},
                   "seed":3,"trials":200,"output":")"
            << out << R"(_cfg"})";
        cfg.close();
        check("config file run exits 0", run("sample --config " + cfg_path) == 0);
        check("config-run histogram is 64x64",
              slurp(out + "_cfg_hist.pgm").substr(0, 13) == "P5\n64 64\n255\n");
        check("flag overrides config",
              run("sample --config " + cfg_path + " --trials 100 --out " + out +
                  "_ovr") == 0);
        check("override output exists",
              std::filesystem::exists(out + "_ovr_summary.json"));
    }

    // usage and config errors exit 2
    check("unknown family exits 2",
          run("density --family powr --n 10 --out " + out) == 2);
    check("missing family exits 2", run("density --out " + out) == 2);
    check("n = 0 exits 2", run("density --family power --n 0 --out " + out) == 2);
    check("trials = 0 exits 2",
          run("sample --family power --n 10 --trials 0 --out " + out) == 2);
    check("compare with no trials exits 2",
          run("compare --family power --n 10 --out " + out) == 2);
    check("unknown subcommand exits 2", run("frobnicate") == 2);
    check("missing config file exits 2",
          run("density --config does_not_exist.json") == 2);
    {
        const std::string bad = (g_dir / "bad.json").string();
        std::ofstream f(bad);
        f << R"({"family":"power","n":10,"zoom":4})";
        f.close();
        check("unknown config key exits 2", run("density --config " + bad) == 2);
    }

    // compare at modest scale passes against its own family
    check("compare power n=10 exits 0",
          run("compare --family power --n 10 --trials 50000 --seed 3 --out " +
              out + "_cmp") == 0);

    // verify sweep writes its report and passes
    check("verify exits 0",
          run("verify --family taylor --n 10 --out " + out + "_ver") == 0);
    check("verify report written",
          std::filesystem::exists(out + "_ver_verify.json"));

    if (g_failures == 0) std::printf("cli_checks: all checks pass\n");
    return g_failures;
}
