#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = fs::temp_directory_path() / ("bps_cli_out_" + std::to_string(counter++) + ".txt");
    std::string cmd = std::string(BPS_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult res;
    res.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    res.output = buf.str();
    fs::remove(out);
    return res;
}

std::string fixture(const std::string& name) {
    return std::string(BPS_FIXTURE_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli validate: exit codes and machine block") {
    RunResult ok = run_cli("validate " + fixture("pospos.json"));
    CHECK(ok.code == 0);
    CHECK(contains(ok.output, "---BEGIN REPORT---"));
    CHECK(contains(ok.output, "classification=PosPos"));
    CHECK(contains(ok.output, "valid=true"));

    RunResult bad = run_cli("validate " + fixture("trivial_index0.json"));
    CHECK(bad.code == 2);
    CHECK(contains(bad.output, "V4"));

    RunResult broken = run_cli("validate " + fixture("truncated.json"));
    CHECK(broken.code == 1);

    RunResult missing = run_cli("validate /nonexistent/file.json");
    CHECK(missing.code == 1);
}

TEST_CASE("cli validate output is deterministic") {
    RunResult a = run_cli("validate " + fixture("pospos.json"));
    RunResult b = run_cli("validate " + fixture("pospos.json"));
    CHECK(a.output == b.output);
}

TEST_CASE("cli apply: surgery script round trip") {
    RunResult res = run_cli("apply " + fixture("uniformizing.json") + " " + fixture("roundtrip.script"));
    CHECK(res.code == 0);
    CHECK(contains(res.output, "steps=2"));
    CHECK(contains(res.output, "final_ord=0"));
    CHECK(contains(res.output, "final_valid=true"));

    // a script aborting on an unsupported surgery
    fs::path bad_script = fs::temp_directory_path() / "bps_bad.script";
    {
        std::ofstream out(bad_script);
        out << "debubble l0\n";
    }
    RunResult bad = run_cli("apply " + fixture("uniformizing.json") + " " + bad_script.string());
    CHECK(bad.code == 1);  // no such curve: argument-level error

    fs::path notbubble = fs::temp_directory_path() / "bps_nb.script";
    {
        std::ofstream out(notbubble);
        out << "graft surface separating -1 -1\n" << "debubble l0\n";
    }
    RunResult nb = run_cli("apply " + fixture("uniformizing.json") + " " + notbubble.string());
    CHECK(nb.code == 3);  // a grafting curve is not a bubble
    fs::remove(bad_script);
    fs::remove(notbubble);
}

TEST_CASE("cli enumerate: frozen count") {
    fs::path dir = fs::temp_directory_path() / "bps_enum_out";
    fs::remove_all(dir);
    RunResult res = run_cli("enumerate --genus 2 --max-components 4 --max-curves 4 --out " +
                            dir.string());
    CHECK(res.code == 0);
    CHECK(contains(res.output, "count=28"));
    int files = 0;
    for (auto it = fs::directory_iterator(dir); it != fs::directory_iterator(); ++it) ++files;
    CHECK(files == 28);
    fs::remove_all(dir);

    RunResult refused = run_cli("enumerate --genus 2 --max-components 9 --max-curves 4 --out " +
                                dir.string());
    CHECK(refused.code == 1);
}

TEST_CASE("cli demo nonisobub") {
    fs::path dumps = fs::temp_directory_path() / "bps_dumps";
    fs::remove_all(dumps);
    RunResult res = run_cli("demo nonisobub --theta 0.2 --word-ball 2 --samples 400 --out " +
                            dumps.string());
    CHECK(res.code == 0);
    CHECK(contains(res.output, "injective_plus=true"));
    CHECK(contains(res.output, "injective_minus=true"));
    CHECK(contains(res.output, "injective_zero=false"));
    CHECK(fs::exists(dumps / "alpha_plus.txt"));
    CHECK(fs::exists(dumps / "alpha_zero.txt"));
    fs::remove_all(dumps);
}

TEST_CASE("cli apply with a move step") {
    fs::path script = fs::temp_directory_path() / "bps_move.script";
    {
        std::ofstream out(script);
        out << "move p0 l0\n";
    }
    RunResult res = run_cli("apply " + fixture("pospos.json") + " " + script.string());
    CHECK(res.code == 0);
    CHECK(contains(res.output, "first certified"));
    CHECK(contains(res.output, "final_valid=true"));
    fs::remove(script);
}

TEST_CASE("cli demo safety") {
    RunResult res = run_cli("demo safety --word-ball 4");
    CHECK(res.code == 0);
    CHECK(contains(res.output, "avatar_simply_developed=false"));
    CHECK(contains(res.output, "opposite_K=inf"));
}
