// End-to-end checks of the kpstool binary (path passed as argv[1]).
// Plain test runner: each check prints only on failure; exit code is the
// failure count.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;
std::string tool;
fs::path dir;

#define CHECK(cond)                                                         \
    do {                                                                    \
        if (!(cond)) {                                                      \
            ++failures;                                                     \
            std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  "     \
                      << #cond << "\n";                                     \
        }                                                                   \
    } while (0)

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const fs::path out_file = dir / "cmd.out";
    const std::string cmd = tool + " " + args + " > " + out_file.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_file);
    std::ostringstream os;
    os << in.rdbuf();
    r.out = os.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string path(const char* name) { return (dir / name).string(); }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <kpstool>\n";
        return 1;
    }
    tool = argv[1];
    dir = fs::temp_directory_path() / "kpstool-test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // field / irr
    auto fi = run("field info 3 2");
    CHECK(fi.status == 0);
    CHECK(fi.out.find("3^2") != std::string::npos);
    auto ic = run("irr count --q 2 --t 7");
    CHECK(ic.status == 0);
    CHECK(ic.out.find("exact 18") != std::string::npos);
    auto il = run("irr list --q 3 --t 2");
    CHECK(il.status == 0);
    CHECK(il.out == "1 0 1\n2 1 1\n2 2 1\n");

    // kps lifecycle, both directions agree
    CHECK(run("kps gen --backend gkps --q 9 --w 3 --P 1,2,0,1 --seed 7 --out " +
              path("g.kps")).status == 0);
    CHECK(run("kps share --master " + path("g.kps") + " --id 02 --out " + path("a.share"))
              .status == 0);
    CHECK(run("kps share --master " + path("g.kps") + " --id 21 --out " + path("b.share"))
              .status == 0);
    auto k1 = run("kps key --share " + path("a.share") + " --peer 21");
    auto k2 = run("kps key --share " + path("b.share") + " --peer 02");
    CHECK(k1.status == 0);
    CHECK(k1.out == k2.out);
    CHECK(!k1.out.empty());

    // blom backend with three variables
    CHECK(run("kps gen --backend blom --q 7 --t 3 --w 1 --seed 2 --out " + path("b.kps"))
              .status == 0);
    CHECK(run("kps share --master " + path("b.kps") + " --id 1 --out " + path("b1.share"))
              .status == 0);
    CHECK(run("kps share --master " + path("b.kps") + " --id 2 --out " + path("b2.share"))
              .status == 0);
    auto g1 = run("kps key --share " + path("b1.share") + " --peer 2 --peer 3");
    auto g2 = run("kps key --share " + path("b2.share") + " --peer 3 --peer 1");
    CHECK(g1.status == 0);
    CHECK(g1.out == g2.out);

    // hkps backend
    CHECK(run("kps gen --backend hkps --q 5 --w 2 --a 1 --seed 3 --out " + path("h.kps"))
              .status == 0);
    CHECK(run("kps share --master " + path("h.kps") + " --id 0003 --branch 0 --out " +
              path("h1.share")).status == 0);
    CHECK(run("kps share --master " + path("h.kps") + " --id 0011 --branch 1 --out " +
              path("h2.share")).status == 0);
    auto h1 = run("kps key --share " + path("h1.share") + " --peer 0011 --branch 1");
    auto h2 = run("kps key --share " + path("h2.share") + " --peer 0003 --branch 0");
    CHECK(h1.status == 0);
    CHECK(h1.out == h2.out);

    // determinism: byte-identical reruns
    CHECK(run("kps gen --backend gkps --q 9 --w 3 --P 1,2,0,1 --seed 7 --out " +
              path("g2.kps")).status == 0);
    CHECK(slurp(path("g.kps")) == slurp(path("g2.kps")));

    // hierarchy lifecycle
    CHECK(run("hier build --U 2 --levels 3 --q 8 --t 3 --h 1 --seed 5 --out " +
              path("t.tree")).status == 0);
    CHECK(run("hier build --U 2 --levels 3 --q 8 --t 3 --h 1 --seed 5 --out " +
              path("t2.tree")).status == 0);
    CHECK(slurp(path("t.tree")) == slurp(path("t2.tree")));
    auto hk1 = run("hier key --tree " + path("t.tree") + " --a 0.0 --b 1.1");
    auto hk2 = run("hier key --tree " + path("t.tree") + " --a 1.1 --b 0.0");
    CHECK(hk1.status == 0);
    CHECK(hk1.out == hk2.out);
    auto st = run("hier storage --tree " + path("t.tree") + " --node 0.0");
    CHECK(st.status == 0);
    CHECK(st.out.find("actual-bits") != std::string::npos);
    auto cp = run("hier compromise --tree " + path("t.tree") + " --nodes 0.0,0.1,1.0,1.1");
    CHECK(cp.status == 0);
    CHECK(cp.out.find("exposed X:0,1") != std::string::npos);

    // dynamic add on a partial tree, then key with the new node
    CHECK(run("hier build --U 2 --levels 3 --q 8 --t 3 --h 1 --shape \"-:2;0:1;1:2\" "
              "--seed 5 --out " + path("p.tree")).status == 0);
    auto ad = run("hier add --tree " + path("p.tree") + " --parent 0");
    CHECK(ad.status == 0);
    CHECK(ad.out == "added 0.1\n");
    auto nk1 = run("hier key --tree " + path("p.tree") + " --a 0.1 --b 1.0");
    auto nk2 = run("hier key --tree " + path("p.tree") + " --a 1.0 --b 0.1");
    CHECK(nk1.status == 0);
    CHECK(nk1.out == nk2.out);

    // verifier subcommands and exit codes
    CHECK(run("verify mds --scheme " + path("g.kps") + " --mode exhaustive").status == 0);
    CHECK(run("verify mds --scheme " + path("h.kps") + " --mode sample --samples 500 "
              "--sample-seed 1").status == 0);
    CHECK(run("kps gen --backend gkps --q 3 --w 1 --P 1,0,1 --seed 1 --out " +
              path("u.kps")).status == 0);
    CHECK(run("verify uniform --scheme " + path("u.kps") +
              " --coalition 0 --a 1 --b 2").status == 0);
    CHECK(run("verify uniform --scheme " + path("u.kps") +
              " --coalition 0 --a 1 --b 2 --master-limit 2").status == 2);
    CHECK(run("verify uniform --scheme " + path("b.kps") +
              " --coalition 0 --a 1 --b 2").status == 2);   // unsupported backend
    CHECK(run("hier build --U 2 --levels 3 --q 5 --t 3 --h 1 --seed 11 --out " +
              path("r.tree")).status == 0);
    CHECK(run("verify resilience --tree " + path("r.tree") +
              " --nodes 0.0 --a 0.1 --b 1.0").status == 0);

    // error paths
    CHECK(run("kps gen --backend bogus --q 5 --w 1 --seed 1 --out " + path("x.kps"))
              .status == 1);
    CHECK(run("kps gen --backend gkps --q 9 --w 3 --P 0,0,1 --seed 1 --out " +
              path("x.kps")).status == 1);   // pole with a root
    CHECK(run("hier key --tree " + path("t.tree") + " --a 0.0 --b 0.0").status == 1);
    CHECK(run("nonsense").status == 64);
    CHECK(run("kps gen --backend gkps").status == 64);   // missing required flags

    // tampered tree files are rejected
    {
        std::string text = slurp(path("t.tree"));
        text[text.size() - 2] = text[text.size() - 2] == '0' ? '1' : '0';
        std::ofstream out(path("bad.tree"), std::ios::binary);
        out << text;
    }
    CHECK(run("hier key --tree " + path("bad.tree") + " --a 0.0 --b 0.1").status == 1);

    if (failures == 0) std::cout << "all cli checks passed\n";
    return failures;
}
