// Runs the command-line tool as a subprocess.

#include "foliage/catalog.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace foliage;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// stderr is folded into the captured output when merge is set
Run run(const std::string& args, bool merge = false)
{
    const std::string cmd = std::string(FOLIAGE_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

class Workdir {
public:
    Workdir() : path_(fs::temp_directory_path() / ("foliage-cli-" + std::to_string(::getpid())))
    {
        fs::create_directories(path_);
    }
    ~Workdir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string model(const std::string& catalog_name) const
    {
        return write(catalog_name + ".json", render_model(find_catalog_entry(catalog_name)->document));
    }

private:
    fs::path path_;
};

} // namespace

TEST_CASE("classify and cohomology on h3")
{
    const Workdir dir;
    const std::string h3 = dir.model("h3");
    const Run c = run("classify " + h3);
    CHECK(c.status == 0);
    CHECK(c.out == "Sasakian\n");
    const Run v = run("classify " + h3 + " --verbose");
    CHECK(v.out.find("positivity: pass") != std::string::npos);

    const Run b = run("cohomology " + h3 + " --theory basic");
    CHECK(b.status == 0);
    CHECK(b.out == "1 2 1\n");
    CHECK(run("cohomology " + h3 + " --theory derham").out == "1 2 2 1\n");
    CHECK(run("cohomology " + h3 + " --theory bc").out == "1 1\n1 1\n");
    CHECK(run("cohomology " + dir.model("kt4") + " --theory aeppli").out == "1 2 1\n2 3 1\n1 1 1\n");
    CHECK(run("classify " + dir.model("abelian3")).out == "NotContact\n");
}

TEST_CASE("invalid input exits with 1")
{
    const Workdir dir;
    const std::string bad = dir.write("bad.json", R"({"name":"bad","dimension":3,"brackets":[
        {"i":1,"j":2,"coeffs":{"3":"1"}},{"i":2,"j":3,"coeffs":{"1":"1"}},{"i":1,"j":3,"coeffs":{"1":"1"}}]})");
    const Run v = run("validate " + bad, true);
    CHECK(v.status == 1);
    CHECK(v.out.find("Jacobi identity violated on triple (") != std::string::npos);
    CHECK(run("classify " + bad).status == 1);
    CHECK(run("report " + bad).status == 1);

    const std::string malformed = dir.write("m.json", R"({"name":"m","dimension":3,"brackets":[{"i":2,"j":2,"coeffs":{"3":"1/0"}}]})");
    const Run m = run("validate " + malformed, true);
    CHECK(m.status == 1);
    CHECK(m.out.find("IndexOrder") != std::string::npos);
    CHECK(m.out.find("MalformedRational") != std::string::npos);

    CHECK(run("validate " + dir.model("h5")).out == "valid: h5 (dimension 5)\n");
    CHECK(run("validate /nonexistent/file.json").status == 1);
    CHECK(run("cohomology " + dir.model("kt4") + " --theory basic").status == 1);
    CHECK(run("cohomology " + dir.model("X5") + " --theory dolbeault", true).out.find("bidegree") != std::string::npos);
}

TEST_CASE("usage errors exit with 1 and print usage")
{
    const Workdir dir;
    const std::string h3 = dir.model("h3");
    for (const std::string args : {"classify " + h3 + " --frobnicate", "cohomology " + h3 + " --theory cech",
                                   "cohomology " + h3, "report " + h3 + " --format xml", std::string("catalog"),
                                   std::string("")}) {
        CAPTURE(args);
        const Run r = run(args, true);
        CHECK(r.status == 1);
        CHECK(r.out.find("Usage") != std::string::npos);
    }
    CHECK(run("--help").status == 0);
}

TEST_CASE("catalog commands")
{
    const Run list = run("catalog list");
    CHECK(list.status == 0);
    CHECK(list.out.find("h3\tSasakian") != std::string::npos);
    CHECK(list.out.find("X5\tKContact") != std::string::npos);
    const Run show = run("catalog show h5");
    CHECK(show.status == 0);
    CHECK(parse_model_or_throw(show.out) == find_catalog_entry("h5")->document);
    CHECK(run("catalog show nothing").status == 1);
}

TEST_CASE("lefschetz and obstructions")
{
    const Workdir dir;
    const std::string h5 = dir.model("h5");
    const Run l = run("lefschetz " + h5);
    CHECK(l.status == 0);
    CHECK(l.out.find("p=0: Isomorphism") != std::string::npos);
    CHECK(l.out.find("p=2: Isomorphism") != std::string::npos);
    // a scaled metric has the same harmonic forms
    const std::string scaled = dir.write("g2.json", R"([["2",0,0,0,0],[0,"2",0,0,0],[0,0,2,0,0],[0,0,0,2,0],[0,0,0,0,2]])");
    CHECK(run("lefschetz " + h5 + " --gram " + scaled).out == l.out);
    // one that is not the contact metric need not give closed products
    const std::string other = dir.write("g.json", R"([["2","1","0","0","0"],["1","2","0","0","0"],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,"1/3"]])");
    const Run skew = run("lefschetz " + h5 + " --gram " + other);
    CHECK(skew.status == 0);
    CHECK(skew.out.find("p=0: NotClosed") != std::string::npos);
    const std::string singular = dir.write("s.json", R"([[1,1,0,0,0],[1,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1]])");
    CHECK(run("lefschetz " + h5 + " --gram " + singular).status == 1);
    CHECK(run("lefschetz " + dir.model("X5")).out.find("p=0: NotClosed") != std::string::npos);

    const Run o = run("obstructions " + dir.model("kt4"));
    CHECK(o.status == 0);
    CHECK(o.out.find("\"slack\"") != std::string::npos);
}

TEST_CASE("report output is byte-identical across runs and thread counts")
{
    const Workdir dir;
    for (const char* name : {"h3", "kt4", "X5"}) {
        const std::string f = dir.model(name);
        const Run a = run("report " + f + " --format json");
        CHECK(a.status == 0);
        CHECK(run("report " + f + " --format json").out == a.out);
        CHECK(run("report " + f + " --format json --threads 3").out == a.out);
        const Run md = run("report " + f + " --format md --threads 2");
        CHECK(md.status == 0);
        CHECK(run("report " + f + " --format md").out == md.out);
    }
}
