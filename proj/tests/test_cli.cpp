// End-to-end tests of the logdisc binary: document round-trips, report
// determinism, the documented example payloads, and exit codes.  The tests
// run from the build directory, where ./logdisc lives.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logdisc/arrangement.hpp"
#include "logdisc/jsonio.hpp"
#include "logdisc/moduli.hpp"
#include "logdisc/polytope.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace logdisc;

namespace {

int run_cli(const std::string& args) {
    int rc = std::system(("./logdisc " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

Json run_cli_report(const std::string& args) {
    std::string out = "/tmp/logdisc_cli_out.json";
    REQUIRE(run_cli(args + " --out " + out) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    return Json::parse(in);
}

std::string write_doc(const Json& doc, const std::string& name) {
    std::string path = "/tmp/logdisc_cli_" + name + ".json";
    std::ofstream(path) << doc.dump();
    return path;
}

std::string m05_path() {
    static std::string path =
        write_doc(arrangement_to_doc(m0m_arrangement(5).first), "m05");
    return path;
}

Json strip_timings(Json report) {
    report.erase("timings");
    return report;
}

} // namespace

TEST_CASE("documented example payloads") {
    Json chi = run_cli_report("chi " + m05_path())["outputs"];
    CHECK(chi["chi"] == "t^2-5*t+6");
    CHECK(chi["regions"] == 12);
    CHECK(chi["bounded"] == 2);
    CHECK(chi["ml_degree"] == 2);

    Json mem = run_cli_report("member " + m05_path() + " --u 1,1,1,1,1");
    CHECK(mem["outputs"]["verdict"] == "outside");
}

TEST_CASE("emitted documents round-trip") {
    // arrangement document out of m0m re-parses to the same arrangement
    Json m0m = run_cli_report("m0m --m 5")["outputs"];
    Arrangement again = load_arrangement(m0m["arrangement"]);
    auto [ref, map] = m0m_arrangement(5);
    CHECK(again.d == ref.d);
    CHECK(again.A == ref.A);
    CHECK(again.b == ref.b);
    CHECK(again.labels == ref.labels);
    CHECK(m0m["labels"].get<std::vector<std::string>>() == map.labels);

    // discriminant factor re-parses to the known quartic
    Json disc = run_cli_report("disc " + m05_path())["outputs"];
    REQUIRE(disc["factors"].size() == 1);
    Poly f = poly_from_doc(disc["factors"][0]["poly"]);
    Poly want = m05_discriminant().with_vars(f.vars);
    CHECK(f == canonicalize(want));
    CHECK(disc["factors"][0]["certified"] == true);
    CHECK(disc["total_degree"] == 4);

    // newton output on that factor document, then the initial form document
    std::string fpath = write_doc(poly_to_doc(f), "quartic");
    Json np = run_cli_report("newton " + fpath)["outputs"];
    CHECK(np["dim"] == 4);
    CHECK(np["f_vector"].get<std::vector<int>>() ==
          std::vector<int>{7, 17, 18, 8});
    CHECK(np["facet_normals"].size() == 8);

    Json init = run_cli_report("initial " + fpath + " --w 0,1,0,1,1");
    Poly g = poly_from_doc(init["outputs"]["initial"]);
    CHECK(g == initial_form(f, {Rat(0), Rat(1), Rat(0), Rat(1), Rat(1)}));
    CHECK(poly_from_doc(poly_to_doc(g)) == g); // doc layer round-trip
}

TEST_CASE("reports are deterministic once timings are stripped") {
    for (std::string args :
         {std::string("chi ") + m05_path(),
          std::string("disc ") + m05_path() + " --seed 7",
          std::string("crit ") + m05_path() + " --u 2,3,5,7,-1 --seed 3",
          std::string("circuits ") + m05_path(),
          std::string("gram --u -1/2,1,2,-1/2,-1"),
          std::string("m0m --m 6")}) {
        Json a = strip_timings(run_cli_report(args));
        Json b = strip_timings(run_cli_report(args));
        CHECK_MESSAGE(a.dump() == b.dump(), args);
    }
}

TEST_CASE("exit codes: usage 2, domain 1, success 0") {
    CHECK(run_cli("") == 2);                          // missing subcommand
    CHECK(run_cli("frobnicate") == 2);                // unknown subcommand
    CHECK(run_cli("chi") == 2);                       // missing argument
    CHECK(run_cli("chi " + m05_path() + " --bogus") == 2); // unknown flag
    CHECK(run_cli("chi /tmp/no_such_file_zzz.json") == 1);  // missing file
    CHECK(run_cli("m0m --m 4") == 1);                 // domain error
    CHECK(run_cli("softlimit --m 5 --k 5") == 1);     // k out of range
    CHECK(run_cli("gram --u 1,2,3") == 1);            // wrong arity
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("softlimit --m 5 --k 4") == 0);

    std::string bad = write_doc(Json::object(), "bad");
    CHECK(run_cli("chi " + bad) == 1); // malformed arrangement document

    std::ofstream("/tmp/logdisc_cli_garbage.json") << "{not json";
    CHECK(run_cli("chi /tmp/logdisc_cli_garbage.json") == 1);
}
