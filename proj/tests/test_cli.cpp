#include <doctest.h>

#include <sstream>

#include "cli.hpp"

using ratexp::cli::RunConfig;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_cli(const RunConfig& cfg) {
    std::ostringstream out, err;
    int status = ratexp::cli::run(cfg, out, err);
    return {status, out.str(), err.str()};
}

RunConfig base(const std::string& command, const std::string& expression) {
    RunConfig cfg;
    cfg.command = command;
    cfg.expression = expression;
    return cfg;
}

const std::string kExample = "a*.(a*+<-1>b*)*";

}  // namespace

TEST_CASE("eval prints the coefficient") {
    auto r = run_cli(base("eval", "\\e"));
    CHECK(r.status == 0);
    CHECK(r.out == "1\n");
    auto cfg = base("eval", kExample);
    cfg.word = "a";
    CHECK(run_cli(cfg).out == "2\n");
    cfg.word = "b";
    CHECK(run_cli(cfg).out == "-1\n");
}

TEST_CASE("series lists nonzero coefficients in length-lex order") {
    auto cfg = base("series", kExample);
    cfg.max_len = 1;
    auto r = run_cli(cfg);
    CHECK(r.status == 0);
    CHECK(r.out == "1\t\\e\n2\ta\n-1\tb\n");
}

TEST_CASE("terms lists the derived terms in construction order") {
    auto r = run_cli(base("terms", kExample));
    CHECK(r.status == 0);
    CHECK(r.out == "a*.(a*+<-1>b*)*\nb*.(a*+<-1>b*)*\n");
}

TEST_CASE("derived emits the two-state automaton of the running example") {
    auto cfg = base("derived", kExample);
    cfg.format = "dot";
    auto r = run_cli(cfg);
    CHECK(r.status == 0);
    CHECK(r.out.find("n0 -> n0 [label = \"<2>a\"]") != std::string::npos);
    CHECK(r.out.find("n0 -> n1 [label = \"<-1>b\"]") != std::string::npos);
    CHECK(r.out.find("n1 -> n0 [label = \"a\"]") != std::string::npos);
    CHECK(r.out.find("n2") == std::string::npos);

    cfg.format = "text";
    cfg.keep_initial = true;
    auto t = run_cli(cfg);
    CHECK(t.out.find("states 3") != std::string::npos);
}

TEST_CASE("standard emits the four-state position automaton") {
    auto cfg = base("standard", kExample);
    cfg.format = "json";
    auto r = run_cli(cfg);
    CHECK(r.status == 0);
    CHECK(r.out.find("\"states\"") != std::string::npos);
    auto text = base("standard", kExample);
    CHECK(run_cli(text).out.find("states 5") == std::string::npos);
    CHECK(run_cli(text).out.find("states 4") != std::string::npos);
}

TEST_CASE("derive prints the combination") {
    auto cfg = base("derive", kExample);
    cfg.letter = "a";
    auto r = run_cli(cfg);
    CHECK(r.status == 0);
    CHECK(r.out == "2\ta*.(a*+<-1>b*)*\n");
}

TEST_CASE("differential prints monomial lines") {
    auto r = run_cli(base("differential", kExample));
    CHECK(r.status == 0);
    CHECK(r.out == "2\ta\ta*.(a*+<-1>b*)*\n-1\tb\tb*.(a*+<-1>b*)*\n");
}

TEST_CASE("reconcile checks every alphabet letter") {
    auto r = run_cli(base("reconcile", kExample));
    CHECK(r.status == 0);
    CHECK(r.out == "a\tok\nb\tok\n");
}

TEST_CASE("witness emits the transfer matrix and succeeds") {
    auto r = run_cli(base("witness", kExample));
    CHECK(r.status == 0);
    CHECK(r.out ==
          "1\t0\n"
          "1\t0\n"
          "1\t0\n"
          "0\t1\n"
          "conjugate\ttrue\n");
}

TEST_CASE("equiv compares against a hand-built equivalent expression") {
    auto cfg = base("equiv", kExample);
    cfg.expression2 = "(<2>a+<-1>b.a)*.(\\e+<-1>b)";
    auto r = run_cli(cfg);
    CHECK(r.err == "");
    CHECK(r.status == 0);
    CHECK(r.out == "equivalent up to length 6\n");

    cfg.expression2 = "a*";
    auto diff = run_cli(cfg);
    CHECK(diff.status == 1);
    CHECK(diff.out.find("differ at") != std::string::npos);
}

TEST_CASE("identical configurations give byte-identical output") {
    auto cfg = base("derived", kExample);
    cfg.format = "json";
    CHECK(run_cli(cfg).out == run_cli(cfg).out);
}

TEST_CASE("usage and validity failures exit with status 2") {
    auto bad_parse = run_cli(base("standard", "a+"));
    CHECK(bad_parse.status == 2);
    CHECK(bad_parse.err.find("parse error at byte") != std::string::npos);

    auto invalid = run_cli(base("standard", "\\e*"));
    CHECK(invalid.status == 2);
    CHECK(invalid.err.find("not starrable") != std::string::npos);

    auto bad_semiring = base("eval", "\\e");
    bad_semiring.semiring = "complex";
    CHECK(run_cli(bad_semiring).status == 2);

    auto bad_letter = base("standard", "c");
    CHECK(run_cli(bad_letter).status == 2);
    CHECK(run_cli(bad_letter).err.find("not in alphabet") != std::string::npos);
}

TEST_CASE("semiring and monoid selection") {
    auto cfg = base("eval", "(a|x)*");
    cfg.alphabet = "a";
    cfg.alphabet2 = "x";
    cfg.word = "aa|xx";
    CHECK(run_cli(cfg).out == "1\n");

    auto rational = base("eval", "<1/2>a");
    rational.semiring = "rational";
    rational.word = "a";
    CHECK(run_cli(rational).out == "1/2\n");

    auto analytic = base("eval", "(<1/2>a*)*");
    analytic.semiring = "rational";
    analytic.word = "";
    CHECK(run_cli(analytic).status == 2);  // 1/2 not starrable in exact mode
    analytic.rational_star = "analytic";
    auto r = run_cli(analytic);
    CHECK(r.status == 0);
    CHECK(r.out == "2\n");

    auto tropical = base("eval", "a.a+<4>(a.a)");
    tropical.semiring = "minplus";
    tropical.word = "aa";
    CHECK(run_cli(tropical).out == "0\n");
}

TEST_CASE("boolean expressions over the same pipeline") {
    auto cfg = base("series", "(a+b)*");
    cfg.semiring = "boolean";
    cfg.max_len = 1;
    auto r = run_cli(cfg);
    CHECK(r.out == "true\t\\e\ntrue\ta\ntrue\tb\n");
}
