#include <cstdlib>

#include <gtest/gtest.h>

#include <besselsum_cli/cli.hpp>
#include <besselsum_cli/parse.hpp>
#include <besselsum_cli/report.hpp>

using namespace besselsum;
using namespace besselsum::cli;

TEST(Parse, Matrix) {
    const RationalMatrix m = parse_matrix("2,1;0,3");
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m(0, 1), Rational(1));
    EXPECT_EQ(format_matrix(m), "2,1;0,3");
    EXPECT_EQ(parse_matrix(" 1/2 ,0; 0, -3/4 ")(1, 1), Rational(-3, 4));
    EXPECT_THROW(parse_matrix("1,2;3"), ParseError);
    EXPECT_THROW(parse_matrix("1,x"), ParseError);
    EXPECT_THROW(parse_matrix(""), ParseError);
    EXPECT_THROW(parse_matrix("1/0"), ParseError);
}

TEST(Parse, Lists) {
    EXPECT_EQ(parse_int_list("1,-2,3", "x"), (IntVector{1, -2, 3}));
    EXPECT_THROW(parse_int_list("1,2.5", "x"), ParseError);
    EXPECT_EQ(parse_double_list("0.5,2", "t"), (std::vector<double>{0.5, 2.0}));
    EXPECT_TRUE(parse_shift("1/3,-1/2").is_exact());
    EXPECT_FALSE(parse_shift("0.25,0").is_exact());
}

TEST(Parse, Complex) {
    EXPECT_EQ(parse_complex("1.5"), Complex(1.5, 0.0));
    EXPECT_EQ(parse_complex("-2i"), Complex(0.0, -2.0));
    EXPECT_EQ(parse_complex("1+0.5i"), Complex(1.0, 0.5));
    EXPECT_EQ(parse_complex("1-i"), Complex(1.0, -1.0));
    EXPECT_THROW(parse_complex("1+"), ParseError);
    EXPECT_EQ(parse_complex_list("1,2i").size(), 2u);
}

TEST(Parse, Characters) {
    const CharacterSpec k = parse_character("kronecker:12");
    EXPECT_EQ(k.kind, CharacterSpec::Kind::Kronecker);
    EXPECT_EQ(k.parameter, 12);
    EXPECT_EQ(parse_character(format_character(k)), k);
    EXPECT_EQ(k.build()(5), Complex(-1.0, 0.0));
    EXPECT_EQ(parse_character(R"({"kronecker": -4})").build()(3), Complex(-1.0, 0.0));
    const CharacterSpec table = parse_character(R"({"modulus": 4, "values": [[0,0],[1,0],[0,0],[-1,0]]})");
    EXPECT_EQ(table.kind, CharacterSpec::Kind::Table);
    EXPECT_EQ(parse_character(format_character(table)), table);
    EXPECT_EQ(parse_character("trivial").build()(7), Complex(1.0, 0.0));
    EXPECT_EQ(parse_character("principal:6").build()(3), Complex(0.0, 0.0));
    EXPECT_THROW(parse_character("legendre:5"), ParseError);
    EXPECT_THROW(parse_character("{bad json"), ParseError);
    EXPECT_EQ(parse_character_family("kronecker:12", 3).size(), 3u);
    EXPECT_THROW(parse_character_family("trivial;trivial", 3), ParseError);
}

TEST(Parse, Codes) {
    const CodeSpec c = parse_code("m=2,n=3,gen=111");
    EXPECT_EQ(c.m, 2);
    EXPECT_EQ(c.n, 3u);
    EXPECT_EQ(c.rows, (std::vector<IntVector>{{1, 1, 1}}));
    EXPECT_EQ(parse_code(format_code(c)), c);
    EXPECT_EQ(c.build().size(), 2u);
    EXPECT_EQ(parse_code("m=2,n=3,parity=111").build().size(), 4u);
    EXPECT_EQ(parse_code("m=12,n=2,gen=3:11").rows, (std::vector<IntVector>{{3, 11}}));
    EXPECT_THROW(parse_code("m=2,n=3,gen=11"), ParseError);
    EXPECT_THROW(parse_code("m=1,n=3"), ParseError);
}

TEST(Cli, VerifyIdentityExample) {
    const RunResult r = run({"verify-identity", "--lattice", "2,1;0,3", "--chi", "trivial", "--x", "1,-2",
                             "--y", "1/3,-1/2", "--t", "0.7", "--no-meta"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    const Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["schema"], "1");
    EXPECT_EQ(doc["verdict"], "pass");
}

TEST(Cli, MalformedInputExitsTwo) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"verify-identity", "--lattice", "2,1;0", "--t", "1"},
          std::vector<std::string>{"code-cwe", "--m", "2", "--n", "3", "--generators", "12"},
          std::vector<std::string>{"no-such-command"},
          std::vector<std::string>{"eta-check", "--tau", "0", "-1"}}) {
        const RunResult r = run(args);
        EXPECT_EQ(r.exit_code, 2) << args.front();
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(Cli, NoMetaIsDeterministic) {
    const std::vector<std::string> args = {"--no-meta", "theta-identity", "--t", "0.25"};
    const RunResult a = run(args);
    const RunResult b = run(args);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(Json::parse(a.out).contains("meta"));
}

TEST(Cli, CsvFormat) {
    const RunResult r = run({"--format", "csv", "--no-meta", "code-macwilliams", "--m", "2", "--n", "3",
                             "--generators", "111", "--x", "0,0,0", "--t", "0.9"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("name,", 0), 0u) << r.out;
    EXPECT_EQ(r.out.find('{'), std::string::npos);
}

TEST(Cli, ThreadsFromEnvironment) {
    ::setenv("BESSELSUM_THREADS", "3", 1);
    const RunResult r = run({"verify-identity", "--lattice", "1", "--t", "0.5"});
    ::unsetenv("BESSELSUM_THREADS");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out)["meta"]["threads"], 3);
}

TEST(Cli, ConfigDigest) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
