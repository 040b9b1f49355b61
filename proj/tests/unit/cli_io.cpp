#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "lcomm/cli.hpp"
#include "support.hpp"

using namespace t;
namespace fs = std::filesystem;
using lcomm::io::json;

namespace {

const std::string kDemos = LCOMM_DEMOS_DIR;

std::string demo(const std::string& name) { return kDemos + "/" + name; }

/// Fresh scratch directory per test, removed afterwards.
class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("lcomm_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("LCOMM_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    ::unsetenv("LCOMM_SEED");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static json read(const std::string& p) { return json::parse(io::read_file(p)); }

  fs::path dir_;
};

cli::AnalyzeArgs analyze_args(const std::string& op, const std::string& sub, const std::string& out) {
  cli::AnalyzeArgs a;
  a.operator_path = demo(op);
  a.subspace_path = demo(sub);
  a.out_path = out;
  return a;
}

json parse(const std::string& text) { return io::parse_text(text, "inline"); }

}  // namespace

TEST(Digest, Fnv1aReferenceValues) {
  EXPECT_EQ(io::fnv1a64(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a64("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(io::fnv1a64("foobar"), "85944171f73967e8");
}

TEST(RoundTrip, ExactDemoFiles) {
  for (const char* name : {"jordan3.json", "projection_operator.json", "gaussian_diag.json", "jordan2_plus_one.json"}) {
    const json doc = io::parse_text(io::read_file(demo(name)), name);
    const Mat m = io::matrix_from_json<Q>(doc);
    EXPECT_EQ(io::matrix_to_json(m), doc) << name;
    EXPECT_EQ(io::matrix_from_json<Q>(parse(io::dump(io::matrix_to_json(m)))), m) << name;
  }
  const json sdoc = io::parse_text(io::read_file(demo("projection_subspace.json")), "subspace");
  const auto ps = io::subspace_from_json<Q>(sdoc);
  EXPECT_TRUE(ps.was_canonical);
  EXPECT_EQ(io::subspace_to_json(ps.space), sdoc);
}

TEST(RoundTrip, RandomMatricesAndSubspaces) {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = pick(rng, 1, 5);
    Mat m = random_matrix<Q>(n, n, rng);
    m(0, 0) = Q(mpq_class(-7, 3), mpq_class(5, 2));
    EXPECT_EQ(io::matrix_from_json<Q>(parse(io::dump(io::matrix_to_json(m)))), m);
    const Sub s = random_subspace<Q>(n, pick(rng, 0, n), rng);
    const auto back = io::subspace_from_json<Q>(parse(io::dump(io::subspace_to_json(s))));
    EXPECT_EQ(back.space, s);
    EXPECT_TRUE(back.was_canonical);
  }
  const auto sp = io::spectrum_from_json<Q>(io::spectrum_to_json(build_algebraic<Q>({Q(2), Q(-1)}, {{2}, {1}}).spec));
  ASSERT_EQ(sp.roots.size(), 2u);
  EXPECT_EQ(sp.roots[0].value, Q(2));
  EXPECT_EQ(sp.roots[0].multiplicity, 2u);
}

TEST(RoundTrip, NonCanonicalInputIsFlagged) {
  const auto ps = io::subspace_from_json<Q>(io::parse_text(io::read_file(demo("unscaled_subspace.json")), "s"));
  EXPECT_FALSE(ps.was_canonical);
  EXPECT_EQ(ps.space, span(3, {{1, 0, 2}}));
}

TEST(Parse, MalformedInputsAreParseErrors) {
  const std::string one = R"({"re":"1/1","im":"0/1"})";
  EXPECT_LCOMM_ERROR(io::matrix_from_json<Q>(parse(R"({"rows":1,"cols":1,"entries":[[)" + one + "]]}")),
                     ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::matrix_from_json<Q>(parse(R"({"backend":"exotic","rows":1,"cols":1,"entries":[[)" + one + "]]}")),
                     ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::matrix_from_json<Q>(parse(R"({"backend":"exact","rows":1,"cols":2,"entries":[[)" + one + "]]}")),
                     ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::matrix_from_json<Q>(parse(R"({"backend":"exact","rows":0,"cols":0,"entries":[]})")),
                     ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(
      io::matrix_from_json<Q>(parse(R"({"backend":"exact","rows":1,"cols":1,"entries":[[{"re":"1/0","im":"0/1"}]]})")),
      ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::matrix_from_json<Q>(parse(R"({"backend":"exact","rows":1,"cols":1,"entries":[[1]]})")),
                     ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::subspace_from_json<Q>(parse(R"({"ambient_dim":2,"basis":[[)" + one + "]]}")),
                     ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::spectrum_from_json<Q>(parse(R"({"roots":[{"value":)" + one + "}]}")), ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::parse_text("{not json", "inline"), ErrorKind::ParseError);
  EXPECT_LCOMM_ERROR(io::read_file(demo("no_such_file.json")), ErrorKind::ParseError);
}

TEST(Parse, FloatScalarsAcceptNumbersAndPairs) {
  const auto m = io::matrix_from_json<Complex>(parse(R"({"backend":"float","rows":1,"cols":2,"entries":[[1.5,{"re":0,"im":2}]]})"));
  EXPECT_EQ(m(0, 0), Complex(1.5, 0.0));
  EXPECT_EQ(m(0, 1), Complex(0.0, 2.0));
}

TEST_F(Scratch, AnalyzeReportIsDeterministicApartFromTiming) {
  std::ostringstream out, err;
  const auto args1 = analyze_args("projection_operator.json", "projection_subspace.json", path("a.json"));
  auto args2 = args1;
  args2.out_path = path("b.json");
  ASSERT_EQ(cli::cmd_analyze(args1, out, err), 0) << err.str();
  ASSERT_EQ(cli::cmd_analyze(args2, out, err), 0) << err.str();
  json a = read(path("a.json")), b = read(path("b.json"));
  EXPECT_TRUE(a.contains("timing_ms"));
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["schema_version"], 1);
  EXPECT_EQ(a["command"], "analyze");
  EXPECT_EQ(a["seed"], 42);
  EXPECT_EQ(a["inputs"]["operator"], io::fnv1a64(io::read_file(demo("projection_operator.json"))));
  const json& an = a["analysis"];
  EXPECT_EQ(an["dims"]["local_commutant"], 6);
  EXPECT_EQ(an["algebra_verdict"]["is_algebra"], false);
  EXPECT_EQ(an["ultrainvariant"], false);
  EXPECT_EQ(an["girder_equals_subspace"], true);
  EXPECT_NE(out.str().find("algebra=no"), std::string::npos);
}

TEST_F(Scratch, AnalyzeFlagsScalarOperatorAndNonCanonicalBasis) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_analyze(analyze_args("scalar2.json", "line_in_plane.json", path("s.json")), out, err), 0);
  EXPECT_EQ(read(path("s.json"))["analysis"]["scalar_short_circuit"], true);
  std::ostringstream out2, err2;
  ASSERT_EQ(cli::cmd_analyze(analyze_args("jordan3.json", "unscaled_subspace.json", path("u.json")), out2, err2), 0);
  EXPECT_NE(err2.str().find("canonical"), std::string::npos) << err2.str();
}

TEST_F(Scratch, AnalyzeFloatBackend) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_analyze(analyze_args("float_rotation.json", "float_axis.json", path("f.json")), out, err), 0)
      << err.str();
  EXPECT_EQ(read(path("f.json"))["backend"], "float");
}

TEST_F(Scratch, ErrorsWriteNoOutput) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_analyze(analyze_args("jordan3.json", "bad_shape_subspace.json", path("x.json")), out, err), 2);
  EXPECT_FALSE(fs::exists(path("x.json")));
  EXPECT_NE(err.str().find("lcomm: input error:"), std::string::npos);
  EXPECT_EQ(cli::cmd_analyze(analyze_args("no_such_file.json", "jordan3_e2.json", path("y.json")), out, err), 2);
  EXPECT_FALSE(fs::exists(path("y.json")));
  auto bad = analyze_args("jordan3.json", "jordan3_e2.json", path("z.json"));
  bad.mutant = "not-a-mutant";
  EXPECT_EQ(cli::cmd_analyze(bad, out, err), 2);
  EXPECT_FALSE(fs::exists(path("z.json")));
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}), 0);
}

TEST_F(Scratch, AnalyzeMutantIsAViolation) {
  std::ostringstream out, err;
  auto args = analyze_args("projection_operator.json", "projection_subspace.json", path("m.json"));
  args.mutant = "skip-condition-iv";
  EXPECT_EQ(cli::cmd_analyze(args, out, err), 1);
  EXPECT_NE(err.str().find("property violation"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("m.json")));
}

TEST_F(Scratch, LatticeCommand) {
  std::ostringstream out, err;
  cli::LatticeArgs la;
  la.operator_path = demo("jordan3.json");
  la.out_path = path("l.json");
  ASSERT_EQ(cli::cmd_lattice(la, out, err), 0) << err.str();
  const json l = read(path("l.json"));
  EXPECT_EQ(l["lattice_report"]["lattice"]["member_count"], 4);
  EXPECT_EQ(l["ok"], true);

  la.operator_path = demo("jordan2_plus_one.json");
  la.spectrum_path = demo("jordan2_plus_one_spectrum.json");
  la.out_path = path("s.json");
  ASSERT_EQ(cli::cmd_lattice(la, out, err), 0) << err.str();
  EXPECT_EQ(read(path("s.json"))["lattice_report"]["lattice"]["member_count"], 6);

  std::ostringstream err2;
  la.spectrum_path = demo("jordan2_plus_one_bad_spectrum.json");
  la.out_path = path("bad.json");
  EXPECT_EQ(cli::cmd_lattice(la, out, err2), 2);
  EXPECT_NE(err2.str().find("remainder"), std::string::npos) << err2.str();
  EXPECT_FALSE(fs::exists(path("bad.json")));

  la.operator_path = demo("irrational_spectrum.json");
  la.spectrum_path.reset();
  la.out_path = path("irr.json");
  EXPECT_EQ(cli::cmd_lattice(la, out, err2), 2);

  la.operator_path = demo("gaussian_diag.json");
  la.out_path = path("g.json");
  ASSERT_EQ(cli::cmd_lattice(la, out, err), 0) << err.str();
  EXPECT_EQ(read(path("g.json"))["lattice_report"]["lattice"]["member_count"], 4);
}

TEST_F(Scratch, SeedPrecedence) {
  std::ostringstream out, err;
  cli::LatticeArgs la;
  la.operator_path = demo("jordan3.json");
  la.out_path = path("seed.json");
  ASSERT_EQ(cli::cmd_lattice(la, out, err), 0);
  EXPECT_EQ(read(path("seed.json"))["seed"], 42);
  ::setenv("LCOMM_SEED", "7", 1);
  ASSERT_EQ(cli::cmd_lattice(la, out, err), 0);
  EXPECT_EQ(read(path("seed.json"))["seed"], 7);
  la.seed = 5;
  ASSERT_EQ(cli::cmd_lattice(la, out, err), 0);
  EXPECT_EQ(read(path("seed.json"))["seed"], 5);
  la.seed.reset();
  ::setenv("LCOMM_SEED", "seven", 1);
  EXPECT_EQ(cli::cmd_lattice(la, out, err), 2);
}

TEST_F(Scratch, FuzzExitCodes) {
  std::ostringstream out, err;
  cli::FuzzArgs fa;
  fa.cases = 0;
  EXPECT_EQ(cli::cmd_fuzz(fa, out, err), 2);
  fa.cases = 1;
  fa.dim_max = 7;
  EXPECT_EQ(cli::cmd_fuzz(fa, out, err), 2);
  fa.dim_max = 3;
  fa.out_path = path("fuzz.json");
  ASSERT_EQ(cli::cmd_fuzz(fa, out, err), 0) << err.str();
  const json r = read(path("fuzz.json"));
  EXPECT_EQ(r["ok"], true);
  EXPECT_EQ(r["failure_count"], 0);
  fa.mutant = "skip-condition-iv";
  fa.out_path = path("mut.json");
  std::ostringstream mout;
  EXPECT_EQ(cli::cmd_fuzz(fa, mout, err), 1);
  EXPECT_NE(mout.str().find("counterexample"), std::string::npos);
  EXPECT_EQ(read(path("mut.json"))["ok"], false);
}

TEST_F(Scratch, FuzzReportDeterministic) {
  std::ostringstream out, err;
  cli::FuzzArgs fa;
  fa.seed = 9;
  fa.cases = 3;
  fa.dim_max = 3;
  fa.out_path = path("a.json");
  ASSERT_EQ(cli::cmd_fuzz(fa, out, err), 0);
  fa.out_path = path("b.json");
  ASSERT_EQ(cli::cmd_fuzz(fa, out, err), 0);
  json a = read(path("a.json")), b = read(path("b.json"));
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a, b);
}

TEST(Examples, TableAndExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_examples({}, out, err), 0);
  EXPECT_NE(out.str().find("projection 1,1,1"), std::string::npos);
  EXPECT_NE(out.str().find("graph 2,2,1"), std::string::npos);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
  std::ostringstream vout;
  cli::ExamplesArgs v;
  v.verbose = true;
  EXPECT_EQ(cli::cmd_examples(v, vout, err), 0);
  EXPECT_NE(vout.str().find("[ok]"), std::string::npos);
  std::ostringstream cout_;
  cli::ExamplesArgs c;
  c.mutant = "corrupt-fixture";
  EXPECT_EQ(cli::cmd_examples(c, cout_, err), 1);
  EXPECT_NE(cout_.str().find("FAIL"), std::string::npos);
}
