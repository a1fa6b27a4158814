#include "support.hpp"

#include <set>

#include "gerbe/verify/suites.hpp"

using namespace gerbe;
using namespace gerbe::verify;

namespace {

ParseResult parse(std::vector<const char*> args) {
  args.insert(args.begin(), "gerbeverify");
  return parse_command_line(static_cast<int>(args.size()), args.data());
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("option parsers") {
  CHECK(parse_dimensions("2,3,4") == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(parse_dimensions("2,,3"), ConfigError);
  CHECK_THROWS_AS(parse_dimensions("two"), ConfigError);
  CHECK(parse_grid("200x400") == std::pair<int, int>{200, 400});
  CHECK_THROWS_AS(parse_grid("200"), ConfigError);
  CHECK_THROWS_AS(parse_grid("200x"), ConfigError);
  Tolerances tol;
  parse_tolerance("wzw_normalization=0.5", tol);
  CHECK(tol.get("wzw_normalization", 1.0) == 0.5);
  CHECK(tol.get("other", 1.0) == 1.0);
  parse_tolerance("*=1e-30", tol);
  CHECK(tol.get("other", 1.0) == 1e-30);
  CHECK(tol.get("wzw_normalization", 1.0) == 0.5);
  CHECK_THROWS_AS(parse_tolerance("=1", tol), ConfigError);
  CHECK_THROWS_AS(parse_tolerance("a=b", tol), ConfigError);
}

TEST_CASE("validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.ns = {1};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.fd_step = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.tol.set("x", -1.0);
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.samples = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("command line") {
  auto ok = parse({"curvings", "--n", "2,3", "--seed", "9", "--grid", "10x20", "--tol", "a=1"});
  REQUIRE(ok.outcome == ParseOutcome::Run);
  CHECK(ok.config.command == "curvings");
  CHECK(ok.config.ns == std::vector<int>{2, 3});
  CHECK(ok.config.seed == 9);
  CHECK(ok.config.grid_theta == 10);
  CHECK(ok.config.grid_phi == 20);
  CHECK_FALSE(ok.config.samples.has_value());
  CHECK(ok.config.tol.get("a", 0.0) == 1.0);
  CHECK(parse({"identities", "--bogus"}).exit_code == 2);
  CHECK(parse({"identities", "--n", "1"}).exit_code == 2);
  CHECK(parse({"identities", "--fd-step", "-1"}).exit_code == 2);
  CHECK(parse({"nonsense"}).exit_code == 2);
  CHECK(parse({}).exit_code == 2);
}

TEST_CASE("sample streams") {
  auto a = sample_rng(1, "x", 3), b = sample_rng(1, "x", 3);
  CHECK(a() == b());
  CHECK(sample_rng(1, "x", 3)() != sample_rng(1, "y", 3)());
  CHECK(sample_rng(1, "x", 3)() != sample_rng(1, "x", 4)());
  CHECK(sample_rng(1, "x", 3)() != sample_rng(2, "x", 3)());
}

TEST_CASE("reports") {
  RunConfig cfg;
  cfg.command = "identities";
  cfg.samples = 3;
  Report r{cfg, {}};
  CheckRecord rec;
  rec.name = "a";
  rec.pass = true;
  rec.runtime_ms = 12.0;
  r.add(rec);
  CHECK_THROWS_AS(r.add(rec), InvariantError);
  CHECK(r.pass());
  auto j = to_json(r);
  CHECK(j.begin().key() == "schema");
  CHECK(j["schema"] == 1);
  CHECK_FALSE(j["checks"][0].contains("runtime_ms"));
  r.config.timings = true;
  CHECK(to_json(r)["checks"][0]["runtime_ms"] == 12.0);
  rec.name = "b";
  rec.pass = false;
  rec.residual = std::numeric_limits<double>::infinity();
  r.add(rec);
  CHECK_FALSE(r.pass());
  CHECK(to_json(r)["checks"][1]["residual"] == "inf");
  CHECK(to_json(r)["pass"] == false);
}

TEST_CASE("suite reports are deterministic and every check appears once") {
  RunConfig cfg;
  cfg.command = "identities";
  cfg.samples = 5;
  cfg.ns = {2, 3};
  const auto a = render(run_command(cfg)), b = render(run_command(cfg));
  CHECK(a == b);
  const auto rep = run_command(cfg);
  std::set<std::string> names;
  for (const auto& c : rep.checks) CHECK(names.insert(c.name).second);
  cfg.tol.set("*", 1e-300);
  CHECK_FALSE(run_command(cfg).pass());
}

TEST_CASE("forced failures propagate") {
  CheckContext ctx;
  ctx.tol.set("contour_vs_residue", 1e-300);
  const auto rec = check_contour_vs_residue(ctx, {2}, 3);
  CHECK_FALSE(rec.pass);
  CHECK(rec.tolerance == 1e-300);
  CheckContext coarse;
  coarse.contour_nodes = 64;
  CHECK(check_contour_vs_residue(coarse, {2}, 20).residual >
        check_contour_vs_residue(CheckContext{}, {2}, 20).residual);
}

}  // TEST_SUITE
