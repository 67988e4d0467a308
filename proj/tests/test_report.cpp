#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>

#include "riccilab/report.hpp"

using namespace riccilab;
using report::CheckLine;
using report::CheckStatus;
using report::Command;
using report::Report;
using scenario::Scenario;

namespace {

Scenario fixture(const char* name) {
  return scenario::load_file(std::string(RICCILAB_FIXTURE_DIR "/") + name);
}

std::vector<const CheckLine*> lines(const Report& r, const std::string& module) {
  std::vector<const CheckLine*> out;
  for (const CheckLine& cl : r.checks)
    if (cl.module == module) out.push_back(&cl);
  return out;
}

const CheckLine* by_tag(const Report& r, const std::string& tag) {
  for (const CheckLine& cl : r.checks)
    if (cl.tag == tag) return &cl;
  return nullptr;
}

}  // namespace

TEST_CASE("command names round-trip and unknown names are input errors") {
  CHECK(report::parse_command("report") == Command::Full);
  CHECK(report::parse_command("validate") == Command::Validate);
  CHECK(report::parse_command("torse") == Command::Torse);
  CHECK_THROWS_AS(report::parse_command("frobnicate"), scenario::ScenarioError);
  CHECK(std::string(report::command_name(Command::Full)) == "report");
}

TEST_CASE("negative fixture: the flat chart fails exactly on the transport law") {
  const Report r = report::run(fixture("minkowski.scn"), Command::Full);
  CHECK_FALSE(r.overall_pass);
  CHECK(r.failed == 1);
  CHECK(r.xi_mode == "declared");
  const auto* torse = by_tag(r, "eq2.4");
  REQUIRE(torse != nullptr);
  CHECK(torse->status == CheckStatus::Fail);
  CHECK(torse->residual == doctest::Approx(1.0).epsilon(1e-12));
  // the identity suites still run (the field equation is exact on flat space)
  // but every transport-law consequence is honestly vacuous
  for (const auto* cl : lines(r, "identities")) CHECK(cl->status == CheckStatus::Vacuous);
  // the xi-route verdict reports a steady, exact soliton
  REQUIRE(r.xi_verdict.has_value());
  CHECK(r.xi_verdict->lambda_soliton == doctest::Approx(0.0));
  CHECK(r.xi_verdict->exact);
  CHECK_FALSE(r.xi_verdict->torse_ok);
}

TEST_CASE("expanding-universe fixture: everything applicable passes") {
  const Report r = report::run(fixture("desitter.scn"), Command::Full);
  CHECK(r.overall_pass);
  CHECK(r.failed == 0);
  CHECK(r.points == 18);
  CHECK(r.xi_mode == "declared");

  for (const auto* cl : lines(r, "identities")) {
    CHECK(cl->status == CheckStatus::Pass);
    CHECK(cl->residual <= 1e-8);
  }
  REQUIRE(by_tag(r, "thm3.2") != nullptr);
  CHECK(by_tag(r, "thm3.2")->status == CheckStatus::Pass);
  CHECK(by_tag(r, "thm3.7")->status == CheckStatus::Pass);
  CHECK(by_tag(r, "eq1.2")->status == CheckStatus::Pass);
  CHECK(by_tag(r, "eq4.3")->status == CheckStatus::Pass);

  REQUIRE(r.fluid_ran);
  REQUIRE(r.fluid_rows.size() == 18);
  for (const auto& row : r.fluid_rows) {
    CHECK(row.a == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(row.b == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(row.sigma == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(row.rho == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(row.scalar_curv == doctest::Approx(12.0).epsilon(1e-10));
  }

  REQUIRE(r.xi_verdict.has_value());
  CHECK(r.xi_verdict->lambda_soliton == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(r.xi_verdict->cls == soliton::SolitonClass::Shrinking);
  CHECK_FALSE(r.xi_verdict->exact);
  CHECK(r.xi_verdict->residual_norm2 == doctest::Approx(12.0).epsilon(1e-9));
  CHECK(r.xi_verdict->torse_ok);

  REQUIRE(r.parallel.has_value());
  CHECK(r.parallel->parallel);
  CHECK(r.parallel->recovered_constant == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("vacuum fixture: nothing is forced, nothing is faked") {
  const Report r = report::run(fixture("schwarzschild.scn"), Command::Full);
  CHECK(r.overall_pass);
  CHECK(r.xi_mode == "effective");
  CHECK_FALSE(r.xi_verdict.has_value());
  CHECK_FALSE(r.potential_verdict.has_value());

  for (const auto* cl : lines(r, "torse")) CHECK(cl->status == CheckStatus::NotApplicable);
  for (const auto* cl : lines(r, "fluid")) CHECK(cl->status == CheckStatus::NotApplicable);
  for (const auto* cl : lines(r, "identities")) CHECK(cl->status == CheckStatus::Vacuous);
  for (const auto* cl : lines(r, "curvature")) CHECK(cl->status == CheckStatus::Pass);
  // the engine agreement checks still run and pass
  const auto sol = lines(r, "soliton");
  REQUIRE(sol.size() == 2);
  for (const auto* cl : sol) CHECK(cl->status == CheckStatus::Pass);
  // the fluid table is still printed for the effective observer
  REQUIRE(r.fluid_rows.size() == 1);
  CHECK(std::abs(r.fluid_rows[0].a) < 1e-12);
  // not conformally flat, so the classification consequences stay vacuous
  REQUIRE(r.conformal.has_value());
  CHECK(r.conformal->max_weyl > 0.1);
  CHECK(by_tag(r, "thm3.2")->status == CheckStatus::Vacuous);
}

TEST_CASE("gradient soliton fixture: both suites live and green") {
  const Report r = report::run(fixture("gaussian.scn"), Command::Full);
  CHECK(r.overall_pass);
  CHECK(r.xi_mode == "effective");
  CHECK(r.has_potential);

  const auto* eq14 = by_tag(r, "eq1.4");
  REQUIRE(eq14 != nullptr);
  CHECK(eq14->status == CheckStatus::Pass);
  CHECK(eq14->residual <= 1e-10);

  // 2 engine lines + eq1.4 + 16 general identities + 10 F-operator identities
  const auto sol = lines(r, "soliton");
  CHECK(sol.size() == 29);
  int live = 0;
  for (const auto* cl : sol) {
    CHECK(cl->status == CheckStatus::Pass);
    if (cl->status == CheckStatus::Pass) ++live;
    CHECK(cl->residual <= 1e-9);
  }
  CHECK(live == 29);

  REQUIRE(r.potential_verdict.has_value());
  CHECK(r.potential_verdict->lambda_given);
  CHECK(r.potential_verdict->lambda_soliton == -1.0);
  CHECK(r.potential_verdict->cls == soliton::SolitonClass::Shrinking);
  CHECK(r.potential_verdict->exact);

  // homothety => affine => the Jacobi consequence is applicable and holds
  REQUIRE(r.killing.has_value());
  CHECK(by_tag(r, "thm3.9")->status == CheckStatus::Pass);
  for (const auto* cl : lines(r, "classify"))
    if (cl->tag == "lem3.10") CHECK(cl->status == CheckStatus::Pass);
}

TEST_CASE("subset commands emit only their own module") {
  const Scenario scn = fixture("desitter.scn");
  const Report c = report::run(scn, Command::Curvature);
  CHECK(c.checks.size() == 7);
  for (const auto& cl : c.checks) CHECK(cl.module == "curvature");

  const Report t = report::run(scn, Command::Torse);
  CHECK(t.checks.size() == 2);
  CHECK(t.command == "torse");

  const Report v = report::run(scn, Command::Validate);
  CHECK(v.checks.empty());
  CHECK(v.overall_pass);

  const Report i = report::run(scn, Command::Identities);
  CHECK(i.checks.size() == 9);
  for (const auto& cl : i.checks) CHECK(cl.status == CheckStatus::Pass);
}

TEST_CASE("renderings are deterministic across independent loads") {
  const Report r1 = report::run(fixture("desitter.scn"), Command::Full);
  const Report r2 = report::run(fixture("desitter.scn"), Command::Full);
  CHECK(report::render_text(r1) == report::render_text(r2));
  CHECK(report::render_json(r1) == report::render_json(r2));
}

TEST_CASE("JSON rendering is well-formed and carries the contract fields") {
  const Report r = report::run(fixture("gaussian.scn"), Command::Full);
  const std::string text = report::render_json(r);
  CHECK(text.back() == '\n');
  const auto j = nlohmann::json::parse(text);
  CHECK(j["scenario"] == "gaussian");
  CHECK(j["digest"].get<std::string>().size() == 16);
  CHECK(j["overall"]["status"] == "pass");
  CHECK(j["checks"].is_array());
  CHECK(j["checks"].size() == r.checks.size());
  for (const auto& cl : j["checks"]) {
    CHECK(cl.contains("module"));
    CHECK(cl.contains("name"));
    CHECK(cl.contains("tag"));
    CHECK(cl.contains("residual"));
    CHECK(cl.contains("status"));
  }
  CHECK(j["fluid"]["rows"].size() == 8);
  CHECK(j["soliton"]["potential"]["lambda"] == -1.0);

  // overall status rule: fail iff some non-vacuous check fails
  const Report neg = report::run(fixture("minkowski.scn"), Command::Full);
  const auto jn = nlohmann::json::parse(report::render_json(neg));
  CHECK(jn["overall"]["status"] == "fail");
  CHECK(jn["overall"]["failed"] == 1);
}
