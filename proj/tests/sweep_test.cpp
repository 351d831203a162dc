#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gstx/simulator/validation.hpp"
#include "gstx/sweep/sweep.hpp"

namespace {

using namespace gstx::sweep;
using gstx::simulator::Method;

SweepSpec small_spec() {
  SweepSpec s;
  s.base.input = gstx::simulator::squeezed_figure_input();
  s.base.p = 5.0;
  s.base.steps = 2000;
  s.axis = Axis::G_over_kappa;
  s.grid = linspace(0.5, 30.0, 12);
  s.methods = {Method::numeric, Method::closed_form};
  return s;
}

std::string csv_of(const SweepSpec& spec, std::size_t jobs) {
  std::ostringstream os;
  write_csv(os, {{spec.label, spec.axis, run_sweep(spec, jobs)}});
  return os.str();
}

TEST(Axis, NamesRoundTrip) {
  for (Axis a : kAllAxes) EXPECT_EQ(parse_axis(to_string(a)), a);
  EXPECT_FALSE(parse_axis("G").has_value());
}

TEST(Linspace, EndpointsAndCount) {
  const auto g = linspace(0.5, 30.0, 120);
  ASSERT_EQ(g.size(), 120u);
  EXPECT_EQ(g.front(), 0.5);
  EXPECT_EQ(g.back(), 30.0);
  EXPECT_EQ(default_coupling_grid(), g);
  EXPECT_EQ(linspace(2.0, 5.0, 1), std::vector<double>{2.0});
}

TEST(Template, AxisUpdatesTheRightField) {
  ExperimentTemplate t;
  EXPECT_EQ(t.with(Axis::G_over_kappa, 7.0).G_over_kappa, 7.0);
  EXPECT_EQ(t.with(Axis::p, 3.0).p, 3.0);
  EXPECT_EQ(t.with(Axis::r, 0.4).input.r, 0.4);
  EXPECT_EQ(t.with(Axis::alpha_mag, 2.0).input.alpha_mag, 2.0);
  EXPECT_EQ(t.with(Axis::phi, 1.0).input.phi, 1.0);
  EXPECT_EQ(t.with(Axis::T_bath, 0.1).T_bath, 0.1);
}

TEST(Template, CouplingUnitsFallBackWhenLossless) {
  ExperimentTemplate t;
  t.G_over_kappa = 10.0;
  EXPECT_DOUBLE_EQ(t.params().G, 10.0 * gstx::model::figure::kappa);
  t.kappa = 0.0;
  t.gamma = 0.0;
  EXPECT_DOUBLE_EQ(t.params().G, 10.0 * gstx::model::figure::kappa);
}

TEST(SweepSpecValidation, RejectsBadGrids) {
  auto s = small_spec();
  s.grid = {};
  EXPECT_THROW(s.validate(), gstx::model::ValidationError);
  s.grid = {1.0, 1.0};
  EXPECT_THROW(s.validate(), gstx::model::ValidationError);
  s.grid = {2.0, 1.0};
  EXPECT_THROW(s.validate(), gstx::model::ValidationError);
  s.grid = {1.0};
  EXPECT_THROW(run_sweep(s, 0), gstx::model::ValidationError);
}

TEST(RunSweep, SinglePointEqualsDirectRun) {
  auto s = small_spec();
  s.grid = {10.0};
  const auto recs = run_sweep(s, 1);
  ASSERT_EQ(recs.size(), 2u);
  const auto exp = s.base.with(Axis::G_over_kappa, 10.0).experiment();
  const auto direct = gstx::simulator::run_transfer(exp);
  EXPECT_EQ(recs[0].method, Method::numeric);
  EXPECT_EQ(recs[0].outcome.F, direct.F);
  EXPECT_EQ(recs[0].outcome.lambda, direct.lambda);
  EXPECT_EQ(recs[0].outcome.n_h_bar, direct.n_h_bar);
  EXPECT_EQ(recs[1].method, Method::closed_form);
  EXPECT_EQ(recs[1].outcome.F, gstx::simulator::run_closed_form(exp).F);
}

TEST(RunSweep, OneRecordPerPointAndMethodInGridOrder) {
  const auto s = small_spec();
  const auto recs = run_sweep(s, 3);
  ASSERT_EQ(recs.size(), s.grid.size() * 2);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].grid_index, i / 2);
    EXPECT_EQ(recs[i].axis_value, s.grid[i / 2]);
    EXPECT_EQ(recs[i].method, i % 2 == 0 ? Method::numeric : Method::closed_form);
    EXPECT_GE(recs[i].wall_seconds, 0.0);
  }
}

TEST(RunSweep, OutputIndependentOfParallelism) {
  const auto s = small_spec();
  const auto one = csv_of(s, 1);
  EXPECT_EQ(one, csv_of(s, 8));
  EXPECT_EQ(one, csv_of(s, 3));
  EXPECT_EQ(one, csv_of(s, 1));
}

TEST(RunSweep, FailingPointAbortsAndIsNamed) {
  auto s = small_spec();
  s.axis = Axis::r;
  s.base.G_over_kappa = 5.0;
  s.grid = {0.0, 0.5, 1.0};
  s.base.input.phi = 0.0;
  s.base.input.alpha_mag = -1.0;  // invalid at every point; the first one is reported
  try {
    run_sweep(s, 4);
    FAIL() << "expected SweepError";
  } catch (const SweepError& e) {
    const std::string w = e.what();
    EXPECT_NE(w.find("r=0"), std::string::npos) << w;
    EXPECT_NE(w.find("G/kappa=5"), std::string::npos) << w;
    EXPECT_NE(w.find("alpha"), std::string::npos) << w;
  }
}

TEST(Csv, SchemaAndFormatting) {
  auto s = small_spec();
  s.grid = {10.0};
  s.label = "p=5";
  const auto csv = csv_of(s, 1);
  std::istringstream is(csv);
  std::string header, numeric, closed, extra;
  std::getline(is, header);
  std::getline(is, numeric);
  std::getline(is, closed);
  EXPECT_FALSE(std::getline(is, extra));
  EXPECT_EQ(header, kCsvHeader);
  EXPECT_EQ(numeric.rfind("G_over_kappa,10,numeric[p=5],", 0), 0u) << numeric;
  EXPECT_EQ(numeric.substr(numeric.size() - 3), ",,,");
  EXPECT_EQ(closed.rfind("G_over_kappa,10,closed_form[p=5],", 0), 0u) << closed;
  EXPECT_EQ(std::count(closed.begin(), closed.end(), ','), 8);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(format_number(0.123456789123), "0.123456789");
  EXPECT_EQ(format_number(2.0), "2");
}

}  // namespace
