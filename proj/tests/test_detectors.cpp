#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dmdl/detectors.hpp"
#include "dmdl/dmdl_stats.hpp"
#include "dmdl/nml_gaussian.hpp"
#include "dmdl/rng.hpp"
#include "dmdl/synthgen.hpp"
#include "test_util.hpp"

using namespace dmdl;

namespace {

GaussianNmlConfig nml(double mu_max, double sigma_min, double sigma_max) {
  GaussianNmlConfig c;
  c.mu_max = mu_max;
  c.sigma_min = sigma_min;
  c.sigma_max = sigma_max;
  return c;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed, double mu = 0.0,
                          double sigma = 1.0) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.gaussian(mu, sigma);
  return x;
}

// level0 for t < change, level1 afterwards, unit noise, one stream.
std::vector<double> step_series(std::size_t n, std::size_t change,
                                double level0, double level1,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = rng.gaussian(i < change ? level0 : level1, 1.0);
  return x;
}

bool same_records(const std::vector<ScoreRecord>& a,
                  const std::vector<ScoreRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& p = a[i];
    const auto& q = b[i];
    if (p.t != q.t || p.raw0 != q.raw0 || p.raw1 != q.raw1 ||
        p.raw2 != q.raw2 || p.alarm0 != q.alarm0 || p.alarm1 != q.alarm1 ||
        p.alarm2 != q.alarm2 || p.window_size != q.window_size ||
        p.direction != q.direction)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fixed window: geometry of the output") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::fixed;
  cfg.h = 5;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = noise(40, 3);
  const auto r = run_fixed(x, cfg);
  REQUIRE(r.size() == 40 - 10 + 1);
  CHECK(r.front().t == 5);
  CHECK(r.back().t == 35);
  for (const auto& rec : r) {
    CHECK(rec.window_size == 10);
    CHECK(rec.raw0.has_value());
    CHECK(rec.raw1.has_value());
    CHECK(rec.raw2.has_value());
    CHECK(rec.direction == Direction::none);
  }
}

TEST_CASE("fixed window: constant input reduces to the complexity form") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::fixed;
  cfg.h = 7;
  cfg.nml = nml(1, 0.05, 100);
  const std::vector<double> x(30, 4.0);
  const auto r = run_fixed(x, cfg);
  const double n = 14.0;
  auto lc = [&](std::size_t m) {
    return log_parametric_complexity(m, *cfg.nml);
  };
  // With zero residuals everywhere only the normalizers remain, for the
  // derivative orders too.
  const double expected0 = (lc(14) - lc(7) - lc(7)) / n;
  const double expected1 = (lc(7) + lc(7) - lc(8) - lc(6)) / n;
  const double expected2 =
      ((lc(14) - lc(8) - lc(6)) - 2.0 * (lc(14) - lc(7) - lc(7)) +
       (lc(14) - lc(6) - lc(8))) /
      n;
  for (const auto& rec : r) {
    REQUIRE(rec.raw0.has_value());
    REQUIRE(rec.raw1.has_value());
    REQUIRE(rec.raw2.has_value());
    CHECK_NEAR(*rec.raw0, expected0, 1e-9);
    CHECK_NEAR(*rec.raw1, expected1, 1e-9);
    CHECK_NEAR(*rec.raw2, expected2, 1e-9);
    CHECK(*rec.raw0 < 0.0);
    CHECK_FALSE(rec.alarm0);  // beta = 0 and the zeroth score is negative
    CHECK(rec.alarm1 == (*rec.raw1 > cfg.beta));
    CHECK(rec.alarm2 == (*rec.raw2 > cfg.beta));
  }
}

TEST_CASE("fixed window: scores match the direct statistics at each center") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::fixed;
  cfg.h = 6;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(36, 18, 0.0, 3.0, 9);
  const auto r = run_fixed(x, cfg);
  const std::span<const double> s(x);
  for (const auto& rec : r) {
    const auto t = static_cast<std::size_t>(rec.t);
    const auto w = s.subspan(t - 6, 12);
    CHECK_NEAR(*rec.raw0, dmdl0(w, 6, *cfg.nml), 1e-12);
    CHECK_NEAR(*rec.raw1, dmdl1(w, 6, *cfg.nml), 1e-12);
    CHECK_NEAR(*rec.raw2, dmdl2(w, 6, *cfg.nml), 1e-12);
    CHECK(rec.alarm0 == (*rec.raw0 > cfg.beta));
    CHECK(rec.alarm1 == (*rec.raw1 > cfg.beta));
    CHECK(rec.alarm2 == (*rec.raw2 > cfg.beta));
  }
  // The peak of the raw change score sits at the true boundary.
  std::size_t arg = 0;
  double best = -1e300;
  for (const auto& rec : r) {
    if (*rec.raw0 > best) {
      best = *rec.raw0;
      arg = static_cast<std::size_t>(rec.t);
    }
  }
  CHECK(arg == 18);
}

TEST_CASE("fixed window: half-window of two has no difference scores") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::fixed;
  cfg.h = 2;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = noise(16, 4);
  const auto r = run_fixed(x, cfg);
  REQUIRE(r.size() == 13);
  for (const auto& rec : r) {
    CHECK(rec.raw0.has_value());
    CHECK_FALSE(rec.raw1.has_value());
    CHECK_FALSE(rec.raw2.has_value());
  }
}

TEST_CASE("fixed window: too-short input and bad config are rejected") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::fixed;
  cfg.h = 5;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = noise(11, 5);  // needs at least 2h + 2 = 12
  CHECK_THROWS_WITH_AS(run_fixed(x, cfg),
                       "series too short for the fixed window",
                       std::invalid_argument);
  CHECK_NOTHROW(run_fixed(noise(12, 5), cfg));

  DetectorConfig bad = cfg;
  bad.h = 1;
  CHECK_THROWS_WITH_AS(bad.validate(), "half-window must be at least 2",
                       std::invalid_argument);
}

TEST_CASE("fixed window: records depend only on their own window") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::fixed;
  cfg.h = 4;
  cfg.nml = nml(10, 0.005, 100);  // pinned so edits elsewhere cannot leak
  auto x = noise(30, 6);
  const auto base = run_fixed(x, cfg);
  x[20] += 50.0;  // outside the window of t = 8 ([4, 12))
  const auto bumped = run_fixed(x, cfg);
  const auto& a = base[8 - 4];
  const auto& b = bumped[8 - 4];
  REQUIRE(a.t == 8);
  REQUIRE(b.t == 8);
  CHECK(*a.raw0 == *b.raw0);
  CHECK(*a.raw1 == *b.raw1);
  CHECK(*a.raw2 == *b.raw2);
  // A record whose window covers the edit must change.
  CHECK(*base[20 - 4].raw0 != *bumped[20 - 4].raw0);
}

TEST_CASE("adaptive window: growth, score onset and the cap") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::adaptive;
  cfg.nml = nml(1, 0.05, 100);
  const std::vector<double> x(40, 2.0);  // constant: never alarms

  SUBCASE("unbounded growth") {
    const auto r = run_adaptive(x, cfg, 0);
    REQUIRE(r.size() == x.size());
    for (std::size_t t = 0; t < r.size(); ++t) {
      CHECK(r[t].t == static_cast<std::int64_t>(t));
      CHECK(r[t].window_size == t + 1);
      CHECK(r[t].raw0.has_value() == (t + 1 >= 4));
      CHECK_FALSE(r[t].raw1.has_value());
      CHECK_FALSE(r[t].raw2.has_value());
      CHECK_FALSE(r[t].alarm0);
      CHECK(r[t].direction == Direction::none);
    }
  }

  SUBCASE("silent cap at max_window") {
    DetectorConfig capped = cfg;
    capped.max_window = 16;
    const auto r = run_adaptive(x, capped, 0);
    for (std::size_t t = 0; t < r.size(); ++t) {
      CHECK(r[t].window_size == std::min<std::size_t>(t + 1, 16));
      CHECK_FALSE(r[t].alarm0);
    }
  }

  SUBCASE("minimum window lengths per order") {
    const auto r1 = run_adaptive(x, cfg, 1);
    const auto r2 = run_adaptive(x, cfg, 2);
    for (std::size_t t = 0; t < x.size(); ++t) {
      CHECK_FALSE(r1[t].raw0.has_value());
      CHECK(r1[t].raw1.has_value() == (t + 1 >= 5));
      CHECK_FALSE(r1[t].raw2.has_value());
      CHECK_FALSE(r2[t].raw1.has_value());
      CHECK(r2[t].raw2.has_value() == (t + 1 >= 6));
    }
  }
}

TEST_CASE("adaptive window: empty input gives empty output") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::adaptive;
  cfg.nml = nml(1, 0.005, 100);
  CHECK(run_adaptive({}, cfg, 0).empty());
}

TEST_CASE("adaptive window: an alarm drops everything at or before the cut") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::adaptive;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(400, 200, 0.0, 8.0, 17);
  const auto r = run_adaptive(x, cfg, 0);
  REQUIRE(r.size() == x.size());
  std::size_t alarms = 0;
  for (std::size_t t = 0; t < r.size(); ++t) {
    if (r[t].alarm0) {
      ++alarms;
      // Shrink: the kept suffix is shorter than the grown window.
      const std::size_t grown = (t == 0 ? 1 : r[t - 1].window_size + 1);
      CHECK(r[t].window_size < grown);
      // The drop point must sit just after the true boundary region.
      const std::size_t detected = t + 1 - r[t].window_size;
      INFO("alarm at step " << t << " detected cut " << detected);
      CHECK(detected >= 197);
      CHECK(detected <= 203);
    } else if (t > 0) {
      CHECK(r[t].window_size == r[t - 1].window_size + 1);
    }
  }
  CHECK(alarms >= 1);
  // The first alarm happens shortly after the jump, never before it.
  std::size_t first = 0;
  while (first < r.size() && !r[first].alarm0) ++first;
  CHECK(first >= 200);
  CHECK(first <= 260);
}

TEST_CASE("adaptive window: runs are deterministic") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::adaptive;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(300, 150, 0.0, 4.0, 23);
  CHECK(same_records(run_adaptive(x, cfg, 0), run_adaptive(x, cfg, 0)));
}

TEST_CASE("hierarchical: shrink set matches the adaptive zeroth order") {
  DetectorConfig cfg;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(500, 250, 0.0, 5.0, 31);
  cfg.mode = DetectorMode::adaptive;
  const auto a = run_adaptive(x, cfg, 0);
  cfg.mode = DetectorMode::hierarchical;
  const auto h = run_hierarchical(x, cfg);
  REQUIRE(a.size() == h.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    INFO("step " << t);
    CHECK(a[t].alarm0 == h[t].alarm0);
    CHECK(a[t].window_size == h[t].window_size);
    if (a[t].raw0.has_value()) {
      REQUIRE(h[t].raw0.has_value());
      CHECK(*a[t].raw0 == *h[t].raw0);
    }
  }
}

TEST_CASE("hierarchical: constant input never alarms") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::hierarchical;
  cfg.nml = nml(1, 0.05, 100);
  const std::vector<double> x(64, 1.5);
  for (const auto& rec : run_hierarchical(x, cfg)) {
    CHECK_FALSE(rec.alarm0);
    CHECK_FALSE(rec.alarm1);
    CHECK_FALSE(rec.alarm2);
    CHECK(rec.direction == Direction::none);
  }
}

TEST_CASE("hierarchical: direction follows the sign of the level change") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::hierarchical;
  cfg.nml = nml(10, 0.005, 100);

  const auto up = step_series(300, 150, 0.0, 6.0, 41);
  bool saw_up = false;
  for (const auto& rec : run_hierarchical(up, cfg)) {
    if (rec.alarm0) {
      CHECK(rec.direction == Direction::up);
      saw_up = true;
    }
  }
  CHECK(saw_up);

  const auto down = step_series(300, 150, 6.0, 0.0, 41);
  bool saw_down = false;
  for (const auto& rec : run_hierarchical(down, cfg)) {
    if (rec.alarm0) {
      CHECK(rec.direction == Direction::down);
      saw_down = true;
    }
  }
  CHECK(saw_down);
}

TEST_CASE("hierarchical: per-step internals expose the compared statistics") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::hierarchical;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(200, 100, 0.0, 5.0, 51);
  std::vector<StepInternals> internals;
  const auto r = run_hierarchical(x, cfg, &internals);
  REQUIRE(internals.size() == r.size());
  std::size_t win = 0;
  for (std::size_t t = 0; t < r.size(); ++t) {
    ++win;  // pre-shrink size: previous kept window plus this point
    INFO("step " << t);
    CHECK(internals[t].w == win);
    CHECK(internals[t].g0.has_value() == (win >= 4));
    CHECK(internals[t].g1.has_value() == (win >= 5));
    CHECK(internals[t].g2.has_value() == (win >= 6));
    if (internals[t].g0) {
      // g is the window-scaled per-symbol saving at the reported cut.
      REQUIRE(internals[t].cut0.has_value());
      CHECK(r[t].raw0.has_value());
      CHECK_NEAR(*r[t].raw0 * static_cast<double>(win), *internals[t].g0,
                 1e-9);
      const ThresholdConfig& th = cfg.thresholds;
      CHECK(r[t].alarm0 == (*internals[t].g0 > threshold0(win, th)));
      if (internals[t].g1)
        CHECK(r[t].alarm1 == (*internals[t].g1 > threshold1(win, th)));
      if (internals[t].g2)
        CHECK(r[t].alarm2 == (*internals[t].g2 > threshold2(win, th)));
    }
    win = r[t].window_size;  // post-shrink size carried forward
  }
}

TEST_CASE("hierarchical: sign statistics can be read at the change cut") {
  DetectorConfig cfg;
  cfg.mode = DetectorMode::hierarchical;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(240, 120, 0.0, 4.0, 61);

  cfg.sign_cut = SignCut::per_order;
  const auto per_order = run_hierarchical(x, cfg);
  cfg.sign_cut = SignCut::zeroth_argmax;
  std::vector<StepInternals> internals;
  const auto at_zero = run_hierarchical(x, cfg, &internals);
  REQUIRE(per_order.size() == at_zero.size());

  // Scores of order zero are unaffected by the sign-cut policy; the
  // shrink schedule therefore matches step by step.
  for (std::size_t t = 0; t < per_order.size(); ++t) {
    CHECK(per_order[t].alarm0 == at_zero[t].alarm0);
    CHECK(per_order[t].window_size == at_zero[t].window_size);
    if (per_order[t].raw0) CHECK(*per_order[t].raw0 == *at_zero[t].raw0);
  }
  // Under the zeroth-argmax policy all reported cuts coincide where the
  // difference statistics are admissible there.
  for (const auto& in : internals) {
    if (in.cut1) CHECK(*in.cut1 == *in.cut0);
    if (in.cut2) CHECK(*in.cut2 == *in.cut0);
  }
}

TEST_CASE("detector dispatch and config validation") {
  DetectorConfig cfg;
  cfg.nml = nml(10, 0.005, 100);
  const auto x = step_series(120, 60, 0.0, 5.0, 71);

  cfg.mode = DetectorMode::fixed;
  cfg.h = 10;
  CHECK(same_records(run_detector(x, cfg), run_fixed(x, cfg)));
  cfg.mode = DetectorMode::adaptive;
  CHECK(same_records(run_detector(x, cfg, 0), run_adaptive(x, cfg, 0)));
  CHECK(same_records(run_detector(x, cfg, 2), run_adaptive(x, cfg, 2)));
  cfg.mode = DetectorMode::hierarchical;
  CHECK(same_records(run_detector(x, cfg), run_hierarchical(x, cfg)));

  DetectorConfig bad = cfg;
  bad.max_window = 3;
  CHECK_THROWS_WITH_AS(bad.validate(),
                       "max_window below the minimum window length",
                       std::invalid_argument);
  bad = cfg;
  bad.thresholds.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.thresholds.delta1 = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.beta = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("score normalization maps each order onto the unit interval") {
  auto rec = [](double v0) {
    ScoreRecord r;
    r.raw0 = v0;
    return r;
  };
  std::vector<ScoreRecord> two = {rec(1.0), rec(3.0)};
  normalize_scores(two);
  CHECK(*two[0].norm0 == doctest::Approx(0.0));
  CHECK(*two[1].norm0 == doctest::Approx(1.0));

  std::vector<ScoreRecord> three = {rec(1.0), rec(2.0), rec(3.0)};
  three[1].raw1 = 5.0;  // lone value of its order: normalizes to 0
  normalize_scores(three);
  CHECK(*three[0].norm0 == doctest::Approx(0.0));
  CHECK(*three[1].norm0 == doctest::Approx(0.5));
  CHECK(*three[2].norm0 == doctest::Approx(1.0));
  CHECK(*three[1].norm1 == doctest::Approx(0.0));
  CHECK_FALSE(three[0].norm1.has_value());

  std::vector<ScoreRecord> flat = {rec(2.0), rec(2.0), rec(2.0)};
  normalize_scores(flat);
  for (const auto& r : flat) CHECK(*r.norm0 == doctest::Approx(0.0));

  std::vector<ScoreRecord> none(3);
  normalize_scores(none);
  for (const auto& r : none) CHECK_FALSE(r.norm0.has_value());
}

TEST_CASE("default model bounds resolve once from the full input") {
  // With no explicit bounds the effective config must match the
  // data-driven resolution over the whole series.
  DetectorConfig cfg;
  cfg.mode = DetectorMode::adaptive;
  const auto x = step_series(100, 50, 0.0, 5.0, 81);
  const auto eff = effective_nml_config(x, cfg);
  const auto expect = resolve_default_config(x);
  CHECK(eff.mu_max == doctest::Approx(expect.mu_max));
  CHECK(eff.sigma_min == doctest::Approx(expect.sigma_min));
  CHECK(eff.sigma_max == doctest::Approx(expect.sigma_max));

  cfg.nml = nml(42.0, 0.125, 77.0);
  const auto pinned = effective_nml_config(x, cfg);
  CHECK(pinned.mu_max == doctest::Approx(42.0));
  CHECK(pinned.sigma_min == doctest::Approx(0.125));
  CHECK(pinned.sigma_max == doctest::Approx(77.0));
}

TEST_CASE("step-series regression fixture") {
  const auto fx = testutil::load_json_fixture("step_series.json");
  const std::size_t length = fx.at("length");
  const std::size_t change = fx.at("change");
  const double jump = fx.at("jump");
  const std::uint64_t seed = fx.at("seed");
  const auto x = step_series(length, change, 0.0, jump, seed);

  DetectorConfig cfg;
  cfg.nml = nml(fx.at("nml").at("mu_max"), fx.at("nml").at("sigma_min"),
                fx.at("nml").at("sigma_max"));

  cfg.mode = DetectorMode::adaptive;
  const auto a = run_adaptive(x, cfg, 0);
  std::vector<std::size_t> alarm_steps;
  std::vector<std::size_t> detected;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].alarm0) {
      alarm_steps.push_back(t);
      detected.push_back(t + 1 - a[t].window_size);
    }
  }
  CHECK(alarm_steps == fx.at("adaptive0").at("alarm_steps")
                           .get<std::vector<std::size_t>>());
  CHECK(detected == fx.at("adaptive0").at("detected_cuts")
                        .get<std::vector<std::size_t>>());

  cfg.mode = DetectorMode::hierarchical;
  const auto h = run_hierarchical(x, cfg);
  std::vector<std::size_t> h0s, h1s, h2s;
  for (std::size_t t = 0; t < h.size(); ++t) {
    if (h[t].alarm0) h0s.push_back(t);
    if (h[t].alarm1) h1s.push_back(t);
    if (h[t].alarm2) h2s.push_back(t);
  }
  CHECK(h0s == fx.at("hier").at("alarm0_steps").get<std::vector<std::size_t>>());
  CHECK(h1s == fx.at("hier").at("alarm1_steps").get<std::vector<std::size_t>>());
  CHECK(h2s == fx.at("hier").at("alarm2_steps").get<std::vector<std::size_t>>());
}
