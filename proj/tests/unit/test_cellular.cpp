// Cellular state machine tests: lifecycle timeline, switch-gap pattern,
// arrival queueing, release assistance, paging mask and projections.
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "scuba/cellular.hpp"
#include "scuba/paging.hpp"

using namespace scuba;

namespace {

// Drives the machine over [0, until] with the given arrivals and records the
// outcome of every subframe.
struct Timeline {
  std::vector<CellStep> steps;

  Timeline(const CellularConfig& cfg, const std::vector<Sf>& po,
           const std::vector<Sf>& arrivals, Sf until) {
    CellularUe ue(cfg, po);
    std::size_t next = 0;
    for (Sf sf = 0; sf <= until; ++sf) {
      while (next < arrivals.size() && arrivals[next] == sf) {
        ue.on_arrival(sf);
        ++next;
      }
      steps.push_back(ue.advance(sf));
    }
  }

  CellMode mode(Sf sf) const { return steps[static_cast<std::size_t>(sf)].mode; }
  Availability verdict(Sf sf) const {
    return steps[static_cast<std::size_t>(sf)].verdict;
  }
  // First SF in [from, to] with the given mode, or -1.
  Sf first(CellMode m, Sf from, Sf to) const {
    for (Sf sf = from; sf <= to; ++sf)
      if (mode(sf) == m) return sf;
    return -1;
  }
};

}  // namespace

TEST_SUITE("cellular") {

TEST_CASE("lifecycle of a single arrival") {
  CellularConfig cfg;  // t_rrc=100, t_data=250, drx_inat=100, data_inat=10000
  Timeline tl(cfg, {}, {1000}, 13000);

  // Idle before the arrival (no paging occasions configured).
  CHECK(tl.mode(0) == CellMode::kIdrxSleep);
  CHECK(tl.verdict(999) == Availability::kFree);

  // Setup occupies [1000, 1099].
  CHECK(tl.mode(1000) == CellMode::kConaSetup);
  CHECK(tl.verdict(1000) == Availability::kBusy);
  CHECK(tl.mode(1099) == CellMode::kConaSetup);

  // Data phase [1100, 1349]; every second SF is a switching gap.
  CHECK(tl.mode(1100) == CellMode::kConaData);
  CHECK(tl.verdict(1100) == Availability::kBusy);
  CHECK(tl.verdict(1101) == Availability::kSamUWindowOnly);
  CHECK(tl.verdict(1102) == Availability::kBusy);
  CHECK(tl.verdict(1103) == Availability::kSamUWindowOnly);
  CHECK(tl.mode(1349) == CellMode::kConaData);

  // Inactivity [1350, 1449], still busy.
  CHECK(tl.mode(1350) == CellMode::kConaInactivity);
  CHECK(tl.verdict(1400) == Availability::kBusy);

  // CDRX from 1450: 20 SFs on, 620 off, budget 10000 SFs.
  CHECK(tl.mode(1450) == CellMode::kCdrxOn);
  CHECK(tl.verdict(1450) == Availability::kBusy);
  CHECK(tl.mode(1469) == CellMode::kCdrxOn);
  CHECK(tl.mode(1470) == CellMode::kCdrxOff);
  CHECK(tl.verdict(1470) == Availability::kFree);
  CHECK(tl.mode(2089) == CellMode::kCdrxOff);
  CHECK(tl.mode(2090) == CellMode::kCdrxOn);  // next cycle

  // Budget exhausts exactly 10000 CDRX SFs after entry.
  CHECK(tl.mode(11449) == CellMode::kCdrxOff);
  CHECK(tl.mode(11450) == CellMode::kIdrxSleep);
  CHECK(tl.verdict(11450) == Availability::kFree);
}

TEST_CASE("switch-gap pattern") {
  SUBCASE("six-SF data phase, k=2: gaps at offsets 1, 3, 5") {
    CellularConfig cfg;
    cfg.t_data = 6;
    Timeline tl(cfg, {}, {0}, 400);
    // Data occupies [100, 105].
    CHECK(tl.mode(100) == CellMode::kConaData);
    CHECK(tl.verdict(100) == Availability::kBusy);
    CHECK(tl.verdict(101) == Availability::kSamUWindowOnly);
    CHECK(tl.verdict(102) == Availability::kBusy);
    CHECK(tl.verdict(103) == Availability::kSamUWindowOnly);
    CHECK(tl.verdict(104) == Availability::kBusy);
    CHECK(tl.verdict(105) == Availability::kSamUWindowOnly);
    CHECK(tl.mode(106) == CellMode::kConaInactivity);
  }
  SUBCASE("single-SF data phase has no gap") {
    CellularConfig cfg;
    cfg.t_data = 1;
    Timeline tl(cfg, {}, {0}, 300);
    CHECK(tl.mode(100) == CellMode::kConaData);
    CHECK(tl.verdict(100) == Availability::kBusy);
  }
  SUBCASE("k=4 flags every fourth SF") {
    CellularConfig cfg;
    cfg.t_data = 8;
    cfg.switch_every = 4;
    Timeline tl(cfg, {}, {0}, 300);
    for (Sf sf = 100; sf < 108; ++sf) {
      const bool gap = (sf - 100) % 4 == 3;
      CHECK(tl.verdict(sf) == (gap ? Availability::kSamUWindowOnly
                                   : Availability::kBusy));
    }
  }
}

TEST_CASE("arrival queue semantics") {
  CellularConfig cfg;

  SUBCASE("arrival mid-data queues a full extra block") {
    Timeline tl(cfg, {}, {0, 200}, 800);
    // Block one serves the first arrival over [100, 349]; the arrival at 200
    // waits its turn and is served back to back over [350, 599].
    CHECK(tl.mode(349) == CellMode::kConaData);
    CHECK(tl.mode(599) == CellMode::kConaData);
    CHECK(tl.mode(600) == CellMode::kConaInactivity);
    // The gap pattern anchor survives the chaining.
    CHECK(tl.verdict(201) == Availability::kSamUWindowOnly);
    CHECK(tl.verdict(351) == Availability::kSamUWindowOnly);
  }
  SUBCASE("arrivals during setup wait behind the first block") {
    Timeline tl(cfg, {}, {0, 20, 40}, 1200);
    // Setup [0, 99], then three back-to-back data blocks [100, 849].
    CHECK(tl.mode(100) == CellMode::kConaData);
    CHECK(tl.mode(849) == CellMode::kConaData);
    CHECK(tl.mode(850) == CellMode::kConaInactivity);
  }
  SUBCASE("arrival during inactivity resumes data without setup") {
    Timeline tl(cfg, {}, {0, 400}, 1000);
    CHECK(tl.mode(399) == CellMode::kConaInactivity);
    CHECK(tl.mode(400) == CellMode::kConaData);
    CHECK(tl.mode(400 + 249) == CellMode::kConaData);
    CHECK(tl.mode(400 + 250) == CellMode::kConaInactivity);
  }
  SUBCASE("arrival in CDRX resumes data without setup") {
    Timeline tl(cfg, {}, {0, 500}, 1200);
    CHECK(tl.mode(499) == CellMode::kCdrxOff);
    CHECK(tl.mode(500) == CellMode::kConaData);
    // No setup phase after the initial one.
    CHECK(tl.first(CellMode::kConaSetup, 100, 1200) == -1);
  }
  SUBCASE("arrival out of idle pays the setup cost") {
    CellularConfig quick = cfg;
    quick.data_inat = 1000;
    Timeline tl(quick, {}, {0, 3000}, 3300);
    CHECK(tl.mode(2999) == CellMode::kIdrxSleep);
    CHECK(tl.mode(3000) == CellMode::kConaSetup);
    CHECK(tl.mode(3100) == CellMode::kConaData);
  }
  SUBCASE("fresh CDRX stay gets a fresh budget") {
    CellularConfig quick = cfg;
    quick.data_inat = 1000;
    // Second arrival lands in CDRX at 500; its stay starts at 850.
    Timeline tl(quick, {}, {0, 500}, 2400);
    CHECK(tl.mode(500) == CellMode::kConaData);
    CHECK(tl.mode(849) == CellMode::kConaInactivity);
    CHECK(tl.mode(850) == CellMode::kCdrxOn);
    CHECK(tl.mode(1849) == CellMode::kCdrxOff);  // budget not yet out
    CHECK(tl.mode(1850) == CellMode::kIdrxSleep);
  }
}

TEST_CASE("release assistance skips CDRX") {
  CellularConfig cfg;
  cfg.rai = true;
  Timeline tl(cfg, {}, {0}, 2000);
  CHECK(tl.mode(449) == CellMode::kConaInactivity);
  CHECK(tl.mode(450) == CellMode::kIdrxSleep);
  CHECK(tl.first(CellMode::kCdrxOn, 0, 2000) == -1);
  CHECK(tl.first(CellMode::kCdrxOff, 0, 2000) == -1);
}

TEST_CASE("idle paging occasions follow the paging timetable") {
  PagingConfig pcfg;
  SlPagingConfig slcfg;
  const auto sched = build_po_schedule(pcfg, slcfg, {123456789, 16384});

  CellularConfig cfg;
  Timeline tl(cfg, sched.idrx_po_sf, {}, kSfPerHyper + 500);
  for (Sf sf = 0; sf <= kSfPerHyper + 500; ++sf) {
    const bool own =
        std::find(sched.idrx_po_sf.begin(), sched.idrx_po_sf.end(),
                  sf % kSfPerHyper) != sched.idrx_po_sf.end();
    if (own) {
      CHECK(tl.mode(sf) == CellMode::kIdrxPo);
      CHECK(tl.verdict(sf) == Availability::kBusy);
    } else {
      CHECK(tl.mode(sf) == CellMode::kIdrxSleep);
    }
  }
}

TEST_CASE("projection finds the next free subframe") {
  CellularConfig cfg;
  CellularUe ue(cfg, {});
  ue.on_arrival(0);
  ue.advance(0);
  // From inside setup: free no earlier than the first CDRX-off SF at 470.
  CHECK(ue.project_next_free(1) == 470);
  // A later lower bound is honored.
  CHECK(ue.project_next_free(500) == 500);  // CDRX-off region
  CHECK(ue.project_next_free(1090) == 1110);  // lands in the next ON window
}

TEST_CASE("advance must walk consecutive subframes") {
  CellularUe ue(CellularConfig{}, {});
  ue.advance(5);
  CHECK_THROWS_AS(ue.advance(7), InvariantError);
}

TEST_CASE("configuration validation") {
  CellularConfig cfg;
  cfg.cdrx_on = 640;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = CellularConfig{};
  cfg.t_rrc = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = CellularConfig{};
  cfg.switch_every = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

}  // TEST_SUITE
