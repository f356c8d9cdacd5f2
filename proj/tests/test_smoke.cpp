#include <doctest.h>

#include "dcsim/experiment.hpp"

TEST_CASE("default scenario runs to completion in both modes") {
    dcsim::Scenario sc = dcsim::default_scenario();
    dcsim::SimulationParams par;
    par.duration_us = dcsim::sec_to_us(2.0);
    dcsim::PairResult pr = dcsim::run_pair(sc, par, 7);
    CHECK(pr.dc.summary.delivered > 0);
    CHECK(pr.hh.summary.delivered > 0);
    CHECK(pr.dc.summary.reports == pr.hh.summary.reports);
}
