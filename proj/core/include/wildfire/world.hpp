#pragma once

#include "wildfire/comms.hpp"
#include "wildfire/fire.hpp"
#include "wildfire/resources.hpp"
#include "wildfire/scenario.hpp"
#include "wildfire/towers.hpp"
#include "wildfire/weather.hpp"

namespace wildfire {

/// The single source of simulation truth for one episode.
struct WorldState {
  ScenarioConfig scenario;
  TerrainGrid terrain;
  ForestMap forest;
  TowerGrid towers;
  NeighborGraph graph;
  WeatherState weather;
  FireState fire;
  ResourceLedger ledger;
  int t = 0;
};

}  // namespace wildfire
