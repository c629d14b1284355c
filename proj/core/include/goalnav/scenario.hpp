#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "goalnav/simulator.hpp"

namespace goalnav {

struct ScenarioBox {
  double min_x = 0, min_y = 0, min_z = 0;
  double max_x = 0, max_y = 0, max_z = 0;
};

struct ScenarioObject {
  std::string label;
  ScenarioBox box;
};

// Versioned scenario description: grid dims, wall boxes, labeled objects,
// spawn poses, and the ordered subtask chain of goal queries.
struct Scenario {
  int version = 1;
  std::string name;
  double cell_size = 0.05;
  int dim_x = 0, dim_y = 0, dim_z = 0;  // cells
  std::vector<ScenarioBox> walls;
  std::vector<ScenarioObject> objects;
  std::vector<Pose> spawns;
  std::vector<std::string> subtasks;  // goal query per subtask, in order
};

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

// Rasterizes the scenario into a voxel world (floor, walls, objects).
World build_world(const Scenario& sc);

// Validation: every subtask names a placed object reachable from every spawn.
// Returns an empty string when valid, else a reason.
std::string validate_scenario(const Scenario& sc);

struct GeneratorOptions {
  int rooms_x = 3;
  int rooms_y = 2;
  double room_size_m = 3.6;
  int min_subtasks = 3;
  int max_subtasks = 5;
  int objects_per_room = 1;
};

// Seeded multi-room layout with doorway-connected rooms and labeled box
// objects. Always passes validate_scenario.
Scenario generate_scenario(std::uint64_t seed, const GeneratorOptions& opt = {});

// Hand-authored regression scene: an object whose rendered depth reads
// through to a surface behind a wall, so the projected goal lands in
// unreachable space (mirror analog).
Scenario make_mirror_scenario();

}  // namespace goalnav
