#include "goalnav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "goalnav/planner.hpp"
#include "json.hpp"

namespace goalnav {

using nlohmann::json;

namespace {

json box_to_json(const ScenarioBox& b) {
  return json{{"min", {b.min_x, b.min_y, b.min_z}},
              {"max", {b.max_x, b.max_y, b.max_z}}};
}

ScenarioBox box_from_json(const json& j) {
  ScenarioBox b;
  b.min_x = j.at("min").at(0);
  b.min_y = j.at("min").at(1);
  b.min_z = j.at("min").at(2);
  b.max_x = j.at("max").at(0);
  b.max_y = j.at("max").at(1);
  b.max_z = j.at("max").at(2);
  return b;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open " + path);
  json j = json::parse(in);

  Scenario sc;
  sc.version = j.at("version");
  if (sc.version != 1)
    throw std::runtime_error("load_scenario: unsupported version");
  sc.name = j.value("name", "");
  sc.cell_size = j.at("cell_size_m");
  sc.dim_x = j.at("dims").at(0);
  sc.dim_y = j.at("dims").at(1);
  sc.dim_z = j.at("dims").at(2);
  for (const auto& w : j.at("walls")) sc.walls.push_back(box_from_json(w));
  for (const auto& o : j.at("objects")) {
    ScenarioObject obj;
    obj.label = o.at("label");
    obj.box = box_from_json(o.at("box"));
    sc.objects.push_back(obj);
  }
  for (const auto& s : j.at("spawns"))
    sc.spawns.push_back(Pose{s.at(0), s.at(1), s.at(2)});
  for (const auto& t : j.at("subtasks"))
    sc.subtasks.push_back(t.get<std::string>());
  return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
  json j;
  j["version"] = sc.version;
  j["name"] = sc.name;
  j["cell_size_m"] = sc.cell_size;
  j["dims"] = {sc.dim_x, sc.dim_y, sc.dim_z};
  j["walls"] = json::array();
  for (const auto& w : sc.walls) j["walls"].push_back(box_to_json(w));
  j["objects"] = json::array();
  for (const auto& o : sc.objects)
    j["objects"].push_back(json{{"label", o.label}, {"box", box_to_json(o.box)}});
  j["spawns"] = json::array();
  for (const auto& s : sc.spawns) j["spawns"].push_back({s.x, s.y, s.theta});
  j["subtasks"] = sc.subtasks;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_scenario: cannot open " + path);
  out << j.dump(2) << "\n";
}

World build_world(const Scenario& sc) {
  World w(sc.dim_x, sc.dim_y, sc.dim_z, sc.cell_size);
  for (const auto& wall : sc.walls)
    w.add_box(wall.min_x, wall.min_y, wall.min_z, wall.max_x, wall.max_y,
              wall.max_z, kVoxelWall);
  for (const auto& obj : sc.objects) {
    const bool transparent = obj.label.find("mirror") != std::string::npos;
    w.add_object(obj.label, obj.box.min_x, obj.box.min_y, obj.box.min_z,
                 obj.box.max_x, obj.box.max_y, obj.box.max_z, transparent);
  }
  w.add_floor();
  w.spawn_points() = sc.spawns;
  return w;
}

std::string validate_scenario(const Scenario& sc) {
  if (sc.spawns.empty()) return "no spawn points";
  if (sc.subtasks.empty()) return "no subtasks";
  World w = build_world(sc);
  const BoolGrid inflated = inflate_obstacles(w.bev_obstacle(), 2);
  for (const Pose& s : sc.spawns) {
    const Cell c = w.bev_obstacle().in_bounds(
                       Cell{static_cast<int>(std::floor(s.x / sc.cell_size)),
                            static_cast<int>(std::floor(s.y / sc.cell_size))})
                       ? Cell{static_cast<int>(std::floor(s.x / sc.cell_size)),
                              static_cast<int>(std::floor(s.y / sc.cell_size))}
                       : Cell{-1, -1};
    if (c.x < 0) return "spawn outside world";
    if (inflated.at(c)) return "spawn on or next to obstacle";
  }
  for (const std::string& goal : sc.subtasks) {
    const std::vector<int> ids = w.find_objects(goal);
    if (ids.empty()) return "subtask goal not placed: " + goal;
    for (const Pose& s : sc.spawns) {
      bool reachable = false;
      for (int id : ids)
        if (std::isfinite(ground_truth_geodesic(w, s, id))) reachable = true;
      if (!reachable) return "goal unreachable from spawn: " + goal;
    }
  }
  return "";
}

namespace {

const char* kLabels[] = {"chair", "table", "plant",  "sofa", "bed",
                         "sink",  "tv",    "fridge", "lamp", "piano"};

}  // namespace

Scenario generate_scenario(std::uint64_t seed, const GeneratorOptions& opt) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  Scenario sc;
  sc.name = "proc-" + std::to_string(seed);
  sc.cell_size = 0.05;
  const double room = opt.room_size_m;
  const double wall_t = 0.10;
  const double ext_x = opt.rooms_x * room + wall_t;
  const double ext_y = opt.rooms_y * room + wall_t;
  sc.dim_x = static_cast<int>(std::ceil(ext_x / sc.cell_size));
  sc.dim_y = static_cast<int>(std::ceil(ext_y / sc.cell_size));
  sc.dim_z = 40;
  const double wall_h = 2.0;

  // perimeter
  sc.walls.push_back({0, 0, 0, ext_x, wall_t, wall_h});
  sc.walls.push_back({0, ext_y - wall_t, 0, ext_x, ext_y, wall_h});
  sc.walls.push_back({0, 0, 0, wall_t, ext_y, wall_h});
  sc.walls.push_back({ext_x - wall_t, 0, 0, ext_x, ext_y, wall_h});

  const double door = 1.0;
  // interior walls with one centered-ish doorway each
  for (int i = 1; i < opt.rooms_x; ++i) {
    const double x = i * room;
    for (int ry = 0; ry < opt.rooms_y; ++ry) {
      const double y0 = ry * room, y1 = (ry + 1) * room;
      const double gap0 = uniform(y0 + 0.6, y1 - 0.6 - door);
      sc.walls.push_back({x, y0, 0, x + wall_t, gap0, wall_h});
      sc.walls.push_back({x, gap0 + door, 0, x + wall_t, y1, wall_h});
    }
  }
  for (int j = 1; j < opt.rooms_y; ++j) {
    const double y = j * room;
    for (int rx = 0; rx < opt.rooms_x; ++rx) {
      const double x0 = rx * room, x1 = (rx + 1) * room;
      const double gap0 = uniform(x0 + 0.6, x1 - 0.6 - door);
      sc.walls.push_back({x0, y, 0, gap0, y + wall_t, wall_h});
      sc.walls.push_back({gap0 + door, y, 0, x1, y + wall_t, wall_h});
    }
  }

  // one labeled box per room, against a corner, labels unique
  std::vector<int> label_order(std::size(kLabels));
  for (std::size_t i = 0; i < label_order.size(); ++i)
    label_order[i] = static_cast<int>(i);
  std::shuffle(label_order.begin(), label_order.end(), rng);

  int li = 0;
  for (int ry = 0; ry < opt.rooms_y; ++ry)
    for (int rx = 0; rx < opt.rooms_x; ++rx) {
      for (int k = 0; k < opt.objects_per_room && li < 10; ++k, ++li) {
        const double w = uniform(0.4, 0.7);
        const double d = uniform(0.4, 0.7);
        const double h = uniform(0.6, 1.4);
        // keep clear of walls and doorways: inset placement band
        const double x0 = rx * room + wall_t + uniform(0.35, room - w - 1.0);
        const double y0 = ry * room + wall_t + uniform(0.35, room - d - 1.0);
        sc.objects.push_back(
            {kLabels[label_order[li]], {x0, y0, 0, x0 + w, y0 + d, h}});
      }
    }

  // spawns in the first room, clear of its object
  for (int a = 0; a < 2; ++a) {
    sc.spawns.push_back(Pose{room * 0.5 + a * 0.5, room * 0.72,
                             normalize_angle(uniform(-3.14, 3.14))});
  }

  const int n_sub = uniform_int(opt.min_subtasks, opt.max_subtasks);
  std::vector<int> order(sc.objects.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < n_sub && i < static_cast<int>(order.size()); ++i)
    sc.subtasks.push_back(sc.objects[order[i]].label);

  // regenerate on the rare invalid layout (object blocking a doorway, spawn
  // clipped by an object)
  if (!validate_scenario(sc).empty())
    return generate_scenario(seed + 0x9e3779b97f4a7c15ull, opt);
  return sc;
}

Scenario make_mirror_scenario() {
  Scenario sc;
  sc.name = "mirror-regression";
  sc.cell_size = 0.05;
  sc.dim_x = 120;  // 6 m
  sc.dim_y = 120;
  sc.dim_z = 40;
  const double wall_h = 2.0;
  sc.walls.push_back({0, 0, 0, 6.0, 0.1, wall_h});
  sc.walls.push_back({0, 5.9, 0, 6.0, 6.0, wall_h});
  sc.walls.push_back({0, 0, 0, 0.1, 6.0, wall_h});
  sc.walls.push_back({5.9, 0, 0, 6.0, 6.0, wall_h});
  // dividing wall with a pane-sized opening; the room behind it is sealed
  // for planning (the sill below the pane stays inside the obstacle band)
  sc.walls.push_back({0, 3.5, 0, 2.5, 3.6, wall_h});
  sc.walls.push_back({3.5, 3.5, 0, 6.0, 3.6, wall_h});
  sc.walls.push_back({2.5, 3.5, 0, 3.5, 3.6, 0.6});   // sill
  sc.walls.push_back({2.5, 3.5, 1.6, 3.5, 3.6, wall_h});  // lintel
  // the mirror pane fills the opening; depth rays pierce it and land on the
  // sealed room's far wall
  sc.objects.push_back({"mirror", {2.5, 3.5, 0.6, 3.5, 3.6, 1.6}});
  sc.spawns.push_back(Pose{3.0, 1.0, 0.0});
  sc.subtasks.push_back("mirror");
  return sc;
}

}  // namespace goalnav
