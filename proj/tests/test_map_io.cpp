#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "goalnav/map_io.hpp"

using namespace goalnav;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("write_pgm bool grid produces the frozen byte layout") {
  BoolGrid g(2, 2, 0);
  g.at(1, 0) = 1;
  g.at(0, 1) = 1;
  const auto path = std::filesystem::temp_directory_path() / "goalnav_io.pgm";
  write_pgm(path.string(), g, -6.0, -6.0, 0.05);

  const std::string expect = std::string("P5\n2 2\n255\n") +
                             '\x00' + '\xff' + '\xff' + '\x00';
  CHECK(slurp(path) == expect);

  const std::string hdr = slurp(path.string() + ".hdr");
  CHECK(hdr == "origin_m -6.000000 -6.000000\ncell_size_m 0.050000\n");
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".hdr");
}

TEST_CASE("write_pgm float grid scales and clamps into [0, 255]") {
  FloatGrid g(3, 1, 0.f);
  g.at(0, 0) = -1.f;  // below lo: clamps to 0
  g.at(1, 0) = 0.5f;
  g.at(2, 0) = 9.f;   // above hi: clamps to 255
  const auto path =
      std::filesystem::temp_directory_path() / "goalnav_io_f.pgm";
  write_pgm(path.string(), g, 0.0, 1.0, 0.0, 0.0, 0.05);

  const std::string bytes = slurp(path);
  const std::string header = "P5\n3 1\n255\n";
  REQUIRE(bytes.size() == header.size() + 3);
  CHECK(bytes.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(bytes[header.size() + 0]) == 0);
  CHECK(static_cast<unsigned char>(bytes[header.size() + 1]) == 128);
  CHECK(static_cast<unsigned char>(bytes[header.size() + 2]) == 255);
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".hdr");
}

TEST_CASE("write_pgm refuses unwritable paths") {
  BoolGrid g(2, 2, 0);
  CHECK_THROWS(write_pgm("/nonexistent_dir/x.pgm", g, 0.0, 0.0, 0.05));
}
