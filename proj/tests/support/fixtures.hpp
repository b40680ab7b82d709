#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "opjhcpp/paths.hpp"
#include "opjhcpp/topology.hpp"
#include "opjhcpp/vsdn.hpp"

#ifndef OPJHCPP_DATA_DIR
#define OPJHCPP_DATA_DIR "data"
#endif

namespace fixtures {

// Nodes 0-1-2-3 in a line, every link 1.0 ms.
inline opjhcpp::PhysicalTopology line4() {
  const std::vector<opjhcpp::PhysicalLink> links = {
      {0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}};
  return opjhcpp::build_topology(4, links);
}

// Hub node 0 with `spokes` leaves, every spoke link 1.0 ms.
inline opjhcpp::PhysicalTopology star(int spokes) {
  std::vector<opjhcpp::PhysicalLink> links;
  for (int leaf = 1; leaf <= spokes; ++leaf) {
    links.push_back({0, leaf, 1.0});
  }
  return opjhcpp::build_topology(spokes + 1, links);
}

inline std::string data_dir() {
  if (const char* env = std::getenv("OPJHCPP_DATA")) {
    return env;
  }
  return OPJHCPP_DATA_DIR;
}

inline std::string data_path(const std::string& name) { return data_dir() + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace fixtures
