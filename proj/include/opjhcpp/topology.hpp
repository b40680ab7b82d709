#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace opjhcpp {

inline constexpr double kEarthRadiusKm = 6371.0;

// Fiber propagation speed: 2e5 km/s, i.e. 200 km per millisecond.
inline constexpr double kDefaultPropagationSpeedKmPerMs = 200.0;

struct PhysicalNode {
  int index = 0;          // dense 0-based id, document order
  std::string source_id;  // original GraphML node identifier
  std::string label;
  std::optional<double> latitude;   // degrees, [-90, 90]
  std::optional<double> longitude;  // degrees, [-180, 180]

  bool has_coordinates() const {
    return latitude.has_value() && longitude.has_value();
  }
};

struct PhysicalLink {
  int endpoint_a = 0;
  int endpoint_b = 0;
  double latency_ms = 0.0;
};

struct Neighbor {
  int node = 0;
  double latency_ms = 0.0;
};

// Latency-weighted undirected graph. Connected by construction; adjacency
// lists are sorted by neighbor index and are exactly the symmetric closure
// of `links`.
struct PhysicalTopology {
  std::vector<PhysicalNode> nodes;
  std::vector<PhysicalLink> links;
  std::vector<std::vector<Neighbor>> adjacency;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

struct ParseOptions {
  double propagation_speed_km_per_ms = kDefaultPropagationSpeedKmPerMs;
  // When set, links touching a node without coordinates get this latency
  // instead of raising a geo error.
  std::optional<double> default_link_latency_ms;
};

// Great-circle distance in kilometers, Earth radius 6371.0 km.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

// Propagation delay between two located nodes in milliseconds.
double link_latency_ms(const PhysicalNode& a, const PhysicalNode& b,
                       double speed_km_per_ms = kDefaultPropagationSpeedKmPerMs);

// Validates link endpoints, collapses parallel links to the minimum
// latency and builds the adjacency. Throws ParseError on invalid links and
// ConnectivityError (listing components) when the graph is disconnected.
PhysicalTopology build_topology(std::vector<PhysicalNode> nodes,
                                std::span<const PhysicalLink> raw_links);

// Convenience builder for anonymous nodes 0..node_count-1 (test fixtures,
// synthetic graphs).
PhysicalTopology build_topology(int node_count,
                                std::span<const PhysicalLink> raw_links);

// Ingests a GraphML document following the Topology Zoo attribute
// conventions (node keys "Latitude", "Longitude", "label"). Dense indices
// are assigned in document node order.
PhysicalTopology parse_graphml(const std::string& document_text,
                               const ParseOptions& options = {});

}  // namespace opjhcpp
