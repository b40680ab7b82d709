#include "opjhcpp/topology.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "opjhcpp/errors.hpp"

namespace opjhcpp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double deg) { return deg * kPi / 180.0; }

std::string node_name(const PhysicalNode& node) {
  std::string name = "node '" + node.source_id + "'";
  if (!node.label.empty() && node.label != node.source_id) {
    name += " (" + node.label + ")";
  }
  return name;
}

// Connected components by BFS over the adjacency; returns one member list
// per component, in node order.
std::vector<std::vector<int>> components_of(
    const std::vector<std::vector<Neighbor>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<std::vector<int>> components;
  std::vector<bool> seen(n, false);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> member_queue = {start};
    seen[start] = true;
    for (std::size_t head = 0; head < member_queue.size(); ++head) {
      for (const Neighbor& nb : adjacency[member_queue[head]]) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          member_queue.push_back(nb.node);
        }
      }
    }
    std::sort(member_queue.begin(), member_queue.end());
    components.push_back(std::move(member_queue));
  }
  return components;
}

std::string describe_components(const std::vector<std::vector<int>>& comps) {
  std::ostringstream out;
  out << comps.size() << " components:";
  for (const auto& comp : comps) {
    out << " [";
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (i > 0) out << ",";
      if (i == 8 && comp.size() > 9) {
        out << "... " << comp.size() - 8 << " more";
        break;
      }
      out << comp[i];
    }
    out << "]";
  }
  return out.str();
}

}  // namespace

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  const double phi1 = deg2rad(lat1);
  const double phi2 = deg2rad(lat2);
  const double d_phi = deg2rad(lat2 - lat1);
  const double d_lambda = deg2rad(lon2 - lon1);
  const double s_phi = std::sin(d_phi / 2.0);
  const double s_lambda = std::sin(d_lambda / 2.0);
  const double a =
      s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  return kEarthRadiusKm * 2.0 * std::asin(std::min(1.0, std::sqrt(a)));
}

double link_latency_ms(const PhysicalNode& a, const PhysicalNode& b,
                       double speed_km_per_ms) {
  if (!a.has_coordinates()) {
    throw GeoError(node_name(a) + " has no coordinates");
  }
  if (!b.has_coordinates()) {
    throw GeoError(node_name(b) + " has no coordinates");
  }
  const double km =
      haversine_km(*a.latitude, *a.longitude, *b.latitude, *b.longitude);
  return km / speed_km_per_ms;
}

PhysicalTopology build_topology(std::vector<PhysicalNode> nodes,
                                std::span<const PhysicalLink> raw_links) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    nodes[i].index = i;
    if (nodes[i].latitude && (*nodes[i].latitude < -90.0 || *nodes[i].latitude > 90.0)) {
      throw GeoError(node_name(nodes[i]) + ": latitude out of [-90, 90]");
    }
    if (nodes[i].longitude &&
        (*nodes[i].longitude < -180.0 || *nodes[i].longitude > 180.0)) {
      throw GeoError(node_name(nodes[i]) + ": longitude out of [-180, 180]");
    }
  }

  // Parallel links collapse to the minimum latency; first-occurrence order
  // of the unordered pair is kept.
  std::map<std::pair<int, int>, std::size_t> slot_of_pair;
  std::vector<PhysicalLink> links;
  for (const PhysicalLink& link : raw_links) {
    if (link.endpoint_a < 0 || link.endpoint_a >= n || link.endpoint_b < 0 ||
        link.endpoint_b >= n) {
      throw ParseError("link endpoint out of range: " +
                       std::to_string(link.endpoint_a) + "-" +
                       std::to_string(link.endpoint_b));
    }
    if (link.endpoint_a == link.endpoint_b) {
      throw ParseError("self-loop link at node " +
                       std::to_string(link.endpoint_a) + " rejected");
    }
    if (!(link.latency_ms >= 0.0)) {
      throw ParseError("negative latency on link " +
                       std::to_string(link.endpoint_a) + "-" +
                       std::to_string(link.endpoint_b));
    }
    const auto key = std::minmax(link.endpoint_a, link.endpoint_b);
    auto [it, inserted] = slot_of_pair.try_emplace(key, links.size());
    if (inserted) {
      links.push_back(PhysicalLink{key.first, key.second, link.latency_ms});
    } else {
      links[it->second].latency_ms =
          std::min(links[it->second].latency_ms, link.latency_ms);
    }
  }

  std::vector<std::vector<Neighbor>> adjacency(n);
  for (const PhysicalLink& link : links) {
    adjacency[link.endpoint_a].push_back({link.endpoint_b, link.latency_ms});
    adjacency[link.endpoint_b].push_back({link.endpoint_a, link.latency_ms});
  }
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }

  auto comps = components_of(adjacency);
  if (comps.size() > 1) {
    throw ConnectivityError("graph is disconnected: " +
                            describe_components(comps));
  }

  return PhysicalTopology{std::move(nodes), std::move(links),
                          std::move(adjacency)};
}

PhysicalTopology build_topology(int node_count,
                                std::span<const PhysicalLink> raw_links) {
  std::vector<PhysicalNode> nodes(static_cast<std::size_t>(node_count));
  for (int i = 0; i < node_count; ++i) {
    nodes[i].source_id = std::to_string(i);
  }
  return build_topology(std::move(nodes), raw_links);
}

namespace {

namespace pt = boost::property_tree;

std::optional<double> parse_double_field(const std::string& text) {
  try {
    std::size_t consumed = 0;
    double value = std::stod(text, &consumed);
    while (consumed < text.size() && std::isspace(static_cast<unsigned char>(text[consumed]))) {
      ++consumed;
    }
    if (consumed != text.size()) return std::nullopt;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct GraphmlKeys {
  std::string latitude;
  std::string longitude;
  std::string label;
};

}  // namespace

PhysicalTopology parse_graphml(const std::string& document_text,
                               const ParseOptions& options) {
  pt::ptree doc;
  try {
    std::istringstream in(document_text);
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("malformed GraphML: ") + e.what());
  }

  const pt::ptree* graphml = nullptr;
  try {
    graphml = &doc.get_child("graphml");
  } catch (const pt::ptree_error&) {
    throw ParseError("malformed GraphML: missing <graphml> root element");
  }

  // <key> declarations map attribute ids to the Topology Zoo names. The
  // attribute is literally called "attr.name", so the lookup needs a path
  // separator other than '.'.
  const pt::ptree::path_type attr_name_path("<xmlattr>/attr.name", '/');
  GraphmlKeys keys;
  for (const auto& [tag, child] : *graphml) {
    if (tag != "key") continue;
    const std::string id = child.get<std::string>("<xmlattr>.id", "");
    const std::string name = child.get<std::string>(attr_name_path, "");
    const std::string domain = child.get<std::string>("<xmlattr>.for", "node");
    if (id.empty() || domain != "node") continue;
    if (name == "Latitude") keys.latitude = id;
    if (name == "Longitude") keys.longitude = id;
    if (name == "label") keys.label = id;
  }

  const pt::ptree* graph = nullptr;
  try {
    graph = &graphml->get_child("graph");
  } catch (const pt::ptree_error&) {
    throw ParseError("malformed GraphML: missing <graph> element");
  }
  const std::string edgedefault =
      graph->get<std::string>("<xmlattr>.edgedefault", "");
  if (edgedefault != "undirected") {
    throw ParseError("only undirected graphs are supported (edgedefault=\"" +
                     edgedefault + "\")");
  }

  std::vector<PhysicalNode> nodes;
  std::map<std::string, int> index_of_id;
  struct RawEdge {
    std::string source;
    std::string target;
  };
  std::vector<RawEdge> raw_edges;

  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      PhysicalNode node;
      node.source_id = child.get<std::string>("<xmlattr>.id", "");
      if (node.source_id.empty()) {
        throw ParseError("node without an id attribute");
      }
      if (index_of_id.count(node.source_id)) {
        throw ParseError("duplicate node id '" + node.source_id + "'");
      }
      for (const auto& [data_tag, data] : child) {
        if (data_tag != "data") continue;
        const std::string key = data.get<std::string>("<xmlattr>.key", "");
        const std::string value = data.get_value<std::string>();
        if (!keys.latitude.empty() && key == keys.latitude) {
          node.latitude = parse_double_field(value);
          if (!node.latitude) {
            throw ParseError("node '" + node.source_id +
                             "': unreadable Latitude '" + value + "'");
          }
        } else if (!keys.longitude.empty() && key == keys.longitude) {
          node.longitude = parse_double_field(value);
          if (!node.longitude) {
            throw ParseError("node '" + node.source_id +
                             "': unreadable Longitude '" + value + "'");
          }
        } else if (!keys.label.empty() && key == keys.label) {
          node.label = value;
        }
      }
      node.index = static_cast<int>(nodes.size());
      index_of_id[node.source_id] = node.index;
      nodes.push_back(std::move(node));
    } else if (tag == "edge") {
      RawEdge edge;
      edge.source = child.get<std::string>("<xmlattr>.source", "");
      edge.target = child.get<std::string>("<xmlattr>.target", "");
      if (edge.source.empty() || edge.target.empty()) {
        throw ParseError("edge without source/target attributes");
      }
      raw_edges.push_back(std::move(edge));
    }
  }

  std::vector<PhysicalLink> links;
  links.reserve(raw_edges.size());
  for (const RawEdge& edge : raw_edges) {
    auto src = index_of_id.find(edge.source);
    auto dst = index_of_id.find(edge.target);
    if (src == index_of_id.end()) {
      throw ParseError("edge references unknown node '" + edge.source + "'");
    }
    if (dst == index_of_id.end()) {
      throw ParseError("edge references unknown node '" + edge.target + "'");
    }
    const PhysicalNode& a = nodes[src->second];
    const PhysicalNode& b = nodes[dst->second];
    double latency;
    if (a.has_coordinates() && b.has_coordinates()) {
      latency = link_latency_ms(a, b, options.propagation_speed_km_per_ms);
    } else if (options.default_link_latency_ms) {
      latency = *options.default_link_latency_ms;
    } else {
      const PhysicalNode& missing = a.has_coordinates() ? b : a;
      throw GeoError(node_name(missing) +
                     " has no coordinates; set default_link_latency_ms to "
                     "accept such links");
    }
    links.push_back(
        PhysicalLink{src->second, dst->second, latency});
  }

  return build_topology(std::move(nodes), links);
}

}  // namespace opjhcpp
