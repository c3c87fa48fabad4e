#include "ccnacct/sim/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

Role parse_role(const std::string& text, const std::string& where) {
  if (text == "consumer") return Role::kConsumer;
  if (text == "router") return Role::kRouter;
  if (text == "producer") return Role::kProducer;
  throw ConfigError(fmt::format("{}: unknown role '{}'", where, text));
}

std::vector<std::size_t> bfs(const std::vector<std::vector<Adjacent>>& adj, std::size_t from) {
  std::vector<std::size_t> dist(adj.size(), kUnreached);
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& n : adj[v]) {
      if (dist[n.node] == kUnreached) {
        dist[n.node] = dist[v] + 1;
        queue.push_back(n.node);
      }
    }
  }
  return dist;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kConsumer: return "consumer";
    case Role::kRouter: return "router";
    case Role::kProducer: return "producer";
  }
  return "?";
}

std::size_t Topology::add_node(std::string id, Role role) {
  if (index_.contains(id)) throw ConfigError(fmt::format("duplicate node '{}'", id));
  index_.emplace(id, nodes.size());
  nodes.push_back({std::move(id), role});
  return nodes.size() - 1;
}

void Topology::add_link(const std::string& a, const std::string& b, Tick delay) {
  const auto ia = index_of(a);
  const auto ib = index_of(b);
  if (ia == ib) throw ConfigError(fmt::format("self link on '{}'", a));
  if (delay == 0) throw ConfigError(fmt::format("link {}-{} needs a positive delay", a, b));
  for (const auto& l : links) {
    if ((l.a == ia && l.b == ib) || (l.a == ib && l.b == ia)) {
      throw ConfigError(fmt::format("duplicate link {}-{}", a, b));
    }
  }
  links.push_back({ia, ib, delay});
}

void Topology::add_prefix(const std::string& producer, Name prefix) {
  const auto i = index_of(producer);
  if (nodes[i].role != Role::kProducer) {
    throw ConfigError(fmt::format("prefix on non-producer '{}'", producer));
  }
  for (const auto& [node, p] : prefixes) {
    if (p == prefix) throw ConfigError(fmt::format("prefix {} served twice", prefix.to_uri()));
  }
  prefixes.emplace_back(i, std::move(prefix));
}

std::size_t Topology::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ConfigError(fmt::format("unknown node '{}'", id));
  return it->second;
}

std::vector<std::vector<Adjacent>> Topology::adjacency() const {
  std::vector<std::vector<Adjacent>> adj(nodes.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    adj[links[i].a].push_back({links[i].b, i});
    adj[links[i].b].push_back({links[i].a, i});
  }
  return adj;
}

std::size_t Topology::count(Role role) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [&](const TopoNode& n) { return n.role == role; }));
}

void Topology::validate() const {
  if (nodes.empty()) throw ConfigError("topology has no nodes");
  if (count(Role::kProducer) == 0) throw ConfigError("topology has no producer");
  const auto adj = adjacency();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].role == Role::kConsumer && adj[i].empty()) {
      throw ConfigError(fmt::format("consumer '{}' has no link", nodes[i].id));
    }
    if (nodes[i].role == Role::kProducer &&
        std::none_of(prefixes.begin(), prefixes.end(), [&](const auto& p) { return p.first == i; })) {
      throw ConfigError(fmt::format("producer '{}' serves no prefix", nodes[i].id));
    }
  }
  const auto dist = bfs(adj, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (dist[i] == kUnreached) {
      throw ConfigError(fmt::format("topology is not connected: '{}' is unreachable", nodes[i].id));
    }
  }
}

void Topology::write(std::ostream& out) const {
  for (const auto& n : nodes) out << fmt::format("node {} {}\n", n.id, to_string(n.role));
  for (const auto& l : links) {
    out << fmt::format("link {} {} {}\n", nodes[l.a].id, nodes[l.b].id, l.delay);
  }
  for (const auto& [node, prefix] : prefixes) {
    out << fmt::format("prefix {} lci:{}\n", nodes[node].id, prefix.to_uri());
  }
}

Topology Topology::path(std::size_t n) {
  if (n < 3) throw ConfigError("a path needs at least 3 nodes");
  Topology t;
  t.add_node("C0", Role::kConsumer);
  for (std::size_t i = 1; i + 1 < n; ++i) t.add_node(fmt::format("R{}", i), Role::kRouter);
  t.add_node("P", Role::kProducer);
  for (std::size_t i = 0; i + 1 < n; ++i) t.add_link(t.nodes[i].id, t.nodes[i + 1].id, 1);
  t.add_prefix("P", Name::parse("/prov"));
  return t;
}

Topology Topology::binary_tree(std::size_t height) {
  if (height < 2 || height > 16) throw ConfigError("tree height must be within 2..16");
  Topology t;
  t.add_node("P", Role::kProducer);
  std::vector<std::string> level{"P"};
  for (std::size_t depth = 1; depth <= height; ++depth) {
    const bool leaves = depth == height;
    std::vector<std::string> next;
    for (std::size_t i = 0; i < level.size() * 2; ++i) {
      auto id = fmt::format("{}{}_{}", leaves ? "C" : "R", depth, i);
      t.add_node(id, leaves ? Role::kConsumer : Role::kRouter);
      t.add_link(level[i / 2], id, 1);
      next.push_back(std::move(id));
    }
    level = std::move(next);
  }
  t.add_prefix("P", Name::parse("/prov"));
  return t;
}

Topology Topology::parse(std::istream& in, const std::string& source) {
  Topology t;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string token; fields >> token;) f.push_back(token);
    if (f.empty()) continue;
    const auto where = fmt::format("{}:{}", source, number);
    try {
      if (f[0] == "node" && f.size() == 3) {
        t.add_node(f[1], parse_role(f[2], where));
      } else if (f[0] == "link" && f.size() == 4) {
        std::size_t used = 0;
        const auto delay = std::stoull(f[3], &used);
        if (used != f[3].size()) throw std::invalid_argument(f[3]);
        t.add_link(f[1], f[2], delay);
      } else if (f[0] == "prefix" && f.size() == 3) {
        t.add_prefix(f[1], Name::parse(f[2]));
      } else {
        throw ConfigError("cannot parse line");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: {}", where, e.what()));
    } catch (const FieldError& e) {
      throw ConfigError(fmt::format("{}: {}", where, e.what()));
    } catch (const std::logic_error&) {
      throw ConfigError(fmt::format("{}: bad delay '{}'", where, f[3]));
    }
  }
  return t;
}

Topology Topology::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open topology file {}", path));
  return parse(in, path);
}

Routes build_fibs(const Topology& topology) {
  const auto adj = topology.adjacency();
  const std::size_t n = topology.nodes.size();
  Routes routes;
  routes.fib.resize(n);
  routes.distance.assign(n, kUnreached);
  for (const auto& [producer, prefix] : topology.prefixes) {
    const auto dist = bfs(adj, producer);
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] == kUnreached) {
        throw ConfigError(fmt::format("producer '{}' unreachable from '{}'",
                                      topology.nodes[producer].id, topology.nodes[v].id));
      }
      routes.distance[v] = std::min(routes.distance[v], dist[v]);
      if (v == producer) continue;
      std::vector<FaceId> hops;
      for (const auto& nb : adj[v]) {
        if (dist[nb.node] + 1 == dist[v]) hops.push_back(static_cast<FaceId>(nb.node));
      }
      std::sort(hops.begin(), hops.end());
      routes.fib[v].emplace_back(prefix, std::move(hops));
    }
  }
  return routes;
}

}  // namespace ccnacct
