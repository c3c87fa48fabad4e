#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ccnacct/core/name.hpp"
#include "ccnacct/node/tables.hpp"

namespace ccnacct {

enum class Role : std::uint8_t { kConsumer, kRouter, kProducer };

std::string_view to_string(Role role);

struct TopoNode {
  std::string id;
  Role role;
};

struct TopoLink {
  std::size_t a;
  std::size_t b;
  Tick delay;
};

struct Adjacent {
  std::size_t node;
  std::size_t link;
};

// Line-oriented topology:
//   node <id> consumer|router|producer
//   link <a> <b> <delay-ticks>
//   prefix <producer-id> <lci-name>
// '#' starts a comment. Node ids are arbitrary tokens.
struct Topology {
  std::vector<TopoNode> nodes;
  std::vector<TopoLink> links;
  std::vector<std::pair<std::size_t, Name>> prefixes;

  std::size_t add_node(std::string id, Role role);
  void add_link(const std::string& a, const std::string& b, Tick delay);
  void add_prefix(const std::string& producer, Name prefix);

  // Throws ConfigError for an unknown id.
  std::size_t index_of(const std::string& id) const;
  bool contains(const std::string& id) const { return index_.contains(id); }

  // Neighbors in link declaration order.
  std::vector<std::vector<Adjacent>> adjacency() const;
  std::size_t count(Role role) const;

  // Connected, at least one producer, every consumer linked, every producer
  // serving a prefix. Throws ConfigError.
  void validate() const;

  void write(std::ostream& out) const;

  // C - R1 - ... - R(n-2) - P, unit delays, producer prefix /prov.
  static Topology path(std::size_t nodes);
  // Producer at the root, routers on levels 1..height-1, two consumers
  // under every bottom router (2^height - 2 routers, 2^height consumers).
  static Topology binary_tree(std::size_t height);
  static Topology parse(std::istream& in, const std::string& source = "<input>");
  static Topology from_file(const std::string& path);

 private:
  std::map<std::string, std::size_t> index_;
};

// Per-node FIB contents and hop distance to the nearest producer.
struct Routes {
  std::vector<std::vector<std::pair<Name, std::vector<FaceId>>>> fib;
  std::vector<std::size_t> distance;
};

// Shortest-path (hop count) next hops towards every producer prefix. Equal
// cost hops are all listed, ordered by node declaration index. Face ids are
// neighbor node indices. Throws ConfigError if a producer is unreachable.
Routes build_fibs(const Topology& topology);

}  // namespace ccnacct
