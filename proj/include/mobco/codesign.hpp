#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mobco/poset.hpp"

namespace mobco::codesign {

using poset::Point;
using poset::Space;
using Attributes = std::map<std::string, std::string>;

/// Catalog entry of a design problem with implementations: what it
/// provides, what it requires.
struct Implementation {
  std::string id;
  Point provided;
  Point required;
  Attributes attributes;
};

/// One link of a provenance chain.
struct Step {
  std::string node;
  std::string implementation;
  Attributes attributes;
  bool operator==(const Step&) const = default;
};
using Provenance = std::vector<Step>;

/// A minimal resource point and the implementation chain realizing it.
/// `ties` holds the provenance of other implementations with the same
/// resource point (the kept one is the earliest in catalog order).
struct Choice {
  Point resources;
  Provenance provenance;
  std::vector<Provenance> ties;
};

/// Pareto-minimizes choices by resources, merging equal points into ties.
/// Output sorted lexicographically by resources.
std::vector<Choice> minimize(std::vector<Choice> choices, double tol = 0.0);
poset::Antichain antichain_of(const std::vector<Choice>& choices, std::size_t dim);

/// A monotone map from functionality to an antichain of required resources,
/// backed either by a finite catalog or by a pure computation.
///
/// Computed problems may declare a finite grid of functionality points; the
/// grid then plays the role of the implementation set: query(f) is the
/// minimum over the hook's answers at every grid point g >= f, which makes
/// the induced map monotone by construction. Without a grid the hook is
/// evaluated at f directly and must itself be monotone.
class DesignProblem {
 public:
  /// Must be a pure function of its argument; may be called concurrently.
  using Hook = std::function<std::vector<Choice>(const Point&)>;

  static DesignProblem catalog(std::string name, Space functionality, Space resources,
                               std::vector<Implementation> implementations);
  static DesignProblem computed(std::string name, Space functionality, Space resources,
                                Hook hook, std::optional<std::vector<Point>> grid = {});

  const std::string& name() const;
  const Space& functionality() const;
  const Space& resources() const;
  bool is_catalog() const;
  const std::vector<Implementation>& implementations() const;
  const std::optional<std::vector<Point>>& grid() const;

  /// Minimal resources providing f, sorted lexicographically. Empty means
  /// infeasible. Throws DimensionError if f is not in the functionality space.
  std::vector<Choice> query(const Point& f) const;
  poset::Antichain query_antichain(const Point& f) const;

 private:
  struct Body;
  explicit DesignProblem(std::shared_ptr<const Body> body) : body_(std::move(body)) {}
  std::shared_ptr<const Body> body_;
};

/// dp1's resources feed dp2's functionality. Throws CompositionError when
/// the spaces disagree in arity, unit or kind.
DesignProblem series(const DesignProblem& dp1, const DesignProblem& dp2);
/// Product of two problems on the product spaces.
DesignProblem parallel(const DesignProblem& dp1, const DesignProblem& dp2);

struct MonotonicityViolation {
  Point lower;      // f1
  Point upper;      // f2, with f1 <= f2
  Point resources;  // element of h(f2) not above any element of h(f1)
};

struct MonotonicityReport {
  std::size_t pairs_checked = 0;
  std::vector<MonotonicityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// For every (f1, f2), checks that each point of h(f2) dominates a point of
/// h(f1). Throws std::invalid_argument when a pair is not ordered.
MonotonicityReport check_monotone(const DesignProblem& dp,
                                  const std::vector<std::pair<Point, Point>>& pairs);

/// Names a coordinate of a node's functionality or resource space.
struct Port {
  std::string node;
  std::string axis;
};

/// An acyclic interconnection of design problems. Each edge states that a
/// node's resource is a lower bound for another node's functionality.
class CoDesignDiagram {
 public:
  const std::vector<DesignProblem>& nodes() const { return nodes_; }
  const Space& functionality() const { return functionality_; }
  const Space& resources() const { return resources_; }
  const std::vector<std::size_t>& evaluation_order() const { return order_; }
  std::size_t node_index(const std::string& name) const;

 private:
  friend class DiagramBuilder;
  friend struct DiagramEvaluator;

  // Where a functionality coordinate gets its value from.
  struct Input {
    bool from_source = false;
    std::size_t index = 0;  // source index, or global resource slot
  };

  std::vector<DesignProblem> nodes_;
  std::vector<std::size_t> slot_offset_;        // first global resource slot per node
  std::vector<std::vector<Input>> inputs_;      // per node, per functionality coord
  std::vector<std::size_t> sink_slots_;
  std::vector<std::vector<std::size_t>> consumers_;  // per slot: consuming nodes
  std::vector<std::size_t> order_;
  Space functionality_;
  Space resources_;
};

class DiagramBuilder {
 public:
  DiagramBuilder& add(DesignProblem dp);
  DiagramBuilder& connect(Port resource, Port functionality);
  /// Exposes an unconnected functionality coordinate; sources are the
  /// diagram's functionality space in call order.
  DiagramBuilder& source(Port functionality);
  /// Exposes a resource coordinate; sinks are the diagram's resource space.
  DiagramBuilder& sink(Port resource);

  /// Throws CompositionError on cycles, unit mismatches, unknown ports,
  /// functionality coordinates without exactly one input, or resource
  /// coordinates that nothing consumes.
  CoDesignDiagram build() const;

 private:
  std::vector<DesignProblem> nodes_;
  std::vector<std::pair<Port, Port>> edges_;
  std::vector<Port> sources_;
  std::vector<Port> sinks_;
};

/// One element of the diagram's minimal resource antichain, with the
/// provenance chosen at every node (indexed like CoDesignDiagram::nodes()).
struct ParetoRecord {
  Point resources;
  std::vector<Provenance> per_node;
};

/// Evaluates nodes in topological order, pruning dominated partial states,
/// and returns the minimal sink points in lexicographic order.
std::vector<ParetoRecord> solve_diagram(const CoDesignDiagram& diagram, const Point& f);

/// Re-evaluates the diagram along a recorded provenance. Returns nullopt if
/// some node no longer offers the recorded choice.
std::optional<Point> replay(const CoDesignDiagram& diagram, const Point& f,
                            const std::vector<Provenance>& per_node);

}  // namespace mobco::codesign
