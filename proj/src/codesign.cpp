#include "mobco/codesign.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mobco/errors.hpp"

namespace mobco::codesign {

using poset::ExtNonNeg;

std::vector<Choice> minimize(std::vector<Choice> choices, double tol) {
  std::vector<Point> pts;
  pts.reserve(choices.size());
  for (const Choice& c : choices) pts.push_back(c.resources);
  const poset::MinimalSet min = poset::pareto_min_indices(pts, tol);

  std::vector<Choice> out;
  out.reserve(min.kept.size());
  for (std::size_t k = 0; k < min.kept.size(); ++k) {
    Choice kept = std::move(choices[min.kept[k]]);
    for (std::size_t t : min.ties[k]) {
      kept.ties.push_back(std::move(choices[t].provenance));
      for (Provenance& p : choices[t].ties) kept.ties.push_back(std::move(p));
    }
    out.push_back(std::move(kept));
  }
  return out;
}

poset::Antichain antichain_of(const std::vector<Choice>& choices, std::size_t dim) {
  std::vector<Point> pts;
  pts.reserve(choices.size());
  for (const Choice& c : choices) pts.push_back(c.resources);
  return poset::pareto_min(dim, pts);
}

struct DesignProblem::Body {
  std::string name;
  Space functionality;
  Space resources;
  std::vector<Implementation> implementations;
  Hook hook;
  std::optional<std::vector<Point>> grid;
};

DesignProblem DesignProblem::catalog(std::string name, Space functionality, Space resources,
                                     std::vector<Implementation> implementations) {
  for (const Implementation& impl : implementations) {
    try {
      functionality.check(impl.provided);
      resources.check(impl.required);
    } catch (const std::exception& e) {
      throw CompositionError("catalog '" + name + "', implementation '" + impl.id +
                             "': " + e.what());
    }
  }
  auto body = std::make_shared<Body>();
  body->name = std::move(name);
  body->functionality = std::move(functionality);
  body->resources = std::move(resources);
  body->implementations = std::move(implementations);
  return DesignProblem(std::move(body));
}

DesignProblem DesignProblem::computed(std::string name, Space functionality, Space resources,
                                      Hook hook, std::optional<std::vector<Point>> grid) {
  if (!hook) throw std::invalid_argument("computed design problem '" + name + "' without hook");
  if (grid)
    for (const Point& g : *grid) functionality.check(g);
  auto body = std::make_shared<Body>();
  body->name = std::move(name);
  body->functionality = std::move(functionality);
  body->resources = std::move(resources);
  body->hook = std::move(hook);
  body->grid = std::move(grid);
  return DesignProblem(std::move(body));
}

const std::string& DesignProblem::name() const { return body_->name; }
const Space& DesignProblem::functionality() const { return body_->functionality; }
const Space& DesignProblem::resources() const { return body_->resources; }
bool DesignProblem::is_catalog() const { return !body_->hook; }
const std::vector<Implementation>& DesignProblem::implementations() const {
  return body_->implementations;
}
const std::optional<std::vector<Point>>& DesignProblem::grid() const { return body_->grid; }

std::vector<Choice> DesignProblem::query(const Point& f) const {
  const Body& b = *body_;
  b.functionality.check(f);
  const double ftol = b.functionality.tolerance();
  std::vector<Choice> found;

  if (!b.hook) {
    for (const Implementation& impl : b.implementations)
      if (poset::leq(f, impl.provided, ftol))
        found.push_back({impl.required, {Step{b.name, impl.id, impl.attributes}}, {}});
  } else {
    auto collect = [&](const Point& at) {
      for (Choice& c : b.hook(at)) {
        b.resources.check(c.resources);
        found.push_back(std::move(c));
      }
    };
    if (b.grid) {
      for (const Point& g : *b.grid)
        if (poset::leq(f, g, ftol)) collect(g);
    } else {
      collect(f);
    }
  }
  return minimize(std::move(found), b.resources.tolerance());
}

poset::Antichain DesignProblem::query_antichain(const Point& f) const {
  return antichain_of(query(f), resources().dim());
}

namespace {

std::string describe(const Space& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.dim(); ++i)
    out += (i ? ", " : "") + s.axis(i).name + ":" + s.axis(i).unit;
  return out + "]";
}

Provenance join(const Provenance& a, const Provenance& b) {
  Provenance out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

DesignProblem series(const DesignProblem& dp1, const DesignProblem& dp2) {
  if (!dp1.resources().compatible(dp2.functionality()))
    throw CompositionError("series: resources " + describe(dp1.resources()) + " of '" +
                           dp1.name() + "' do not match functionality " +
                           describe(dp2.functionality()) + " of '" + dp2.name() + "'");
  auto hook = [dp1, dp2](const Point& f) {
    std::vector<Choice> out;
    for (const Choice& c1 : dp1.query(f))
      for (const Choice& c2 : dp2.query(c1.resources))
        out.push_back({c2.resources, join(c1.provenance, c2.provenance), {}});
    return out;
  };
  return DesignProblem::computed(dp1.name() + ">" + dp2.name(), dp1.functionality(),
                                 dp2.resources(), std::move(hook));
}

DesignProblem parallel(const DesignProblem& dp1, const DesignProblem& dp2) {
  const std::size_t n1 = dp1.functionality().dim();
  auto hook = [dp1, dp2, n1](const Point& f) {
    std::vector<ExtNonNeg> c1(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n1));
    std::vector<ExtNonNeg> c2(f.begin() + static_cast<std::ptrdiff_t>(n1), f.end());
    const std::vector<Choice> h2 = dp2.query(Point(std::move(c2)));
    std::vector<Choice> out;
    for (const Choice& a : dp1.query(Point(std::move(c1))))
      for (const Choice& b : h2)
        out.push_back({a.resources.concat(b.resources), join(a.provenance, b.provenance), {}});
    return out;
  };
  return DesignProblem::computed(dp1.name() + "|" + dp2.name(),
                                 dp1.functionality().product(dp2.functionality()),
                                 dp1.resources().product(dp2.resources()), std::move(hook));
}

MonotonicityReport check_monotone(const DesignProblem& dp,
                                  const std::vector<std::pair<Point, Point>>& pairs) {
  MonotonicityReport report;
  const double ftol = dp.functionality().tolerance();
  for (const auto& [f1, f2] : pairs) {
    if (!poset::leq(f1, f2, ftol))
      throw std::invalid_argument("check_monotone: pair is not ordered");
    const poset::Antichain lower = dp.query_antichain(f1);
    for (const Choice& c : dp.query(f2))
      if (!poset::dominates(lower, c.resources))
        report.violations.push_back({f1, f2, c.resources});
    ++report.pairs_checked;
  }
  return report;
}

std::size_t CoDesignDiagram::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name() == name) return i;
  throw std::out_of_range("diagram has no node '" + name + "'");
}

DiagramBuilder& DiagramBuilder::add(DesignProblem dp) {
  nodes_.push_back(std::move(dp));
  return *this;
}

DiagramBuilder& DiagramBuilder::connect(Port resource, Port functionality) {
  edges_.emplace_back(std::move(resource), std::move(functionality));
  return *this;
}

DiagramBuilder& DiagramBuilder::source(Port functionality) {
  sources_.push_back(std::move(functionality));
  return *this;
}

DiagramBuilder& DiagramBuilder::sink(Port resource) {
  sinks_.push_back(std::move(resource));
  return *this;
}

CoDesignDiagram DiagramBuilder::build() const {
  CoDesignDiagram d;
  d.nodes_ = nodes_;
  const std::size_t n = nodes_.size();

  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < n; ++i)
    if (!by_name.emplace(nodes_[i].name(), i).second)
      throw CompositionError("duplicate node name '" + nodes_[i].name() + "'");

  auto node_of = [&](const Port& p) {
    auto it = by_name.find(p.node);
    if (it == by_name.end()) throw CompositionError("unknown node '" + p.node + "'");
    return it->second;
  };
  auto axis_of = [](const Space& s, const Port& p, const char* what) {
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (s.axis(i).name == p.axis) return i;
    throw CompositionError("node '" + p.node + "' has no " + what + " axis '" + p.axis + "'");
  };

  std::size_t slots = 0;
  for (const DesignProblem& dp : nodes_) {
    d.slot_offset_.push_back(slots);
    slots += dp.resources().dim();
  }
  d.consumers_.assign(slots, {});

  std::vector<std::vector<std::optional<CoDesignDiagram::Input>>> inputs(n);
  for (std::size_t i = 0; i < n; ++i) inputs[i].resize(nodes_[i].functionality().dim());

  std::vector<poset::Axis> f_axes;
  for (std::size_t s = 0; s < sources_.size(); ++s) {
    const Port& p = sources_[s];
    const std::size_t k = node_of(p);
    const std::size_t a = axis_of(nodes_[k].functionality(), p, "functionality");
    if (inputs[k][a]) throw CompositionError("functionality " + p.node + "." + p.axis +
                                             " has more than one input");
    inputs[k][a] = CoDesignDiagram::Input{true, s};
    poset::Axis axis = nodes_[k].functionality().axis(a);
    axis.name = p.node + "." + axis.name;
    f_axes.push_back(std::move(axis));
  }

  std::vector<std::set<std::size_t>> deps(n);
  for (const auto& [from, to] : edges_) {
    const std::size_t src = node_of(from), dst = node_of(to);
    const std::size_t ra = axis_of(nodes_[src].resources(), from, "resource");
    const std::size_t fa = axis_of(nodes_[dst].functionality(), to, "functionality");
    const poset::Axis& r_axis = nodes_[src].resources().axis(ra);
    const poset::Axis& f_axis = nodes_[dst].functionality().axis(fa);
    if (r_axis.unit != f_axis.unit || r_axis.kind != f_axis.kind)
      throw CompositionError("edge " + from.node + "." + from.axis + " [" + r_axis.unit +
                             "] -> " + to.node + "." + to.axis + " [" + f_axis.unit +
                             "]: incompatible units");
    if (inputs[dst][fa]) throw CompositionError("functionality " + to.node + "." + to.axis +
                                                " has more than one input");
    const std::size_t slot = d.slot_offset_[src] + ra;
    inputs[dst][fa] = CoDesignDiagram::Input{false, slot};
    d.consumers_[slot].push_back(dst);
    deps[dst].insert(src);
  }

  d.inputs_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < inputs[i].size(); ++a) {
      if (!inputs[i][a])
        throw CompositionError("functionality " + nodes_[i].name() + "." +
                               nodes_[i].functionality().axis(a).name + " has no input");
      d.inputs_[i].push_back(*inputs[i][a]);
    }

  std::vector<poset::Axis> r_axes;
  std::set<std::size_t> sink_set;
  for (const Port& p : sinks_) {
    const std::size_t k = node_of(p);
    const std::size_t a = axis_of(nodes_[k].resources(), p, "resource");
    const std::size_t slot = d.slot_offset_[k] + a;
    if (!sink_set.insert(slot).second)
      throw CompositionError("resource " + p.node + "." + p.axis + " exposed twice");
    d.sink_slots_.push_back(slot);
    poset::Axis axis = nodes_[k].resources().axis(a);
    axis.name = p.node + "." + axis.name;
    r_axes.push_back(std::move(axis));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < nodes_[i].resources().dim(); ++a) {
      const std::size_t slot = d.slot_offset_[i] + a;
      if (d.consumers_[slot].empty() && !sink_set.count(slot))
        throw CompositionError("resource " + nodes_[i].name() + "." +
                               nodes_[i].resources().axis(a).name + " is not consumed");
    }

  // Kahn's algorithm, lowest index first for a deterministic order.
  std::vector<std::size_t> indegree(n);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = deps[i].size();
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    const std::size_t k = *ready.begin();
    ready.erase(ready.begin());
    d.order_.push_back(k);
    for (std::size_t j = 0; j < n; ++j)
      if (deps[j].count(k) && --indegree[j] == 0) ready.insert(j);
  }
  if (d.order_.size() != n) throw CompositionError("co-design diagram has a cycle");

  d.functionality_ = Space(std::move(f_axes));
  d.resources_ = Space(std::move(r_axes));
  return d;
}

struct DiagramEvaluator {
  const CoDesignDiagram& d;
  const Point& f;
  std::vector<std::map<Point, std::vector<Choice>>> cache;

  struct State {
    std::vector<ExtNonNeg> values;
    std::vector<Provenance> per_node;
  };

  DiagramEvaluator(const CoDesignDiagram& diagram, const Point& functionality)
      : d(diagram), f(functionality), cache(diagram.nodes_.size()) {
    d.functionality_.check(f);
  }

  std::size_t slot_count() const { return d.consumers_.size(); }

  Point input_for(std::size_t k, const std::vector<ExtNonNeg>& values) const {
    std::vector<ExtNonNeg> c;
    c.reserve(d.inputs_[k].size());
    for (const auto& in : d.inputs_[k]) c.push_back(in.from_source ? f[in.index] : values[in.index]);
    return Point(std::move(c));
  }

  const std::vector<Choice>& query(std::size_t k, const Point& fk) {
    auto it = cache[k].find(fk);
    if (it == cache[k].end()) it = cache[k].emplace(fk, d.nodes_[k].query(fk)).first;
    return it->second;
  }

  void store(std::size_t k, const Point& r, std::vector<ExtNonNeg>& values) const {
    for (std::size_t a = 0; a < r.dim(); ++a) values[d.slot_offset_[k] + a] = r[a];
  }

  Point sink_point(const std::vector<ExtNonNeg>& values) const {
    std::vector<ExtNonNeg> c;
    c.reserve(d.sink_slots_.size());
    for (std::size_t s : d.sink_slots_) c.push_back(values[s]);
    return Point(std::move(c));
  }

  std::vector<ParetoRecord> run() {
    const std::size_t n = d.nodes_.size();
    std::vector<State> states{State{std::vector<ExtNonNeg>(slot_count()), std::vector<Provenance>(n)}};
    std::vector<bool> done(n, false);
    std::vector<bool> is_sink(slot_count(), false);
    for (std::size_t s : d.sink_slots_) is_sink[s] = true;

    for (std::size_t k : d.order_) {
      std::vector<State> next;
      for (const State& st : states) {
        const Point fk = input_for(k, st.values);
        for (const Choice& c : query(k, fk)) {
          State ns = st;
          store(k, c.resources, ns.values);
          ns.per_node[k] = c.provenance;
          next.push_back(std::move(ns));
        }
      }
      done[k] = true;

      // Slots that still matter downstream: sinks, or inputs of pending nodes.
      std::vector<std::size_t> open;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) continue;
        for (std::size_t a = 0; a < d.nodes_[j].resources().dim(); ++a) {
          const std::size_t slot = d.slot_offset_[j] + a;
          bool pending = is_sink[slot];
          for (std::size_t c : d.consumers_[slot]) pending |= !done[c];
          if (pending) open.push_back(slot);
        }
      }
      std::vector<Point> keys;
      keys.reserve(next.size());
      for (const State& st : next) {
        std::vector<ExtNonNeg> c;
        c.reserve(open.size());
        for (std::size_t s : open) c.push_back(st.values[s]);
        keys.emplace_back(std::move(c));
      }
      const poset::MinimalSet min = poset::pareto_min_indices(keys);
      states.clear();
      for (std::size_t i : min.kept) states.push_back(std::move(next[i]));
      if (states.empty()) return {};
    }

    std::vector<Point> sinks;
    sinks.reserve(states.size());
    for (const State& st : states) sinks.push_back(sink_point(st.values));
    const poset::MinimalSet min = poset::pareto_min_indices(sinks);
    std::vector<ParetoRecord> out;
    out.reserve(min.kept.size());
    for (std::size_t i : min.kept) out.push_back({sinks[i], std::move(states[i].per_node)});
    return out;
  }

  std::optional<Point> replay(const std::vector<Provenance>& per_node) {
    if (per_node.size() != d.nodes_.size())
      throw std::invalid_argument("replay: provenance has wrong node count");
    std::vector<ExtNonNeg> values(slot_count());
    for (std::size_t k : d.order_) {
      const Point fk = input_for(k, values);
      const std::vector<Choice>& choices = query(k, fk);
      auto it = std::find_if(choices.begin(), choices.end(),
                             [&](const Choice& c) { return c.provenance == per_node[k]; });
      if (it == choices.end()) return std::nullopt;
      store(k, it->resources, values);
    }
    return sink_point(values);
  }
};

std::vector<ParetoRecord> solve_diagram(const CoDesignDiagram& diagram, const Point& f) {
  return DiagramEvaluator(diagram, f).run();
}

std::optional<Point> replay(const CoDesignDiagram& diagram, const Point& f,
                            const std::vector<Provenance>& per_node) {
  return DiagramEvaluator(diagram, f).replay(per_node);
}

}  // namespace mobco::codesign
