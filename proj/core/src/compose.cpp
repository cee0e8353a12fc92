#include "wfc/compose.hpp"

#include <set>

namespace wfc {

std::string_view to_string(Operator op) {
  switch (op) {
    case Operator::Seq: return "seq";
    case Operator::Par: return "par";
    case Operator::Xor: return "xor";
    case Operator::Loop: return "loop";
  }
  return "?";
}

std::string_view symbol(Operator op) {
  switch (op) {
    case Operator::Seq: return "->";
    case Operator::Par: return "∧";
    case Operator::Xor: return "×";
    case Operator::Loop: return "↻";
  }
  return "?";
}

std::optional<Operator> parse_operator(std::string_view s) {
  for (Operator op : kAllOperators)
    if (to_string(op) == s) return op;
  return std::nullopt;
}

namespace {

class Builder {
 public:
  Builder(const std::vector<WorkflowNet>& operands, GlueLabels glue) : glue_(glue) {
    for (std::size_t i = 0; i < operands.size(); ++i) {
      const auto& m = operands[i];
      std::string prefix = "L" + std::to_string(i + 1) + ".";
      prefixes_.push_back(prefix);
      for (NodeIndex v = 0; v < m.node_count(); ++v) {
        if (m.is_place(v)) {
          d_.places.push_back(prefix + m.name(v));
        } else {
          d_.transitions.push_back({prefix + m.name(v), m.label(v)});
          if (m.label(v)) used_labels_.insert(*m.label(v));
        }
      }
      for (auto [a, b] : m.arcs()) d_.arcs.emplace_back(prefix + m.name(a), prefix + m.name(b));
      in_.push_back(prefix + m.name(m.source()));
      out_.push_back(prefix + m.name(m.sink()));
    }
  }

  void place(const std::string& p) { d_.places.push_back(p); }
  void transition(const std::string& t) {
    Label l;
    if (glue_ == GlueLabels::Fresh) {
      std::string name = t;
      while (used_labels_.count(name) || name == kTauMarker) name += "'";
      used_labels_.insert(name);
      l = name;
    }
    d_.transitions.push_back({t, l});
  }
  void arc(const std::string& a, const std::string& b) { d_.arcs.emplace_back(a, b); }

  const std::string& in(std::size_t j) const { return in_[j]; }
  const std::string& out(std::size_t j) const { return out_[j]; }

  WorkflowNet finish(std::string source, std::string sink, std::string name) {
    d_.source = std::move(source);
    d_.sink = std::move(sink);
    d_.name = std::move(name);
    return WorkflowNet::validate(d_);
  }

 private:
  GlueLabels glue_;
  NetDescription d_;
  std::vector<std::string> prefixes_, in_, out_;
  std::set<std::string> used_labels_;
};

std::string star(const std::string& base, std::size_t j) { return base + std::to_string(j) + "*"; }

}  // namespace

WorkflowNet compose(Operator op, const std::vector<WorkflowNet>& operands, GlueLabels glue) {
  const std::size_t n = operands.size();
  if (n < 2) throw CompositionError("ArityTooSmall: composition needs at least two operands");
  Builder b(operands, glue);
  std::string name = std::string(to_string(op)) + "(";
  for (std::size_t j = 0; j < n; ++j) name += (j ? "," : "") + operands[j].net_name();
  name += ")";

  switch (op) {
    case Operator::Seq:
      for (std::size_t j = 1; j < n; ++j) {
        auto t = star("t", j);
        b.transition(t);
        b.arc(b.out(j - 1), t);
        b.arc(t, b.in(j));
      }
      return b.finish(b.in(0), b.out(n - 1), name);
    case Operator::Par:
      b.place("pi*");
      b.place("po*");
      b.transition("ti*");
      b.transition("to*");
      b.arc("pi*", "ti*");
      b.arc("to*", "po*");
      for (std::size_t j = 0; j < n; ++j) {
        b.arc("ti*", b.in(j));
        b.arc(b.out(j), "to*");
      }
      return b.finish("pi*", "po*", name);
    case Operator::Xor:
      b.place("pi*");
      b.place("po*");
      for (std::size_t j = 0; j < n; ++j) {
        auto t = star("t", j + 1), s = star("s", j + 1);
        b.transition(t);
        b.transition(s);
        b.arc("pi*", t);
        b.arc(t, b.in(j));
        b.arc(b.out(j), s);
        b.arc(s, "po*");
      }
      return b.finish("pi*", "po*", name);
    case Operator::Loop:
      for (auto p : {"pi*", "po*", "p*", "q*"}) b.place(p);
      b.transition("t*");
      b.transition("s*");
      b.arc("pi*", "t*");
      b.arc("t*", "p*");
      b.arc("q*", "s*");
      b.arc("s*", "po*");
      for (std::size_t j = 0; j < n; ++j) {
        auto t = star("t", j + 1), s = star("s", j + 1);
        b.transition(t);
        b.transition(s);
        if (j == 0) {
          // do body: p* -> t1* -> M1 -> s1* -> q*
          b.arc("p*", t);
          b.arc(t, b.in(0));
          b.arc(b.out(0), s);
          b.arc(s, "q*");
        } else {
          // redo body: q* -> sj* -> Mj -> tj* -> p*
          b.arc("q*", s);
          b.arc(s, b.in(j));
          b.arc(b.out(j), t);
          b.arc(t, "p*");
        }
      }
      return b.finish("pi*", "po*", name);
  }
  throw CompositionError("unknown operator");
}

WorkflowNet compose(Operator op, const WorkflowNet& a, const WorkflowNet& b, GlueLabels glue) {
  return compose(op, std::vector<WorkflowNet>{a, b}, glue);
}

WorkflowNet relabel(const WorkflowNet& net, const RelabelingMap& map) {
  auto d = net.describe();
  std::map<std::string, std::string> image;  // new -> old
  for (auto& t : d.transitions) {
    if (!t.label) continue;
    auto it = map.find(*t.label);
    std::string target = it == map.end() ? *t.label : it->second;
    auto [pos, fresh] = image.emplace(target, *t.label);
    if (!fresh && pos->second != *t.label)
      throw NotInjective("labels " + pos->second + " and " + *t.label + " both map to " + target);
    t.label = target;
  }
  return WorkflowNet::validate(d);
}

bool is_permutation(const WorkflowNet& a, const WorkflowNet& b) {
  auto ta = a.transitions(), tb = b.transitions();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (a.name(ta[i]) != b.name(tb[i]) || a.label(ta[i]) != b.label(tb[i])) return false;
  return true;
}

}  // namespace wfc
