#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oodt::social {

using NodeId = std::size_t;

class SocialError : public std::runtime_error {
 public:
  enum class Code { InvalidContact, Parse, InvalidParams };

  SocialError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct ContactEvent {
  NodeId node_a = 0;
  NodeId node_b = 0;
  double start = 0.0;
  double end = 0.0;
};

inline ContactEvent make_contact(NodeId a, NodeId b, double start, double end) {
  if (a == b) throw SocialError(SocialError::Code::InvalidContact, "contact of a node with itself");
  if (!(start < end)) throw SocialError(SocialError::Code::InvalidContact, "contact must have start < end");
  return {std::min(a, b), std::max(a, b), start, end};
}

// Append-only record of pairwise encounters.
class ContactHistory {
 public:
  void add(const ContactEvent& e) {
    const ContactEvent c = make_contact(e.node_a, e.node_b, e.start, e.end);
    events_.push_back(c);
    by_pair_[{c.node_a, c.node_b}].push_back({c.start, c.end});
  }
  void add(NodeId a, NodeId b, double start, double end) { add(ContactEvent{a, b, start, end}); }

  const std::vector<ContactEvent>& events() const { return events_; }

  // Contact intervals of the unordered pair, in insertion order.
  const std::vector<std::pair<double, double>>& intervals(NodeId a, NodeId b) const {
    static const std::vector<std::pair<double, double>> none;
    const auto it = by_pair_.find({std::min(a, b), std::max(a, b)});
    return it == by_pair_.end() ? none : it->second;
  }

 private:
  std::vector<ContactEvent> events_;
  std::map<std::pair<NodeId, NodeId>, std::vector<std::pair<double, double>>> by_pair_;
};

// CSV "node_a,node_b,start_s,end_s" with a header line.
inline ContactHistory read_contacts_csv(std::istream& in) {
  using Code = SocialError::Code;
  ContactHistory h;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("node_a", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long a = -1, b = -1;
    double s = 0, e = 0;
    std::string extra;
    if (!(ls >> a >> b >> s >> e) || (ls >> extra) || a < 0 || b < 0)
      throw SocialError(Code::Parse, "line " + std::to_string(lineno) + ": expected node_a,node_b,start_s,end_s");
    try {
      h.add(static_cast<NodeId>(a), static_cast<NodeId>(b), s, e);
    } catch (const SocialError& err) {
      throw SocialError(Code::Parse, "line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return h;
}

inline void write_contacts_csv(std::ostream& os, const ContactHistory& h) {
  os << "node_a,node_b,start_s,end_s\n";
  for (const auto& e : h.events()) os << e.node_a << ',' << e.node_b << ',' << e.start << ',' << e.end << '\n';
}

struct SyntheticTraceParams {
  std::size_t nodes = 50;
  std::size_t communities = 5;
  double duration = 1000.0;
  double intra_rate = 1.0 / 60.0;   // encounters per second for a pair in one community
  double inter_rate = 1.0 / 900.0;  // encounters per second across communities
  double mean_contact = 20.0;       // seconds
};

// Community-structured trace: each pair meets as a Poisson process with
// exponential contact durations; overlapping contacts of a pair are merged.
template <class Rng>
ContactHistory synthetic_trace(Rng& rng, const SyntheticTraceParams& p) {
  if (p.nodes < 2 || p.communities == 0 || p.duration <= 0 || p.mean_contact <= 0)
    throw SocialError(SocialError::Code::InvalidParams, "invalid synthetic trace parameters");
  ContactHistory h;
  std::exponential_distribution<double> len(1.0 / p.mean_contact);
  for (NodeId a = 0; a < p.nodes; ++a) {
    for (NodeId b = a + 1; b < p.nodes; ++b) {
      const double rate = (a % p.communities == b % p.communities) ? p.intra_rate : p.inter_rate;
      std::exponential_distribution<double> gap(rate);
      double t = gap(rng);
      while (t < p.duration) {
        const double end = std::min(p.duration, t + len(rng));
        if (end > t) h.add(a, b, t, end);
        t = end + gap(rng);
      }
    }
  }
  return h;
}

}  // namespace oodt::social
