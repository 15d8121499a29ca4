#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "oodt/social/contacts.hpp"

namespace oodt::social {

struct SocialParams {
  double chi = 0.5;      // weight of the pressure term
  double window = 100.0; // T, seconds
  double spm_unit = 1.0; // time unit of the raw pressure before squashing, seconds
};

inline void validate(const SocialParams& p) {
  if (!(p.chi >= 0.0 && p.chi <= 1.0) || !(p.window > 0.0) || !(p.spm_unit > 0.0))
    throw SocialError(SocialError::Code::InvalidParams, "social parameters out of range");
}

// Average waiting time until the next contact of (i, j) over the window
// [end - T, end]. Within a gap [a, b) the wait is b - t; after the last
// contact the gap runs to the window end.
inline double spm_raw(const ContactHistory& h, NodeId i, NodeId j, double T, double end) {
  const double start = end - T;
  std::vector<std::pair<double, double>> iv;
  for (const auto& [s, e] : h.intervals(i, j)) {
    const double a = std::max(s, start), b = std::min(e, end);
    if (a < b) iv.emplace_back(a, b);
  }
  std::sort(iv.begin(), iv.end());
  double integral = 0.0, cursor = start;
  for (const auto& [a, b] : iv) {
    if (a > cursor) integral += 0.5 * (a - cursor) * (a - cursor);
    cursor = std::max(cursor, b);
  }
  if (end > cursor) integral += 0.5 * (end - cursor) * (end - cursor);
  return integral / T;
}

// Social pressure squashed into (0, 1]: 1 / (1 + raw / unit).
inline double spm(const ContactHistory& h, NodeId i, NodeId j, double T, double end, double unit = 1.0) {
  return 1.0 / (1.0 + spm_raw(h, i, j, T, end) / unit);
}

inline double spm(const ContactHistory& h, NodeId i, NodeId j, double T) { return spm(h, i, j, T, T); }

// Common neighbors over total neighbors; 0 when both sets are empty.
template <class Set>
double socsim(const Set& observed_i, const Set& observed_j) {
  const std::size_t n = observed_i.size() + observed_j.size();
  if (n == 0) return 0.0;
  std::size_t com = 0;
  for (const auto& x : observed_i) com += observed_j.count(x);
  return static_cast<double>(com) / static_cast<double>(n);
}

inline double socsim(std::size_t com, std::size_t n_i, std::size_t n_j) {
  return n_i + n_j == 0 ? 0.0 : static_cast<double>(com) / static_cast<double>(n_i + n_j);
}

inline double social_tie(const SocialParams& p, double spm_val, double socsim_val) {
  return p.chi * spm_val + (1.0 - p.chi) * socsim_val;
}

}  // namespace oodt::social
