#include "dsaddle/containment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace dsaddle {

namespace {

double interval_slack(const Interval& iv, double x) { return std::min(x - iv.lo, iv.hi - x); }

}  // namespace

ContainmentReport verify_containment(const Vector& spectrum, const BoundIntervals& bounds,
                                     double tol, double cluster_tol) {
  ContainmentReport rep;
  const auto n = static_cast<std::size_t>(spectrum.size());
  rep.verdicts.resize(n);
  std::vector<bool> claimed(n, false);
  for (std::size_t i = 0; i < n; ++i) rep.verdicts[i].value = spectrum(static_cast<Index>(i));

  rep.discrete_counts.assign(bounds.discrete.size(), 0);
  for (std::size_t j = 0; j < bounds.discrete.size(); ++j) {
    const DiscreteEigenvalue& target = bounds.discrete[j];
    const double radius = cluster_tol * std::max(1.0, std::abs(target.value));
    std::vector<std::size_t> near;
    for (std::size_t i = 0; i < n; ++i)
      if (!claimed[i] && std::abs(rep.verdicts[i].value - target.value) <= radius) near.push_back(i);
    std::sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(rep.verdicts[a].value - target.value) <
             std::abs(rep.verdicts[b].value - target.value);
    });
    const std::size_t take =
        std::min(near.size(), static_cast<std::size_t>(std::max<Index>(target.multiplicity, 0)));
    for (std::size_t t = 0; t < take; ++t) {
      EigenVerdict& v = rep.verdicts[near[t]];
      claimed[near[t]] = true;
      v.region = "discrete:" + std::to_string(j);
      v.slack = radius - std::abs(v.value - target.value);
      v.inside = true;
    }
    rep.discrete_counts[j] = static_cast<Index>(take);
    if (static_cast<Index>(take) != target.multiplicity) {
      std::ostringstream os;
      os << "discrete eigenvalue " << target.value << " expected multiplicity "
         << target.multiplicity << ", found " << take;
      rep.messages.push_back(os.str());
      rep.pass = false;
    }
  }

  rep.cluster_counts.assign(bounds.clusters.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (claimed[i]) continue;
    EigenVerdict& v = rep.verdicts[i];
    if (bounds.discrete_only) {
      v.slack = -std::numeric_limits<double>::infinity();
      for (const auto& d : bounds.discrete)
        v.slack = std::max(v.slack, -std::abs(v.value - d.value));
    } else if (!bounds.clusters.empty()) {
      v.slack = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < bounds.clusters.size(); ++j) {
        const Interval& iv = bounds.clusters[j].range;
        v.slack = std::max(v.slack, interval_slack(iv, v.value));
        if (iv.contains(v.value, tol)) {
          v.region = "cluster:" + std::to_string(j);
          v.slack = interval_slack(iv, v.value);
          v.inside = true;
          ++rep.cluster_counts[j];
          break;
        }
      }
    } else {
      const Interval& iv = v.value < 0.0 ? bounds.negative : bounds.positive;
      v.region = v.value < 0.0 ? "negative" : "positive";
      v.slack = interval_slack(iv, v.value);
      v.inside = iv.contains(v.value, tol);
    }
    if (v.region.empty()) v.region = "none";
    if (!v.inside) {
      ++rep.outside;
      rep.pass = false;
    }
  }
  if (rep.outside > 0) {
    std::ostringstream os;
    os << rep.outside << " eigenvalue(s) outside the predicted set";
    rep.messages.push_back(os.str());
  }

  for (std::size_t j = 0; j < bounds.clusters.size(); ++j) {
    if (rep.cluster_counts[j] != bounds.clusters[j].count) {
      std::ostringstream os;
      os << "cluster " << j << " expected " << bounds.clusters[j].count << " eigenvalues, found "
         << rep.cluster_counts[j];
      rep.messages.push_back(os.str());
      rep.pass = false;
    }
  }

  rep.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& v : rep.verdicts) rep.min_slack = std::min(rep.min_slack, v.slack);
  if (n == 0) rep.min_slack = 0.0;
  return rep;
}

}  // namespace dsaddle
