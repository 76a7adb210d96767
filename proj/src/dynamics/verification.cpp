#include <algorithm>
#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>
#include <cmath>
#include <iterator>
#include <vector>

#include "hamflow/dynamics.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::dynamics {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

using Point = bg::model::point<double, 2, bg::cs::cartesian>;
using Segment = bg::model::segment<Point>;

Point to_point(const PhaseState& s) { return {s.x, s.p}; }

}  // namespace

double coincidence_metric(const Trajectory& a, const Trajectory& b) {
  const auto& ref = b.samples();
  if (ref.size() == 1) {
    const Point q = to_point(ref.front().state);
    double worst = 0.0;
    for (const auto& s : a.samples())
      worst = std::max(worst, static_cast<double>(bg::distance(to_point(s.state), q)));
    return worst;
  }

  std::vector<Segment> segments;
  segments.reserve(ref.size() - 1);
  for (std::size_t i = 1; i < ref.size(); ++i)
    segments.emplace_back(to_point(ref[i - 1].state), to_point(ref[i].state));
  const bgi::rtree<Segment, bgi::rstar<16>> index(segments.begin(), segments.end());

  double worst = 0.0;
  std::vector<Segment> hit;
  for (const auto& s : a.samples()) {
    const Point q = to_point(s.state);
    hit.clear();
    index.query(bgi::nearest(q, 1), std::back_inserter(hit));
    worst = std::max(worst, static_cast<double>(bg::distance(q, hit.front())));
  }
  return worst;
}

double rescaling_check(FlowSpec spec, const Potential& potential, const SystemParams& params,
                       const PhaseState& start, const IntegratorConfig& cfg,
                       RateConvention convention) {
  const double energy = additive_hamiltonian(start, potential, params);
  const double rate = convention == RateConvention::derived
                          ? rate_factor(spec, energy, params)
                          : printed_rate_factor(spec, energy, params);

  const auto scaled = integrate(flow_field(spec, potential, params), start, cfg);
  PhaseState reference = start;
  const double t_ref = rate * cfg.t_end;
  if (t_ref > 0.0) {
    IntegratorConfig ref_cfg = cfg;
    ref_cfg.t_end = t_ref;
    reference = integrate(flow_field(FlowSpec::standard(), potential, params), start, ref_cfg)
                    .back()
                    .state;
  } else if (t_ref < 0.0) {
    // A negative factor runs the standard flow backwards.
    IntegratorConfig ref_cfg = cfg;
    ref_cfg.t_end = -t_ref;
    const PhaseState flipped{start.x, -start.p};
    const auto back = integrate(flow_field(FlowSpec::standard(), potential, params), flipped,
                                ref_cfg)
                          .back()
                          .state;
    reference = {back.x, -back.p};
  }
  const auto& end = scaled.back().state;
  return std::hypot(end.x - reference.x, end.p - reference.p);
}

double energy_drift(const Trajectory& traj, const Potential& potential, const SystemParams& params) {
  double worst = 0.0;
  for (const auto& s : traj.samples())
    worst = std::max(worst, std::abs(additive_hamiltonian(s.state, potential, params) - traj.energy()));
  return worst;
}

}  // namespace hamflow::dynamics
