#include "wflow/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "wflow/wigner.hpp"

namespace wflow {

namespace {

// Directed marching-squares segment between two grid-edge crossings.
struct Segment {
  long from_key, to_key;
  std::array<double, 2> from_pt, to_pt;
};

// Grid-edge keys: horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
long h_edge_key(int i, int j, int np) { return (long(i) * np + j) * 2; }
long v_edge_key(int i, int j, int np) { return (long(i) * np + j) * 2 + 1; }

class RegionExtractor {
 public:
  RegionExtractor(const ScalarField& w, double threshold)
      : w_(w), thr_(threshold), nx_(w.grid.nx), np_(w.grid.np) {}

  std::vector<NegativeRegion> run() {
    label_.assign(size_t(nx_) * size_t(np_), -1);
    std::vector<NegativeRegion> regions;

    for (int i = 0; i < nx_; ++i) {
      for (int j = 0; j < np_; ++j) {
        if (w_.values(i, j) < thr_ && label_at(i, j) < 0) {
          regions.push_back(flood_fill(i, j, int(regions.size())));
        }
      }
    }
    for (auto& region : regions) trace_boundary(region);

    std::sort(regions.begin(), regions.end(), [](const NegativeRegion& a, const NegativeRegion& b) {
      return std::abs(a.volume) > std::abs(b.volume);
    });
    return regions;
  }

 private:
  int& label_at(int i, int j) { return label_[size_t(i) * size_t(np_) + size_t(j)]; }

  NegativeRegion flood_fill(int i0, int j0, int id) {
    NegativeRegion region;
    const double cell_area = w_.grid.dx() * w_.grid.dp();
    std::vector<std::pair<int, int>> stack{{i0, j0}};
    label_at(i0, j0) = id;
    double weight_sum = 0.0, cx = 0.0, cp = 0.0;
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      region.cells.emplace_back(i, j);
      const double wv = w_.values(i, j);
      region.volume += wv * cell_area;
      const double weight = -wv;
      weight_sum += weight;
      cx += weight * w_.grid.x(i);
      cp += weight * w_.grid.p(j);

      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k], nj = j + dj[k];
        if (ni < 0 || ni >= nx_ || nj < 0 || nj >= np_) continue;
        if (w_.values(ni, nj) < thr_ && label_at(ni, nj) < 0) {
          label_at(ni, nj) = id;
          stack.emplace_back(ni, nj);
        }
      }
    }
    if (weight_sum > 0.0) region.centroid = {cx / weight_sum, cp / weight_sum};
    return region;
  }

  // Crossing of the iso-level on a grid edge, interpolated in canonical corner
  // order so both adjacent squares produce the identical point.
  std::array<double, 2> h_crossing(int i, int j) const {
    const double wa = w_.values(i, j), wb = w_.values(i + 1, j);
    double t = (std::abs(wb - wa) < 1e-300) ? 0.5 : (thr_ - wa) / (wb - wa);
    t = std::clamp(t, 0.0, 1.0);
    return {w_.grid.x(i) + t * w_.grid.dx(), w_.grid.p(j)};
  }
  std::array<double, 2> v_crossing(int i, int j) const {
    const double wa = w_.values(i, j), wb = w_.values(i, j + 1);
    double t = (std::abs(wb - wa) < 1e-300) ? 0.5 : (thr_ - wa) / (wb - wa);
    t = std::clamp(t, 0.0, 1.0);
    return {w_.grid.x(i), w_.grid.p(j) + t * w_.grid.dp()};
  }

  void trace_boundary(NegativeRegion& region) {
    if (region.cells.empty()) return;
    int id = -1;
    {
      auto [i, j] = region.cells.front();
      id = label_[size_t(i) * size_t(np_) + size_t(j)];
    }
    int imin = nx_, imax = -1, jmin = np_, jmax = -1;
    for (auto [i, j] : region.cells) {
      imin = std::min(imin, i);
      imax = std::max(imax, i);
      jmin = std::min(jmin, j);
      jmax = std::max(jmax, j);
    }

    std::unordered_map<long, Segment> by_start;
    for (int si = std::max(0, imin - 1); si <= std::min(nx_ - 2, imax); ++si) {
      for (int sj = std::max(0, jmin - 1); sj <= std::min(np_ - 2, jmax); ++sj) {
        emit_square(si, sj, id, by_start);
      }
    }

    // Chain directed segments into loops; the interior lies on the left.
    while (!by_start.empty()) {
      auto it = by_start.begin();
      std::vector<std::array<double, 2>> loop;
      const long start_key = it->first;
      long key = start_key;
      while (true) {
        auto seg_it = by_start.find(key);
        if (seg_it == by_start.end()) break;  // open chain: region touches the grid edge
        loop.push_back(seg_it->second.from_pt);
        key = seg_it->second.to_key;
        by_start.erase(seg_it);
        if (key == start_key) break;
      }
      if (loop.size() >= 2) region.boundary.push_back(std::move(loop));
    }

    double area = 0.0;
    for (const auto& loop : region.boundary) {
      double signed_area = 0.0;
      for (size_t k = 0; k < loop.size(); ++k) {
        const auto& a = loop[k];
        const auto& b = loop[(k + 1) % loop.size()];
        signed_area += a[0] * b[1] - b[0] * a[1];
      }
      area += 0.5 * signed_area;  // outer loops CCW (+), holes CW (-)
    }
    region.area = area;
  }

  void emit_square(int si, int sj, int id, std::unordered_map<long, Segment>& by_start) {
    const bool b0 = label_equals(si, sj, id);
    const bool b1 = label_equals(si + 1, sj, id);
    const bool b2 = label_equals(si + 1, sj + 1, id);
    const bool b3 = label_equals(si, sj + 1, id);
    const int mask = int(b0) | int(b1) << 1 | int(b2) << 2 | int(b3) << 3;
    if (mask == 0 || mask == 15) return;

    // Square edges mapped to canonical grid edges.
    const long kB = h_edge_key(si, sj, np_);
    const long kT = h_edge_key(si, sj + 1, np_);
    const long kL = v_edge_key(si, sj, np_);
    const long kR = v_edge_key(si + 1, sj, np_);
    const auto pB = h_crossing(si, sj);
    const auto pT = h_crossing(si, sj + 1);
    const auto pL = v_crossing(si, sj);
    const auto pR = v_crossing(si + 1, sj);

    auto add = [&](long from, const std::array<double, 2>& fp, long to,
                   const std::array<double, 2>& tp) {
      by_start[from] = Segment{from, to, fp, tp};
    };

    switch (mask) {
      case 1: add(kB, pB, kL, pL); break;
      case 2: add(kR, pR, kB, pB); break;
      case 4: add(kT, pT, kR, pR); break;
      case 8: add(kL, pL, kT, pT); break;
      case 3: add(kR, pR, kL, pL); break;
      case 6: add(kT, pT, kB, pB); break;
      case 12: add(kL, pL, kR, pR); break;
      case 9: add(kB, pB, kT, pT); break;
      case 14: add(kL, pL, kB, pB); break;
      case 13: add(kB, pB, kR, pR); break;
      case 11: add(kR, pR, kT, pT); break;
      case 7: add(kT, pT, kL, pL); break;
      case 5: {  // saddle: resolve by the centre value
        const double centre = 0.25 * (w_.values(si, sj) + w_.values(si + 1, sj) +
                                      w_.values(si + 1, sj + 1) + w_.values(si, sj + 1));
        if (centre < thr_) {
          add(kT, pT, kL, pL);
          add(kB, pB, kR, pR);
        } else {
          add(kB, pB, kL, pL);
          add(kT, pT, kR, pR);
        }
        break;
      }
      case 10: {
        const double centre = 0.25 * (w_.values(si, sj) + w_.values(si + 1, sj) +
                                      w_.values(si + 1, sj + 1) + w_.values(si, sj + 1));
        if (centre < thr_) {
          add(kL, pL, kB, pB);
          add(kR, pR, kT, pT);
        } else {
          add(kR, pR, kB, pB);
          add(kL, pL, kT, pT);
        }
        break;
      }
      default: break;
    }
  }

  bool label_equals(int i, int j, int id) {
    return label_[size_t(i) * size_t(np_) + size_t(j)] == id;
  }

  const ScalarField& w_;
  double thr_;
  int nx_, np_;
  std::vector<int> label_;
};

}  // namespace

std::vector<NegativeRegion> find_negative_regions(const ScalarField& w, double threshold) {
  if (threshold > 0.0)
    throw std::invalid_argument("find_negative_regions: threshold must be <= 0");
  return RegionExtractor(w, threshold).run();
}

double negativity_volume(const ScalarField& w) {
  const double cell_area = w.grid.dx() * w.grid.dp();
  return (w.values < 0.0).select(w.values, 0.0).sum() * cell_area;
}

double NegativityRate::relative_mismatch() const {
  const double scale = std::max(std::abs(total), std::abs(fd_check));
  return scale > 0.0 ? std::abs(total - fd_check) / scale : 0.0;
}

NegativityRate negativity_rate(const ScalarField& w, const SystemParams& params,
                               const NegativeRegion& region) {
  size_t n_segments = 0;
  for (const auto& loop : region.boundary) n_segments += loop.size();
  if (n_segments < 8)
    throw std::runtime_error("negativity_rate: region too small to resolve (" +
                             std::to_string(n_segments) + " boundary segments)");

  const ScalarField dwdx = partial_x(w);
  const ScalarField dwdp = partial_p(w);
  const ScalarField d2wdp2 = partial_pp(w);

  NegativityRate rate;
  for (const auto& loop : region.boundary) {
    for (size_t k = 0; k < loop.size(); ++k) {
      const auto& a = loop[k];
      const auto& b = loop[(k + 1) % loop.size()];
      const double dxs = b[0] - a[0];
      const double dps = b[1] - a[1];
      const double ds = std::hypot(dxs, dps);
      if (ds == 0.0) continue;
      const double mx = 0.5 * (a[0] + b[0]);
      const double mp = 0.5 * (a[1] + b[1]);
      // Interior is left of the traversal, so the outward normal is the
      // tangent rotated clockwise; the local gradient (pointing from W<0
      // toward W>0) arbitrates degenerate segments.
      double n_x = dps / ds;
      double n_p = -dxs / ds;
      const double gx = dwdx.interpolate(mx, mp);
      const double gp = dwdp.interpolate(mx, mp);
      if (n_x * gx + n_p * gp < 0.0) {
        n_x = -n_x;
        n_p = -n_p;
      }
      rate.quantum_term += 0.25 * params.lambda * ds * (n_p * (-mx)) * d2wdp2.interpolate(mx, mp);
      rate.diffusion_term +=
          0.5 * params.gamma * (params.nbar + 0.5) * ds * (n_x * gx + n_p * gp);
    }
  }
  rate.total = rate.quantum_term + rate.diffusion_term;
  return rate;
}

namespace {

const NegativeRegion* match_region(const std::vector<NegativeRegion>& candidates,
                                   const NegativeRegion& ref, double dx) {
  const NegativeRegion* best = nullptr;
  double best_dist = 3.0 * dx;
  for (const auto& cand : candidates) {
    const double dist = std::hypot(cand.centroid[0] - ref.centroid[0],
                                   cand.centroid[1] - ref.centroid[1]);
    if (dist < best_dist) {
      best_dist = dist;
      best = &cand;
    }
  }
  if (best) return best;

  // Fallback: maximal cell overlap.
  std::unordered_set<long> ref_cells;
  for (auto [i, j] : ref.cells) ref_cells.insert(long(i) << 20 | j);
  size_t best_overlap = 0;
  for (const auto& cand : candidates) {
    size_t overlap = 0;
    for (auto [i, j] : cand.cells)
      if (ref_cells.count(long(i) << 20 | j)) ++overlap;
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = &cand;
    }
  }
  return best;
}

}  // namespace

NegativityRate rate_consistency_check(const Trajectory& traj, const PhaseSpaceGrid& grid,
                                      const SystemParams& params, double t, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("rate_consistency_check: delta must be > 0");
  const double tol = delta / 10.0;
  const int i_prev = traj.index_at(t - delta, tol);
  const int i_mid = traj.index_at(t, tol);
  const int i_next = traj.index_at(t + delta, tol);

  const ScalarField w_prev = wigner_transform(traj.states[size_t(i_prev)], grid);
  const ScalarField w_mid = wigner_transform(traj.states[size_t(i_mid)], grid);
  const ScalarField w_next = wigner_transform(traj.states[size_t(i_next)], grid);

  const auto regions_mid = find_negative_regions(w_mid);
  const NegativeRegion* target = nullptr;
  for (const auto& r : regions_mid)
    if (std::abs(r.volume) >= 1e-8) {
      target = &r;
      break;  // sorted by |volume|, first is dominant
    }
  if (!target)
    throw std::runtime_error("rate_consistency_check: no resolvable negative region at t = " +
                             std::to_string(t));

  const auto regions_prev = find_negative_regions(w_prev);
  const auto regions_next = find_negative_regions(w_next);
  const NegativeRegion* prev = match_region(regions_prev, *target, grid.dx());
  const NegativeRegion* next = match_region(regions_next, *target, grid.dx());
  if (!prev || !next)
    throw std::runtime_error(
        "rate_consistency_check: region cannot be tracked across the window (appears or "
        "disappears)");

  NegativityRate rate = negativity_rate(w_mid, params, *target);
  rate.fd_check = (next->volume - prev->volume) / (2.0 * delta);
  return rate;
}

FirstNegativity first_negativity_time(const Trajectory& traj, const PhaseSpaceGrid& grid,
                                      double volume_threshold) {
  FirstNegativity out;
  for (size_t i = 0; i < traj.states.size(); ++i) {
    const ScalarField w = wigner_transform(traj.states[i], grid);
    if (negativity_volume(w) < volume_threshold) {
      out.found = true;
      out.t = traj.times[i];
      const auto regions = find_negative_regions(w);
      if (!regions.empty()) out.centroid = regions.front().centroid;
      return out;
    }
  }
  return out;
}

}  // namespace wflow
