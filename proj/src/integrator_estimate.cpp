// Copyright 2026 The Vassiliev Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "vassiliev/canon.hpp"
#include "vassiliev/integrator.hpp"
#include "vassiliev/kernels.hpp"

namespace vassiliev {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double wrap01(double x) { return x - std::floor(x); }

struct EdgeSampler {
  int core_tail = 0, core_head = 0;
  std::vector<SupportBox> boxes;
  std::vector<double> cdf;
  double area = 0;

  double density(double s, double t) const {
    int hits = 0;
    for (const auto& b : boxes) hits += b.contains(s, t);
    return hits / area;
  }
};

bool cyclically_ordered(const std::vector<int>& word, const std::vector<double>& param) {
  if (word.size() < 2) return true;
  int descents = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    descents += param[word[(i + 1) % word.size()]] < param[word[i]];
  return descents == 1;
}

struct ShardResult {
  std::map<std::string, double> sums;
  std::map<std::string, SurfaceDiagram> diagrams;
};

constexpr std::size_t kChunk = 256;

}  // namespace

void ShardTable::merge(const ShardTable& other) {
  if (shards.empty()) shards.resize(other.shards.size());
  if (shards.size() != other.shards.size()) throw std::invalid_argument("ShardTable::merge: shard counts differ");
  for (const auto& [k, d] : other.diagrams) diagrams.emplace(k, d);
  for (std::size_t s = 0; s < shards.size(); ++s)
    for (const auto& [k, v] : other.shards[s]) shards[s][k] += v;
}

std::map<std::string, EstimateTerm> summarize(const ShardTable& table) {
  std::map<std::string, EstimateTerm> out;
  const double n = static_cast<double>(table.shards.size());
  for (const auto& [key, diagram] : table.diagrams) {
    double sum = 0;
    for (const auto& shard : table.shards) {
      auto it = shard.find(key);
      if (it != shard.end()) sum += it->second;
    }
    const double mean = sum / n;
    double ss = 0;
    for (const auto& shard : table.shards) {
      auto it = shard.find(key);
      const double v = it != shard.end() ? it->second : 0.0;
      ss += (v - mean) * (v - mean);
    }
    out[key] = {diagram, mean, n > 1 ? std::sqrt(ss / (n * (n - 1))) : 0.0};
  }
  return out;
}

nlohmann::json EstimatorOutput::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& [key, term] : terms) t.push_back({{"diagram", key}, {"value", term.value + 0.0}, {"std_error", term.std_error}});
  return {{"samples", samples}, {"seed", seed}, {"converged", converged}, {"terms", t}};
}

EstimatorOutput estimate(const Link& link, const AbstractDiagram& input, const PropagatorParams& params,
                         const EstimateOptions& opt) {
  params.validate();
  if (input.core_count() != link.size()) throw LinkError("estimate: core count differs from link");
  if (opt.shards < 2) throw std::invalid_argument("estimate: at least two shards are required");
  if (opt.budget < opt.shards) throw std::invalid_argument("estimate: budget smaller than shard count");

  EstimatorOutput out;
  out.seed = opt.seed;
  out.table.shards.assign(opt.shards, {});

  if (input.edge_count() == 0) {
    const auto canon = canonicalize(realize(link, input, {}));
    out.table.diagrams[canon.key] = canon.form;
    for (auto& shard : out.table.shards) shard[canon.key] = canon.sign;
    out.terms = summarize(out.table);
    return out;
  }
  out.samples = opt.budget;
  // Propagators have no height component, so the product form vanishes
  // identically once an internal vertex contributes its vertical direction.
  if (!input.is_chord_diagram()) return out;
  // Value times class is invariant under relabeling and edge flips, so the
  // canonical representative fixes the sample stream.
  const AbstractDiagram ka = canonicalize(input).form;

  const double aut = static_cast<double>(automorphism_orders(ka).all);
  std::vector<EdgeSampler> samplers;
  for (const auto& e : ka.edges) {
    EdgeSampler s;
    s.core_tail = ka.core_position(e.tail).first;
    s.core_head = ka.core_position(e.head).first;
    for (const auto& other : samplers)
      if (other.core_tail == s.core_tail && other.core_head == s.core_head) s.boxes = other.boxes;
    if (s.boxes.empty()) s.boxes = support_boxes(link, s.core_tail, s.core_head, params);
    for (const auto& b : s.boxes) {
      s.area += b.area();
      s.cdf.push_back(s.area);
    }
    if (s.boxes.empty()) return out;
    samplers.push_back(std::move(s));
  }

  const KernelParams kp = KernelParams::from(params);
  const int e = ka.edge_count();
  const int nv = ka.vertex_count();
  const std::uint64_t diagram_hash = fnv1a(to_text(ka));

  auto run_shard = [&](int shard) {
    ShardResult res;
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(static_cast<std::uint64_t>(shard) ^ diagram_hash)));
    const std::int64_t count = opt.budget / opt.shards + (shard < opt.budget % opt.shards ? 1 : 0);
    std::map<std::vector<int>, std::pair<std::string, int>> classes;

    std::vector<std::vector<double>> cols(10, std::vector<double>(kChunk * e));
    std::vector<double> weights(kChunk * e);
    std::vector<std::vector<double>> params_of(kChunk, std::vector<double>(nv));
    std::vector<std::vector<int>> cell_of(kChunk, std::vector<int>(4 * e));
    std::vector<double> inv_density(kChunk);
    std::vector<std::size_t> live;

    for (std::int64_t done = 0; done < count;) {
      const std::size_t chunk = static_cast<std::size_t>(std::min<std::int64_t>(kChunk, count - done));
      done += chunk;
      live.clear();
      for (std::size_t i = 0; i < chunk; ++i) {
        double dens = 1;
        for (int k = 0; k < e; ++k) {
          const auto& sm = samplers[k];
          const double pick = uniform01(rng) * sm.area;
          const std::size_t b = std::min<std::size_t>(
              std::upper_bound(sm.cdf.begin(), sm.cdf.end(), pick) - sm.cdf.begin(), sm.boxes.size() - 1);
          const auto& box = sm.boxes[b];
          const double rs = box.s0 + uniform01(rng) * box.ls, rt = box.t0 + uniform01(rng) * box.lt;
          const double s = wrap01(rs), t = wrap01(rt);
          params_of[i][ka.edges[k].tail] = s;
          params_of[i][ka.edges[k].head] = t;
          cell_of[i][2 * k] = static_cast<int>(b);
          cell_of[i][2 * k + 1] = (rs >= 1) + 2 * (rt >= 1);
          dens *= sm.density(s, t);
        }
        bool ok = true;
        for (const auto& word : ka.cores) ok = ok && cyclically_ordered(word, params_of[i]);
        if (!ok) continue;
        inv_density[i] = 1 / dens;
        const std::size_t slot = live.size();
        live.push_back(i);
        for (int k = 0; k < e; ++k) {
          const auto a = eval(link, samplers[k].core_tail, params_of[i][ka.edges[k].tail]);
          const auto b = eval(link, samplers[k].core_head, params_of[i][ka.edges[k].head]);
          const std::size_t j = slot * e + k;
          cols[0][j] = a.point.x, cols[1][j] = a.point.y, cols[2][j] = a.point.h;
          cols[3][j] = a.tangent[0], cols[4][j] = a.tangent[1];
          cols[5][j] = b.point.x, cols[6][j] = b.point.y, cols[7][j] = b.point.h;
          cols[8][j] = b.tangent[0], cols[9][j] = b.tangent[1];
          const Vec2 g = displacement(a.point.base(), b.point.base());
          cell_of[i][2 * e + 2 * k] = static_cast<int>(std::lround(a.lift[0] + g[0] - b.lift[0]));
          cell_of[i][2 * e + 2 * k + 1] = static_cast<int>(std::lround(a.lift[1] + g[1] - b.lift[1]));
        }
      }
      if (live.empty()) continue;
      const ChordBatch batch{cols[0].data(), cols[1].data(), cols[2].data(), cols[3].data(), cols[4].data(),
                             cols[5].data(), cols[6].data(), cols[7].data(), cols[8].data(), cols[9].data(),
                             live.size() * e};
      chord_weight_batch(batch, kp, weights.data());
      for (std::size_t slot = 0; slot < live.size(); ++slot) {
        const std::size_t i = live[slot];
        double w = inv_density[i] / aut;
        for (int k = 0; k < e; ++k) w *= weights[slot * e + k];
        if (w == 0) continue;
        auto it = classes.find(cell_of[i]);
        if (it == classes.end()) {
          const auto canon = canonicalize(realize(link, ka, params_of[i]));
          res.diagrams.emplace(canon.key, canon.form);
          it = classes.emplace(cell_of[i], std::make_pair(canon.key, canon.sign)).first;
        }
        if (it->second.second != 0) res.sums[it->second.first] += it->second.second * w;
      }
    }
    for (auto& [k, v] : res.sums) v /= static_cast<double>(count);
    return res;
  };

  std::vector<ShardResult> results(opt.shards);
  const int workers = std::max(1, std::min(opt.workers, opt.shards));
  if (workers == 1) {
    for (int s = 0; s < opt.shards; ++s) results[s] = run_shard(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int s = next++; s < opt.shards; s = next++) results[s] = run_shard(s);
      });
    for (auto& th : pool) th.join();
  }
  for (int s = 0; s < opt.shards; ++s) {
    for (auto& [k, d] : results[s].diagrams) out.table.diagrams.emplace(k, std::move(d));
    out.table.shards[s] = std::move(results[s].sums);
  }
  out.terms = summarize(out.table);
  if (opt.target_error > 0)
    for (const auto& [k, t] : out.terms) out.converged = out.converged && t.std_error <= opt.target_error;
  return out;
}

}  // namespace vassiliev
