#include "kspave/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <utility>

#include "kspave/error.hpp"

namespace kspave {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
  return splitmix64(splitmix64(seed) ^ (0xd1b54a32d192ed03ULL * (restart + 1)));
}

IndexSet mask_indices(std::uint32_t mask) {
  IndexSet out;
  while (mask) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Leximax comparison with a small relative dead band so floating noise
// cannot cause cycling.
bool leximax_better(const std::vector<double>& cand, const std::vector<double>& cur) {
  const auto a = sorted_desc(cand);
  const auto b = sorted_desc(cur);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double band = 1e-12 * std::max(1.0, std::abs(b[k]));
    if (a[k] < b[k] - band) return true;
    if (a[k] > b[k] + band) return false;
  }
  return false;
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

Partition to_partition(const std::vector<IndexSet>& blocks) { return canonicalize(blocks); }

bool outcome_less(const SearchOutcome& a, const SearchOutcome& b) {
  if (a.max_norm != b.max_norm) return a.max_norm < b.max_norm;
  return canonical_less(a.partition, b.partition);
}

struct RestartState {
  std::vector<IndexSet> blocks;
  std::vector<std::size_t> where;
  std::vector<double> norms;
};

void insert_sorted(IndexSet& block, std::size_t i) { block.insert(std::upper_bound(block.begin(), block.end(), i), i); }

void erase_value(IndexSet& block, std::size_t i) { block.erase(std::find(block.begin(), block.end(), i)); }

SearchOutcome run_restart(const BlockObjective& obj, std::size_t r, double bound, double tol, std::size_t cap,
                          std::uint64_t seed, bool greedy) {
  const std::size_t n = obj.size;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_block(0, r - 1);

  RestartState cur{std::vector<IndexSet>(r), std::vector<std::size_t>(n), std::vector<double>(r, 0.0)};
  std::size_t evals = 0;
  if (greedy) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best_b = 0;
      double best_v = kInf;
      for (std::size_t b = 0; b < r; ++b) {
        IndexSet cand = cur.blocks[b];
        insert_sorted(cand, i);
        const double v = obj.norm(cand);
        ++evals;
        if (v < best_v) {
          best_v = v;
          best_b = b;
        }
      }
      insert_sorted(cur.blocks[best_b], i);
      cur.where[i] = best_b;
      cur.norms[best_b] = best_v;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t b = pick_block(rng);
      cur.blocks[b].push_back(i);
      cur.where[i] = b;
    }
    for (std::size_t b = 0; b < r; ++b) cur.norms[b] = obj.norm(cur.blocks[b]);
  }

  RestartState best = cur;
  auto done = [&] { return max_of(best.norms) <= bound + tol; };

  while (!done() && evals < cap) {
    const auto worst = static_cast<std::size_t>(
        std::distance(cur.norms.begin(), std::max_element(cur.norms.begin(), cur.norms.end())));
    IndexSet in_worst = cur.blocks[worst];
    IndexSet others;
    for (std::size_t i = 0; i < n; ++i) {
      if (cur.where[i] != worst) others.push_back(i);
    }
    std::shuffle(in_worst.begin(), in_worst.end(), rng);
    std::shuffle(others.begin(), others.end(), rng);

    bool improved = false;
    // Single-index moves, indices of the worst block first.
    IndexSet order = in_worst;
    order.insert(order.end(), others.begin(), others.end());
    for (std::size_t i : order) {
      if (improved || evals >= cap) break;
      const std::size_t from = cur.where[i];
      const std::size_t offset = pick_block(rng);
      for (std::size_t t = 0; t < r && evals < cap; ++t) {
        const std::size_t to = (offset + t) % r;
        if (to == from) continue;
        IndexSet nf = cur.blocks[from];
        erase_value(nf, i);
        IndexSet nt = cur.blocks[to];
        insert_sorted(nt, i);
        std::vector<double> cand = cur.norms;
        cand[from] = obj.norm(nf);
        cand[to] = obj.norm(nt);
        ++evals;
        if (leximax_better(cand, cur.norms)) {
          cur.blocks[from] = std::move(nf);
          cur.blocks[to] = std::move(nt);
          cur.where[i] = to;
          cur.norms = std::move(cand);
          improved = true;
          break;
        }
      }
    }
    // Swaps between the worst block and the rest.
    for (std::size_t i : in_worst) {
      if (improved || evals >= cap) break;
      for (std::size_t j : others) {
        if (evals >= cap) break;
        const std::size_t bj = cur.where[j];
        IndexSet nw = cur.blocks[worst];
        erase_value(nw, i);
        insert_sorted(nw, j);
        IndexSet no = cur.blocks[bj];
        erase_value(no, j);
        insert_sorted(no, i);
        std::vector<double> cand = cur.norms;
        cand[worst] = obj.norm(nw);
        cand[bj] = obj.norm(no);
        ++evals;
        if (leximax_better(cand, cur.norms)) {
          cur.blocks[worst] = std::move(nw);
          cur.blocks[bj] = std::move(no);
          cur.where[i] = bj;
          cur.where[j] = worst;
          cur.norms = std::move(cand);
          improved = true;
          break;
        }
      }
    }

    if (improved) {
      if (leximax_better(cur.norms, best.norms)) best = cur;
      continue;
    }
    // Local optimum: kick from the best state by relocating two random
    // indices of its worst block.
    if (r < 2) break;
    cur = best;
    const auto bw = static_cast<std::size_t>(
        std::distance(cur.norms.begin(), std::max_element(cur.norms.begin(), cur.norms.end())));
    for (int kick = 0; kick < 2 && !cur.blocks[bw].empty(); ++kick) {
      std::uniform_int_distribution<std::size_t> pick_member(0, cur.blocks[bw].size() - 1);
      const std::size_t i = cur.blocks[bw][pick_member(rng)];
      std::size_t to = pick_block(rng);
      if (to == bw) to = (to + 1) % r;
      erase_value(cur.blocks[bw], i);
      insert_sorted(cur.blocks[to], i);
      cur.where[i] = to;
      cur.norms[to] = obj.norm(cur.blocks[to]);
      ++evals;
    }
    cur.norms[bw] = obj.norm(cur.blocks[bw]);
  }

  SearchOutcome out;
  out.partition = to_partition(best.blocks);
  out.block_norms = block_norms(obj, out.partition);
  out.max_norm = max_of(out.block_norms);
  out.success = out.max_norm <= bound + tol;
  return out;
}

}  // namespace

void SearchBudget::validate() const {
  if (max_partitions == 0 || restarts == 0 || parallelism == 0) {
    throw Error(ErrorCode::InvalidArgument, "search budget fields must be positive");
  }
}

std::size_t SearchBudget::moves_per_restart(std::size_t m, std::size_t r) const {
  return std::min(kMovesPerIndexBlock * std::max<std::size_t>(m, 1) * std::max<std::size_t>(r, 1), max_partitions);
}

BlockObjective submatrix_objective(const Matrix& m) {
  require_square(m, "paving subject");
  auto shared = std::make_shared<const Matrix>(m);
  return {static_cast<std::size_t>(m.rows()), [shared](std::span<const std::size_t> idx) {
            if (idx.empty()) return 0.0;
            return op_norm(principal_submatrix(*shared, idx));
          }};
}

BlockObjective outer_sum_objective(const Matrix& vectors) {
  auto shared = std::make_shared<const Matrix>(vectors);
  return {static_cast<std::size_t>(vectors.cols()), [shared](std::span<const std::size_t> idx) {
            if (idx.empty()) return 0.0;
            const Matrix& u = *shared;
            Matrix sub(u.rows(), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t k = 0; k < idx.size(); ++k) {
              sub.col(static_cast<Eigen::Index>(k)) = u.col(static_cast<Eigen::Index>(idx[k]));
            }
            // Nonzero spectra of U U* and U* U agree; use the smaller one.
            Matrix h = sub.rows() <= sub.cols() ? Matrix(sub * sub.adjoint()) : Matrix(sub.adjoint() * sub);
            h = (h + h.adjoint()) / 2.0;
            return op_norm(h);
          }};
}

std::vector<double> block_norms(const BlockObjective& obj, const Partition& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& block : p) out.push_back(obj.norm(block));
  return out;
}

Partition common_refinement(const Partition& a, const Partition& b) {
  std::map<std::size_t, std::size_t> block_in_b;
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t i : b[j]) block_in_b[i] = j;
  }
  std::map<std::pair<std::size_t, std::size_t>, IndexSet> cells;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t i : a[j]) {
      const auto it = block_in_b.find(i);
      if (it == block_in_b.end()) throw Error(ErrorCode::BadPartition, "partitions cover different indices");
      cells[{j, it->second}].push_back(i);
    }
  }
  Partition out;
  for (auto& [key, cell] : cells) out.push_back(std::move(cell));
  return canonicalize(std::move(out));
}

std::optional<Partition> exhaustive_min_blocks(const BlockObjective& obj, double bound, double tol,
                                               std::size_t max_r) {
  const std::size_t n = obj.size;
  if (n > kMaxExhaustiveSize) {
    throw Error(ErrorCode::TooLarge, "exhaustive search limited to n <= " + std::to_string(kMaxExhaustiveSize) +
                                         ", got " + std::to_string(n));
  }
  if (n == 0) return Partition{};
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  // feasible[mask]: every block norm is monotone under inclusion, so a mask
  // is feasible only if all its one-smaller subsets are.
  std::vector<char> feasible(std::size_t{full} + 1, 0);
  feasible[0] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    bool ok = true;
    for (std::uint32_t rest = mask; rest && ok; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      ok = feasible[mask ^ bit] != 0;
    }
    if (ok) ok = obj.norm(mask_indices(mask)) <= bound + tol;
    feasible[mask] = ok ? 1 : 0;
  }

  constexpr std::uint8_t kUnreachable = 0xFF;
  std::vector<std::uint8_t> fewest(std::size_t{full} + 1, kUnreachable);
  fewest[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    std::uint8_t best = kUnreachable;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t block = sub | low;
      if (feasible[block] && fewest[mask ^ block] != kUnreachable) {
        best = std::min<std::uint8_t>(best, static_cast<std::uint8_t>(fewest[mask ^ block] + 1));
      }
      if (sub == 0) break;
    }
    fewest[mask] = best;
  }

  if (fewest[full] == kUnreachable || fewest[full] > max_r) return std::nullopt;

  // Rebuild the lexicographically smallest partition with exactly k blocks:
  // choose each block as the lex-first feasible subset (containing the
  // smallest remaining index) whose complement still splits into the
  // remaining block count.
  Partition out;
  std::uint32_t remaining = full;
  std::size_t blocks_left = fewest[full];
  while (remaining) {
    const IndexSet rest = mask_indices(remaining);
    std::uint32_t chosen = 0;
    auto acceptable = [&](std::uint32_t block) {
      const std::uint32_t left = remaining ^ block;
      if (blocks_left == 1) return left == 0;
      return left != 0 && fewest[left] <= blocks_left - 1 &&
             static_cast<std::size_t>(std::popcount(left)) >= blocks_left - 1;
    };
    auto dfs = [&](auto&& self, std::uint32_t block, std::size_t pos) -> bool {
      if (acceptable(block)) {
        chosen = block;
        return true;
      }
      for (std::size_t q = pos + 1; q < rest.size(); ++q) {
        const std::uint32_t next = block | (std::uint32_t{1} << rest[q]);
        if (feasible[next] && self(self, next, q)) return true;
      }
      return false;
    };
    const std::uint32_t start = std::uint32_t{1} << rest.front();
    if (!feasible[start] || !dfs(dfs, start, 0)) {
      throw Error(ErrorCode::InvalidArgument, "internal: exhaustive reconstruction failed");
    }
    out.push_back(mask_indices(chosen));
    remaining ^= chosen;
    --blocks_left;
  }
  return out;
}

SearchOutcome exhaustive_min_max(const BlockObjective& obj, std::size_t r, std::optional<double> upper_hint) {
  const std::size_t n = obj.size;
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  double colorings = 1.0;
  for (std::size_t i = 0; i < n; ++i) colorings *= static_cast<double>(r);
  if (colorings > static_cast<double>(kMaxColorings)) {
    throw Error(ErrorCode::TooLarge, "r^m exceeds the coloring enumeration guard");
  }

  std::vector<IndexSet> blocks(r);
  std::vector<double> norms(r, 0.0);
  SearchOutcome best;
  best.max_norm = upper_hint.value_or(kInf);
  bool have_best = false;

  auto dfs = [&](auto&& self, std::size_t i, std::size_t used, double cur_max) -> void {
    if (i == n) {
      SearchOutcome cand;
      cand.partition = to_partition(blocks);
      cand.max_norm = cur_max;
      if (!have_best || outcome_less(cand, best)) {
        best = std::move(cand);
        have_best = true;
      }
      return;
    }
    const std::size_t limit = std::min(used + 1, r);
    for (std::size_t c = 0; c < limit; ++c) {
      blocks[c].push_back(i);
      const double v = obj.norm(blocks[c]);
      if (v <= best.max_norm) {
        const double saved = norms[c];
        norms[c] = v;
        self(self, i + 1, std::max(used, c + 1), std::max(cur_max, v));
        norms[c] = saved;
      }
      blocks[c].pop_back();
    }
  };
  dfs(dfs, 0, 0, 0.0);
  if (!have_best) throw Error(ErrorCode::InvalidArgument, "upper_hint is below the optimum");
  best.block_norms = block_norms(obj, best.partition);
  best.max_norm = max_of(best.block_norms);
  best.success = true;
  return best;
}

SearchOutcome local_search(const BlockObjective& obj, std::size_t r, double bound, double tol,
                           const SearchBudget& budget) {
  budget.validate();
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const std::size_t n = obj.size;
  if (n == 0) return SearchOutcome{{}, {}, 0.0, true};
  // Blocks beyond n would stay empty.
  r = std::min(r, n);

  const std::size_t cap = budget.moves_per_restart(n, r);
  std::vector<SearchOutcome> results(budget.restarts);
  std::size_t completed = 0;
  for (std::size_t wave = 0; wave < budget.restarts; wave += SearchBudget::kWaveSize) {
    const std::size_t end = std::min(budget.restarts, wave + SearchBudget::kWaveSize);
    std::atomic<std::size_t> next{wave};
    auto worker = [&] {
      for (std::size_t k = next++; k < end; k = next++) {
        results[k] = run_restart(obj, r, bound, tol, cap, restart_seed(budget.seed, k), k == 0);
      }
    };
    const std::size_t threads = std::min(budget.parallelism, end - wave);
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    completed = end;
    const bool any = std::any_of(results.begin() + static_cast<std::ptrdiff_t>(wave),
                                 results.begin() + static_cast<std::ptrdiff_t>(end),
                                 [](const SearchOutcome& o) { return o.success; });
    if (any) break;
  }
  auto best = std::min_element(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(completed), outcome_less);
  return *best;
}

SearchOutcome min_blocks_search(const BlockObjective& obj, double bound, double tol, const SearchBudget& budget,
                                std::size_t max_r) {
  const std::size_t n = obj.size;
  if (max_r == 0) throw Error(ErrorCode::InvalidArgument, "max_r must be positive");
  if (n <= kMaxExhaustiveSize) {
    if (auto p = exhaustive_min_blocks(obj, bound, tol, max_r)) {
      SearchOutcome out;
      out.partition = std::move(*p);
      out.block_norms = block_norms(obj, out.partition);
      out.max_norm = max_of(out.block_norms);
      out.success = true;
      return out;
    }
    return local_search(obj, max_r, bound, tol, budget);
  }
  SearchOutcome last;
  for (std::size_t r = 1; r <= max_r; ++r) {
    last = local_search(obj, r, bound, tol, budget);
    if (last.success) return last;
  }
  return last;
}

}  // namespace kspave
