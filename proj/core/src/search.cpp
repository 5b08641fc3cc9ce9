#include "supreg/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include "supreg/error.hpp"
#include "supreg/minor_engine.hpp"
#include "supreg/symbolic.hpp"

namespace supreg {

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::First: return "first";
    case SearchMode::Enumerate: return "enumerate";
    case SearchMode::Count: return "count";
  }
  return "?";
}

SearchMode parse_search_mode(const std::string& text) {
  if (text == "first") return SearchMode::First;
  if (text == "enumerate") return SearchMode::Enumerate;
  if (text == "count") return SearchMode::Count;
  raise(ErrorCode::InvalidArgument, "unknown search mode '" + text + "'");
}

DepthStats& DepthStats::operator+=(const DepthStats& o) {
  nodes += o.nodes;
  forbidden_total += o.forbidden_total;
  pruned += o.pruned;
  dead += o.dead;
  return *this;
}

void SearchStats::merge(const SearchStats& o) {
  if (depths.size() < o.depths.size()) {
    const auto old = depths.size();
    depths.resize(o.depths.size());
    for (auto i = old; i < depths.size(); ++i) depths[i].depth = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < o.depths.size(); ++i) depths[i] += o.depths[i];
  nodes += o.nodes;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SUPREG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::uint64_t kMaxSearchModulus = std::uint64_t{1} << 22;

void check_search_field(const PrimeField& field) {
  if (field.modulus() >= kMaxSearchModulus) {
    raise(ErrorCode::InvalidArgument, "searches are limited to p < 2^22");
  }
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform integer in [0, n) by rejection, independent of the standard
/// library's distribution implementations.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t excess = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = gen();
    if (excess == 0 || x <= std::numeric_limits<std::uint64_t>::max() - excess) return x % n;
  }
}

std::mt19937_64 make_generator(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xD1B54A32D192ED03ULL);
  return std::mt19937_64(splitmix64(state));
}

struct Shared {
  std::atomic<bool> budget_hit{false};
  std::atomic<std::uint64_t> nodes{0};
  std::optional<std::uint64_t> budget;
};

/// Depth-first walker over the prefix tree with the minor engine.
class Walker {
 public:
  Walker(const MinorPlan& plan, const FastField& ff, int leaf_depth, Shared* shared)
      : ev(plan, ff),
        p_(ff.p()),
        ff_(&ff),
        leaf_depth_(leaf_depth),
        shared_(shared),
        c_(leaf_depth + 1),
        d_(leaf_depth + 1),
        stamp_(leaf_depth + 1),
        epoch_(leaf_depth + 1, 0) {
    for (int m = 1; m <= leaf_depth; ++m) {
      const auto n = plan.linear(m).size();
      c_[m].resize(n);
      d_[m].resize(n);
      stamp_[m].assign(p_, 0);
    }
    reset_stats();
  }

  MinorEvaluator ev;
  SearchStats stats;

  void reset_stats() {
    stats = SearchStats{};
    stats.depths.resize(leaf_depth_ + 1);
    for (int i = 0; i <= leaf_depth_; ++i) stats.depths[i].depth = i;
    halted_ = aborted_ = false;
  }

  /// Forbidden set for position m given rows < m. Returns |S_m|, or -1 if
  /// some minor vanishes for every a_m.
  int forbid(int m) {
    ev.eval_linear(m, c_[m], d_[m]);
    std::uint32_t e = ++epoch_[m];
    if (e == 0) {
      std::fill(stamp_[m].begin(), stamp_[m].end(), 0);
      e = epoch_[m] = 1;
    }
    std::uint32_t* st = stamp_[m].data();
    const auto& c = c_[m];
    const auto& d = d_[m];
    int distinct = 0;
    bool dead = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) {
        dead = dead || d[i] == 0;
        continue;
      }
      const std::uint64_t r = d[i] == 0 ? 0 : (p_ - d[i]) * ff_->inv(c[i]) % p_;
      if (st[r] != e) {
        st[r] = e;
        ++distinct;
      }
    }
    auto& ds = stats.depths[m];
    ++ds.nodes;
    if (dead) {
      ++ds.dead;
      return -1;
    }
    ds.forbidden_total += static_cast<std::uint64_t>(distinct);
    ds.pruned += static_cast<std::uint64_t>(distinct);
    return distinct;
  }

  bool allowed(int m, std::uint64_t t) const { return stamp_[m][t] != epoch_[m]; }

  std::uint64_t first_allowed(int m) const {
    for (std::uint64_t t = 0; t < p_; ++t) {
      if (allowed(m, t)) return t;
    }
    return p_;
  }

  std::uint64_t nth_allowed(int m, std::uint64_t n) const {
    for (std::uint64_t t = 0; t < p_; ++t) {
      if (allowed(m, t) && n-- == 0) return t;
    }
    return p_;
  }

  void choose(int m, std::uint64_t t) {
    ev.set_entry(m, t);
    ev.commit_linear(m, c_[m], d_[m]);
  }

  /// Visits the subtree below a node whose rows < m are evaluated; calls
  /// leaf(*this) at depth leaf_depth.
  template <class Leaf>
  void dfs(int m, Leaf& leaf) {
    if (halted_) return;
    tick();
    if (m == leaf_depth_) {
      leaf(*this);
      return;
    }
    if (forbid(m) < 0) return;
    if (!ev.eval_static(m)) {
      ++stats.depths[m].dead;
      return;
    }
    const std::uint32_t e = epoch_[m];
    const std::uint32_t* st = stamp_[m].data();
    for (std::uint64_t t = 0; t < p_; ++t) {
      if (st[t] == e) continue;
      choose(m, t);
      dfs(m + 1, leaf);
      if (halted_) return;
    }
  }

  std::vector<std::uint64_t> column(int length) const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(length));
    for (int k = 1; k <= length; ++k) out[k - 1] = ev.entry(k);
    return out;
  }

  /// Stop the walk; `abort` marks the current unit as not finished.
  void halt(bool abort) {
    halted_ = true;
    aborted_ = aborted_ || abort;
  }
  bool aborted() const { return aborted_; }

  void set_abort_check(std::function<bool()> check) { abort_check_ = std::move(check); }

  void flush() {
    if (shared_ != nullptr && pending_ != 0) shared_->nodes += pending_;
    pending_ = 0;
  }

 private:
  void tick() {
    ++stats.nodes;
    if (++pending_ < 4096) return;
    flush();
    if (shared_ != nullptr) {
      if (shared_->budget && shared_->nodes.load() > *shared_->budget) shared_->budget_hit = true;
      if (shared_->budget_hit.load()) halt(true);
    }
    if (abort_check_ && abort_check_()) halt(true);
  }

  std::uint64_t p_;
  const FastField* ff_;
  int leaf_depth_;
  Shared* shared_;
  std::vector<std::vector<std::uint64_t>> c_, d_;
  std::vector<std::vector<std::uint32_t>> stamp_;
  std::vector<std::uint32_t> epoch_;
  std::uint64_t pending_ = 0;
  bool halted_ = false;
  bool aborted_ = false;
  std::function<bool()> abort_check_;
};

/// Runs fn(worker, index) for index in [0, n) on `threads` workers.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&](int w) {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(w, i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  if (workers <= 1) {
    loop(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

/// Entries a_3 .. a_{2 + split} are fixed per work unit.
int split_length(int gamma) { return std::clamp(gamma - 3, 0, 2); }

struct Partition {
  std::vector<UnitRecord> records;  // finished units, by index
  std::size_t units_total = 0;
  SearchStats stats;  // includes the unit enumeration pass
  bool complete = true;
  int threads = 1;
};

/// Enumerates the work units and runs body(walker, record) for each unit not
/// already in options.completed.
template <class Body>
Partition run_partitioned(int gamma, const PrimeField& field, const SearchOptions& options, Body&& body,
                          const std::function<bool(std::size_t)>& skip = {},
                          const std::function<void(const UnitRecord&)>& finished = {}) {
  const std::uint64_t p = field.modulus();
  const MinorPlan plan(gamma);
  const FastField ff(p);
  const int unit_depth = 3 + split_length(gamma);

  Partition out;
  out.threads = resolve_threads(options.threads);

  std::vector<std::vector<std::uint64_t>> units;
  {
    Walker gen(plan, ff, unit_depth, nullptr);
    gen.ev.load_prefix(std::vector<std::uint64_t>{1, 1});
    auto collect = [&](Walker& w) { units.push_back(w.column(unit_depth - 1)); };
    gen.dfs(3, collect);
    out.stats = gen.stats;
    out.stats.nodes = 0;  // the unit roots are counted again by the units
    out.stats.depths.resize(static_cast<std::size_t>(gamma) + 1);
    for (int i = 0; i <= gamma; ++i) out.stats.depths[i].depth = i;
    out.stats.depths[unit_depth] = DepthStats{unit_depth};
  }
  out.units_total = units.size();

  Shared shared;
  shared.budget = options.budget;
  std::vector<std::optional<UnitRecord>> slots(units.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (auto it = options.completed.find(i); it != options.completed.end()) {
      if (it->second.prefix != units[i]) {
        raise(ErrorCode::DataCorrupt, "checkpoint unit " + std::to_string(i) + " does not match this search");
      }
      slots[i] = it->second;
      if (finished) finished(it->second);
    } else {
      todo.push_back(i);
    }
  }

  std::vector<std::unique_ptr<Walker>> walkers(static_cast<std::size_t>(out.threads));
  std::mutex mutex;
  parallel_for(todo.size(), out.threads, [&](int w, std::size_t k) {
    const std::size_t index = todo[k];
    if (shared.budget && shared.nodes.load() >= *shared.budget) shared.budget_hit = true;
    if (shared.budget_hit.load() || (skip && skip(index))) return;
    auto& walker = walkers[static_cast<std::size_t>(w)];
    if (!walker) walker = std::make_unique<Walker>(plan, ff, gamma, &shared);
    walker->reset_stats();
    walker->set_abort_check(skip ? std::function<bool()>([&skip, index] { return skip(index); })
                                 : std::function<bool()>{});
    UnitRecord rec;
    rec.index = index;
    rec.prefix = units[index];
    if (!walker->ev.load_prefix(rec.prefix)) raise(ErrorCode::DataCorrupt, "unit prefix is not superregular");
    body(*walker, rec, unit_depth);
    walker->flush();
    if (walker->aborted()) return;
    rec.stats = walker->stats;
    rec.nodes = walker->stats.nodes;
    std::lock_guard lock(mutex);
    if (finished) finished(rec);
    if (options.on_unit) options.on_unit(rec);
    slots[index] = std::move(rec);
  });

  for (auto& s : slots) {
    if (!s) {
      if (!skip || !skip(&s - slots.data())) out.complete = false;
      continue;
    }
    out.stats.merge(s->stats);
    out.records.push_back(std::move(*s));
  }
  return out;
}

ToeplitzLT to_matrix(const PrimeField& field, const std::vector<std::uint64_t>& column) {
  std::vector<FieldElement> entries;
  entries.reserve(column.size());
  for (auto v : column) entries.push_back(field.from_u64(v));
  return ToeplitzLT(field, std::move(entries));
}

ToeplitzLT verified(const PrimeField& field, const std::vector<std::uint64_t>& column) {
  auto m = to_matrix(field, column);
  const auto report = is_superregular(m);
  if (!report.verdict) {
    raise(ErrorCode::DataCorrupt, "search produced a matrix that fails the full check at " +
                                      report.first_failure->to_string());
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

GreedyResult greedy_extend(const PrimeField& field, std::span<const FieldElement> prefix, int gamma_target,
                           GreedyPolicy policy, std::uint64_t seed) {
  if (gamma_target < 1 || gamma_target > kMaxOrder) raise(ErrorCode::InvalidArgument, "order out of range");
  if (static_cast<int>(prefix.size()) > gamma_target) raise(ErrorCode::InvalidArgument, "prefix longer than target");
  for (const auto& x : prefix) field.require_member(x);
  if (!prefix.empty()) {
    const ToeplitzLT head(field, {prefix.begin(), prefix.end()});
    if (!is_superregular_incremental(head).verdict) {
      raise(ErrorCode::InvalidArgument, "prefix is not superregular");
    }
  }

  auto gen = make_generator(seed, 0);
  GreedyResult out;
  out.entries.assign(prefix.begin(), prefix.end());
  for (int k = static_cast<int>(prefix.size()) + 1; k <= gamma_target; ++k) {
    auto fs = forbidden_set(field, out.entries, k);
    if (fs.dead || fs.values.size() == field.modulus()) {
      out.dead_end = std::move(fs);
      return out;
    }
    const auto candidates = extension_candidates(fs);
    const std::size_t pick = policy == GreedyPolicy::Smallest ? 0 : bounded(gen, candidates.size());
    out.entries.push_back(candidates[pick]);
  }
  out.success = true;
  out.matrix = ToeplitzLT(field, out.entries);
  return out;
}

ToeplitzLT greedy_extend_or_throw(const PrimeField& field, std::span<const FieldElement> prefix, int gamma_target,
                                  GreedyPolicy policy, std::uint64_t seed) {
  auto r = greedy_extend(field, prefix, gamma_target, policy, seed);
  if (!r.success) {
    std::string msg = "no admissible a_" + std::to_string(r.dead_end->gamma) + "; forbidden {";
    for (std::size_t i = 0; i < r.dead_end->values.size(); ++i) {
      if (i) msg += ",";
      msg += std::to_string(r.dead_end->values[i].value());
    }
    raise(ErrorCode::DeadEnd, msg + "}");
  }
  return *r.matrix;
}

// ---------------------------------------------------------------------------

ExhaustiveResult exhaustive(int gamma, const PrimeField& field, SearchMode mode, const SearchOptions& options) {
  if (gamma < 3 || gamma > kMaxOrder) raise(ErrorCode::InvalidArgument, "exhaustive search needs 3 <= gamma <= 30");
  check_search_field(field);
  const auto t0 = Clock::now();
  const std::uint64_t p = field.modulus();

  std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};
  std::function<bool(std::size_t)> skip;
  std::function<void(const UnitRecord&)> finished;
  if (mode == SearchMode::First) {
    skip = [&first_found](std::size_t i) { return i > first_found.load(); };
    finished = [&first_found](const UnitRecord& r) {
      if (r.count == 0) return;
      std::size_t cur = first_found.load();
      while (r.index < cur && !first_found.compare_exchange_weak(cur, r.index)) {
      }
    };
  }

  auto body = [&](Walker& w, UnitRecord& rec, int start) {
    auto leaf = [&](Walker& lw) {
      const int s = lw.forbid(gamma);
      if (s < 0) return;
      if (!lw.ev.eval_static(gamma)) {
        ++lw.stats.depths[gamma].dead;
        return;
      }
      if (mode == SearchMode::Count) {
        rec.count += p - static_cast<std::uint64_t>(s);
        return;
      }
      auto col = lw.column(gamma);
      for (std::uint64_t t = 0; t < p; ++t) {
        if (!lw.allowed(gamma, t)) continue;
        col.back() = t;
        rec.found.push_back(col);
        ++rec.count;
        if (mode == SearchMode::First) {
          lw.halt(false);
          return;
        }
      }
    };
    w.dfs(start, leaf);
  };

  auto part = run_partitioned(gamma, field, options, body, skip, finished);

  ExhaustiveResult out;
  out.gamma = gamma;
  out.p = p;
  out.mode = mode;
  out.units_total = part.units_total;
  out.units_done = part.records.size();
  out.complete = part.complete;
  for (const auto& rec : part.records) {
    if (mode == SearchMode::First) {
      if (rec.count == 0) continue;
      out.count = 1;
      out.matrices.push_back(verified(field, rec.found.front()));
      break;
    }
    out.count += rec.count;
    for (const auto& col : rec.found) out.matrices.push_back(verified(field, col));
  }
  out.stats = std::move(part.stats);
  out.stats.threads = part.threads;
  out.stats.elapsed_seconds = seconds_since(t0);
  return out;
}

MinFieldResult min_field(int gamma, std::uint64_t p_max, int threads) {
  if (gamma < 3) raise(ErrorCode::InvalidArgument, "min_field needs gamma >= 3");
  const auto t0 = Clock::now();
  MinFieldResult out;
  out.gamma = gamma;
  out.p_max = p_max;
  SearchOptions opts;
  opts.threads = threads;
  for (std::uint64_t p = 3; p <= p_max; p = next_prime(p)) {
    out.primes_tried.push_back(p);
    const PrimeField field(p);
    auto r = exhaustive(gamma, field, SearchMode::First, opts);
    if (!r.matrices.empty()) {
      out.p = p;
      out.witness = r.matrices.front();
      break;
    }
  }
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

// ---------------------------------------------------------------------------

MinForbiddenResult min_forbidden(int gamma, const PrimeField& field, const SearchOptions& options) {
  if (gamma < 4 || gamma > kMaxOrder) raise(ErrorCode::InvalidArgument, "min_forbidden needs 4 <= gamma <= 30");
  check_search_field(field);
  const auto t0 = Clock::now();

  auto body = [&](Walker& w, UnitRecord& rec, int start) {
    auto leaf = [&](Walker& lw) {
      const int s = lw.forbid(gamma);
      if (s < 0) return;
      if (!rec.minimum || s < *rec.minimum) {
        rec.minimum = s;
        rec.found.clear();
        rec.argmin_count = 0;
      }
      if (s == *rec.minimum) {
        ++rec.argmin_count;
        if (rec.found.size() < kArgminLimit) rec.found.push_back(lw.column(gamma - 1));
      }
    };
    w.dfs(start, leaf);
  };

  auto part = run_partitioned(gamma, field, options, body);

  MinForbiddenResult out;
  out.gamma = gamma;
  out.p = field.modulus();
  out.units_total = part.units_total;
  out.units_done = part.records.size();
  out.complete = part.complete;
  for (const auto& rec : part.records) {
    if (rec.minimum && (!out.minimum || *rec.minimum < *out.minimum)) out.minimum = rec.minimum;
  }
  for (const auto& rec : part.records) {
    if (!rec.minimum || rec.minimum != out.minimum) continue;
    out.argmin_count += rec.argmin_count;
    for (const auto& col : rec.found) {
      if (out.argmin.size() >= kArgminLimit) break;
      out.argmin.push_back(col);
    }
  }
  out.stats = std::move(part.stats);
  out.stats.threads = part.threads;
  out.stats.elapsed_seconds = seconds_since(t0);
  return out;
}

ConjectureReport conjecture_scan(int gamma, const PrimeField& field, const SearchOptions& options) {
  ConjectureReport out;
  out.scan = min_forbidden(gamma, field, options);
  out.n_gamma = n_gamma_closed_form(gamma);
  out.bound = out.n_gamma / 2 + 2;
  if (out.scan.minimum) out.satisfied = static_cast<std::uint64_t>(*out.scan.minimum) <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct HeadOutcome {
  bool dead = false;
  std::uint64_t leaves = 0;
  std::vector<std::uint64_t> hit_ordinals;  // leaf ordinals (0-based) of hits
  std::vector<std::vector<std::uint64_t>> hit_columns;
  std::vector<std::pair<std::uint64_t, int>> min_changes;  // (ordinal, new running minimum)
  SearchStats stats;
};

}  // namespace

RandomResult random_prefix(int gamma, const PrimeField& field, const RandomOptions& options) {
  if (gamma < 4 || gamma > kMaxOrder) raise(ErrorCode::InvalidArgument, "random search needs 4 <= gamma <= 30");
  if (options.tail < 0 || options.tail > gamma - 3) {
    raise(ErrorCode::InvalidArgument, "tail must lie in [0, gamma - 3]");
  }
  if (options.trials == 0) raise(ErrorCode::InvalidArgument, "trials must be positive");
  check_search_field(field);
  const auto t0 = Clock::now();
  const std::uint64_t p = field.modulus();
  const int head_end = gamma - 1 - options.tail;  // last randomly drawn position
  const std::uint64_t target = options.trials;
  const std::uint64_t max_heads = std::max<std::uint64_t>(target, 1000) * 64;
  const int threads = resolve_threads(options.threads);

  const MinorPlan plan(gamma);
  const FastField ff(p);

  auto run_head = [&](Walker& w, std::uint64_t index) {
    HeadOutcome out;
    w.reset_stats();
    w.ev.load_prefix(std::vector<std::uint64_t>{1, 1});
    auto gen = make_generator(options.seed, index);
    for (int m = 3; m <= head_end; ++m) {
      const int s = w.forbid(m);
      if (s < 0 || static_cast<std::uint64_t>(s) == p || !w.ev.eval_static(m)) {
        out.dead = true;
        out.stats = w.stats;
        return out;
      }
      const std::uint64_t n = p - static_cast<std::uint64_t>(s);
      w.choose(m, w.nth_allowed(m, bounded(gen, n)));
    }
    std::optional<int> running;
    auto leaf = [&](Walker& lw) {
      const int s = lw.forbid(gamma);
      const std::uint64_t ordinal = out.leaves++;
      if (s >= 0) {
        if (!running || s < *running) {
          running = s;
          out.min_changes.emplace_back(ordinal, s);
        }
        if (static_cast<std::uint64_t>(s) < p) {
          out.hit_ordinals.push_back(ordinal);
          if (out.hit_columns.size() < options.max_hits_kept) {
            auto col = lw.column(gamma);
            col.back() = lw.first_allowed(gamma);
            out.hit_columns.push_back(std::move(col));
          }
        }
      }
      if (out.leaves >= target) lw.halt(false);
    };
    w.dfs(head_end + 1, leaf);
    out.stats = w.stats;
    return out;
  };

  // Heads are handed out in index order; a head is only needed while the
  // finished heads before it hold fewer than `target` leaves.
  std::mutex mutex;
  std::vector<std::optional<HeadOutcome>> results;
  std::uint64_t next_head = 0;
  std::size_t contiguous = 0;
  std::uint64_t contiguous_leaves = 0;
  auto worker = [&] {
    Walker w(plan, ff, gamma, nullptr);
    for (;;) {
      std::uint64_t index;
      {
        std::lock_guard lock(mutex);
        if (contiguous_leaves >= target || next_head >= max_heads) return;
        index = next_head++;
        if (results.size() <= index) results.resize(index + 1);
      }
      auto outcome = run_head(w, index);
      std::lock_guard lock(mutex);
      results[index] = std::move(outcome);
      while (contiguous < results.size() && results[contiguous] && contiguous_leaves < target) {
        contiguous_leaves += results[contiguous]->leaves;
        ++contiguous;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RandomResult out;
  out.gamma = gamma;
  out.p = p;
  out.seed = options.seed;
  out.tail = options.tail;
  out.stats.threads = threads;
  for (std::size_t i = 0; i < contiguous; ++i) {
    const auto& h = *results[i];
    ++out.heads;
    out.stats.merge(h.stats);
    if (h.dead) {
      ++out.dead_heads;
      continue;
    }
    const std::uint64_t take = std::min(h.leaves, target - out.leaves);
    std::size_t kept = 0;
    for (auto ordinal : h.hit_ordinals) {
      if (ordinal >= take) break;
      ++out.hits;
      if (kept < h.hit_columns.size() && out.matrices.size() < options.max_hits_kept) {
        out.matrices.push_back(verified(field, h.hit_columns[kept]));
      }
      ++kept;
    }
    for (const auto& [ordinal, s] : h.min_changes) {
      if (ordinal >= take) break;
      if (!out.min_forbidden || s < *out.min_forbidden) out.min_forbidden = s;
    }
    out.leaves += take;
    if (out.leaves >= target) break;
  }
  out.frequency = out.leaves == 0 ? 0.0 : static_cast<double>(out.hits) / static_cast<double>(out.leaves);
  out.stats.elapsed_seconds = seconds_since(t0);
  return out;
}

}  // namespace supreg
