#pragma once

// Searches over normalized lower-triangular Toeplitz matrices A(1, 1, a_3, ..., a_gamma).
//
// Every search walks the tree of prefixes left to right and only descends
// into a_k outside the forbidden set S_k, so each prefix it touches is
// superregular. Work is split into units by the values of (a_3, a_4); units
// are processed in parallel and merged in unit order, which makes every
// result independent of the thread count.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supreg/forbidden.hpp"
#include "supreg/toeplitz.hpp"

namespace supreg {

enum class SearchMode { First, Enumerate, Count };

std::string to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& text);  // InvalidArgument

/// Statistics for one tree depth k (the position a_k being chosen).
struct DepthStats {
  int depth = 0;
  std::uint64_t nodes = 0;            // prefixes of length k-1 that reached depth k
  std::uint64_t forbidden_total = 0;  // sum of |S_k| over those nodes
  std::uint64_t pruned = 0;           // values of a_k rejected
  std::uint64_t dead = 0;             // nodes where some minor vanished identically

  DepthStats& operator+=(const DepthStats& o);
};

struct SearchStats {
  std::vector<DepthStats> depths;  // indexed by depth; entries 0..2 unused
  std::uint64_t nodes = 0;
  double elapsed_seconds = 0;
  int threads = 1;

  void merge(const SearchStats& o);
};

/// Outcome of one work unit, the granularity of checkpointing.
struct UnitRecord {
  std::size_t index = 0;
  std::vector<std::uint64_t> prefix;  // a_1 .. a_{k} fixed by the unit
  std::uint64_t nodes = 0;
  std::uint64_t count = 0;                         // exhaustive: matrices found
  std::vector<std::vector<std::uint64_t>> found;   // exhaustive: columns; min_forbidden: argmin prefixes
  std::optional<int> minimum;                      // min_forbidden
  std::uint64_t argmin_count = 0;                  // min_forbidden
  SearchStats stats;
};

struct SearchOptions {
  int threads = 0;  // 0 = hardware concurrency
  /// Abort once this many tree nodes have been visited.
  std::optional<std::uint64_t> budget;
  /// Units already finished in an earlier run (by index); skipped and merged.
  std::map<std::size_t, UnitRecord> completed;
  /// Called once per finished unit, serialized.
  std::function<void(const UnitRecord&)> on_unit;
};

int resolve_threads(int requested);

// ---------------------------------------------------------------------------
// Greedy extension

enum class GreedyPolicy { Smallest, Random };

struct GreedyResult {
  bool success = false;
  std::optional<ToeplitzLT> matrix;
  /// On failure: the depth that had no admissible value and its forbidden set.
  std::optional<ForbiddenSet> dead_end;
  std::vector<FieldElement> entries;  // entries fixed so far
};

/// Extends `prefix` one entry at a time, each a_k outside S_k, with no
/// backtracking. `prefix` must pass the incremental check (InvalidArgument).
/// The random policy draws uniformly from the candidates with `seed`.
GreedyResult greedy_extend(const PrimeField& field, std::span<const FieldElement> prefix, int gamma_target,
                           GreedyPolicy policy = GreedyPolicy::Smallest, std::uint64_t seed = 0);

/// Same as greedy_extend but throws DeadEnd on failure.
ToeplitzLT greedy_extend_or_throw(const PrimeField& field, std::span<const FieldElement> prefix, int gamma_target,
                                  GreedyPolicy policy = GreedyPolicy::Smallest, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Exhaustive search

struct ExhaustiveResult {
  int gamma = 0;
  std::uint64_t p = 0;
  SearchMode mode = SearchMode::Count;
  bool complete = true;
  std::uint64_t count = 0;               // normalized matrices (a_1 = a_2 = 1)
  std::vector<ToeplitzLT> matrices;      // First / Enumerate, lexicographic
  std::size_t units_total = 0, units_done = 0;
  SearchStats stats;

  /// All matrices, each normalized one standing for (p-1)^2 scaled copies.
  std::uint64_t total_count() const { return count * (p - 1) * (p - 1); }
};

/// gamma >= 3. Every returned matrix has passed is_superregular.
ExhaustiveResult exhaustive(int gamma, const PrimeField& field, SearchMode mode, const SearchOptions& options = {});

struct MinFieldResult {
  int gamma = 0;
  std::uint64_t p_max = 0;
  std::optional<std::uint64_t> p;  // nullopt: none up to p_max
  std::optional<ToeplitzLT> witness;
  std::vector<std::uint64_t> primes_tried;
  double elapsed_seconds = 0;
};

MinFieldResult min_field(int gamma, std::uint64_t p_max, int threads = 0);

// ---------------------------------------------------------------------------
// Minimum forbidden-set size

inline constexpr std::size_t kArgminLimit = 1000;

struct MinForbiddenResult {
  int gamma = 0;
  std::uint64_t p = 0;
  bool complete = true;
  std::optional<int> minimum;  // over superregular prefixes; nullopt if none exist
  /// Lexicographically first kArgminLimit prefixes (a_1 .. a_{gamma-1}) attaining it.
  std::vector<std::vector<std::uint64_t>> argmin;
  std::uint64_t argmin_count = 0;
  std::size_t units_total = 0, units_done = 0;
  SearchStats stats;
};

/// gamma >= 4. With a budget the scan may stop early; complete is then false
/// and the minimum covers the finished units only.
MinForbiddenResult min_forbidden(int gamma, const PrimeField& field, const SearchOptions& options = {});

struct ConjectureReport {
  MinForbiddenResult scan;
  std::uint64_t n_gamma = 0;
  std::uint64_t bound = 0;  // floor(N_gamma / 2) + 2
  std::optional<bool> satisfied;  // nullopt when no prefix exists
};

ConjectureReport conjecture_scan(int gamma, const PrimeField& field, const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Random head, exhaustive tail

inline constexpr const char* kGeneratorName = "mt19937_64+splitmix64";
inline constexpr int kGeneratorVersion = 1;

struct RandomOptions {
  std::uint64_t seed = 0;
  /// Number of leaves to examine; a leaf is a superregular prefix a_1..a_{gamma-1}.
  std::uint64_t trials = 100000;
  /// Trailing entries a_{gamma-tail}..a_{gamma-1} searched exhaustively.
  int tail = 3;
  int threads = 0;
  std::size_t max_hits_kept = 1000;
};

struct RandomResult {
  int gamma = 0;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  int tail = 0;
  std::string generator = kGeneratorName;
  int generator_version = kGeneratorVersion;
  std::uint64_t heads = 0;       // random heads drawn
  std::uint64_t dead_heads = 0;  // heads that could not be completed
  std::uint64_t leaves = 0;      // trials
  std::uint64_t hits = 0;        // leaves with |S_gamma| < p
  double frequency = 0;          // hits / leaves
  std::optional<int> min_forbidden;  // smallest |S_gamma| seen
  std::vector<ToeplitzLT> matrices;  // first max_hits_kept hits, smallest a_gamma, verified
  SearchStats stats;
};

/// Heads a_3..a_{gamma-1-tail} are drawn uniformly from the admissible values
/// at each depth. Head i uses its own generator seeded from (seed, i), and
/// heads are consumed in index order until `trials` leaves are reached, so
/// the outcome depends on (seed, trials, tail) only.
RandomResult random_prefix(int gamma, const PrimeField& field, const RandomOptions& options);

}  // namespace supreg
