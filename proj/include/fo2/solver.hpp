// ============================================================================
// fo2/solver.hpp — external SMT solver sessions
// ============================================================================
//
// Exact semantic services (satisfiability, entailment, equivalence) through
// an external solver child process speaking SMT-LIB v2 over its standard
// streams.  Nothing is linked in-process; the backend is replaceable.
//
// The wire protocol leans on (set-option :print-success true): every command
// sent produces exactly one response unit (a bare word or one balanced
// s-expression), so whole query scripts are written in a single batch and
// their responses read back positionally.  Every query script starts with
// (reset), which keeps one long-lived process serving many queries.
//
// Timeouts are wall-clock per query.  An expired query kills the child and
// reports unknown; the next query respawns transparently.  Sat verdicts are
// upgraded with a small finite model when a bounded re-query at domain sizes
// 1, 2, 3 finds one; extracted models are re-checked by direct evaluation
// before being surfaced, so a surfaced witness is always genuine.
//
// Backend resolution order: explicit config command, the FO2_SOLVER_CMD
// environment variable, a native z3 on PATH, then the bundled node bridge
// (tools/smt_pipe.mjs).
// ============================================================================

#ifndef FO2_SOLVER_HPP
#define FO2_SOLVER_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2/formula.hpp"
#include "fo2/structure.hpp"

namespace fo2 {

struct SolverConfig {
  std::string command;  // empty: resolve automatically
  int timeout_ms = 10000;
  bool extract_models = true;
  int max_witness_size = 3;
};

enum class SatStatus { Sat, Unsat, Unknown };

struct SolverVerdict {
  SatStatus status = SatStatus::Unknown;
  std::optional<FiniteStructure> model;
  std::chrono::milliseconds elapsed{0};
  std::string backend;
};

enum class Entailed { Yes, No, Unknown };

struct EntailmentVerdict {
  Entailed answer = Entailed::Unknown;
  std::optional<FiniteStructure> witness;  // countermodel when answer is No
  std::string backend;
};

class SolverUnavailable : public std::runtime_error {
 public:
  explicit SolverUnavailable(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

class SolverProtocolError : public std::runtime_error {
 public:
  explicit SolverProtocolError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// One child solver process.  Not thread-safe; use one session per worker.
class SolverSession {
 public:
  explicit SolverSession(SolverConfig config = {});
  ~SolverSession();
  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  SolverVerdict check_sat(const std::vector<Formula>& formulas, const Signature& sig);
  EntailmentVerdict entails(const std::vector<Formula>& premises, const Formula& conclusion);
  Entailed equivalent(const Formula& f, const Formula& g, const Signature& sig);

  const std::string& backend() const { return backend_; }
  const SolverConfig& config() const { return config_; }
  void set_timeout_ms(int ms) { config_.timeout_ms = ms; }

  // Raw batched exchange: sends every command in the script, returns one
  // response unit per command.  Empty result means the query timed out (the
  // child has been killed and will be respawned).  Exposed for tests.
  std::vector<std::string> run_script(const std::string& script);

 private:
  void spawn();
  void shutdown(bool gentle);

  SolverConfig config_;
  std::vector<std::string> argv_;
  std::string backend_;
  int child_pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string read_buffer_;

  SatStatus run_check(const std::string& script, std::vector<std::string>* responses);
  std::optional<FiniteStructure> extract_model(const std::vector<Formula>& formulas,
                                               const Signature& sig);
};

// A fixed team of worker threads, one solver session each.  Indices are
// claimed atomically; each index is processed by exactly one worker, so
// per-index result slots need no locking on the caller's side.
class SolverPool {
 public:
  SolverPool(SolverConfig config, int workers);

  int workers() const { return workers_; }

  // Runs fn(index, session) for every index in [0, count).
  void for_each(std::size_t count,
                const std::function<void(std::size_t, SolverSession&)>& fn);

 private:
  SolverConfig config_;
  int workers_;
};

// The argv the session would launch, resolved from config/environment/PATH.
// Throws SolverUnavailable when nothing usable is found.
std::vector<std::string> resolve_solver_command(const SolverConfig& config);

}  // namespace fo2

#endif
