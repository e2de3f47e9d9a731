#include "fo2/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <mutex>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <thread>

#include "fo2/enumerate.hpp"
#include "fo2/smtlib.hpp"

namespace fo2 {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  std::string word;
  while (is >> word) parts.push_back(word);
  return parts;
}

bool on_path(const std::string& name) {
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::istringstream is(path);
  std::string dir;
  while (std::getline(is, dir, ':')) {
    if (dir.empty()) continue;
    if (access((dir + "/" + name).c_str(), X_OK) == 0) return true;
  }
  return false;
}

std::optional<std::string> find_bridge_script() {
  std::vector<fs::path> candidates = {"tools/smt_pipe.mjs", "../tools/smt_pipe.mjs",
                                      "../../tools/smt_pipe.mjs"};
  std::error_code ec;
  fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    fs::path dir = exe.parent_path();
    candidates.push_back(dir / "../tools/smt_pipe.mjs");
    candidates.push_back(dir / "../../tools/smt_pipe.mjs");
    candidates.push_back(dir / "../../../tools/smt_pipe.mjs");
  }
  for (const fs::path& p : candidates) {
    if (access(p.c_str(), R_OK) == 0) return fs::absolute(p, ec).lexically_normal().string();
  }
  return std::nullopt;
}

// Splits a script into its top-level commands, respecting string literals,
// quoted symbols, and comments; mirrors the framing the solver applies.
std::vector<std::string> chunk_commands(const std::string& script) {
  std::vector<std::string> commands;
  std::string cur;
  int depth = 0;
  bool in_string = false, in_symbol = false, in_comment = false;
  for (std::size_t i = 0; i < script.size(); ++i) {
    char c = script[i];
    if (in_comment) {
      if (c == '\n') in_comment = false;
      continue;
    }
    if (in_string) {
      cur += c;
      if (c == '"') {
        if (i + 1 < script.size() && script[i + 1] == '"') {
          cur += script[++i];
        } else {
          in_string = false;
        }
      }
      continue;
    }
    if (in_symbol) {
      cur += c;
      if (c == '|') in_symbol = false;
      continue;
    }
    if (c == ';' && depth == 0) {
      in_comment = true;
      continue;
    }
    if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) continue;
    cur += c;
    if (c == '"') in_string = true;
    if (c == '|') in_symbol = true;
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth == 0) {
        commands.push_back(cur);
        cur.clear();
      }
    }
  }
  if (!cur.empty()) commands.push_back(cur);
  return commands;
}

// One response unit from the head of buf: a balanced s-expression or a bare
// line.  Returns bytes consumed, 0 while the unit is still incomplete.
std::size_t scan_unit(const std::string& buf, std::string* out) {
  std::size_t i = 0;
  while (i < buf.size() && std::isspace(static_cast<unsigned char>(buf[i]))) ++i;
  if (i >= buf.size()) return 0;
  if (buf[i] == '(') {
    int depth = 0;
    bool in_string = false, in_symbol = false;
    for (std::size_t j = i; j < buf.size(); ++j) {
      char c = buf[j];
      if (in_string) {
        if (c == '"') in_string = false;
        continue;
      }
      if (in_symbol) {
        if (c == '|') in_symbol = false;
        continue;
      }
      if (c == '"') in_string = true;
      if (c == '|') in_symbol = true;
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) {
        *out = buf.substr(i, j + 1 - i);
        return j + 1;
      }
    }
    return 0;
  }
  std::size_t nl = buf.find('\n', i);
  if (nl == std::string::npos) return 0;
  std::size_t end = nl;
  while (end > i && std::isspace(static_cast<unsigned char>(buf[end - 1]))) --end;
  *out = buf.substr(i, end - i);
  return nl + 1;
}

// Minimal s-expression reader for get-value answers.
struct Sexpr {
  std::string token;  // empty for lists
  std::vector<Sexpr> items;
};

std::optional<Sexpr> read_sexpr(const std::string& text, std::size_t& i) {
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size()) return std::nullopt;
  if (text[i] == '(') {
    ++i;
    Sexpr list;
    while (true) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i >= text.size()) return std::nullopt;
      if (text[i] == ')') {
        ++i;
        return list;
      }
      auto item = read_sexpr(text, i);
      if (!item) return std::nullopt;
      list.items.push_back(std::move(*item));
    }
  }
  Sexpr tok;
  while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
         text[i] != '(' && text[i] != ')')
    tok.token += text[i++];
  return tok;
}

void ignore_sigpipe_once() {
  static bool done = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

}  // namespace

std::vector<std::string> resolve_solver_command(const SolverConfig& config) {
  if (!config.command.empty()) return split_ws(config.command);
  if (const char* env = std::getenv("FO2_SOLVER_CMD")) {
    std::string cmd(env);
    if (!cmd.empty()) return split_ws(cmd);
  }
  if (on_path("z3")) return {"z3", "-in"};
  if (on_path("node")) {
    if (auto script = find_bridge_script()) return {"node", *script};
  }
  throw SolverUnavailable(
      "no solver backend found: set FO2_SOLVER_CMD, or install z3, or provide "
      "node with the bundled tools/smt_pipe.mjs bridge");
}

SolverSession::SolverSession(SolverConfig config) : config_(std::move(config)) {
  ignore_sigpipe_once();
  argv_ = resolve_solver_command(config_);
  std::string joined;
  for (const std::string& a : argv_) joined += (joined.empty() ? "" : " ") + a;
  backend_ = joined;
  spawn();
}

SolverSession::~SolverSession() { shutdown(true); }

void SolverSession::spawn() {
  int to_pipe[2], from_pipe[2];
  if (pipe(to_pipe) != 0 || pipe(from_pipe) != 0)
    throw SolverUnavailable("pipe creation failed");
  pid_t pid = fork();
  if (pid < 0) throw SolverUnavailable("fork failed");
  if (pid == 0) {
    dup2(to_pipe[0], STDIN_FILENO);
    dup2(from_pipe[1], STDOUT_FILENO);
    close(to_pipe[0]);
    close(to_pipe[1]);
    close(from_pipe[0]);
    close(from_pipe[1]);
    std::vector<char*> argv;
    for (const std::string& a : argv_) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(to_pipe[0]);
  close(from_pipe[1]);
  child_pid_ = pid;
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
  fcntl(to_child_, F_SETFL, O_NONBLOCK);
  fcntl(from_child_, F_SETFL, O_NONBLOCK);
  read_buffer_.clear();

  // Handshake outside the per-query timeout: the node bridge loads a WASM
  // solver on first use, which can take a few seconds.
  std::string cmd = "(set-option :print-success true)\n";
  ssize_t wrote = write(to_child_, cmd.data(), cmd.size());
  (void)wrote;
  Clock::time_point deadline = Clock::now() + std::chrono::seconds(30);
  std::string unit;
  while (true) {
    std::size_t used = scan_unit(read_buffer_, &unit);
    if (used > 0) {
      read_buffer_.erase(0, used);
      break;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) {
      shutdown(false);
      throw SolverUnavailable("solver backend did not answer the handshake: " + backend_);
    }
    struct pollfd pfd{from_child_, POLLIN, 0};
    poll(&pfd, 1, static_cast<int>(left.count()));
    char chunk[4096];
    ssize_t got = read(from_child_, chunk, sizeof(chunk));
    if (got > 0) read_buffer_.append(chunk, static_cast<std::size_t>(got));
    if (got == 0) {
      shutdown(false);
      throw SolverUnavailable("solver backend exited during startup: " + backend_);
    }
  }
  if (unit != "success")
    throw SolverUnavailable("unexpected handshake answer '" + unit + "' from " + backend_);
}

void SolverSession::shutdown(bool gentle) {
  if (child_pid_ < 0) return;
  if (gentle && to_child_ >= 0) {
    const char* bye = "(exit)\n";
    ssize_t wrote = write(to_child_, bye, std::strlen(bye));
    (void)wrote;
  }
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (gentle) {
    // Give the child a moment to exit on its own before forcing it.
    for (int i = 0; i < 50; ++i) {
      if (waitpid(child_pid_, nullptr, WNOHANG) == child_pid_) {
        child_pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  kill(child_pid_, SIGKILL);
  waitpid(child_pid_, nullptr, 0);
  child_pid_ = -1;
}

std::vector<std::string> SolverSession::run_script(const std::string& script) {
  if (child_pid_ < 0) spawn();
  std::vector<std::string> commands = chunk_commands(script);
  std::vector<std::string> responses;
  if (commands.empty()) return responses;

  std::string payload = script;
  if (payload.empty() || payload.back() != '\n') payload += '\n';
  std::size_t written = 0;
  Clock::time_point deadline = Clock::now() + std::chrono::milliseconds(config_.timeout_ms);

  while (responses.size() < commands.size()) {
    std::string unit;
    std::size_t used = scan_unit(read_buffer_, &unit);
    if (used > 0) {
      read_buffer_.erase(0, used);
      responses.push_back(unit);
      continue;
    }

    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) {
      shutdown(false);  // timed out: kill and let the next query respawn
      return {};
    }

    struct pollfd fds[2];
    fds[0] = {from_child_, POLLIN, 0};
    fds[1] = {to_child_, POLLOUT, 0};
    nfds_t nfds = written < payload.size() ? 2 : 1;
    if (poll(fds, nfds, static_cast<int>(left.count())) < 0 && errno != EINTR) {
      shutdown(false);
      throw SolverProtocolError("poll failed talking to " + backend_);
    }

    if (written < payload.size()) {
      ssize_t put = write(to_child_, payload.data() + written, payload.size() - written);
      if (put > 0) written += static_cast<std::size_t>(put);
      if (put < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
        shutdown(false);
        throw SolverProtocolError("solver backend closed its input: " + backend_);
      }
    }

    char chunk[65536];
    ssize_t got = read(from_child_, chunk, sizeof(chunk));
    if (got > 0) read_buffer_.append(chunk, static_cast<std::size_t>(got));
    if (got == 0) {
      shutdown(false);
      throw SolverProtocolError("solver backend exited mid-query: " + backend_);
    }
  }
  return responses;
}

SatStatus SolverSession::run_check(const std::string& script,
                                   std::vector<std::string>* responses_out) {
  std::vector<std::string> commands = chunk_commands(script);
  std::size_t check_index = commands.size();
  for (std::size_t i = 0; i < commands.size(); ++i)
    if (commands[i] == "(check-sat)") check_index = i;
  std::vector<std::string> responses = run_script(script);
  if (responses_out) *responses_out = responses;
  if (responses.empty()) return SatStatus::Unknown;  // timeout
  if (responses.size() != commands.size() || check_index >= commands.size())
    throw SolverProtocolError("response framing mismatch from " + backend_);
  for (std::size_t i = 0; i < check_index; ++i) {
    if (responses[i] != "success")
      throw SolverProtocolError("solver rejected a command: " + responses[i]);
  }
  const std::string& verdict = responses[check_index];
  if (verdict == "sat") return SatStatus::Sat;
  if (verdict == "unsat") return SatStatus::Unsat;
  if (verdict == "unknown" || verdict == "timeout") return SatStatus::Unknown;
  throw SolverProtocolError("unrecognized check-sat answer '" + verdict + "' from " +
                            backend_);
}

std::optional<FiniteStructure> SolverSession::extract_model(
    const std::vector<Formula>& formulas, const Signature& sig) {
  for (int n = 1; n <= config_.max_witness_size; ++n) {
    std::string script = "(reset)\n" + emit_smtlib(formulas, sig, n, true);
    std::vector<std::string> responses;
    SatStatus status;
    try {
      status = run_check(script, &responses);
    } catch (const SolverProtocolError&) {
      continue;  // bounded retrieval is best-effort; the verdict stands
    }
    if (status != SatStatus::Sat) continue;

    std::vector<std::string> probes = probe_terms(sig, n);
    if (probes.empty()) {
      // Nothing to interpret: the bare n-element structure is the model.
      FiniteStructure m;
      for (int e = 0; e < n; ++e) m.domain.push_back(e);
      return m;
    }
    if (responses.empty()) continue;
    std::size_t i = 0;
    auto parsed = read_sexpr(responses.back(), i);
    if (!parsed || parsed->items.size() != probes.size()) continue;

    FiniteStructure m;
    for (int e = 0; e < n; ++e) m.domain.push_back(e);
    std::size_t at = 0;
    bool bad = false;
    auto next_truth = [&]() {
      const Sexpr& entry = parsed->items[at++];
      if (entry.items.size() != 2 || entry.items[1].token.empty()) bad = true;
      return !bad && entry.items[1].token == "true";
    };
    for (char c : sig.constants) {
      int where = -1;
      for (int e = 0; e < n; ++e)
        if (next_truth()) where = e;
      if (where < 0) bad = true;
      m.constants[c] = where < 0 ? 0 : where;
    }
    for (char p : sig.unary) {
      auto& ext = m.unary[p];
      for (int e = 0; e < n; ++e)
        if (next_truth()) ext.insert(e);
    }
    for (char p : sig.binary) {
      auto& ext = m.binary[p];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (next_truth()) ext.insert({a, b});
    }
    if (bad) continue;

    bool verified = true;
    try {
      for (const Formula& f : formulas)
        if (!eval_closed(f, m)) verified = false;
    } catch (const EvalError&) {
      verified = false;
    }
    if (verified) return m;
  }
  return std::nullopt;
}

SolverVerdict SolverSession::check_sat(const std::vector<Formula>& formulas,
                                       const Signature& sig) {
  Clock::time_point start = Clock::now();
  SolverVerdict verdict;
  verdict.backend = backend_;
  std::string script = "(reset)\n" + emit_smtlib(formulas, sig);
  verdict.status = run_check(script, nullptr);
  if (verdict.status == SatStatus::Sat && config_.extract_models)
    verdict.model = extract_model(formulas, sig);
  verdict.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return verdict;
}

EntailmentVerdict SolverSession::entails(const std::vector<Formula>& premises,
                                         const Formula& conclusion) {
  std::vector<Formula> refutation = premises;
  refutation.push_back(neg(conclusion));
  Signature sig = signature_of(refutation);
  SolverVerdict sat = check_sat(refutation, sig);

  EntailmentVerdict out;
  out.backend = backend_;
  switch (sat.status) {
    case SatStatus::Unsat:
      out.answer = Entailed::Yes;
      break;
    case SatStatus::Sat:
      out.answer = Entailed::No;
      if (sat.model && check_countermodel(premises, conclusion, *sat.model).accepted)
        out.witness = sat.model;
      break;
    case SatStatus::Unknown:
      out.answer = Entailed::Unknown;
      break;
  }
  return out;
}

Entailed SolverSession::equivalent(const Formula& f, const Formula& g,
                                   const Signature& sig) {
  std::vector<Formula> separation = {neg(iff(f, g))};
  SolverConfig saved = config_;
  config_.extract_models = false;
  SolverVerdict sat;
  try {
    sat = check_sat(separation, sig);
  } catch (...) {
    config_ = saved;
    throw;
  }
  config_ = saved;
  switch (sat.status) {
    case SatStatus::Unsat:
      return Entailed::Yes;
    case SatStatus::Sat:
      return Entailed::No;
    case SatStatus::Unknown:
      return Entailed::Unknown;
  }
  return Entailed::Unknown;
}

SolverPool::SolverPool(SolverConfig config, int workers)
    : config_(std::move(config)), workers_(workers < 1 ? 1 : workers) {}

void SolverPool::for_each(std::size_t count,
                          const std::function<void(std::size_t, SolverSession&)>& fn) {
  if (count == 0) return;
  int team = workers_;
  if (static_cast<std::size_t>(team) > count) team = static_cast<int>(count);

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&]() {
    try {
      SolverSession session(config_);
      while (true) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= count) break;
        fn(i, session);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      cursor.store(count);  // drain remaining work
    }
  };

  std::vector<std::thread> threads;
  for (int t = 0; t < team; ++t) threads.emplace_back(work);
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fo2
