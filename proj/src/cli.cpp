#include <b0calc/cli.hpp>

#include <b0calc/dsl.hpp>
#include <b0calc/oracle.hpp>
#include <b0calc/sequences.hpp>
#include <b0calc/wedge.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace b0calc {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kCacheEnv = "B0CALC_CACHE_DIR";

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n\r");
  return s.substr(a, b - a + 1);
}

// split on sep at nesting depth zero of (), [], {}
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::map<std::string, std::string> keyword_args(
    const std::vector<std::string>& args, const std::string& where) {
  std::map<std::string, std::string> kv;
  for (const std::string& a : args) {
    size_t eq = a.find('=');
    if (eq == std::string::npos)
      throw Error(where + ": expected key=value, got '" + a + "'");
    std::string k = trim(a.substr(0, eq));
    if (kv.count(k)) throw Error(where + ": duplicate parameter '" + k + "'");
    kv[k] = trim(a.substr(eq + 1));
  }
  return kv;
}

long long arg_int(const std::map<std::string, std::string>& kv,
                  const std::string& key, const std::string& where,
                  std::optional<long long> fallback = std::nullopt) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw Error(where + ": missing parameter '" + key + "'");
  }
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    throw Error(where + ": bad value for '" + key + "': " + it->second);
  }
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* cand : known) ok = ok || k == cand;
    if (!ok) throw Error(where + ": unknown parameter '" + k + "'");
  }
}

// word over the generators of g: whitespace-separated id or id^exp
Element parse_element(const PcPresentation& g, const std::string& word,
                      const std::string& where) {
  std::string w = trim(word);
  if (w == "1") return g.identity();
  GroupWord gw;
  std::istringstream is(w);
  std::string f;
  while (is >> f) {
    size_t caret = f.find('^');
    std::string id = f.substr(0, caret);
    long long exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoll(f.substr(caret + 1));
      } catch (const std::exception&) {
        throw Error(where + ": bad exponent in '" + f + "'");
      }
    }
    int gi = g.gen_index(id);
    if (gi < 0) throw Error(where + ": unknown generator '" + id + "'");
    gw.append(gi, exp);
  }
  return g.collect(gw);
}

std::vector<long long> parse_central_word(const PcPresentation& g,
                                          const std::string& word,
                                          const std::string& where) {
  Element x = parse_element(g, word, where);
  for (size_t i = 0; i < g.noncentral; ++i)
    if (x.e[i] != 0)
      throw Error(where + ": '" + word + "' is not in the central block");
  return std::vector<long long>(x.e.begin() + g.noncentral, x.e.end());
}

PcPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open presentation file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dsl(ss.str()).pres;
}

GroupSource from_spec(const std::string& label, CentralProductSpec spec) {
  GroupSource gs;
  gs.label = label;
  gs.product = std::move(spec);
  gs.pres = gs.product->build().g;
  return gs;
}

}  // namespace

GroupSource resolve_group(const std::string& expr0) {
  std::string expr = trim(expr0);
  size_t lp = expr.find('(');
  if (lp == std::string::npos || expr.back() != ')') {
    return {expr, load_presentation(expr), std::nullopt};
  }
  std::string name = trim(expr.substr(0, lp));
  std::vector<std::string> args =
      split_top(expr.substr(lp + 1, expr.size() - lp - 2), ',');

  if (name.size() == 2 && name[0] == 'G' && name[1] >= '1' && name[1] <= '6') {
    auto kv = keyword_args(args, name);
    reject_unknown(kv, {"p", "r"}, name);
    return {expr,
            series_g(name[1] - '0', arg_int(kv, "p", name),
                     (int)arg_int(kv, "r", name, 1)),
            std::nullopt};
  }
  if (name == "heisenberg") {
    auto kv = keyword_args(args, name);
    reject_unknown(kv, {"p"}, name);
    return {expr, heisenberg(arg_int(kv, "p", name)), std::nullopt};
  }
  if (name == "extraspecial") {
    auto kv = keyword_args(args, name);
    reject_unknown(kv, {"p", "n", "kind"}, name);
    long long p = arg_int(kv, "p", name);
    int n = (int)arg_int(kv, "n", name);
    std::string kind = kv.count("kind") ? kv.at("kind") : "p";
    ExtraspecialKind k;
    if (kind == "p")
      k = ExtraspecialKind::exponent_p;
    else if (kind == "p2")
      k = ExtraspecialKind::exponent_p2;
    else
      throw Error(name + ": kind must be p or p2, got '" + kind + "'");
    if (n >= 2) return from_spec(expr, extraspecial_spec(p, n, k));
    return {expr, extraspecial(p, n, k), std::nullopt};
  }
  if (name == "mc") {
    auto kv = keyword_args(args, name);
    reject_unknown(kv, {"p", "r", "b", "a"}, name);
    return {expr,
            metacyclic_split(arg_int(kv, "p", name),
                             (int)arg_int(kv, "r", name),
                             (int)arg_int(kv, "b", name),
                             (int)arg_int(kv, "a", name)),
            std::nullopt};
  }
  if (name == "c2") {
    auto kv = keyword_args(args, name);
    reject_unknown(kv, {"p", "r", "b", "a1", "a2"}, name);
    return from_spec(
        expr, corollary_c2_spec(
                  arg_int(kv, "p", name), (int)arg_int(kv, "r", name),
                  (int)arg_int(kv, "b", name), (int)arg_int(kv, "a1", name),
                  (int)arg_int(kv, "a2", name)));
  }
  if (name == "cp") {
    // cp(file1, K1, file2, K2, map): K_i are central words ('&'-separated
    // for multiple generators), map lists theta images as gen:word pairs
    if (args.size() != 5)
      throw Error("cp takes (file1, K1, file2, K2, map)");
    CentralProductSpec spec;
    spec.p1 = load_presentation(args[0]);
    spec.p2 = load_presentation(args[2]);
    for (const std::string& w : split_top(args[1], '&'))
      spec.k1.push_back(parse_central_word(spec.p1, w, "cp K1"));
    for (const std::string& w : split_top(args[3], '&'))
      spec.k2.push_back(parse_central_word(spec.p2, w, "cp K2"));
    spec.theta_images.assign(spec.p1.n(), spec.p2.identity());
    for (const std::string& entry : split_top(args[4], '&')) {
      if (entry.empty()) continue;
      size_t colon = entry.find(':');
      if (colon == std::string::npos)
        throw Error("cp map: expected gen:word, got '" + entry + "'");
      int gi = spec.p1.gen_index(trim(entry.substr(0, colon)));
      if (gi < 0)
        throw Error("cp map: unknown generator '" +
                    trim(entry.substr(0, colon)) + "'");
      spec.theta_images[gi] =
          parse_element(spec.p2, entry.substr(colon + 1), "cp map");
    }
    return from_spec(expr, std::move(spec));
  }
  throw Error("unknown family '" + name + "'");
}

std::vector<std::string> expand_grid(const std::string& expr) {
  size_t lb = expr.find('{');
  if (lb == std::string::npos) return {expr};
  size_t rb = expr.find('}', lb);
  if (rb == std::string::npos) throw Error("unmatched '{' in " + expr);
  std::string head = expr.substr(0, lb);
  std::string inner = trim(expr.substr(lb + 1, rb - lb - 1));
  std::vector<std::string> tails = expand_grid(expr.substr(rb + 1));
  std::vector<std::string> out;
  if (inner.empty()) return out;
  for (const std::string& v : split_top(inner, ','))
    for (const std::string& t : tails) out.push_back(head + v + t);
  return out;
}

namespace {

struct Options {
  bool oracle = false;
  bool certificate = false;
  bool json_lines = false;
  bool no_cache = false;
  long long cap = 0;  // 0: library default
  int modulus = 0;    // 0: oracle default exponent
  int jobs = 1;
  std::string cache_dir;
};

json invariants_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& d : v) a.push_back(d.convert_to<long long>());
  return a;
}

std::string invariants_text(const json& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += a[i].dump();
  }
  return s + "]";
}

class Cache {
 public:
  Cache(const Options& opt) : enabled_(!opt.no_cache) {
    if (!enabled_) return;
    std::string dir = opt.cache_dir;
    if (dir.empty())
      if (const char* env = std::getenv(kCacheEnv)) dir = env;
    if (dir.empty()) {
      if (const char* home = std::getenv("HOME"))
        dir = std::string(home) + "/.cache/b0calc";
      else
        dir = ".b0calc-cache";
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      enabled_ = false;
      return;
    }
    path_ = dir + "/cache.jsonl";
  }

  std::optional<json> lookup(const json& probe) {
    if (!enabled_) return std::nullopt;
    std::lock_guard<std::mutex> guard(mu_);
    int fd = ::open(path_.c_str(), O_RDONLY);
    if (fd < 0) return std::nullopt;
    ::flock(fd, LOCK_SH);
    std::string text;
    char buf[65536];
    ssize_t k;
    while ((k = ::read(fd, buf, sizeof buf)) > 0) text.append(buf, k);
    ::flock(fd, LOCK_UN);
    ::close(fd);
    std::optional<json> hit;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      json rec = json::parse(line, nullptr, false);
      if (rec.is_discarded()) continue;
      if (matches(rec, probe)) hit = std::move(rec);
    }
    return hit;
  }

  void append(const json& rec) {
    if (!enabled_) return;
    std::lock_guard<std::mutex> guard(mu_);
    int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) return;
    ::flock(fd, LOCK_EX);
    std::string line = rec.dump() + "\n";
    ssize_t ignored = ::write(fd, line.data(), line.size());
    (void)ignored;
    ::flock(fd, LOCK_UN);
    ::close(fd);
  }

 private:
  static bool matches(const json& rec, const json& probe) {
    for (const char* key : {"hash", "command", "version", "cap", "modulus"})
      if (!rec.contains(key) || rec[key] != probe[key]) return false;
    // a cached record is only reusable if it already carries everything
    // the current invocation asks for
    if (probe.contains("want_oracle") &&
        (!rec.contains("oracle") || rec["oracle"].is_null()))
      return false;
    if (probe.contains("want_certificate") && !rec.contains("certificate"))
      return false;
    return true;
  }

  bool enabled_;
  std::string path_;
  std::mutex mu_;
};

json base_record(const std::string& command, const GroupSource& gs,
                 const Options& opt) {
  json rec;
  rec["hash"] = presentation_hash(gs.pres);
  rec["command"] = command;
  rec["version"] = kVersion;
  rec["cap"] = opt.cap;
  rec["modulus"] = opt.modulus;
  rec["group"] = gs.label;
  rec["order"] = gs.pres.group_order().str();
  return rec;
}

Int wedge_cap(const Options& opt) {
  return opt.cap > 0 ? Int(opt.cap) : Int(1) << 40;
}

Int oracle_cap(const Options& opt) {
  return opt.cap > 0 ? Int(opt.cap) : Int(243);
}

// records carry an exit status: 0 clean, 2 a check failed
int record_status(const json& rec) {
  if (rec.contains("oracle") && rec["oracle"].is_string() &&
      rec["oracle"] != "agree")
    return 2;
  if (rec.contains("pass") && rec["pass"].is_boolean() && !rec["pass"])
    return 2;
  if (rec.contains("verdict") && rec["verdict"] == "contradiction") return 2;
  return 0;
}

json compute_record(const std::string& command, GroupSource& gs,
                    const Options& opt) {
  json rec = base_record(command, gs, opt);
  auto t0 = std::chrono::steady_clock::now();

  if (command == "b0" || command == "schur" || command == "oracle-check") {
    WedgeSystem ws(gs.pres);
    rec["m"] = invariants_json(ws.m_invariants());
    if (command != "schur")
      rec["b0"] = invariants_json(ws.bogomolov(wedge_cap(opt)));
    if (command == "oracle-check" || opt.oracle) {
      OracleResult ores =
          oracle_invariants(gs.pres, oracle_cap(opt), opt.modulus);
      rec["oracle_m"] = invariants_json(ores.m);
      rec["oracle_b0"] = invariants_json(ores.b0);
      bool agree = rec["oracle_m"] == rec["m"] &&
                   (command == "schur" || rec["oracle_b0"] == rec["b0"]);
      rec["oracle"] = agree ? "agree" : "disagree";
    } else {
      rec["oracle"] = nullptr;
    }
    if (opt.certificate)
      rec["certificate"] = ws.certificate(wedge_cap(opt)).text;
  } else if (command == "seq-check") {
    if (!gs.product)
      throw Error("seq-check needs a central-product expression "
                  "(c2, cp, or extraspecial with n >= 2)");
    CentralProductResult cp = gs.product->build();
    ExactSequenceReport rep =
        verify_exact_sequence(make_extension(cp.e, cp.n), wedge_cap(opt));
    rec["lhs"] = invariants_json(rep.lhs);
    rec["rhs"] = invariants_json(rep.rhs);
    rec["pass"] = rep.pass;
    rec["detail"] = rep.detail;
  } else if (command == "main1-check") {
    if (!gs.product)
      throw Error("main1-check needs a central-product expression "
                  "(c2, cp, or extraspecial with n >= 2)");
    const CentralProductSpec& s = *gs.product;
    Main1Report rep =
        verify_main1(s.p1, s.k1, s.p2, s.k2, s.theta(), wedge_cap(opt));
    rec.update(json::parse(main1_report_json(rep)));
  } else {
    throw Error("unknown command: " + command);
  }

  rec["elapsed_ms"] = (long long)std::chrono::duration_cast<
                          std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  rec["cached"] = false;
  return rec;
}

json cached_record(const std::string& command, GroupSource& gs,
                   const Options& opt, Cache& cache) {
  json probe = base_record(command, gs, opt);
  if (opt.oracle || command == "oracle-check") probe["want_oracle"] = true;
  if (opt.certificate) probe["want_certificate"] = true;
  if (std::optional<json> hit = cache.lookup(probe)) {
    (*hit)["cached"] = true;
    return *hit;
  }
  json rec = compute_record(command, gs, opt);
  cache.append(rec);
  return rec;
}

void emit(std::ostream& out, const json& rec, const Options& opt) {
  if (opt.json_lines)
    out << rec.dump() << "\n";
  else
    out << rec.dump(2) << "\n";
}

int run_sweep(const std::vector<std::string>& exprs, const Options& opt,
              Cache& cache, std::ostream& out) {
  std::vector<std::string> cells;
  for (const std::string& e : exprs)
    for (std::string& cell : expand_grid(e)) cells.push_back(std::move(cell));

  std::vector<json> records(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        GroupSource gs = resolve_group(cells[i]);
        records[i] = cached_record("b0", gs, opt, cache);
      } catch (const std::exception& e) {
        json rec;
        rec["group"] = cells[i];
        rec["error"] = e.what();
        records[i] = std::move(rec);
      }
    }
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  if (opt.json_lines) {
    for (const json& rec : records) out << rec.dump() << "\n";
    return 0;
  }
  size_t w = 5;
  for (const std::string& c : cells) w = std::max(w, c.size());
  out << std::left << std::setw((int)w + 2) << "group" << std::setw(10)
      << "order" << std::setw(14) << "b0" << std::setw(20) << "m"
      << "note\n";
  for (size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    out << std::left << std::setw((int)w + 2) << cells[i];
    if (rec.contains("error")) {
      out << "error: " << rec["error"].get<std::string>() << "\n";
      continue;
    }
    out << std::setw(10) << rec["order"].get<std::string>() << std::setw(14)
        << invariants_text(rec["b0"]) << std::setw(20)
        << invariants_text(rec["m"])
        << (rec["cached"].get<bool>() ? "cached" : "") << "\n";
  }
  return 0;
}

std::string describe_name(const std::string& label) {
  std::string name;
  for (char c : label)
    name += std::isalnum((unsigned char)c) ? c : '_';
  while (!name.empty() && name.back() == '_') name.pop_back();
  if (name.empty() || !std::isalpha((unsigned char)name[0]))
    name = "G_" + name;
  return name;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Bogomolov and Schur multipliers of class-2 finite p-groups"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opt;
  std::string group_expr;
  std::vector<std::string> sweep_exprs;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--cap", opt.cap,
                    "bound on enumerated elements (0: library default)");
    cmd->add_option("--modulus", opt.modulus,
                    "oracle modulus exponent L (0: 2*max(e_i)+1)");
    cmd->add_flag("--json", opt.json_lines, "compact JSON-lines output");
    cmd->add_flag("--no-cache", opt.no_cache, "skip the result cache");
    cmd->add_option(
        "--cache-dir", opt.cache_dir,
        std::string("cache directory (default: $") + kCacheEnv +
            ", then ~/.cache/b0calc)");
  };

  CLI::App* cb0 = app.add_subcommand("b0", "Bogomolov multiplier B0(G)");
  cb0->add_option("group", group_expr, "family expression or file")
      ->required();
  cb0->add_flag("--oracle", opt.oracle, "cross-check with the brute-force oracle");
  cb0->add_flag("--certificate", opt.certificate,
                "include kernel generators and commuting-pair witnesses");
  add_common(cb0);

  CLI::App* cschur = app.add_subcommand("schur", "Schur multiplier M*(G)");
  cschur->add_option("group", group_expr, "family expression or file")
      ->required();
  cschur->add_flag("--oracle", opt.oracle,
                   "cross-check with the brute-force oracle");
  add_common(cschur);

  CLI::App* coracle = app.add_subcommand(
      "oracle-check", "compare symbolic and brute-force invariants");
  coracle->add_option("group", group_expr, "family expression or file")
      ->required();
  add_common(coracle);

  CLI::App* cseq = app.add_subcommand(
      "seq-check", "exact-sequence identity on a central product");
  cseq->add_option("group", group_expr, "central-product expression")
      ->required();
  add_common(cseq);

  CLI::App* cmain1 = app.add_subcommand(
      "main1-check", "triviality criterion on a central product");
  cmain1->add_option("group", group_expr, "central-product expression")
      ->required();
  add_common(cmain1);

  CLI::App* csweep =
      app.add_subcommand("sweep", "run b0 over a parameter grid");
  csweep
      ->add_option("grid", sweep_exprs,
                   "expressions with {v1,v2,...} alternation lists")
      ->expected(-1);
  csweep->add_option("--jobs", opt.jobs, "worker threads");
  add_common(csweep);

  CLI::App* cdesc =
      app.add_subcommand("describe", "emit the canonical presentation text");
  cdesc->add_option("group", group_expr, "family expression or file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cdesc->parsed()) {
      GroupSource gs = resolve_group(group_expr);
      out << describe_dsl(gs.pres, describe_name(gs.label));
      return 0;
    }
    Cache cache(opt);
    if (csweep->parsed()) return run_sweep(sweep_exprs, opt, cache, out);

    std::string command = app.get_subcommands().front()->get_name();
    GroupSource gs = resolve_group(group_expr);
    json rec = cached_record(command, gs, opt, cache);
    emit(out, rec, opt);
    return record_status(rec);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace b0calc
