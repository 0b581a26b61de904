#include "nilcert/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nilcert/cache.hpp"
#include "nilcert/decomp.hpp"
#include "nilcert/nil_oracle.hpp"
#include "nilcert/sigma.hpp"

namespace nilcert {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint32_t p = 0;
  int letters = 0;
  std::string mdeg;
  std::string expr;
  std::string file;
  bool cyclic = false;
  std::size_t budget = kDefaultColumnBudget;
  std::uint64_t seed = 1;
  std::string json_out;
  std::string cert_dir;
  // per command
  std::string name;
  int k = 2;
  int size = 0;
  int trials = 20;
  std::string form = "tr";
  int theorem = 1;
  std::string range;
  std::string cert_file;
};

struct Outcome_ {
  json result;
  int code = kExitOk;
};

class Context {
 public:
  Context(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err), cache_(ResultCache::from_env()) {}

  SolveOptions solve() const { return {o_.budget, true}; }

  fs::path cert_dir() const {
    if (!o_.cert_dir.empty()) return o_.cert_dir;
    if (cache_.enabled()) return cache_.dir() / "certificates";
    return "nilcert-certificates";
  }

  std::string write_certificate(const std::string& key, const std::string& tag, const Certificate& c) const {
    fs::path path = cert_dir() / (key.substr(0, 32) + tag + ".json");
    atomic_write(path, to_json(c).dump());
    return path.string();
  }

  /// Runs compute through the cache and prints the envelope.
  int emit(const std::string& command, const json& request,
           const std::function<Outcome_(const std::string& key)>& compute) {
    auto start = std::chrono::steady_clock::now();
    json material = request;
    material["certificate_dir"] = cert_dir().string();
    const std::string key = ResultCache::key(command, material);
    Outcome_ r;
    std::string status = cache_.enabled() ? "miss" : "off";
    auto cached = cache_.get(key);
    if (cached && cached->contains("result") && cached->contains("exit_code") && certificates_present(cached->at("result"))) {
      r.result = cached->at("result");
      r.code = cached->at("exit_code").get<int>();
      status = "hit";
    } else {
      r = compute(key);
      cache_.put(key, json{{"result", r.result}, {"exit_code", r.code}, {"request", material}});
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json env = {{"schema_version", kSchemaVersion},
                {"command", command},
                {"request", request},
                {"result", r.result},
                {"exit_code", r.code},
                {"timing", {{"elapsed_ms", ms}, {"cache", status}}}};
    std::string text = env.dump(2) + "\n";
    out_ << text;
    if (!o_.json_out.empty()) atomic_write(o_.json_out, text);
    return r.code;
  }

  void print(const json& env) {
    std::string text = env.dump(2) + "\n";
    out_ << text;
    if (!o_.json_out.empty()) atomic_write(o_.json_out, text);
  }

  std::ostream& err() { return err_; }
  const Options& opt() const { return o_; }

 private:
  static bool certificates_present(const json& j) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "certificate_path" && it->is_string() && !fs::exists(it->get<std::string>())) return false;
        if (!certificates_present(*it)) return false;
      }
    } else if (j.is_array()) {
      for (const auto& x : j)
        if (!certificates_present(x)) return false;
    }
    return true;
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  ResultCache cache_;
};

std::string read_expression(const Options& o) {
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw InputError("cannot read " + o.file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    for (char& c : s)
      if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    return s;
  }
  if (o.expr.empty()) throw InputError("one of --expr or --file is required");
  return o.expr;
}

LinComb parse_expression(const Options& o, std::uint32_t p, std::string& text) {
  text = read_expression(o);
  LinComb e = LinComb::parse(text, p);
  if (o.letters > 0)
    for (const auto& [w, c] : e.terms())
      for (std::size_t i = 0; i < w.size(); ++i)
        if (Letter x = w[i]; x > o.letters) throw InputError("letter x" + std::to_string(x) + " exceeds --letters " + std::to_string(o.letters));
  return e;
}

Multidegree parse_mdeg(const std::string& s) {
  std::vector<int> counts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw InputError("");
      counts.push_back(v);
    } catch (const std::exception&) {
      throw InputError("malformed multidegree '" + s + "'");
    }
  }
  if (counts.empty()) throw InputError("empty multidegree");
  return Multidegree(counts);
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  auto dash = s.find('-');
  try {
    if (dots != std::string::npos) return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    if (dash != std::string::npos) return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
    int v = std::stoi(s);
    return {v, v};
  } catch (const std::exception&) {
    throw InputError("malformed range '" + s + "'");
  }
}

json attach(json j, const std::optional<Certificate>& c, const Context& ctx, const std::string& key, const std::string& tag) {
  j.erase("certificate");
  if (c) {
    j["certificate_kind"] = c->kind();
    j["certificate_path"] = ctx.write_certificate(key, tag, *c);
  }
  return j;
}

// -- commands ----------------------------------------------------------------

int cmd_zero_test(Context& ctx) {
  const Options& o = ctx.opt();
  std::string text;
  LinComb e = parse_expression(o, o.p, text);
  json request = {{"char", o.p}, {"expr", e.str()}, {"cyclic", o.cyclic}, {"budget_cols", o.budget}};
  if (!e.is_zero()) e.mdeg();  // inhomogeneous input is an input error
  return ctx.emit("zero-test", request, [&](const std::string& key) {
    NilDecision r;
    if (o.cyclic && !e.is_zero()) {
      SystemDescriptor d;
      d.p = o.p;
      d.mdeg = e.mdeg();
      d.cyclic = true;
      r = zero_test_in(d, e, ctx.solve());
    } else {
      r = zero_test(e, o.p, 3, ctx.solve());
    }
    return Outcome_{attach(to_json(r), r.certificate, ctx, key, ""), r.outcome == Outcome::Undecided ? kExitUndecided : kExitOk};
  });
}

int cmd_dim(Context& ctx) {
  const Options& o = ctx.opt();
  SystemDescriptor d;
  d.p = o.p;
  d.mdeg = parse_mdeg(o.mdeg);
  d.cyclic = o.cyclic;
  d.validate();
  json request = {{"char", o.p}, {"mdeg", d.mdeg.counts()}, {"cyclic", o.cyclic}, {"budget_cols", o.budget}};
  return ctx.emit("dim", request, [&](const std::string&) {
    try {
      ComponentReport r = component_dimension(d, o.budget);
      return Outcome_{{{"words", r.words}, {"canonical_words", r.columns}, {"rows", r.rows}, {"rank", r.rank}, {"dimension", r.dimension()}},
                      kExitOk};
    } catch (const BudgetExceeded& e) {
      return Outcome_{{{"outcome", "undecided"}, {"note", e.what()}}, kExitUndecided};
    }
  });
}

int cmd_nildeg(Context& ctx) {
  const Options& o = ctx.opt();
  if (o.letters < 1) throw InputError("--letters must be positive");
  json request = {{"char", o.p}, {"letters", o.letters}, {"budget_cols", o.budget}};
  return ctx.emit("nildeg", request, [&](const std::string& key) {
    NilpotencyResult r = nilpotency_degree(o.letters, o.p, 3, ctx.solve());
    json j = attach(to_json(r), r.lower_certificate, ctx, key, "-lower");
    j["expected"] = expected_c(o.letters, o.p);
    return Outcome_{j, r.exact() ? kExitOk : kExitUndecided};
  });
}

int cmd_functional_check(Context& ctx) {
  const Options& o = ctx.opt();
  FunctionalName name;
  try {
    name = functional_from_name(o.name);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  Multidegree m;
  if (!o.mdeg.empty()) {
    m = parse_mdeg(o.mdeg);
  } else if (name == FunctionalName::Degree32) {
    m = Multidegree{3, 2};
  } else if (o.letters > 0) {
    std::vector<int> c(static_cast<std::size_t>(o.letters), 1);
    if (name == FunctionalName::SubwordCountF) c[0] = 3;
    m = Multidegree(c);
  } else {
    throw InputError("--mdeg or --letters is required for " + o.name);
  }
  ExplicitFunctional f;
  try {
    f = make_functional(name, m);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  json request = {{"char", o.p}, {"name", functional_name(name)}, {"mdeg", m.counts()}};
  return ctx.emit("functional-check", request, [&](const std::string& key) {
    std::string why;
    bool ok = verify_functional(f, o.p, &why);
    auto claimed = f.characteristics();
    json j = {{"annihilates", ok},
              {"claimed_characteristics", claimed},
              {"claimed_here", claimed.empty() || std::find(claimed.begin(), claimed.end(), o.p) != claimed.end()}};
    if (!ok) j["reason"] = why;
    std::optional<Word> target;
    if (name == FunctionalName::Degree32) {
      target = Word{1, 1, 2, 2, 1};
    } else if (name == FunctionalName::SubwordCountF) {
      Word w{1, 1};
      for (Letter x = 2; x <= static_cast<Letter>(m.letters()); ++x) w.push_back(x);
      w.push_back(1);
      target = w;
    }
    if (ok && target) {
      LinComb t = LinComb::of(*target, o.p);
      j["target"] = target->str();
      j["value"] = evaluate(f, t).to_string();
      if (!evaluate(f, t).is_zero()) j = attach(j, functional_certificate(f, o.p, t), ctx, key, "");
    }
    return Outcome_{j, ok ? kExitOk : kExitFailed};
  });
}

int cmd_amitsur(Context& ctx) {
  const Options& o = ctx.opt();
  std::string text;
  LinComb e = parse_expression(o, 0, text);
  std::vector<Word> summands;
  for (const auto& [w, c] : e.terms()) {
    if (!c.is_one()) throw InputError("amitsur takes plain summand words; coefficients are the formal q_i");
    summands.push_back(w);
  }
  if (summands.empty()) throw InputError("no summands");
  if (o.k < 1) throw InputError("--k must be positive");
  const int n = o.size > 0 ? o.size : std::max(o.k, 3);
  if (n < o.k) throw InputError("--size must be at least --k");
  json words = json::array();
  for (const Word& w : summands) words.push_back(w.str());
  json request = {{"k", o.k}, {"summands", words}, {"size", n}, {"trials", o.trials}, {"seed", o.seed}};
  return ctx.emit("amitsur", request, [&](const std::string&) {
    SigmaPoly poly = amitsur_expand(o.k, summands);
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> entry(-3, 3);
    Letter top = 0;
    for (const Word& w : summands)
      for (std::size_t i = 0; i < w.size(); ++i) top = std::max(top, w[i]);
    int agree = 0;
    for (int t = 0; t < o.trials; ++t) {
      std::map<Letter, IntMatrix> a;
      for (Letter x = 1; x <= top; ++x) {
        IntMatrix m(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n)));
        for (auto& row : m)
          for (auto& v : row) v = entry(rng);
        a[x] = m;
      }
      std::vector<mpz_class> q;
      IntMatrix sum(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
      for (const Word& w : summands) {
        q.emplace_back(entry(rng));
        IntMatrix m = evaluate_word(w, a);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) sum[i][j] += q.back() * m[i][j];
      }
      agree += sigma_eval(poly, a, q) == charpoly_coefficient(sum, o.k);
    }
    json j = {{"expansion", to_json(poly)},
              {"text", poly.str()},
              {"numeric_check", {{"trials", o.trials}, {"agree", agree}}}};
    return Outcome_{j, agree == o.trials ? kExitOk : kExitFailed};
  });
}

int cmd_trace_decompose(Context& ctx) {
  const Options& o = ctx.opt();
  std::string text;
  LinComb e = parse_expression(o, o.p, text);
  if (e.is_zero()) throw InputError("empty expression");
  e.mdeg();
  json request = {{"char", o.p}, {"form", o.form}, {"expr", e.str()}, {"budget_cols", o.budget}};
  auto single_word = [&]() {
    if (e.terms().size() != 1 || !e.terms().begin()->second.is_one())
      throw InputError("--form " + o.form + " takes a single word");
    return e.terms().begin()->first;
  };
  std::function<DecompDecision(DecompOracle&)> run;
  if (o.form == "tr") {
    run = [&](DecompOracle& d) { return d.decide_trace(TraceCombination{e}); };
  } else if (o.form == "s2") {
    Word w = single_word();
    run = [w](DecompOracle& d) { return w.size() == 1 ? d.decide_sigma_letter(2) : d.decide_sigma2(w); };
  } else if (o.form == "det") {
    Word w = single_word();
    if (w.size() != 1) throw InputError("--form det takes a single letter");
    run = [](DecompOracle& d) { return d.decide_sigma_letter(3); };
  } else {
    throw InputError("unknown --form '" + o.form + "' (tr, s2, det)");
  }
  return ctx.emit("trace-decompose", request, [&](const std::string& key) {
    DecompOracle oracle(o.p, ctx.solve());
    DecompDecision r = run(oracle);
    json j = to_json(r, false);
    if (r.basis) j["basis"] = attach(to_json(*r.basis), r.basis->certificate, ctx, key, "");
    return Outcome_{j, r.decided() ? kExitOk : kExitUndecided};
  });
}

int cmd_report(Context& ctx) {
  const Options& o = ctx.opt();
  if (o.theorem != 1 && o.theorem != 2) throw InputError("--theorem must be 1 or 2");
  auto [lo, hi] = parse_range(o.range.empty() ? (o.theorem == 1 ? "2..3" : "1..3") : o.range);
  if (lo < 1 || hi < lo) throw InputError("empty letter range");
  if (o.theorem == 1 && lo < 2) lo = 2;
  json request = {{"theorem", o.theorem}, {"char", o.p}, {"letters", {lo, hi}}, {"budget_cols", o.budget}};
  return ctx.emit("report", request, [&](const std::string& key) {
    json rows = json::array();
    bool all_exact = true;
    for (int d = lo; d <= hi; ++d) {
      json row = {{"d", d}};
      if (o.theorem == 1) {
        NilpotencyResult r = nilpotency_degree(d, o.p, 3, ctx.solve());
        auto expected = expected_c(d, o.p);
        row["computed"] = r.exact() ? json(r.lower) : json{{"lower", r.lower}, {"upper", r.upper ? json(r.upper) : json(nullptr)}};
        row["expected"] = expected;
        bool in = r.exact() && std::find(expected.begin(), expected.end(), r.lower) != expected.end();
        row["status"] = !r.exact() ? "bound" : !in ? "mismatch" : expected.size() > 1 ? "open-resolved" : "match";
        if (r.longest_nonzero) row["longest_nonzero_word"] = r.longest_nonzero->str();
        row = attach(row, r.lower_certificate, ctx, key, "-d" + std::to_string(d));
        all_exact = all_exact && in;
      } else {
        Theorem2Report r = theorem2_report(d, o.p, ctx.solve());
        json j = to_json(r, false);
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
          const auto& b = r.entries[i].decision.basis;
          if (b && b->certificate)
            j["entries"][i] = attach(j["entries"][i], b->certificate, ctx, key, "-d" + std::to_string(d) + "-" + std::to_string(i));
        }
        j.erase("schema_version");
        row.update(j);
        bool in = r.d_total.exact() && r.d_total.matches();
        row["status"] = !r.d_total.exact() ? "bound" : !in ? "mismatch" : r.d_total.expected.size() > 1 ? "open-resolved" : "match";
        all_exact = all_exact && in;
      }
      rows.push_back(row);
    }
    return Outcome_{{{"rows", rows}}, all_exact ? kExitOk : kExitUndecided};
  });
}

int cmd_verify(Context& ctx) {
  const Options& o = ctx.opt();
  json env = {{"schema_version", kSchemaVersion}, {"command", "verify"}, {"file", o.cert_file}};
  std::ifstream in(o.cert_file);
  if (!in) {
    ctx.err() << "cannot read " << o.cert_file << "\n";
    return kExitInput;
  }
  Certificate c;
  try {
    c = certificate_from_json(json::parse(in));
  } catch (const std::exception& e) {
    ctx.err() << "malformed certificate: " << e.what() << "\n";
    return kExitInput;
  }
  VerifyResult v = verify_certificate(c);
  env["kind"] = c.kind();
  env["ok"] = v.ok;
  if (!v.ok) env["reason"] = v.reason;
  ctx.print(env);
  return v.ok ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certified computations in relatively free algebras with x^3 = 0"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "seed for all randomness")->capture_default_str();
  app.add_option("--json", o.json_out, "also write the JSON output to this file");
  app.add_option("--cert-dir", o.cert_dir, "directory for certificate files");

  auto chr = [&](CLI::App* s) { s->add_option("--char", o.p, "characteristic (0 or a prime)")->capture_default_str(); };
  auto budget = [&](CLI::App* s) { s->add_option("--budget-cols", o.budget, "column budget")->capture_default_str(); };
  auto expr = [&](CLI::App* s) {
    auto* e = s->add_option("--expr", o.expr, "expression, e.g. \"x1^2 x2 - 2 x2 x1^2\"");
    auto* f = s->add_option("--file", o.file, "read the expression from a file");
    e->excludes(f);
  };

  auto* zt = app.add_subcommand("zero-test", "decide e = 0 with a certificate");
  chr(zt), budget(zt), expr(zt);
  zt->add_option("--letters", o.letters, "number of letters d");
  zt->add_flag("--cyclic", o.cyclic, "add cyclic rows (trace identities)");

  auto* dim = app.add_subcommand("dim", "dimension of a homogeneous component");
  chr(dim), budget(dim);
  dim->add_option("--mdeg", o.mdeg, "multidegree, e.g. 3,2,1")->required();
  dim->add_flag("--cyclic", o.cyclic, "add cyclic rows");

  auto* nd = app.add_subcommand("nildeg", "nilpotency degree C(3,d,K)");
  chr(nd), budget(nd);
  nd->add_option("--letters", o.letters, "number of letters d")->required();

  auto* fc = app.add_subcommand("functional-check", "check an explicit solution functional");
  chr(fc);
  fc->add_option("--name", o.name, "DEGREE_3_2, SUBWORD_COUNT_F, PARITY_PLUS or PARITY_MINUS")->required();
  fc->add_option("--mdeg", o.mdeg, "multidegree");
  fc->add_option("--letters", o.letters, "number of letters (for the (3,1,...,1) and multilinear cases)");

  auto* am = app.add_subcommand("amitsur", "expand s_k(q1 W1 + ... + qs Ws) and check it numerically");
  expr(am);
  am->add_option("--k", o.k, "index k")->capture_default_str();
  am->add_option("--size", o.size, "matrix size for the numeric check (default max(k,3))");
  am->add_option("--trials", o.trials, "random matrix tuples")->capture_default_str();

  auto* td = app.add_subcommand("trace-decompose", "decide decomposability of tr(e), s2(w) or det(x)");
  chr(td), budget(td), expr(td);
  td->add_option("--form", o.form, "tr, s2 or det")->capture_default_str();

  auto* rp = app.add_subcommand("report", "computed vs expected values of C or D");
  chr(rp), budget(rp);
  rp->add_option("--theorem", o.theorem, "1 (nilpotency degree) or 2 (generator degree)")->capture_default_str();
  rp->add_option("--letters-range", o.range, "letters, e.g. 2..5");

  auto* vf = app.add_subcommand("verify", "re-check a certificate file against a rebuilt system");
  vf->add_option("file", o.cert_file, "certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (o.p != 0 && !valid_characteristic(o.p)) {
    err << "--char must be 0 or a prime\n";
    return kExitInput;
  }
  Context ctx(o, out, err);
  try {
    if (zt->parsed()) return cmd_zero_test(ctx);
    if (dim->parsed()) return cmd_dim(ctx);
    if (nd->parsed()) return cmd_nildeg(ctx);
    if (fc->parsed()) return cmd_functional_check(ctx);
    if (am->parsed()) return cmd_amitsur(ctx);
    if (td->parsed()) return cmd_trace_decompose(ctx);
    if (rp->parsed()) return cmd_report(ctx);
    return cmd_verify(ctx);
  } catch (const ParseError& e) {
    std::string text;
    try {
      text = read_expression(o);
    } catch (const std::exception&) {
    }
    err << "parse error: " << e.what() << "\n";
    if (!text.empty() && e.position() <= text.size()) err << "  " << text << "\n  " << std::string(e.position(), ' ') << "^\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace nilcert
