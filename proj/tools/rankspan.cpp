// rankspan command-line front end.
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rankspan/affine.hpp"
#include "rankspan/json_io.hpp"
#include "rankspan/nilspec.hpp"
#include "rankspan/random.hpp"
#include "rankspan/strata.hpp"
#include "rankspan/subspace.hpp"
#include "rankspan/suites.hpp"

using namespace rankspan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::optional<std::size_t> n, p, r, s, k, d, codim;
  std::optional<unsigned> q;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  bool exhaustive = false;
  std::string mode;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;
  bool no_timing = false;
  bool inject_fault = false;

  std::string construct_name;
  std::string input;
  std::optional<std::size_t> span;
  bool profile = false;
  std::string suite;
};

std::uint64_t budget_of(const Config& c) { return c.budget.value_or(default_budget()); }

void emit(const std::string& text, const Config& c) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InvalidArgument("cannot write " + c.out);
  f << text;
}

std::string profile_string(const RankProfile& prof) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t r = 0; r < prof.counts.size(); ++r) {
    if (!prof.counts[r]) continue;
    os << (first ? "" : ",") << r << ':' << prof.counts[r];
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_construct(const Config& c) {
  const Fq f(c.q.value_or(2));
  const std::size_t n = c.n.value_or(2);
  const std::size_t p = c.p.value_or(n);
  json doc;
  std::ostringstream summary;
  const std::string& name = c.construct_name;
  auto need = [&](const std::optional<std::size_t>& v, const char* flag) {
    if (!v) throw InvalidArgument("construct " + name + " needs " + flag);
    return *v;
  };
  auto linear = [&](const MatSubspace& v) {
    doc = subspace_to_json(v);
    summary << name << ": linear " << v.rows() << 'x' << v.cols() << " over F_" << v.q() << ", dim " << v.dim()
            << ", codim " << v.codim() << '\n';
  };
  auto affine = [&](const AffineMatSubspace& a) {
    doc = affine_to_json(a);
    summary << name << ": affine " << a.rows() << 'x' << a.cols() << " over F_" << a.field().q() << ", dim "
            << a.dim() << ", codim " << a.codim() << '\n';
  };
  if (name == "sl2_f2") {
    if (c.q && *c.q != 2) throw InvalidArgument("sl2_f2 lives over F_2");
    linear(sl2_f2());
  } else if (name == "jk") {
    affine(AffineMatSubspace(block_identity(f, n, p, need(c.k, "--k")), MatSubspace::zero(f, n, p)));
  } else if (name == "extremal_affine") {
    affine(extremal_affine(n, p, need(c.k, "--k"), f, budget_of(c)));
  } else if (name == "unspanned") {
    linear(unspanned_subspace(n, p, need(c.r, "--r"), f, budget_of(c)));
  } else if (name == "random") {
    Rng rng(derive_seed(c.seed, {n, p, f.q()}));
    linear(random_subspace(f, n, p, need(c.codim, "--codim"), rng));
  } else {
    linear(named_space(name, NamedSpaceParams{f.q(), n, p == n ? 0 : p}));
  }
  if (c.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    std::cerr << summary.str();
  } else {
    save_document(c.out, doc);
    std::cout << summary.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const Config& c) {
  const json doc = load_document(c.input);
  const std::uint64_t budget = budget_of(c);
  json report{{"version", std::string(kVersion)}, {"file", c.input}};
  std::vector<std::pair<std::string, std::string>> rows;
  auto row = [&](std::string key, std::string value) { rows.emplace_back(std::move(key), std::move(value)); };

  // Optional parts degrade to "skipped" unless explicitly requested.
  auto attempt = [&](bool requested, const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const BudgetExceeded& e) {
      if (requested) throw;
      report[key] = json{{"skipped", e.what()}};
      row(key, "skipped (over budget)");
    }
  };

  if (is_affine_document(doc)) {
    AffineMatSubspace a = affine_from_json(doc);
    report["kind"] = "affine";
    report["q"] = a.field().q();
    report["rows"] = a.rows();
    report["cols"] = a.cols();
    report["dim"] = a.dim();
    report["codim"] = a.codim();
    report["linear"] = a.is_linear();
    row("kind", "affine");
    row("shape", std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " over F_" + std::to_string(a.field().q()));
    row("dim", std::to_string(a.dim()));
    row("codim", std::to_string(a.codim()));
    row("linear", a.is_linear() ? "yes" : "no");
    attempt(false, "min_rank", [&] {
      const std::size_t mr = min_rank(a, budget);
      report["min_rank"] = mr;
      row("min_rank", std::to_string(mr));
    });
    attempt(false, "flanders", [&] {
      Verdict v = check_flanders(a, budget);
      report["flanders"] = std::string(to_string(v.status));
      row("flanders", std::string(to_string(v.status)));
    });
  } else {
    MatSubspace v = subspace_from_json(doc);
    report["kind"] = "linear";
    report["q"] = v.q();
    report["rows"] = v.rows();
    report["cols"] = v.cols();
    report["dim"] = v.dim();
    report["codim"] = v.codim();
    row("kind", "linear");
    row("shape", std::to_string(v.rows()) + "x" + std::to_string(v.cols()) + " over F_" + std::to_string(v.q()));
    row("dim", std::to_string(v.dim()));
    row("codim", std::to_string(v.codim()));
    if (c.profile || !c.span) {
      attempt(c.profile, "profile", [&] {
        RankProfile prof = rank_profile(v, budget);
        report["profile"] = prof.to_json();
        row("profile", profile_string(prof));
      });
    }
    std::vector<std::size_t> ranks;
    if (c.span) {
      ranks.push_back(*c.span);
    } else {
      for (std::size_t r = 1; r <= std::min(v.rows(), v.cols()); ++r) ranks.push_back(r);
    }
    json spans = json::object();
    for (auto r : ranks) {
      attempt(c.span.has_value(), "span_of_rank", [&] {
        MatSubspace s = span_of_rank(v, r, budget);
        spans[std::to_string(r)] = json{{"dim", s.dim()}, {"equals_v", s == v}};
        row("span_of_rank(" + std::to_string(r) + ")", s == v ? "= V" : "dim " + std::to_string(s.dim()) + " (proper)");
      });
    }
    if (!report.contains("span_of_rank")) report["span_of_rank"] = spans;
    if (v.rows() == v.cols()) {
      attempt(false, "zero_spectrum", [&] {
        Verdict z = has_zero_spectrum_property(v, budget);
        report["zero_spectrum"] = z.status == Status::Pass;
        row("zero_spectrum", z.status == Status::Pass ? "yes" : "no");
      });
    }
    if (v.rows() == 2 && v.cols() == 2 && v.q() == 2 && v.dim() == 3) {
      std::string cls(to_string(classify_hyperplane_2x2_f2(v)));
      report["class"] = cls;
      row("class", cls);
    }
  }

  if (c.format == "json") {
    emit(report.dump(2) + "\n", c);
  } else {
    std::ostringstream os;
    os << "rankspan " << kVersion << '\n';
    for (auto& [k, val] : rows) os << std::left << std::setw(18) << k << val << '\n';
    emit(os.str(), c);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::string human_verdict(const Verdict& v) {
  std::ostringstream os;
  os << "rankspan " << kVersion << '\n';
  os << std::left << std::setw(14) << "suite" << v.suite << '\n';
  os << std::setw(14) << "status" << to_string(v.status) << '\n';
  os << std::setw(14) << "seed" << v.seed << '\n';
  os << std::setw(14) << "params" << v.params.dump() << '\n';
  os << std::setw(14) << "elapsed_ms" << v.elapsed_ms << '\n';
  os << "counts\n";
  for (auto& [k, c] : v.counts) os << "  " << std::setw(40) << k << c << '\n';
  if (v.witness.contains("counterexample")) os << "counterexample " << v.witness["counterexample"].dump() << '\n';
  if (v.witness.contains("error")) os << "error          " << v.witness["error"].dump() << '\n';
  return os.str();
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass:
    case Status::ExceptionRegime:
    case Status::Vacuous:
      return kExitOk;
    case Status::Fail:
      return kExitFail;
    default:
      return kExitUsage;
  }
}

void emit_verdict(const Verdict& v, const Config& c) {
  const std::string js = v.to_json().dump(2) + "\n";
  if (!c.out.empty()) {
    emit(js, c);
    if (c.format == "human") std::cout << human_verdict(v);
    return;
  }
  std::cout << (c.format == "human" ? human_verdict(v) : js);
}

int cmd_verify(const Config& c) {
  SuiteRequest req;
  req.suite = c.suite;
  req.n = c.n;
  req.p = c.p;
  req.r = c.r;
  req.s = c.s;
  req.k = c.k;
  req.d = c.d;
  req.codim = c.codim;
  req.q = c.q;
  req.exhaustive = c.exhaustive;
  req.mode = c.mode;
  req.options.seed = c.seed;
  req.options.budget = budget_of(c);
  req.options.threads = c.threads;
  req.options.inject_fault = c.inject_fault;
  req.options.timing = !c.no_timing;
  const bool family = c.suite == "combin" || c.suite == "triangularize";
  req.options.trials = c.trials.value_or(family ? 1000 : 500);
  try {
    Verdict v = run_suite(req);
    emit_verdict(v, c);
    return exit_code(v.status);
  } catch (const BudgetExceeded& e) {
    Verdict v;
    v.suite = c.suite;
    v.status = Status::BudgetExceeded;
    v.seed = c.seed;
    v.witness = json{{"error", e.what()}, {"required", e.required()}, {"budget", e.budget()}};
    emit_verdict(v, c);
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

// Re-checks a saved verdict: the sample witness must validate and any
// counterexample must reproduce.
int cmd_check(const Config& c) {
  Verdict v = Verdict::from_json(load_document(c.input));
  bool ok = true;
  if (v.witness.contains("sample")) {
    const bool valid = validate_witness(v.witness["sample"]);
    std::cout << "sample witness: " << (valid ? "valid" : "INVALID") << '\n';
    ok = ok && valid;
  }
  if (v.witness.contains("counterexample")) {
    const bool again = reproduce_failure(v.witness["counterexample"]);
    std::cout << "counterexample: " << (again ? "reproduces" : "DOES NOT REPRODUCE") << '\n';
    ok = ok && again;
  }
  return ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rank-stratum and subspace verification over small prime fields", "rankspan"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", c.q, "field order (2, 3, 5 or 7)");
    sub->add_option("--n", c.n, "row count n");
    sub->add_option("--p", c.p, "column count p");
    sub->add_option("--r", c.r, "rank r");
    sub->add_option("--s", c.s, "rank s <= r");
    sub->add_option("--k", c.k, "rank k");
    sub->add_option("--codim", c.codim, "codimension");
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--budget", c.budget, "enumeration budget in elements (env RANKSPAN_BUDGET)");
    sub->add_option("--out", c.out, "output path");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "json"}));
  };

  auto* construct = app.add_subcommand("construct", "write a named subspace or coset to JSON");
  construct->add_option("name", c.construct_name, "sl2_f2 | t_upper | t_strict_upper | t_lower | jk | extremal_affine | unspanned | random")
      ->required();
  add_common(construct);

  auto* analyze = app.add_subcommand("analyze", "report invariants of a subspace or coset file");
  analyze->add_option("file", c.input)->required()->check(CLI::ExistingFile);
  analyze->add_option("--span", c.span, "span of the rank-r stratum");
  analyze->add_flag("--profile", c.profile, "rank profile");
  add_common(analyze);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", c.suite)->required()->check(CLI::IsMember(suite_names()));
  add_common(verify);
  verify->add_option("--d", c.d, "subspace dimension for exhaustive scans");
  verify->add_option("--trials", c.trials, "randomized trials per parameter point");
  verify->add_flag("--exhaustive", c.exhaustive, "exhaustive scan");
  verify->add_option("--mode", c.mode, "construct | exhaustive | recursive")
      ->check(CLI::IsMember({"construct", "exhaustive", "recursive"}));
  verify->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  verify->add_flag("--no-timing", c.no_timing, "report elapsed_ms as 0");
  verify->add_flag("--inject-fault", c.inject_fault)->group("");

  auto* check = app.add_subcommand("check", "re-validate the witnesses in a saved verdict");
  check->add_option("file", c.input)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(c);
    if (*analyze) return cmd_analyze(c);
    if (*verify) return cmd_verify(c);
    if (*check) return cmd_check(c);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
