#include "hfold/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hfold/basis.hpp"
#include "hfold/expr.hpp"
#include "hfold/family.hpp"
#include "hfold/lattice.hpp"
#include "hfold/repro.hpp"
#include "hfold/report.hpp"
#include "hfold/rset.hpp"
#include "hfold/sumset.hpp"

namespace hfold {

namespace {

constexpr Int kFallbackQ = 50;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const Int v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw UsageError(what + ": '" + text + "' is not an integer");
}

std::optional<Int> env_int(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return parse_int(v, name);
}

LatticePoint parse_point(const std::string& text) {
  LatticePoint p;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) p.push_back(parse_int(part, "coordinate"));
  if (p.empty()) throw UsageError("empty point '" + text + "'");
  return p;
}

std::vector<LatticePoint> parse_points(const std::string& text) {
  std::vector<LatticePoint> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (!part.empty()) out.push_back(parse_point(part));
  return out;
}

std::string point_str(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(p[i]);
  return s + ")";
}

EpSet eval_closed(const std::string& text, std::optional<Int> q, const std::string& what) {
  const AstPtr ast = parse(text);
  if (is_open(*ast) && !q) throw UsageError(what + " depends on q; pass --q");
  return eval(*ast, q);
}

Json optional_json(const std::optional<Int>& v) { return v ? Json(*v) : Json(); }

int verdict_exit(const std::vector<Verdict>& verdicts) {
  bool proper = false;
  for (const Verdict& v : verdicts) {
    if (v.status == VerdictStatus::Undetermined) return kExitUndetermined;
    proper = proper || v.status == VerdictStatus::ProperInclusionCertified;
  }
  return proper ? kExitFalsified : kExitOk;
}

struct Options {
  // shared
  std::string expr;
  std::optional<Int> q;
  Int h = 2;
  std::string format;  // empty: md for tables, text for sets
  // count
  Int x = 0;
  std::size_t list = 0;
  // family
  std::string rule;
  std::optional<std::string> limit;
  Int h_max = 4;
  Int big_q = 0;
  std::optional<Int> window;
  // basis
  std::string target = "Z";
  // maximal
  std::optional<Int> multiples;
  // lattice
  std::string point;
  std::string points;
  Int d = 1;
  Int w = 20;
  Int trials = 10;
  std::uint64_t seed = 1;
  // rset
  std::string family;
  bool all = false;
};

class Runner {
 public:
  Runner(std::ostream& out, Options& o) : out_(out), o_(o) {}

  int eval_cmd() {
    const AstPtr ast = parse(o_.expr);
    if (is_open(*ast) && !o_.q) throw UsageError("expression depends on q; pass --q");
    const EpSet s = eval(*ast, o_.q);
    if (o_.format == "json") {
      Json j;
      j["expr"] = print(*ast);
      j["q"] = optional_json(o_.q);
      j["set"] = epset_to_json(s);
      j["text"] = to_expr(s);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << to_expr(s) << "\n";
    }
    return kExitOk;
  }

  int sumset_cmd() {
    const EpSet s = h_fold(eval_closed(o_.expr, o_.q, "expression"), o_.h);
    if (o_.format == "json") {
      Json j;
      j["expr"] = print(*parse(o_.expr));
      j["h"] = o_.h;
      j["set"] = epset_to_json(s);
      j["text"] = to_expr(s);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << to_expr(s) << "\n";
    }
    return kExitOk;
  }

  int count_cmd() {
    const EpSet a = eval_closed(o_.expr, o_.q, "expression");
    out_ << count_representations(a, o_.h, o_.x).str() << "\n";
    if (o_.list > 0) {
      const RepTupleSet t = enumerate_representations(a, o_.h, o_.x, o_.list);
      for (const auto& tuple : t.tuples) {
        for (std::size_t i = 0; i < tuple.size(); ++i) out_ << (i ? " + " : "") << tuple[i];
        out_ << "\n";
      }
      if (t.truncated) out_ << "...\n";
    }
    return kExitOk;
  }

  int classify_cmd(const std::string& command) {
    const AstPtr rule = parse(o_.rule);
    std::optional<EpSet> limit;
    if (o_.limit) limit = eval_closed(*o_.limit, std::nullopt, "--limit");
    const SetFamily f = eval_family(rule, limit);
    if (!f.declared_limit) throw UsageError("--limit is required for this rule");
    if (o_.window) validate_family(f, o_.big_q, o_.window);
    const Classification c = classify_h_set(f, o_.h_max, o_.big_q);
    RunReport r;
    r.command = command;
    r.params["rule"] = print(*rule);
    r.params["limit"] = to_expr(*f.declared_limit);
    r.params["shape"] = to_string(f.shape);
    r.params["h_max"] = o_.h_max;
    r.params["Q"] = o_.big_q;
    r.params["W"] = optional_json(o_.window);
    r.columns = {"h", "status", "certificate", "witness", "evidence"};
    for (const Verdict& v : c.verdicts) {
      Json row;
      row["h"] = v.h;
      row["status"] = to_string(v.status);
      row["certificate"] = v.certificate;
      row["witness"] = optional_json(v.witness);
      row["evidence"] = v.evidence;
      r.rows.push_back(row);
    }
    r.notes = c.transfer_notes;
    emit(r);
    return verdict_exit(c.verdicts);
  }

  int basis_order_cmd(const std::string& command) {
    const EpSet a = eval_closed(o_.expr, o_.q, "expression");
    const Universe target = parse_universe(o_.target);
    const BasisReport b = basis_order(a, target, o_.h_max);
    RunReport r;
    r.command = command;
    r.params["expr"] = print(*parse(o_.expr));
    r.params["target"] = to_string(target);
    r.params["h_max"] = o_.h_max;
    r.columns = {"h", "basis"};
    for (std::size_t i = 0; i < b.per_h.size(); ++i) r.rows.push_back(Json{{"h", i + 1}, {"basis", bool(b.per_h[i])}});
    int code = kExitOk;
    if (b.order) {
      r.notes.push_back("order: " + std::to_string(*b.order));
    } else {
      const NonbasisResult n = is_nonbasis_forever(a, target, o_.h_max);
      if (n.kind == NonbasisResult::Kind::Yes) {
        r.notes.push_back("never a basis: " + n.reason);
        code = kExitFalsified;
      } else {
        r.notes.push_back("no order up to " + std::to_string(o_.h_max));
        code = kExitUndetermined;
      }
      if (b.missing) r.notes.push_back("witness: " + std::to_string(*b.missing) + " is missing from h_max A");
    }
    if (!b.certificate.empty()) r.notes.push_back("certificate: " + b.certificate);
    if (!b.identity_note.empty()) r.notes.push_back(b.identity_note);
    emit(r);
    return code;
  }

  int nonbasis_cmd() {
    const EpSet a = eval_closed(o_.expr, o_.q, "expression");
    const NonbasisResult n = is_nonbasis_forever(a, parse_universe(o_.target), o_.h_max);
    switch (n.kind) {
      case NonbasisResult::Kind::Yes:
        out_ << "nonbasis: " << n.reason << "\n";
        return kExitOk;
      case NonbasisResult::Kind::No:
        out_ << "basis of order " << n.order << "\n";
        return kExitFalsified;
      case NonbasisResult::Kind::Unknown:
        break;
    }
    out_ << "unknown: no order up to " << n.order << "\n";
    return kExitUndetermined;
  }

  int maximal_cmd() {
    if (o_.multiples) {
      const MultiplesMaximality m = multiples_maximal_nonbasis(*o_.multiples);
      if (m.maximal) {
        out_ << m.h << "*Z is a maximal nonbasis of order " << m.h << "\n";
        return kExitOk;
      }
      out_ << m.h << "*Z is not maximal: witness b = " << *m.witness << " (mod " << m.h << ")\n";
      return kExitFalsified;
    }
    if (o_.expr.empty()) throw UsageError("maximal needs --multiples or an expression");
    const EpSet a = eval_closed(o_.expr, o_.q, "expression");
    const MaximalityReport m = maximality_probe(a, o_.h, parse_universe(o_.target));
    switch (m.kind) {
      case MaximalityReport::Kind::MaximalOverProbe:
        out_ << "maximal over " << m.probed << " probed extensions\n";
        return kExitOk;
      case MaximalityReport::Kind::IsBasis:
        out_ << "is a basis of order " << o_.h << "\n";
        return kExitFalsified;
      case MaximalityReport::Kind::NotMaximal:
        break;
    }
    out_ << "not maximal: witness b = " << *m.witness << "\n";
    return kExitFalsified;
  }

  int lattice_witness_cmd() {
    const LatticePoint x = parse_point(o_.point);
    const Int q = o_.q.value_or(1);
    const std::vector<LatticePoint> parts = witness_decompose(x, o_.h, q);
    LatticePoint total(x.size(), 0);
    for (const LatticePoint& p : parts) {
      out_ << point_str(p) << "\n";
      for (std::size_t i = 0; i < p.size(); ++i) total[i] += p[i];
    }
    const bool ok = total == x && std::all_of(parts.begin(), parts.end(),
                                              [&](const LatticePoint& p) { return norm_inf(p) >= q; });
    out_ << (ok ? "sum " + point_str(total) + ", every norm >= " + std::to_string(q) : std::string("check failed"))
         << "\n";
    return ok ? kExitOk : kExitFalsified;
  }

  int lattice_count_cmd() {
    out_ << count_reps_n0d(parse_point(o_.point), o_.h).str() << "\n";
    return kExitOk;
  }

  int lattice_ray_sum_cmd() {
    const Int q = o_.q.value_or(1);
    WindowedLatticeSet a = WindowedLatticeSet::norm_ray(o_.d, q, o_.w);
    if (!o_.points.empty()) a = a.with_union(WindowedLatticeSet::finite(o_.d, o_.w, parse_points(o_.points)));
    const WindowedLatticeSet s = windowed_hfold(a, o_.h, o_.w);
    if (equals(s, WindowedLatticeSet::all(o_.d, o_.w))) {
      out_ << "all of Z^" << o_.d << "\n";
      return kExitOk;
    }
    out_ << "outside: " << to_string(s.outside().kind) << "; " << s.inside_count() << " points inside the window\n";
    return kExitFalsified;
  }

  int lattice_stable_box_cmd(const std::string& command) {
    std::mt19937_64 rng(o_.seed);
    RunReport r;
    r.command = command;
    r.params = Json{{"d", o_.d}, {"W", o_.w}, {"h", o_.h}, {"Q", o_.big_q}, {"trials", o_.trials}, {"seed", o_.seed}};
    r.columns = {"trial", "holds", "stable_points", "box_points", "mismatch"};
    bool all_hold = true;
    for (Int t = 1; t <= o_.trials; ++t) {
      const FadingFiltration f = random_fading_filtration(o_.d, o_.w, o_.big_q, 8, 30, rng);
      const StableBoxResult res = theorem2_check([&](Int q) { return f.at(q); }, o_.h, o_.big_q, f.limit);
      all_hold = all_hold && res.holds;
      r.rows.push_back(Json{{"trial", t},
                            {"holds", res.holds},
                            {"stable_points", res.stable_points},
                            {"box_points", res.box_points},
                            {"mismatch", res.mismatch ? Json(point_str(*res.mismatch)) : Json()}});
    }
    emit(r);
    return all_hold ? kExitOk : kExitFalsified;
  }

  int rset_cmd(const std::string& which, const std::string& command) {
    const CompactFamily f = parse_compact_family(o_.family);
    RunReport r;
    r.command = command;
    r.params = Json{{"family", f.str()}, {"h", o_.h}, {"Q", o_.big_q}};
    r.notes.push_back("limit: " + family_limit(f).str());
    if (which == "theorem6") {
      const HausdorffCheck c = theorem6_check(f, o_.h, o_.big_q);
      r.columns = {"q", "hausdorff"};
      for (std::size_t i = 0; i < c.hausdorff_trace.size(); ++i)
        r.rows.push_back(Json{{"q", i + 1}, {"hausdorff", rational_str(c.hausdorff_trace[i])}});
      r.notes.push_back("h-fold of the limit: " + c.h_limit.str());
      if (c.symbolic_limit) r.notes.push_back("limit of the h-fold sums: " + c.symbolic_limit->str());
      if (c.pattern_from) r.notes.push_back("pattern fixed from q = " + std::to_string(*c.pattern_from));
      r.notes.push_back(std::string("trace nonincreasing: ") + (c.trace_nonincreasing ? "yes" : "no"));
      r.notes.push_back(std::string("equality: ") + (c.equality_certified ? "certified" : "not certified"));
      if (!c.note.empty()) r.notes.push_back(c.note);
      emit(r);
      return c.equality_certified ? kExitOk : kExitUndetermined;
    }
    const MeasureCheck c = theorem8_check(f, o_.h, o_.big_q);
    r.columns = {"q", "theta"};
    for (std::size_t i = 0; i < c.theta_trace.size(); ++i)
      r.rows.push_back(Json{{"q", i + 1}, {"theta", rational_str(c.theta_trace[i])}});
    r.notes.push_back("theta: " + rational_str(c.theta));
    if (c.theta_symbolic)
      r.notes.push_back("theta(q) = " + c.theta_symbolic->str() + " for q >= " + std::to_string(c.theta_from));
    r.notes.push_back(std::string("trace nonincreasing: ") + (c.trace_nonincreasing ? "yes" : "no"));
    r.notes.push_back(std::string("verified: ") + (c.verified ? "yes" : "no"));
    emit(r);
    return c.verified ? kExitOk : kExitUndetermined;
  }

  int repro_cmd() {
    if (!o_.all) throw UsageError("repro needs --all");
    RunReport r;
    r.command = "repro --all";
    r.columns = {"check", "result", "claim", "detail"};
    bool ok = true;
    for (const ReproOutcome& o : run_repro()) {
      ok = ok && o.passed;
      r.rows.push_back(Json{{"check", o.name}, {"result", o.passed ? "PASS" : "FAIL"}, {"claim", o.claim},
                            {"detail", o.detail}});
    }
    emit(r);
    return ok ? kExitOk : kExitFalsified;
  }

 private:
  void emit(const RunReport& r) { out_ << render(r, parse_report_format(o_.format.empty() ? "md" : o_.format)); }

  std::ostream& out_;
  Options& o_;
};

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact h-fold sumset experiments", "hfold"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1, 1);

  Int default_q = kFallbackQ;
  std::optional<Int> default_window;
  try {
    default_q = env_int("HFOLD_DEFAULT_Q").value_or(kFallbackQ);
    default_window = env_int("HFOLD_DEFAULT_WINDOW");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  o.big_q = default_q;
  o.window = default_window;

  auto add_q = [&](CLI::App* s) { s->add_option("--q", o.q, "instantiate q"); };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"md", "json", "csv"}));
  };

  CLI::App* eval_app = app.add_subcommand("eval", "evaluate an expression");
  eval_app->add_option("expr", o.expr)->required();
  add_q(eval_app);
  eval_app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  CLI::App* sumset_app = app.add_subcommand("sumset", "h-fold sumset");
  sumset_app->add_option("expr", o.expr)->required();
  sumset_app->add_option("--h", o.h)->required()->check(CLI::PositiveNumber);
  add_q(sumset_app);
  sumset_app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  CLI::App* count_app = app.add_subcommand("count", "representation count r_{A,h}(x)");
  count_app->add_option("expr", o.expr)->required();
  count_app->add_option("--h", o.h)->required()->check(CLI::PositiveNumber);
  count_app->add_option("--x", o.x)->required();
  count_app->add_option("--list", o.list, "list up to this many tuples");
  add_q(count_app);

  CLI::App* family_app = app.add_subcommand("family", "decreasing families");
  family_app->require_subcommand(1, 1);
  CLI::App* classify_app = family_app->add_subcommand("classify", "verdicts for h = 1..hmax");
  classify_app->add_option("--rule", o.rule)->required();
  classify_app->add_option("--limit", o.limit);
  classify_app->add_option("--hmax", o.h_max)->check(CLI::PositiveNumber);
  classify_app->add_option("--Q", o.big_q)->check(CLI::PositiveNumber);
  classify_app->add_option("--window", o.window)->check(CLI::NonNegativeNumber);

  CLI::App* basis_app = app.add_subcommand("basis-order", "least h with hA = target");
  basis_app->add_option("expr", o.expr)->required();
  basis_app->add_option("--target", o.target)->check(CLI::IsMember({"Z", "N", "N0"}));
  basis_app->add_option("--hmax", o.h_max)->check(CLI::PositiveNumber);
  add_q(basis_app);

  CLI::App* nonbasis_app = app.add_subcommand("nonbasis", "criteria for never being a basis");
  nonbasis_app->add_option("expr", o.expr)->required();
  nonbasis_app->add_option("--target", o.target)->check(CLI::IsMember({"Z", "N", "N0"}));
  nonbasis_app->add_option("--hmax", o.h_max)->check(CLI::PositiveNumber);
  add_q(nonbasis_app);

  CLI::App* maximal_app = app.add_subcommand("maximal", "maximal nonbasis tests");
  maximal_app->add_option("--multiples", o.multiples, "test h*Z")->check(CLI::Range(Int(2), Int(1) << 40));
  maximal_app->add_option("expr", o.expr);
  maximal_app->add_option("--h", o.h)->check(CLI::PositiveNumber);
  maximal_app->add_option("--target", o.target)->check(CLI::IsMember({"Z", "N", "N0"}));
  add_q(maximal_app);

  CLI::App* lattice_app = app.add_subcommand("lattice", "Z^d and N0^d experiments");
  lattice_app->require_subcommand(1, 1);
  CLI::App* witness_app = lattice_app->add_subcommand("witness", "x = y + (h-1)z with norms >= q");
  witness_app->add_option("--x", o.point, "point, e.g. 3,-4")->required();
  witness_app->add_option("--h", o.h)->required();
  add_q(witness_app);
  CLI::App* lcount_app = lattice_app->add_subcommand("count", "r_{N0^d,h}(n)");
  lcount_app->add_option("--n", o.point, "point, e.g. 4,4")->required();
  lcount_app->add_option("--h", o.h)->required()->check(CLI::PositiveNumber);
  CLI::App* ray_app = lattice_app->add_subcommand("ray-sum", "h-fold of A ∪ {|x| >= q}");
  ray_app->add_option("--d", o.d)->check(CLI::Range(1, 3));
  ray_app->add_option("--h", o.h)->required()->check(CLI::PositiveNumber);
  ray_app->add_option("--w", o.w, "window radius")->check(CLI::PositiveNumber);
  ray_app->add_option("--points", o.points, "finite part, e.g. 0,0;1,2");
  add_q(ray_app);
  CLI::App* box_app = lattice_app->add_subcommand("stable-box", "random decreasing filtrations in N0^d");
  box_app->add_option("--d", o.d)->check(CLI::Range(1, 3));
  box_app->add_option("--w", o.w, "box side")->check(CLI::PositiveNumber);
  box_app->add_option("--h", o.h)->check(CLI::PositiveNumber);
  box_app->add_option("--Q", o.big_q)->check(CLI::PositiveNumber);
  box_app->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  box_app->add_option("--seed", o.seed);

  CLI::App* rset_app = app.add_subcommand("rset", "interval unions in R");
  rset_app->require_subcommand(1, 1);
  std::vector<CLI::App*> rset_subs;
  for (const char* name : {"theorem6", "theorem8"}) {
    CLI::App* s = rset_app->add_subcommand(name, name[7] == '6' ? "Hausdorff trace and limit sumset"
                                                                : "measure trace of the h-fold sums");
    s->add_option("--family", o.family, "e.g. \"[0, 1 + 1/q] | [3, 4]\"")->required();
    s->add_option("--h", o.h)->required()->check(CLI::PositiveNumber);
    s->add_option("--Q", o.big_q)->check(CLI::PositiveNumber);
    rset_subs.push_back(s);
  }

  CLI::App* repro_app = app.add_subcommand("repro", "rerun the reference constructions");
  repro_app->add_flag("--all", o.all);

  for (CLI::App* s : {classify_app, basis_app, box_app, rset_subs[0], rset_subs[1], repro_app})
    add_format(s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  Runner run(out, o);
  try {
    if (*eval_app) return run.eval_cmd();
    if (*sumset_app) return run.sumset_cmd();
    if (*count_app) return run.count_cmd();
    if (*classify_app) return run.classify_cmd("family classify");
    if (*basis_app) return run.basis_order_cmd("basis-order");
    if (*nonbasis_app) return run.nonbasis_cmd();
    if (*maximal_app) return run.maximal_cmd();
    if (*witness_app) return run.lattice_witness_cmd();
    if (*lcount_app) return run.lattice_count_cmd();
    if (*ray_app) return run.lattice_ray_sum_cmd();
    if (*box_app) return run.lattice_stable_box_cmd("lattice stable-box");
    if (*rset_subs[0]) return run.rset_cmd("theorem6", "rset theorem6");
    if (*rset_subs[1]) return run.rset_cmd("theorem8", "rset theorem8");
    if (*repro_app) return run.repro_cmd();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace hfold
