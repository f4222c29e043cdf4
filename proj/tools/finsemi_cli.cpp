// finsemi: command-line front end for the finite semigroup workbench.
//
//   finsemi validate <file>
//   finsemi analyze  <file> [--congruences] [--end] [--aut] [--fully-invariant]
//                           [--characteristic] [--hopfian] [--census]
//                           [--congruence "{0 2}{1 3}"] [--index-bound N]
//   finsemi rho      <file> [--index-bound N]
//   finsemi theorem9 <file> --family "<c1>;<c2>;..." [--allow-nonseparating]
//   finsemi tower    --kind left-zero --levels K | --file <tower file>
//   finsemi end      <file>
//   finsemi aut      <file>
//
// Common flags: --format text|json, --cap-end N, --cap-congruences N,
// --max-order N. Exit codes: 0 ok, 1 domain error, 2 usage or parse error,
// 3 cap exceeded.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finsemi/finsemi.hpp"
#include "finsemi/report.hpp"

namespace {

using finsemi::Congruence;
using finsemi::Element;
using finsemi::EndoMonoid;
using finsemi::FiniteSemigroup;
using finsemi::Report;
using Value = Report::Value;

struct Common {
  std::string   format          = "text";
  std::uint64_t cap_end         = finsemi::Limits{}.max_endomorphisms;
  std::uint64_t cap_congruences = finsemi::Limits{}.max_congruences;
  std::uint64_t max_order       = finsemi::Limits{}.max_order;

  finsemi::Limits limits() const {
    finsemi::Limits l;
    l.max_endomorphisms = cap_end;
    l.max_congruences   = cap_congruences;
    l.max_order         = max_order;
    return l;
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--cap-end", common.cap_end, "Cap on |End S|");
  cmd->add_option("--cap-congruences", common.cap_congruences,
                  "Cap on the number of congruences");
  cmd->add_option("--max-order", common.max_order,
                  "Size bound for semigroups, products and thread sets");
}

std::string set_literal(std::vector<Element> const& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += (i ? " " : "") + std::to_string(xs[i]);
  }
  return out + "}";
}

std::string thread_literal(finsemi::Thread const& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.components.size(); ++i) {
    out += (i ? " " : "") + std::to_string(t.components[i]);
  }
  return out + ")";
}

Value map_list(EndoMonoid const& ends, std::vector<std::size_t> const& idx) {
  Value out = Value::array();
  for (auto i : idx) {
    out.push_back(finsemi::render_map(ends.element(i)));
  }
  return out;
}

Value all_maps(EndoMonoid const& ends) {
  Value out = Value::array();
  for (auto const& f : ends.elements()) {
    out.push_back(finsemi::render_map(f));
  }
  return out;
}

void add_invariance_witness(Report& report, std::string const& check,
                            Congruence const&               rho,
                            finsemi::InvarianceResult const& r) {
  if (r.witness) {
    Value w;
    w["check"]      = check;
    w["congruence"] = finsemi::io::format_congruence(rho);
    w["map"]        = finsemi::render_map(r.witness->map);
    w["a"]          = r.witness->a;
    w["b"]          = r.witness->b;
    report.witness(std::move(w));
  }
}

int emit(Report const& report, Common const& common) {
  std::cout << (common.format == "json" ? report.to_json()
                                        : report.to_text());
  return 0;
}

int cmd_validate(std::string const& path, Common const& common) {
  Report report("validate");
  report.input("path", path);
  try {
    auto S = finsemi::io::load_semigroup(path);
    report.finding("order", S.order());
    report.finding("associative", true);
    auto idem = finsemi::idempotents(S);
    report.finding("idempotent_count", idem.size());
    report.finding("idempotents", set_literal(idem));
    report.finding("generating_set",
                   set_literal(finsemi::minimal_generating_set(S)));
    return emit(report, common);
  } catch (finsemi::NotAssociative const& e) {
    report.finding("associative", false);
    Value w;
    w["check"] = "associativity";
    w["a"]     = e.a();
    w["b"]     = e.b();
    w["c"]     = e.c();
    report.witness(std::move(w));
  } catch (finsemi::OutOfRangeEntry const& e) {
    report.finding("closed", false);
    Value w;
    w["check"] = "closure";
    w["row"]   = e.row();
    w["col"]   = e.col();
    report.witness(std::move(w));
  }
  emit(report, common);
  return 1;
}

struct AnalyzeFlags {
  bool                       congruences     = false;
  bool                       end             = false;
  bool                       aut             = false;
  bool                       fully_invariant = false;
  bool                       characteristic  = false;
  bool                       hopfian         = false;
  bool                       census          = false;
  std::optional<std::size_t> index_bound;
  std::optional<std::string> congruence;  // restricts the invariance verdicts

  bool none() const {
    return !(congruences || end || aut || fully_invariant || characteristic
             || hopfian || census || index_bound);
  }
};

Value rho_finding(FiniteSemigroup const& S, std::size_t n,
                  finsemi::CongruenceFamily const& lattice,
                  finsemi::Limits const&           limits) {
  std::size_t members = 0;
  for (auto const& c : lattice) {
    members += c.index() <= n;
  }
  auto  rho = finsemi::rho_n(S, n, limits);
  Value v;
  v["index_bound"]     = n;
  v["family_size"]     = members;
  v["rho_n"]           = finsemi::io::format_congruence(rho);
  v["index"]           = rho.index();
  v["fully_invariant"] = finsemi::is_fully_invariant(rho, limits).holds;
  return v;
}

int cmd_analyze(std::string const& path, AnalyzeFlags flags,
                Common const& common) {
  auto const limits = common.limits();
  auto       S      = finsemi::io::load_semigroup(path);
  if (flags.none() && flags.congruence) {
    flags.fully_invariant = flags.characteristic = true;
  } else if (flags.none()) {
    flags.congruences = flags.end = flags.aut = flags.fully_invariant
        = flags.characteristic = flags.hopfian = flags.census = true;
  }
  Report report("analyze");
  report.input("path", path);
  if (flags.index_bound) {
    report.input("index_bound", *flags.index_bound);
  }
  std::optional<Congruence> only;
  if (flags.congruence) {
    only = finsemi::io::parse_congruence(S, *flags.congruence);
    report.input("congruence", finsemi::io::format_congruence(*only));
  }
  report.finding("order", S.order());
  report.finding("generating_set",
                 set_literal(finsemi::minimal_generating_set(S)));

  std::optional<finsemi::CongruenceFamily> lattice;
  if (flags.congruences || flags.index_bound
      || (!only && (flags.fully_invariant || flags.characteristic))) {
    lattice = finsemi::all_congruences(S, limits);
  }
  std::vector<Congruence> checked;
  if (only) {
    checked.push_back(*only);
  } else if (lattice) {
    checked.assign(lattice->begin(), lattice->end());
  }
  std::optional<EndoMonoid> ends;
  if (flags.end || flags.aut || flags.fully_invariant || flags.characteristic
      || flags.hopfian) {
    ends = finsemi::enumerate_end(S, limits);
  }

  if (flags.congruences) {
    report.finding("congruence_count", lattice->size());
    Value list = Value::array();
    for (auto const& c : *lattice) {
      list.push_back(finsemi::io::format_congruence(c));
    }
    report.finding("congruences", std::move(list));
  }
  if (flags.end) {
    report.finding("end_size", ends->size());
    report.finding("endomorphisms", all_maps(*ends));
  }
  if (flags.aut) {
    auto aut = finsemi::aut_group(*ends);
    report.finding("aut_size", aut.size());
    report.finding("automorphisms", map_list(*ends, aut));
  }
  if (flags.fully_invariant) {
    Value verdicts = Value::object();
    for (auto const& c : checked) {
      auto r = finsemi::is_fully_invariant(c, *ends);
      verdicts[finsemi::io::format_congruence(c)] = r.holds;
      add_invariance_witness(report, "fully-invariant", c, r);
    }
    report.finding("fully_invariant", std::move(verdicts));
  }
  if (flags.characteristic) {
    Value verdicts = Value::object();
    for (auto const& c : checked) {
      auto r = finsemi::is_characteristic(c, *ends);
      verdicts[finsemi::io::format_congruence(c)] = r.holds;
      add_invariance_witness(report, "characteristic", c, r);
    }
    report.finding("characteristic", std::move(verdicts));
  }
  if (flags.hopfian) {
    auto  h = finsemi::hopfian_report(*ends);
    Value v;
    v["surjective"]               = h.surjective.size();
    v["bijective"]                = h.bijective.size();
    v["units"]                    = h.units.size();
    v["surjective_are_bijective"] = h.surjective_are_bijective;
    v["surjective_are_units"]     = h.surjective_are_units;
    v["surjective_closed"]        = h.surjective_closed;
    v["only_identity_idempotent"] = h.only_identity_idempotent;
    v["hopfian"]                  = h.ok();
    report.finding("hopfian", std::move(v));
  }
  if (flags.census) {
    auto  X = finsemi::minimal_generating_set(S);
    auto  c = finsemi::extension_census(S, X, limits);
    Value v;
    v["generators"] = set_literal(X);
    v["extendable"] = c.extendable;
    v["total"]      = c.total;
    v["equal"]      = c.equal;
    report.finding("census", std::move(v));
  }
  if (flags.index_bound) {
    report.finding("rho", rho_finding(S, *flags.index_bound, *lattice, limits));
  }
  return emit(report, common);
}

int cmd_rho(std::string const& path, std::optional<std::size_t> bound,
            Common const& common) {
  auto const limits  = common.limits();
  auto       S       = finsemi::io::load_semigroup(path);
  auto       lattice = finsemi::all_congruences(S, limits);
  Report     report("rho");
  report.input("path", path);
  if (bound) {
    report.input("index_bound", *bound);
  }
  report.finding("order", S.order());
  report.finding("congruence_count", lattice.size());
  Value rows = Value::array();
  std::size_t lo = bound ? *bound : 1, hi = bound ? *bound : S.order();
  for (std::size_t n = lo; n <= hi; ++n) {
    rows.push_back(rho_finding(S, n, lattice, limits));
  }
  report.finding("rho", std::move(rows));
  return emit(report, common);
}

int cmd_theorem9(std::string const& path, std::string const& family,
                 bool allow_nonseparating, Common const& common) {
  auto const limits = common.limits();
  auto       S      = finsemi::io::load_semigroup(path);
  auto       chain  = finsemi::io::parse_family(S, family);
  finsemi::Theorem9Options options;
  options.require_equality = !allow_nonseparating;
  auto r = finsemi::verify_theorem9(S, chain, options, limits);

  Report report("theorem9");
  report.input("path", path);
  report.input("family", family);
  report.input("allow_nonseparating", allow_nonseparating);
  report.finding("end_size", r.ends.size());
  Value levels = Value::array();
  for (std::size_t j = 0; j < chain.size(); ++j) {
    Value v;
    v["congruence"]    = finsemi::io::format_congruence(chain[j]);
    v["quotient_order"] = chain[j].index();
    v["end_quotient_size"] = r.restrictions[j].target.size();
    v["image_size"]    = r.quotient_sizes[j];
    v["kernel"] = finsemi::io::format_congruence(
        r.restrictions[j].kernel.congruence);
    levels.push_back(std::move(v));
  }
  report.finding("levels", std::move(levels));
  report.finding("thread_count", r.threads.size());
  report.finding("separates_points", r.injective);
  report.finding("surjective_onto_limit", r.surjective);
  report.finding("homomorphism", r.homomorphism);
  report.finding("isomorphism", r.isomorphism);
  if (r.injectivity_witness) {
    Value w;
    w["check"] = "separates-points";
    w["f"]     = finsemi::render_map(r.ends.element(r.injectivity_witness->first));
    w["g"] = finsemi::render_map(r.ends.element(r.injectivity_witness->second));
    report.witness(std::move(w));
  }
  if (r.surjectivity_witness) {
    Value w;
    w["check"]  = "surjective";
    w["thread"] = thread_literal(*r.surjectivity_witness);
    report.witness(std::move(w));
  }
  emit(report, common);
  return r.isomorphism ? 0 : 1;
}

int cmd_tower_left_zero(std::size_t k, Common const& common) {
  auto   tower = finsemi::left_zero_tower(k, common.limits());
  Report report("tower");
  report.input("kind", "left-zero");
  report.input("levels", k);
  Value levels = Value::array();
  for (auto const& d : tower.diagnostics) {
    Value v;
    v["word_length"] = d.word_length;
    v["order"]       = d.order;
    if (d.index2_counted) {
      v["index2_count"] = *d.index2_counted;
    } else {
      v["index2_count"] = "not enumerated";
    }
    v["index2_formula"] = d.index2_formula;
    v["agrees"]         = d.agrees;
    levels.push_back(std::move(v));
  }
  report.finding("levels", std::move(levels));
  Value shifts = Value::array();
  for (std::size_t i = 1; i < tower.levels(); ++i) {
    auto  s = finsemi::shift_between_levels(tower, i);
    Value v;
    v["from_word_length"] = i + 1;
    v["to_word_length"]   = i;
    v["surjective"]       = s.is_surjective();
    v["injective"]        = s.is_injective();
    shifts.push_back(std::move(v));
  }
  report.finding("shifts", std::move(shifts));
  return emit(report, common);
}

int cmd_tower_file(std::string const& path, Common const& common) {
  auto   sys     = finsemi::io::load_tower(path);
  auto   threads = finsemi::limit_threads(sys, common.limits());
  Report report("tower");
  report.input("file", path);
  Value orders = Value::array();
  for (auto const& L : sys.levels()) {
    orders.push_back(L.order());
  }
  report.finding("level_orders", std::move(orders));
  report.finding("thread_count", threads.size());
  Value list = Value::array();
  for (auto const& t : threads) {
    list.push_back(thread_literal(t));
  }
  report.finding("threads", std::move(list));
  return emit(report, common);
}

int cmd_end(std::string const& path, Common const& common) {
  auto   S    = finsemi::io::load_semigroup(path);
  auto   ends = finsemi::enumerate_end(S, common.limits());
  Report report("end");
  report.input("path", path);
  report.finding("order", S.order());
  report.finding("end_size", ends.size());
  report.finding("identity_index", ends.identity_index());
  report.finding("endomorphisms", all_maps(ends));
  return emit(report, common);
}

int cmd_aut(std::string const& path, Common const& common) {
  auto   S    = finsemi::io::load_semigroup(path);
  auto   ends = finsemi::enumerate_end(S, common.limits());
  auto   aut  = finsemi::aut_group(ends);
  Report report("aut");
  report.input("path", path);
  report.finding("order", S.order());
  report.finding("aut_size", aut.size());
  report.finding("units_are_automorphisms", aut == ends.unit_indices());
  report.finding("automorphisms", map_list(ends, aut));
  return emit(report, common);
}

int exit_code(finsemi::ErrorKind kind) {
  switch (kind) {
    case finsemi::ErrorKind::domain:
      return 1;
    case finsemi::ErrorKind::usage:
      return 2;
    case finsemi::ErrorKind::cap:
      return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite semigroup workbench: congruences, End S, inverse limits"};
  app.require_subcommand(1);

  Common       common;
  std::string  path;
  AnalyzeFlags flags;
  std::size_t  index_bound = 0;
  std::string  family;
  bool         allow_nonseparating = false;
  std::string  kind                = "left-zero";
  std::size_t  levels              = 0;
  std::string  tower_file;

  auto* validate = app.add_subcommand("validate", "Validate a semigroup file");
  validate->add_option("path", path, "Semigroup file")->required();

  auto* analyze = app.add_subcommand("analyze", "Analyse a semigroup");
  analyze->add_option("path", path, "Semigroup file")->required();
  analyze->add_flag("--congruences", flags.congruences, "Congruence lattice");
  analyze->add_flag("--end", flags.end, "Endomorphism monoid");
  analyze->add_flag("--aut", flags.aut, "Automorphism group");
  analyze->add_flag("--fully-invariant", flags.fully_invariant,
                    "Fully invariant verdicts per congruence");
  analyze->add_flag("--characteristic", flags.characteristic,
                    "Characteristic verdicts per congruence");
  analyze->add_flag("--hopfian", flags.hopfian, "Hopfian report");
  analyze->add_flag("--census", flags.census,
                    "Extension census over the generating set");
  analyze->add_option("--congruence", flags.congruence,
                      "Check only this congruence, e.g. \"{0 2}{1 3}\"");
  auto* analyze_bound = analyze->add_option(
      "--index-bound", index_bound, "Compute rho_n for this bound");
  analyze_bound->check(CLI::PositiveNumber);

  auto* rho = app.add_subcommand("rho", "Meet of congruences of bounded index");
  rho->add_option("path", path, "Semigroup file")->required();
  auto* rho_bound = rho->add_option("--index-bound", index_bound,
                                    "Index bound (default: every bound)");
  rho_bound->check(CLI::PositiveNumber);

  auto* theorem9 = app.add_subcommand(
      "theorem9", "Verify End S as the limit of End S / rho-hat");
  theorem9->add_option("path", path, "Semigroup file")->required();
  theorem9->add_option("--family", family,
                       "Refinement chain, coarsest first, ';'-separated")
      ->required();
  theorem9->add_flag("--allow-nonseparating", allow_nonseparating,
                     "Run even without the equality member and report the "
                     "failure");

  auto* tower = app.add_subcommand("tower", "Inverse systems");
  tower->add_option("--kind", kind, "Tower kind")
      ->check(CLI::IsMember({"left-zero"}));
  auto* tower_levels = tower->add_option("--levels", levels, "Number of levels");
  tower_levels->check(CLI::PositiveNumber);
  auto* tower_path = tower->add_option("--file", tower_file, "Tower file");
  tower_levels->excludes(tower_path);

  auto* end = app.add_subcommand("end", "List End S");
  end->add_option("path", path, "Semigroup file")->required();

  auto* aut = app.add_subcommand("aut", "List Aut S");
  aut->add_option("path", path, "Semigroup file")->required();

  for (auto* cmd : {validate, analyze, rho, theorem9, tower, end, aut}) {
    add_common(cmd, common);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      return cmd_validate(path, common);
    }
    if (*analyze) {
      if (analyze_bound->count() > 0) {
        flags.index_bound = index_bound;
      }
      return cmd_analyze(path, flags, common);
    }
    if (*rho) {
      std::optional<std::size_t> bound;
      if (rho_bound->count() > 0) {
        bound = index_bound;
      }
      return cmd_rho(path, bound, common);
    }
    if (*theorem9) {
      return cmd_theorem9(path, family, allow_nonseparating, common);
    }
    if (*tower) {
      if (tower_path->count() > 0) {
        return cmd_tower_file(tower_file, common);
      }
      if (tower_levels->count() == 0) {
        std::cerr << "error: tower needs --levels or --file\n";
        return 2;
      }
      return cmd_tower_left_zero(levels, common);
    }
    if (*end) {
      return cmd_end(path, common);
    }
    if (*aut) {
      return cmd_aut(path, common);
    }
  } catch (finsemi::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 2;
}
