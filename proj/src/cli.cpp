#include "congrusep/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "congrusep/cryst.hpp"
#include "congrusep/jordan.hpp"
#include "congrusep/json_io.hpp"
#include "congrusep/modgrp.hpp"
#include "congrusep/separate.hpp"

namespace congrusep {

namespace {

using json_io::json;

struct RunConfig {
  std::string schedule_text;
  std::size_t element_cap = kDefaultElementCap;
  std::size_t word_length = 4;
  std::size_t bit_bound = kDefaultBitBound;
  std::string reps_path;
  std::string verify_path;
  std::string output_path;
  bool full = false;
  std::size_t n = 0;
  std::uint64_t modulus = 0;
  std::string primes_text;
  unsigned max_level = 4;
  bool lift = false;
  std::string pos0;
  std::string pos1;
  std::vector<std::string> args;
};

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError(std::string("empty entry in ") + what);
    item = item.substr(b, e - b + 1);
    if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 19)
      throw InputError(std::string("bad entry '") + item + "' in " + what);
    out.push_back(std::stoull(item));
  }
  return out;
}

SearchOptions search_options(const RunConfig& cfg) {
  SearchOptions opts;
  if (!cfg.schedule_text.empty()) opts.schedule = parse_list(cfg.schedule_text, "--modulus-schedule");
  validate_schedule(opts.schedule);
  opts.element_cap = cfg.element_cap;
  return opts;
}

void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.output_path + "'");
  f << text;
}

const std::string& arg(const RunConfig& cfg, std::size_t i, const char* name) {
  if (cfg.args.size() <= i) throw InputError(std::string("missing argument ") + name);
  return cfg.args[i];
}

void require_positive(const RunConfig& cfg) {
  if (cfg.element_cap == 0) throw InputError("--element-cap must be positive");
  if (cfg.word_length == 0) throw InputError("--word-length must be positive");
  if (cfg.bit_bound == 0) throw InputError("bit bound must be positive");
}

void report_scan(const std::vector<IntegerMatrix>& gens, std::size_t word_length, std::ostream& err) {
  if (gens.empty()) return;
  const auto scan = scan_virtually_unipotent(gens, word_length);
  if (scan.consistent) {
    err << "virtually-unipotent scan: consistent up to word length " << word_length << " (" << scan.words_checked
        << " elements; not a proof)\n";
  } else {
    err << "warning: virtually-unipotent scan: element " << to_string(*scan.witness)
        << " has a semisimple part of infinite order; the group is not virtually unipotent and the search may "
           "exhaust its schedule\n";
  }
}

int verify_file(const RunConfig& cfg, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto cert = json_io::certificate(json_io::load_argument(path));
  const VerificationReport rep =
      std::visit([&](const auto& c) { return verify(c, cfg.element_cap); }, cert);
  json j{{"status", rep.ok ? "verified" : "failed"}, {"failures", rep.failures}};
  emit(cfg, j, out);
  if (rep.ok) return kExitOk;
  err << "verification failed";
  for (const auto& f : rep.failures) err << "\n  " << f;
  err << "\n";
  return kExitVerification;
}

int cmd_jordan(const RunConfig& cfg, std::ostream& out) {
  const RationalMatrix g = json_io::rational_matrix(json_io::load_argument(arg(cfg, 0, "MATRIX")));
  const JordanPair p = jordan_decompose(g);
  json j = json_io::to_json(p);
  j["is_semisimple"] = is_semisimple(g);
  j["is_unipotent"] = is_unipotent(g);
  if (is_integral(g) && is_unimodular(to_integer(g))) {
    const auto ord = torsion_order(to_integer(g));
    j["torsion_order"] = ord ? json(*ord) : json("infinite");
  } else {
    j["torsion_order"] = nullptr;
  }
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_avoid(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.verify_path.empty()) return verify_file(cfg, cfg.verify_path, out, err);
  const auto gens = json_io::integer_matrices(json_io::load_argument(arg(cfg, 0, "GENS")));
  const IntegerMatrix eta = json_io::integer_matrix(json_io::load_argument(arg(cfg, 1, "ETA")));
  const SearchOptions opts = search_options(cfg);
  report_scan(gens, cfg.word_length, err);
  emit(cfg, json_io::to_json(avoid_conjugacy(gens, eta, opts)), out);
  return kExitOk;
}

int cmd_torsion_free(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.verify_path.empty()) return verify_file(cfg, cfg.verify_path, out, err);
  const auto gens = json_io::integer_matrices(json_io::load_argument(arg(cfg, 0, "GENS")));
  std::size_t n = cfg.n;
  if (n == 0) {
    if (gens.empty()) throw InputError("empty generator list: pass --n");
    n = gens.front().n();
  }
  std::vector<IntegerMatrix> reps;
  std::string version;
  if (!cfg.reps_path.empty()) {
    reps = json_io::integer_matrices(json_io::load_argument(cfg.reps_path));
    version = kCustomTableVersion;
  } else {
    reps = torsion_class_table(n);
    version = kTorsionTableVersion;
  }
  validate_torsion_reps(reps, n);
  const SearchOptions opts = search_options(cfg);
  report_scan(gens, cfg.word_length, err);
  emit(cfg, json_io::to_json(torsion_free_overgroup(n, gens, reps, version, opts)), out);
  return kExitOk;
}

int cmd_semifactors(const RunConfig& cfg, std::ostream& out) {
  const CrystGroup g = json_io::cryst_group(json_io::load_argument(arg(cfg, 0, "CRYST")));
  emit(cfg, json_io::to_json(semifactor_representatives(g, cfg.bit_bound)), out);
  return kExitOk;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
  const CrystGroup g = json_io::cryst_group(json_io::load_argument(arg(cfg, 0, "CRYST")));
  json j;
  if (cfg.lift) {
    const LiftedGroup l = lift_to_gl(g, cfg.bit_bound);
    json gens = json::array(), factors = json::array();
    for (const auto& x : l.gens) gens.push_back(json_io::to_json(x));
    for (const auto& x : l.semisimple_factors) factors.push_back(json_io::to_json(x));
    j = {{"D", l.D.get_str()}, {"generators", gens}, {"semisimple_factors", factors}};
  } else {
    json gens = json::array();
    for (const auto& x : embed_affine(g)) gens.push_back(json_io::to_json(x));
    j = {{"generators", gens}};
  }
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_witness_prime(const RunConfig& cfg, std::ostream& out) {
  const RationalMatrix factor = json_io::rational_matrix(json_io::load_argument(arg(cfg, 0, "FACTOR")));
  std::vector<IntegerMatrix> gens;
  if (cfg.args.size() > 1) gens = json_io::integer_matrices(json_io::load_argument(cfg.args[1]));
  std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23};
  if (!cfg.primes_text.empty()) primes = parse_list(cfg.primes_text, "--primes");
  if (cfg.max_level == 0) throw InputError("--max-level must be positive");
  emit(cfg, json_io::to_json(witness_prime(factor, gens, primes, cfg.max_level, cfg.element_cap)), out);
  return kExitOk;
}

int cmd_image(const RunConfig& cfg, std::ostream& out) {
  const auto gens = json_io::integer_matrices(json_io::load_argument(arg(cfg, 0, "GENS")));
  std::size_t n = cfg.n;
  if (n == 0) {
    if (gens.empty()) throw InputError("empty generator list: pass --n");
    n = gens.front().n();
  }
  if (cfg.modulus == 0) throw InputError("--modulus is required");
  std::vector<ModMatrix> reduced;
  for (const auto& g : gens) {
    if (g.rows() != n) throw DimensionError("generator dimension differs from n");
    reduced.push_back(reduce(g, cfg.modulus));
  }
  emit(cfg, json_io::group_dump(generate(n, cfg.modulus, reduced, cfg.element_cap), cfg.full), out);
  return kExitOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n == 0) throw InputError("--n is required");
  const auto table = torsion_class_table(cfg.n);
  const auto orders = validate_torsion_reps(table, cfg.n);
  json reps = json::array();
  for (std::size_t i = 0; i < table.size(); ++i) reps.push_back({{"rep", json_io::to_json(table[i])}, {"order", orders[i]}});
  emit(cfg, {{"n", cfg.n}, {"table_version", kTorsionTableVersion}, {"representatives", reps}}, out);
  return kExitOk;
}

std::size_t env_bit_bound() {
  const char* v = std::getenv("CONGRUSEP_BIT_BOUND");
  if (!v || !*v) return kDefaultBitBound;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
    throw InputError("CONGRUSEP_BIT_BOUND must be a positive integer");
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence certificates for integer matrix groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--output", cfg.output_path, "Write the JSON result to FILE");
    sub->add_option("--element-cap", cfg.element_cap, "Element budget per enumeration");
  };
  auto add_search = [&cfg](CLI::App* sub) {
    sub->add_option("--modulus-schedule", cfg.schedule_text, "Comma-separated increasing moduli");
    sub->add_option("--word-length", cfg.word_length, "Word length of the virtually-unipotent scan");
    sub->add_option("--verify-only", cfg.verify_path, "Re-check an existing certificate file");
  };

  auto* jordan = app.add_subcommand("jordan", "Multiplicative Jordan decomposition of MATRIX");
  jordan->add_option("MATRIX", cfg.pos0, "Matrix JSON or path")->required();
  add_common(jordan);

  auto* avoid = app.add_subcommand("avoid", "Separate <GENS> from the conjugacy class of ETA");
  avoid->add_option("GENS", cfg.pos0, "Generator list JSON or path");
  avoid->add_option("ETA", cfg.pos1, "Semisimple matrix JSON or path");
  add_common(avoid);
  add_search(avoid);

  auto* tf = app.add_subcommand("torsion-free", "Torsion-free congruence overgroup of <GENS>");
  tf->add_option("GENS", cfg.pos0, "Generator list JSON or path");
  tf->add_option("--reps", cfg.reps_path, "Custom torsion representatives (JSON list)");
  tf->add_option("--n", cfg.n, "Dimension (needed for an empty generator list)");
  add_common(tf);
  add_search(tf);

  auto* semi = app.add_subcommand("semifactors", "Semisimple factors of a crystallographic group");
  semi->add_option("CRYST", cfg.pos0, "Crystallographic group JSON or path")->required();
  add_common(semi);

  auto* embed = app.add_subcommand("embed", "Embed a crystallographic group into GL(m+1,Z)");
  embed->add_option("CRYST", cfg.pos0, "Crystallographic group JSON or path")->required();
  embed->add_flag("--lift", cfg.lift, "Also embed the semisimple-factor representatives");
  add_common(embed);

  auto* wp = app.add_subcommand("witness-prime", "Prime separating FACTOR from the closure of <GENS>");
  wp->add_option("FACTOR", cfg.pos0, "Semisimple factor JSON or path")->required();
  wp->add_option("GENS", cfg.pos1, "Generator list JSON or path");
  wp->add_option("--primes", cfg.primes_text, "Comma-separated primes");
  wp->add_option("--max-level", cfg.max_level, "Largest level K");
  add_common(wp);

  auto* image = app.add_subcommand("image", "Reduction of <GENS> modulo m");
  image->add_option("GENS", cfg.pos0, "Generator list JSON or path")->required();
  image->add_option("--modulus", cfg.modulus, "Modulus m")->required();
  image->add_option("--n", cfg.n, "Dimension (needed for an empty generator list)");
  image->add_flag("--full", cfg.full, "List every element");
  add_common(image);

  auto* table = app.add_subcommand("torsion-table", "Builtin torsion class representatives");
  table->add_option("--n", cfg.n, "Dimension (1, 2 or 3)")->required();
  add_common(table);

  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate file");
  verify_cmd->add_option("CERT", cfg.pos0, "Certificate path or JSON")->required();
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  for (auto* p : {&cfg.pos0, &cfg.pos1})
    if (!p->empty()) cfg.args.push_back(*p);

  try {
    cfg.bit_bound = env_bit_bound();
    require_positive(cfg);
    if (jordan->parsed()) return cmd_jordan(cfg, out);
    if (avoid->parsed()) return cmd_avoid(cfg, out, err);
    if (tf->parsed()) return cmd_torsion_free(cfg, out, err);
    if (semi->parsed()) return cmd_semifactors(cfg, out);
    if (embed->parsed()) return cmd_embed(cfg, out);
    if (wp->parsed()) return cmd_witness_prime(cfg, out);
    if (image->parsed()) return cmd_image(cfg, out);
    if (table->parsed()) return cmd_table(cfg, out);
    if (verify_cmd->parsed()) return verify_file(cfg, arg(cfg, 0, "CERT"), out, err);
    return kExitInput;
  } catch (const ScheduleExhausted& e) {
    json j{{"status", "exhausted"},
           {"message", e.what()},
           {"largest_modulus", e.largest_modulus()},
           {"budget_skipped", e.budget_skipped()}};
    try {
      emit(cfg, j, out);
    } catch (const Error&) {
    }
    err << "no certificate found below budget: " << e.what() << "\n";
    return kExitResource;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const ResourceError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace congrusep
