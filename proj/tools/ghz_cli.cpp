// Command-line front end: build / verify GHZ certificates, Kochen-Specker
// certificates, LHV checks, spectra and the GHZ-state criteria.
//
// Exit codes: 0 accept / UNSAT as claimed, 1 reject / SAT / no GHZ state,
// 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghz/certificate.hpp"
#include "ghz/errors.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string output;
  std::string format = "text";
  std::uint64_t bound = ghz::kDefaultSearchBound;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ghz::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temp file first, then renames over the target.
void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ghz::ParseError("cannot write '" + path + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void emit(const Globals& g, const std::string& text, const json& structured) {
  const std::string body = g.format == "structured" ? structured.dump(2) + "\n" : text;
  if (g.output.empty())
    std::cout << body;
  else
    write_atomic(g.output, body);
}

std::vector<ghz::Rational> parse_tuple(const std::vector<std::string>& items) {
  std::vector<ghz::Rational> out;
  for (const auto& s : items) out.push_back(ghz::parse_rational(s));
  return out;
}

json rationals(const std::vector<ghz::Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(ghz::to_string(x));
  return out;
}

std::string join(const std::vector<ghz::Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + ghz::to_string(xs[i]);
  return s;
}

json spectrum_json(const ghz::Spectrum& s) {
  json out = json::array();
  for (const auto& [v, k] : s.entries) out.push_back(json::array({ghz::to_string(v), k}));
  return out;
}

std::string spectrum_text(const ghz::Spectrum& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, k] : s.entries) {
    out += (first ? "" : ", ") + ghz::to_string(v) + ": " + std::to_string(k);
    first = false;
  }
  return out + "}";
}

// ---- subcommands -----------------------------------------------------------

int run_build(const Globals& g, const std::vector<std::size_t>& levels, const std::vector<std::string>& tuple,
              bool mixed) {
  ghz::BuildOptions opts;
  opts.bound = g.bound;
  opts.allow_mixed_parity = mixed;
  if (!tuple.empty()) opts.tuple_hint = parse_tuple(tuple);
  const auto cert = ghz::build_certificate(levels, opts);
  const std::string doc = ghz::serialize(cert);
  if (g.output.empty())
    std::cout << doc;
  else
    write_atomic(g.output, doc);
  if (!g.output.empty() && g.format == "text")
    std::cerr << "wrote certificate: tuple (" << join(cert.eigen_tuple) << "), LHV " << ghz::to_string(cert.lhv.status)
              << " after " << cert.lhv.assignments_checked << " assignments\n";
  return kOk;
}

int run_verify(const Globals& g, const std::string& path) {
  const std::string text = read_file(path);
  ghz::VerifyResult r;
  if (ghz::detect_certificate_kind(text) == ghz::CertificateKind::Ghz)
    r = ghz::verify_certificate(ghz::parse_certificate(text), g.bound);
  else
    r = ghz::verify_ks_certificate(ghz::parse_ks_certificate(text));
  std::string out = r.accepted ? "accept\n" : "reject: " + r.reason + "\n";
  for (const auto& n : r.notes) out += "  " + n + "\n";
  emit(g, out, {{"accepted", r.accepted}, {"reason", r.reason}, {"notes", r.notes}});
  return r.accepted ? kOk : kReject;
}

int run_ks(const Globals& g, std::size_t m, const std::string& mode) {
  const ghz::KsMode km = mode == "sign-only" ? ghz::KsMode::SignOnly : ghz::KsMode::FullSpectrum;
  const auto cert = ghz::build_ks_certificate(m, km);
  const std::string doc = ghz::serialize(cert);
  if (g.output.empty()) {
    if (g.format == "structured")
      std::cout << doc;
    else
      std::cout << cert.rendering << ghz::to_string(cert.report.status) << " (" << mode << ", "
                << cert.report.patterns_checked << " patterns)\n";
  } else {
    write_atomic(g.output, doc);
  }
  return cert.report.status == ghz::LhvStatus::Unsat ? kOk : kReject;
}

int run_lhv(const Globals& g, const std::vector<std::size_t>& levels, const std::vector<std::string>& tuple,
            bool sign_only, bool mixed) {
  const auto parties = ghz::PartySpec::make(levels, mixed);
  const auto ps = ghz::build_proof_set(parties);
  const auto family = ghz::canonical_family(parties);
  const auto rhs = tuple.empty() ? ghz::select_ghz(ps, family).eigen_tuple : parse_tuple(tuple);
  const auto cs = ghz::make_constraint_system(ps, family, rhs);
  const ghz::LhvReport r = sign_only ? ghz::sign_only_lhv(cs) : ghz::check_lhv(cs, g.bound);
  std::string text = std::string(ghz::to_string(r.status)) + " (" + ghz::to_string(r.method) + ", " +
                     std::to_string(r.assignments_checked) + " assignments)\n";
  if (r.witness) text += "witness: " + join(*r.witness) + "\n";
  text += r.explanation + "\n";
  json words = json::array();
  for (const auto& w : ps.words) words.push_back(w.str());
  emit(g, text,
       {{"status", ghz::to_string(r.status)},
        {"method", ghz::to_string(r.method)},
        {"assignments_checked", r.assignments_checked},
        {"words", words},
        {"rhs", rationals(rhs)},
        {"witness", r.witness ? rationals(*r.witness) : json(nullptr)},
        {"parity_unsat", ghz::parity_unsat(cs)},
        {"explanation", r.explanation}});
  return r.status == ghz::LhvStatus::Unsat ? kOk : kReject;
}

int run_spectrum(const Globals& g, const std::vector<std::size_t>& levels, const std::string& word, bool mixed) {
  const auto parties = ghz::PartySpec::make(levels, mixed);
  const auto family = ghz::canonical_family(parties);
  if (!word.empty()) {
    const auto s = ghz::spectrum_of_word(ghz::TensorWord::parse(word), family);
    emit(g, word + ": " + spectrum_text(s) + " " + ghz::to_string(ghz::classify_definiteness(s)) + "\n",
         {{"word", word}, {"spectrum", spectrum_json(s)}, {"definiteness", ghz::to_string(ghz::classify_definiteness(s))}});
    return kOk;
  }
  const auto ps = ghz::build_proof_set(parties);
  std::string text;
  json words = json::array();
  for (const auto& w : ps.words) {
    const auto s = ghz::spectrum_of_word(w, family);
    text += w.str() + ": " + spectrum_text(s) + "\n";
    words.push_back({{"word", w.str()}, {"spectrum", spectrum_json(s)}});
  }
  const auto c = ghz::spectrum_of(ghz::plan_product(ps, family));
  const char* cls = ghz::to_string(ghz::classify_definiteness(c));
  text += "plan product: " + spectrum_text(c) + " " + cls + "\n";
  emit(g, text, {{"words", words}, {"plan_product", spectrum_json(c)}, {"definiteness", cls}});
  return kOk;
}

int run_criteria(const Globals& g, const std::vector<std::size_t>& levels, const std::string& state_path,
                 const std::vector<std::string>& word_list, const std::vector<std::size_t>& plan_1based, bool mixed) {
  const auto parties = ghz::PartySpec::make(levels, mixed);
  const auto family = ghz::canonical_family(parties);
  const auto state = ghz::parse_state(read_file(state_path));
  std::vector<ghz::TensorWord> words;
  std::vector<std::size_t> plan;
  if (word_list.empty()) {
    const auto ps = ghz::build_proof_set(parties);
    words = ps.words;
    plan = ps.plan;
  } else {
    for (const auto& w : word_list) words.push_back(ghz::TensorWord::parse(w));
  }
  if (!plan_1based.empty()) {
    plan.clear();
    for (std::size_t i : plan_1based) {
      if (i == 0) throw ghz::ParseError("plan indices are 1-based");
      plan.push_back(i - 1);
    }
  }
  const auto r = ghz::check_ghz_criteria(state, parties, family, words, plan);
  std::string text = r.is_ghz ? "is-ghz (tuple " + join(r.eigen_tuple) + ")\n" : "not-ghz: " + r.reason + "\n";
  for (const auto& n : r.notes) text += "  " + n + "\n";
  emit(g, text, {{"is_ghz", r.is_ghz}, {"reason", r.reason}, {"eigen_tuple", rationals(r.eigen_tuple)}, {"notes", r.notes}});
  return r.is_ghz ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ nonlocality and Kochen-Specker certificate tool"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--output,-o", g.output, "Write the result to this file");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--bound", g.bound, "Brute-force search bound");

  std::vector<std::size_t> levels;
  std::vector<std::string> tuple;
  bool mixed = false;
  auto add_levels = [&](CLI::App* sub) {
    sub->add_option("--levels,-l", levels, "Level counts, e.g. 3,3,3")->delimiter(',')->required();
    sub->add_flag("--allow-mixed-parity", mixed, "Experimental: accept levels of mixed parity");
  };

  auto* build = app.add_subcommand("build", "Build a GHZ certificate");
  add_levels(build);
  build->add_option("--tuple", tuple, "Requested eigenvalue tuple, e.g. 1,1,1,-1")->delimiter(',');

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Re-verify a certificate from scratch");
  verify->add_option("certificate", cert_path)->required();

  std::size_t ks_m = 0;
  std::string ks_mode = "full-spectrum";
  auto* ks = app.add_subcommand("ks", "Build and certify the Kochen-Specker configuration");
  ks->add_option("--m,-m", ks_m, "Even level count")->required();
  ks->add_option("--mode", ks_mode)->check(CLI::IsMember({"sign-only", "full-spectrum"}));

  bool sign_only = false;
  auto* lhv = app.add_subcommand("lhv", "Check local hidden-variable satisfiability");
  add_levels(lhv);
  lhv->add_option("--tuple", tuple, "Right-hand sides (defaults to the GHZ eigenvalues)")->delimiter(',');
  lhv->add_flag("--sign-only", sign_only, "Search over signs only");

  std::string word;
  auto* spectrum = app.add_subcommand("spectrum", "Exact spectra of words and the plan product");
  add_levels(spectrum);
  spectrum->add_option("--word", word, "Single word, e.g. ABB");

  std::string state_path;
  std::vector<std::string> word_list;
  std::vector<std::size_t> plan;
  auto* criteria = app.add_subcommand("criteria", "Check the GHZ-state criteria for a state file");
  add_levels(criteria);
  criteria->add_option("--state", state_path, "State JSON file")->required();
  criteria->add_option("--words", word_list, "Words (defaults to the canonical proof set)")->delimiter(',');
  criteria->add_option("--plan", plan, "1-based product plan")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*build) return run_build(g, levels, tuple, mixed);
    if (*verify) return run_verify(g, cert_path);
    if (*ks) return run_ks(g, ks_m, ks_mode);
    if (*lhv) return run_lhv(g, levels, tuple, sign_only, mixed);
    if (*spectrum) return run_spectrum(g, levels, word, mixed);
    if (*criteria) return run_criteria(g, levels, state_path, word_list, plan, mixed);
  } catch (const ghz::NoGhzStateError& e) {
    std::cerr << "no-ghz-state: " << e.what() << "\n";
    return kReject;
  } catch (const ghz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
