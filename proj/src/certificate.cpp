#include "ghz/certificate.hpp"

#include <algorithm>
#include <json.hpp>

#include "ghz/errors.hpp"

namespace ghz {

using nlohmann::json;

namespace {

const std::vector<std::string> kConventions = {
    "site basis index 0 is the top matrix row",
    "composite index has party 1 as the most significant digit",
    "eigenvector coefficients are coprime integers with the first one positive; norm_sq is their squared length",
    "joint eigenvectors are ordered by smallest support index; without a tuple hint the eligible one with the "
    "lexicographically greatest eigen-tuple is chosen (degenerate eigenspace choice is a tool convention)",
    "hidden-value slots are ordered A1,B1,A2,B2,...; search values ascend",
    "product_plan lists 1-based word indices with multiplicity",
};

// ---- json helpers --------------------------------------------------------

json rationals_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

json spectrum_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& [v, k] : s.entries) out.push_back(json::array({to_string(v), k}));
  return out;
}

json state_json(const StateVector& s) {
  json entries = json::array();
  for (std::size_t i = 0; i < s.support.size(); ++i)
    entries.push_back(json::array({s.support[i], Integer(numerator(s.coefficients[i])).str(),
                                   Integer(denominator(s.coefficients[i])).str()}));
  return {{"entries", entries}, {"norm_sq", to_string(s.norm_sq)}};
}

json witness_json(const std::optional<std::vector<Rational>>& w) {
  if (!w) return nullptr;
  return rationals_json(*w);
}

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  Reader operator[](const std::string& key) const {
    if (!node_.is_object()) fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) throw ParseError("missing field '" + join(key) + "'");
    return Reader(*it, join(key));
  }

  Reader operator[](std::size_t i) const {
    if (!node_.is_array() || i >= node_.size()) fail("expected an array with index " + std::to_string(i));
    return Reader(node_[i], path_ + "[" + std::to_string(i) + "]");
  }

  bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }
  bool is_null() const { return node_.is_null(); }

  std::size_t size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  std::string str() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  std::uint64_t count() const {
    if (!node_.is_number_unsigned()) fail("expected a non-negative integer");
    return node_.get<std::uint64_t>();
  }

  std::int64_t integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  Rational rational() const {
    try {
      return parse_rational(str());
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  std::vector<Rational> rationals() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].rational());
    return out;
  }

  Integer big_integer() const {
    const std::string s = str();
    try {
      return Integer(numerator(parse_rational(s)));
    } catch (const ParseError&) {
      fail("expected an integer string");
    }
    return 0;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("field '" + path_ + "': " + what); }

 private:
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& node_;
  std::string path_;
};

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Spectrum read_spectrum(const Reader& r) {
  Spectrum s;
  for (std::size_t i = 0; i < r.size(); ++i) s.entries[r[i][0].rational()] += r[i][1].count();
  return s;
}

StateVector read_state(const Reader& r) {
  StateVector s;
  const Reader entries = r["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Reader e = entries[i];
    s.support.push_back(e[0].count());
    const Integer den = e[2].big_integer();
    if (den <= 0) e[2].fail("denominator must be positive");
    s.coefficients.emplace_back(e[1].big_integer(), den);
  }
  s.norm_sq = r["norm_sq"].rational();
  return s;
}

std::optional<std::vector<Rational>> read_witness(const Reader& r) {
  if (r.is_null()) return std::nullopt;
  return r.rationals();
}

LhvStatus read_status(const Reader& r) {
  const std::string s = r.str();
  if (s == "SAT") return LhvStatus::Sat;
  if (s == "UNSAT") return LhvStatus::Unsat;
  r.fail("expected SAT or UNSAT");
}

LhvMethod read_method(const Reader& r) {
  const std::string s = r.str();
  for (LhvMethod m : {LhvMethod::ParityAnalytic, LhvMethod::BruteForce, LhvMethod::SignOnly, LhvMethod::Both})
    if (s == to_string(m)) return m;
  r.fail("unknown LHV method");
}

KsMode read_mode(const Reader& r) {
  const std::string s = r.str();
  if (s == to_string(KsMode::SignOnly)) return KsMode::SignOnly;
  if (s == to_string(KsMode::FullSpectrum)) return KsMode::FullSpectrum;
  r.fail("expected sign-only or full-spectrum");
}

void expect_format(const Reader& root, const std::string& format) {
  if (root["format"].str() != format) root["format"].fail("expected '" + format + "'");
  if (root["format_version"].integer() != kCertificateFormatVersion)
    root["format_version"].fail("unsupported format version");
}

VerifyResult reject(std::string reason) { return {false, std::move(reason), {}}; }

std::string word_label(std::size_t i) { return "word " + std::to_string(i + 1); }

}  // namespace

// ---- build -----------------------------------------------------------------

GhzCertificate build_certificate(const std::vector<std::size_t>& levels, const BuildOptions& opts) {
  const PartySpec parties = PartySpec::make(levels, opts.allow_mixed_parity);
  const ProofSet ps = build_proof_set(parties);
  const SiteFamily family = canonical_family(parties);
  const GhzState ghz = select_ghz(ps, family, opts.tuple_hint);

  GhzCertificate cert;
  cert.levels = levels;
  cert.mixed_parity_override = parties.mixed_parity();
  cert.canonical_family = true;
  cert.family = family;
  cert.words = ps.words;
  cert.plan = ps.plan;
  cert.eigen_tuple = ghz.eigen_tuple;
  cert.state = ghz.state;
  for (const auto& w : ps.words) cert.word_spectra.push_back(spectrum_of_word(w, family));
  cert.plan_spectrum = spectrum_of(plan_product(ps, family));
  cert.requirements = validate_requirements(ps);
  cert.lhv = check_lhv(make_constraint_system(ps, family, ghz.eigen_tuple), opts.bound);
  cert.conventions = kConventions;
  return cert;
}

// ---- serialization -----------------------------------------------------------

std::string serialize(const GhzCertificate& cert) {
  json sites = json::array();
  for (const auto& pair : cert.family) sites.push_back({{"A", rationals_json(pair.a.weights)}, {"B", rationals_json(pair.b.weights)}});
  json words = json::array();
  for (const auto& w : cert.words) words.push_back(w.str());
  json plan = json::array();
  for (std::size_t i : cert.plan) plan.push_back(i + 1);
  json word_spectra = json::array();
  for (const auto& s : cert.word_spectra) word_spectra.push_back(spectrum_json(s));

  json doc = {
      {"format", "ghz-certificate"},
      {"format_version", cert.format_version},
      {"parties", cert.levels},
      {"mixed_parity_override", cert.mixed_parity_override},
      {"site_family", cert.canonical_family ? "canonical" : "custom"},
      {"site_operators", sites},
      {"words", words},
      {"product_plan", plan},
      {"eigen_tuple", rationals_json(cert.eigen_tuple)},
      {"state", state_json(cert.state)},
      {"spectra", {{"words", word_spectra}, {"plan_product", spectrum_json(cert.plan_spectrum)}}},
      {"requirements",
       {{"i_same_parity", cert.requirements.same_parity},
        {"ii_one_distinguished", cert.requirements.one_distinguished},
        {"iii_even_usage", cert.requirements.even_usage},
        {"iv_all_used", cert.requirements.all_observables_used}}},
      {"lhv_report",
       {{"status", to_string(cert.lhv.status)},
        {"method", to_string(cert.lhv.method)},
        {"assignments_checked", cert.lhv.assignments_checked},
        {"witness", witness_json(cert.lhv.witness)},
        {"explanation", cert.lhv.explanation}}},
      {"provenance", {{"tool", cert.tool_version}, {"conventions", cert.conventions}}},
  };
  return doc.dump(2) + "\n";
}

GhzCertificate parse_certificate(std::string_view text) {
  const json doc = parse_json(text);
  const Reader root(doc, "");
  expect_format(root, "ghz-certificate");

  GhzCertificate cert;
  cert.format_version = static_cast<int>(root["format_version"].integer());
  const Reader parties = root["parties"];
  for (std::size_t i = 0; i < parties.size(); ++i) cert.levels.push_back(parties[i].count());
  cert.mixed_parity_override = root["mixed_parity_override"].boolean();
  const std::string family = root["site_family"].str();
  if (family != "canonical" && family != "custom") root["site_family"].fail("expected canonical or custom");
  cert.canonical_family = family == "canonical";

  const Reader sites = root["site_operators"];
  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto a = sites[i]["A"].rationals();
    auto b = sites[i]["B"].rationals();
    cert.family.push_back({{a.size(), SiteKind::A, std::move(a)}, {b.size(), SiteKind::B, std::move(b)}});
  }
  const Reader words = root["words"];
  for (std::size_t i = 0; i < words.size(); ++i) {
    try {
      cert.words.push_back(TensorWord::parse(words[i].str()));
    } catch (const ParseError& e) {
      words[i].fail(e.what());
    }
  }
  const Reader plan = root["product_plan"];
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const std::uint64_t k = plan[i].count();
    if (k == 0) plan[i].fail("plan indices are 1-based");
    cert.plan.push_back(k - 1);
  }
  cert.eigen_tuple = root["eigen_tuple"].rationals();
  cert.state = read_state(root["state"]);

  const Reader spectra = root["spectra"];
  for (std::size_t i = 0; i < spectra["words"].size(); ++i) cert.word_spectra.push_back(read_spectrum(spectra["words"][i]));
  cert.plan_spectrum = read_spectrum(spectra["plan_product"]);

  const Reader req = root["requirements"];
  cert.requirements = {req["i_same_parity"].boolean(), req["ii_one_distinguished"].boolean(),
                       req["iii_even_usage"].boolean(), req["iv_all_used"].boolean()};

  const Reader lhv = root["lhv_report"];
  cert.lhv.status = read_status(lhv["status"]);
  cert.lhv.method = read_method(lhv["method"]);
  cert.lhv.assignments_checked = lhv["assignments_checked"].count();
  cert.lhv.witness = read_witness(lhv["witness"]);
  cert.lhv.explanation = lhv["explanation"].str();

  const Reader prov = root["provenance"];
  cert.tool_version = prov["tool"].str();
  for (std::size_t i = 0; i < prov["conventions"].size(); ++i) cert.conventions.push_back(prov["conventions"][i].str());
  return cert;
}

std::string serialize_state(const StateVector& s) { return state_json(s).dump(2) + "\n"; }

StateVector parse_state(std::string_view text) {
  const json doc = parse_json(text);
  return read_state(Reader(doc, ""));
}

// ---- verification ------------------------------------------------------------

CriteriaResult check_ghz_criteria(const StateVector& state, const PartySpec& parties, const SiteFamily& family,
                                  const std::vector<TensorWord>& words, const std::vector<std::size_t>& plan) {
  CriteriaResult r;
  r.notes.push_back("criterion I is checked for the supplied site operators only; no operator synthesis attempted");
  if (family.size() != parties.size()) throw PartyMismatchError("one site pair per party required");
  for (std::size_t p = 0; p < parties.size(); ++p) {
    if (family[p].dim() != parties.level(p)) throw PartyMismatchError("site pair dimension differs from party levels");
    if (!check_anticommute(family[p].a, family[p].b)) {
      r.reason = "criterion I: site pair of party " + std::to_string(p + 1) + " does not anticommute";
      return r;
    }
  }
  if (words.empty()) throw PartyMismatchError("no words supplied");
  for (const auto& w : words)
    if (w.size() != parties.size()) throw PartyMismatchError("word " + w.str() + " does not match the parties");
  for (std::size_t i : plan)
    if (i >= words.size()) throw PartyMismatchError("plan index out of range");
  const Vector v = state.to_dense(parties.dim());
  Eigen::Index pivot = 0;
  while (pivot < v.size() && is_zero(v(pivot))) ++pivot;
  if (pivot == v.size()) {
    r.reason = "criterion II: zero vector";
    return r;
  }

  for (std::size_t k = 0; k < words.size(); ++k) {
    const Vector image = apply(realize(words[k], family), v);
    const Rational lambda = image(pivot) / v(pivot);
    if (image != Vector(lambda * v)) {
      r.reason = "criterion II: not an eigenvector of word " + words[k].str();
      r.eigen_tuple.clear();
      return r;
    }
    r.eigen_tuple.push_back(lambda);
  }
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (is_zero(r.eigen_tuple[k])) {
      r.reason = "criterion III: zero eigenvalue for word " + words[k].str();
      return r;
    }
  }
  if (plan_value(r.eigen_tuple, plan).sign() >= 0) {
    r.reason = "criterion III: plan product of eigenvalues is not negative";
    return r;
  }
  const ProofSet ps{parties, words, plan};
  const auto usage = slot_usage(ps);
  if (std::any_of(usage.begin(), usage.end(), [](std::size_t u) { return u % 2 != 0; })) {
    r.reason = "criterion III: some one-party observable occurs an odd number of times in the plan";
    return r;
  }
  r.is_ghz = true;
  r.reason = "all criteria hold";
  return r;
}

VerifyResult verify_certificate(const GhzCertificate& cert, std::uint64_t bound) {
  VerifyResult result;
  if (cert.format_version != kCertificateFormatVersion) return reject("unsupported format version");

  PartySpec parties;
  try {
    parties = PartySpec::make(cert.levels, cert.mixed_parity_override);
  } catch (const Error& e) {
    return reject(std::string("invalid party spec: ") + e.what());
  }
  if (parties.mixed_parity()) result.notes.push_back("mixed-parity levels: checked by oracle only");
  const std::size_t n = parties.size();
  const std::size_t dim = parties.dim();

  if (cert.family.size() != n) return reject("expected one site operator pair per party");
  for (std::size_t p = 0; p < n; ++p) {
    const SitePair& pair = cert.family[p];
    const std::string party = "party " + std::to_string(p + 1);
    if (pair.a.weights.size() != cert.levels[p] || pair.b.weights.size() != cert.levels[p])
      return reject("site operators of " + party + " have the wrong dimension");
    const auto& b = pair.b.weights;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != b[b.size() - 1 - j]) return reject("B weights of " + party + " are not symmetric");
    if (cert.canonical_family && !is_canonical(pair))
      return reject("site operators of " + party + " differ from the canonical family");
    if (!check_anticommute(pair.a, pair.b)) return reject("criterion I: site pair of " + party + " does not anticommute");
  }

  if (cert.words.empty()) return reject("no words");
  for (const auto& w : cert.words)
    if (w.size() != n) return reject("word " + w.str() + " does not match the party count");
  const auto realized = [&] {
    std::vector<MonomialMatrix<Rational>> out;
    for (const auto& w : cert.words) out.push_back(realize(w, cert.family));
    return out;
  }();
  for (std::size_t i = 0; i < realized.size(); ++i)
    for (std::size_t j = i + 1; j < realized.size(); ++j)
      if (!operators_commute(realized[i], realized[j]))
        return reject(word_label(i) + " and " + word_label(j) + " do not commute");

  if (cert.plan.empty()) return reject("empty product plan");
  for (std::size_t i : cert.plan)
    if (i >= cert.words.size()) return reject("product plan index out of range");
  if (cert.eigen_tuple.size() != cert.words.size()) return reject("eigen_tuple needs one entry per word");
  for (const auto& x : cert.eigen_tuple)
    if (is_zero(x)) return reject("criterion III: zero eigenvalue");

  const StateVector& s = cert.state;
  if (s.support.empty() || s.support.size() != s.coefficients.size()) return reject("state has no support");
  for (std::size_t i = 0; i < s.support.size(); ++i) {
    if (s.support[i] >= dim) return reject("state support index out of range");
    if (i > 0 && s.support[i] <= s.support[i - 1]) return reject("state support must be strictly increasing");
    if (is_zero(s.coefficients[i])) return reject("state coefficient on the support is zero");
  }
  Rational norm = 0;
  for (const auto& c : s.coefficients) norm += c * c;
  if (norm != s.norm_sq) return reject("norm_sq does not match the coefficients");

  const Vector v = s.to_dense(dim);
  for (std::size_t k = 0; k < realized.size(); ++k)
    if (apply(realized[k], v) != Vector(cert.eigen_tuple[k] * v))
      return reject("eigenvector equation fails for " + word_label(k));

  if (plan_value(cert.eigen_tuple, cert.plan).sign() >= 0)
    return reject("criterion III: plan product of eigenvalues is not negative");

  const ProofSet ps{parties, cert.words, cert.plan};
  if (!(validate_requirements(ps) == cert.requirements)) return reject("stored requirement flags disagree with recomputation");
  if (cert.word_spectra.size() != cert.words.size()) return reject("one stored spectrum per word required");
  for (std::size_t k = 0; k < realized.size(); ++k)
    if (!(spectrum_of(realized[k]) == cert.word_spectra[k]))
      return reject("stored spectrum of " + word_label(k) + " disagrees with recomputation");
  try {
    if (!(spectrum_of(plan_product(ps, cert.family)) == cert.plan_spectrum))
      return reject("stored plan-product spectrum disagrees with recomputation");
  } catch (const ContractError& e) {
    return reject(e.what());
  }

  const ConstraintSystem cs = make_constraint_system(ps, cert.family, cert.eigen_tuple);
  if (!parity_unsat(cs)) return reject("LHV: the constraint system has no parity obstruction");
  try {
    const LhvReport brute = brute_force_lhv(cs, bound);
    if (brute.status != LhvStatus::Unsat) return reject("LHV: brute force found a satisfying assignment");
    if (cert.lhv.status != LhvStatus::Unsat || cert.lhv.assignments_checked != brute.assignments_checked)
      return reject("stored LHV report disagrees with recomputation");
    result.notes.push_back("LHV: parity argument and brute force (" + std::to_string(brute.assignments_checked) +
                           " assignments) agree on UNSAT");
  } catch (const SearchBoundError&) {
    if (cert.lhv.status != LhvStatus::Unsat) return reject("stored LHV report disagrees with recomputation");
    result.notes.push_back("LHV: brute force skipped (space exceeds bound); parity argument only");
  }

  result.accepted = true;
  result.reason = "all checks passed";
  return result;
}

// ---- Kochen-Specker certificates ---------------------------------------------

KsCertificate build_ks_certificate(std::size_t m, KsMode mode) {
  const KsConfiguration cfg = build_ks(m);
  KsCertificate cert;
  cert.levels = m;
  cert.mode = mode;
  for (const auto& o : cfg.observables) cert.observables.push_back(o.label);
  for (const auto& ctx : cfg.contexts) {
    std::vector<std::string> labels;
    for (std::size_t i : ctx.members) labels.push_back(cfg.observables[i].label);
    cert.contexts.push_back(std::move(labels));
    cert.sign_targets.push_back(ctx.sign_target);
  }
  cert.report = ks_color_search(cfg, mode);
  cert.parity_unsat = ks_parity_unsat(cfg);
  cert.rendering = render_ks(cfg);
  return cert;
}

std::string serialize(const KsCertificate& cert) {
  json contexts = json::array();
  for (std::size_t c = 0; c < cert.contexts.size(); ++c)
    contexts.push_back({{"members", cert.contexts[c]}, {"sign", cert.sign_targets[c]}});
  json doc = {
      {"format", "ks-certificate"},
      {"format_version", cert.format_version},
      {"levels", cert.levels},
      {"mode", to_string(cert.mode)},
      {"observables", cert.observables},
      {"contexts", contexts},
      {"report",
       {{"status", to_string(cert.report.status)},
        {"patterns_checked", cert.report.patterns_checked},
        {"witness", witness_json(cert.report.witness)},
        {"parity_unsat", cert.parity_unsat}}},
      {"rendering", cert.rendering},
      {"provenance", {{"tool", cert.tool_version}}},
  };
  return doc.dump(2) + "\n";
}

KsCertificate parse_ks_certificate(std::string_view text) {
  const json doc = parse_json(text);
  const Reader root(doc, "");
  expect_format(root, "ks-certificate");
  KsCertificate cert;
  cert.levels = root["levels"].count();
  cert.mode = read_mode(root["mode"]);
  for (std::size_t i = 0; i < root["observables"].size(); ++i) cert.observables.push_back(root["observables"][i].str());
  const Reader contexts = root["contexts"];
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < contexts[c]["members"].size(); ++i) labels.push_back(contexts[c]["members"][i].str());
    cert.contexts.push_back(std::move(labels));
    cert.sign_targets.push_back(static_cast<int>(contexts[c]["sign"].integer()));
  }
  const Reader report = root["report"];
  cert.report.status = read_status(report["status"]);
  cert.report.patterns_checked = report["patterns_checked"].count();
  cert.report.witness = read_witness(report["witness"]);
  cert.report.mode = cert.mode;
  cert.parity_unsat = report["parity_unsat"].boolean();
  cert.rendering = root["rendering"].str();
  cert.tool_version = root["provenance"]["tool"].str();
  return cert;
}

VerifyResult verify_ks_certificate(const KsCertificate& cert) {
  KsConfiguration cfg;
  try {
    cfg = build_ks(cert.levels);
  } catch (const Error& e) {
    return reject(std::string("cannot rebuild configuration: ") + e.what());
  }
  std::vector<std::string> labels;
  for (const auto& o : cfg.observables) labels.push_back(o.label);
  if (labels != cert.observables) return reject("observable list differs from the rebuilt configuration");
  if (cert.contexts.size() != cfg.contexts.size() || cert.sign_targets.size() != cfg.contexts.size())
    return reject("context list differs from the rebuilt configuration");
  for (std::size_t c = 0; c < cfg.contexts.size(); ++c) {
    std::vector<std::string> members;
    for (std::size_t i : cfg.contexts[c].members) members.push_back(labels[i]);
    if (members != cert.contexts[c] || cert.sign_targets[c] != cfg.contexts[c].sign_target)
      return reject("context " + std::to_string(c + 1) + " differs from the rebuilt configuration");
  }
  if (!check_ks_structure(cfg).all()) return reject("structural invariants fail");
  const KsReport fresh = ks_color_search(cfg, cert.mode);
  if (fresh.status != LhvStatus::Unsat) return reject("coloring search found a consistent assignment");
  if (cert.report.status != fresh.status || cert.report.patterns_checked != fresh.patterns_checked)
    return reject("stored report disagrees with recomputation");
  const bool analytic = ks_parity_unsat(cfg);
  if (cert.parity_unsat != analytic) return reject("stored parity flag disagrees with recomputation");
  VerifyResult r;
  r.accepted = true;
  r.reason = "all checks passed";
  r.notes.push_back(std::string(to_string(cert.mode)) + " search: UNSAT after " +
                    std::to_string(fresh.patterns_checked) + " patterns");
  return r;
}

CertificateKind detect_certificate_kind(std::string_view text) {
  const json doc = parse_json(text);
  const std::string format = Reader(doc, "")["format"].str();
  if (format == "ghz-certificate") return CertificateKind::Ghz;
  if (format == "ks-certificate") return CertificateKind::Ks;
  throw ParseError("field 'format': unknown certificate format '" + format + "'");
}

}  // namespace ghz
