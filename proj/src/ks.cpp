#include "ghz/ks.hpp"

#include <algorithm>
#include <sstream>

#include "ghz/errors.hpp"

namespace ghz {

namespace {

constexpr std::size_t kParties = 3;
constexpr std::size_t kOneParty = 6;

MonomialMatrix<Rational> embed(const std::vector<std::optional<Letter>>& letters, const SitePair& pair) {
  std::vector<MonomialMatrix<Rational>> factors;
  for (const auto& l : letters)
    factors.push_back(l ? to_monomial(pair[*l]) : MonomialMatrix<Rational>::identity(pair.dim()));
  return monomial_tensor(factors);
}

bool in_spectrum(const Spectrum& s, const Rational& v) { return s.multiplicity(v) > 0; }

}  // namespace

KsConfiguration build_ks(std::size_t m) {
  if (m < 2) throw InvalidLevelsError("level count must be >= 2, got " + std::to_string(m));
  if (m % 2 != 0) throw ParityError("Kochen-Specker configuration needs an even level count, got " + std::to_string(m));
  const SitePair pair = canonical_pair(m);

  KsConfiguration cfg;
  cfg.levels = m;
  for (std::size_t p = 0; p < kParties; ++p) {
    for (Letter l : {Letter::A, Letter::B}) {
      std::vector<std::optional<Letter>> letters(kParties);
      letters[p] = l;
      std::string label = std::string(l == Letter::A ? "A" : "B") + std::to_string(p + 1);
      cfg.observables.push_back({label, letters, embed(letters, pair)});
    }
  }
  for (const char* word : {"ABB", "BAB", "BBA", "AAA"}) {
    const TensorWord w = TensorWord::parse(word);
    std::vector<std::optional<Letter>> letters;
    for (std::size_t p = 0; p < kParties; ++p) letters.emplace_back(w[p]);
    cfg.observables.push_back({w.str(), letters, embed(letters, pair)});
  }

  cfg.contexts.push_back({{6, 7, 8, 9}, -1});
  for (std::size_t c = kOneParty; c < cfg.observables.size(); ++c) {
    KsContext ctx{{c}, 1};
    for (std::size_t p = 0; p < kParties; ++p)
      ctx.members.push_back(2 * p + (*cfg.observables[c].letters[p] == Letter::A ? 0 : 1));
    cfg.contexts.push_back(std::move(ctx));
  }

  if (!check_ks_structure(cfg).all()) throw ContractError("Kochen-Specker configuration failed its structural checks");
  return cfg;
}

MonomialMatrix<Rational> context_product(const KsConfiguration& cfg, std::size_t context) {
  std::vector<MonomialMatrix<Rational>> factors;
  for (std::size_t i : cfg.contexts.at(context).members) factors.push_back(cfg.observables.at(i).op);
  auto product = monomial_compose(factors);
  if (auto* mm = std::get_if<MonomialMatrix<Rational>>(&product)) return *mm;
  throw ContractError("context product is not an involutive monomial operator");
}

KsStructure check_ks_structure(const KsConfiguration& cfg) {
  KsStructure s;
  s.contexts_commute = true;
  for (const auto& ctx : cfg.contexts)
    for (std::size_t i = 0; i < ctx.members.size(); ++i)
      for (std::size_t j = i + 1; j < ctx.members.size(); ++j)
        if (!operators_commute(cfg.observables[ctx.members[i]].op, cfg.observables[ctx.members[j]].op))
          s.contexts_commute = false;

  std::vector<std::size_t> uses(cfg.observables.size(), 0);
  for (const auto& ctx : cfg.contexts)
    for (std::size_t i : ctx.members) ++uses.at(i);
  s.each_observable_twice = std::all_of(uses.begin(), uses.end(), [](std::size_t u) { return u == 2; });

  if (!s.contexts_commute || cfg.contexts.empty()) return s;
  s.horizontal_negative_definite =
      cfg.contexts[0].sign_target < 0 &&
      classify_definiteness(context_product(cfg, 0)) == Definiteness::NegativeDefinite;
  if (cfg.contexts.size() > 1) {
    const auto reference = context_product(cfg, 1);
    s.others_equal_positive_definite = classify_definiteness(reference) == Definiteness::PositiveDefinite;
    for (std::size_t c = 1; c < cfg.contexts.size(); ++c)
      if (cfg.contexts[c].sign_target < 0 || !(context_product(cfg, c) == reference))
        s.others_equal_positive_definite = false;
  }
  return s;
}

const char* to_string(KsMode m) { return m == KsMode::SignOnly ? "sign-only" : "full-spectrum"; }

namespace {

KsReport sign_search(const KsConfiguration& cfg) {
  const std::size_t n = cfg.observables.size();
  KsReport report;
  report.mode = KsMode::SignOnly;
  // Bit k set means observable k is negative; pattern 0 is all positive.
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
    ++report.patterns_checked;
    bool ok = true;
    for (const auto& ctx : cfg.contexts) {
      int sign = 1;
      for (std::size_t i : ctx.members) sign *= ((pattern >> i) & 1U) ? -1 : 1;
      if (sign != ctx.sign_target) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<Rational> w;
      for (std::size_t i = 0; i < n; ++i) w.emplace_back(((pattern >> i) & 1U) ? -1 : 1);
      report.status = LhvStatus::Sat;
      report.witness = std::move(w);
      return report;
    }
  }
  report.status = LhvStatus::Unsat;
  return report;
}

KsReport full_search(const KsConfiguration& cfg) {
  const std::size_t n = cfg.observables.size();
  std::vector<Spectrum> spectra;
  for (const auto& o : cfg.observables) spectra.push_back(spectrum_of(o.op));
  std::vector<Spectrum> context_spectra;
  for (std::size_t c = 0; c < cfg.contexts.size(); ++c) context_spectra.push_back(spectrum_of(context_product(cfg, c)));

  std::vector<std::vector<Rational>> domains;
  for (std::size_t i = 0; i < kOneParty; ++i) domains.push_back(spectra[i].distinct_values());

  KsReport report;
  report.mode = KsMode::FullSpectrum;
  std::vector<std::size_t> pos(kOneParty, 0);
  std::vector<Rational> values(n);
  while (true) {
    ++report.patterns_checked;
    for (std::size_t i = 0; i < kOneParty; ++i) values[i] = domains[i][pos[i]];
    bool ok = true;
    for (std::size_t c = kOneParty; c < n && ok; ++c) {
      Rational v = 1;
      for (std::size_t p = 0; p < kParties; ++p)
        v *= values[2 * p + (*cfg.observables[c].letters[p] == Letter::A ? 0 : 1)];
      values[c] = v;
      ok = in_spectrum(spectra[c], v);
    }
    for (std::size_t c = 0; c < cfg.contexts.size() && ok; ++c) {
      Rational prod = 1;
      for (std::size_t i : cfg.contexts[c].members) prod *= values[i];
      ok = prod.sign() == cfg.contexts[c].sign_target && in_spectrum(context_spectra[c], prod);
    }
    if (ok) {
      report.status = LhvStatus::Sat;
      report.witness = values;
      return report;
    }
    std::size_t s = kOneParty;
    while (s > 0) {
      --s;
      if (++pos[s] < domains[s].size()) break;
      pos[s] = 0;
      if (s == 0) {
        report.status = LhvStatus::Unsat;
        return report;
      }
    }
  }
}

}  // namespace

KsReport ks_color_search(const KsConfiguration& cfg, KsMode mode) {
  return mode == KsMode::SignOnly ? sign_search(cfg) : full_search(cfg);
}

bool ks_parity_unsat(const KsConfiguration& cfg) {
  std::vector<std::size_t> uses(cfg.observables.size(), 0);
  int target = 1;
  for (const auto& ctx : cfg.contexts) {
    target *= ctx.sign_target;
    for (std::size_t i : ctx.members) ++uses.at(i);
  }
  return target < 0 && std::all_of(uses.begin(), uses.end(), [](std::size_t u) { return u % 2 == 0; });
}

std::string render_ks(const KsConfiguration& cfg) {
  std::ostringstream os;
  for (std::size_t c = 0; c < cfg.contexts.size(); ++c) {
    os << (c == 0 ? "horizontal" : "line " + std::to_string(c)) << ":";
    for (std::size_t i : cfg.contexts[c].members) os << ' ' << cfg.observables[i].label;
    os << "  product " << (cfg.contexts[c].sign_target < 0 ? "< 0" : "> 0") << '\n';
  }
  return os.str();
}

}  // namespace ghz
