#include "ghz/words.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ghz/errors.hpp"

namespace ghz {

PartySpec PartySpec::make(std::vector<std::size_t> levels, bool allow_mixed_parity) {
  if (levels.size() < 3)
    throw InvalidLevelsError("at least 3 parties required, got " + std::to_string(levels.size()));
  for (std::size_t m : levels)
    if (m < 2) throw InvalidLevelsError("level count must be >= 2, got " + std::to_string(m));
  PartySpec p;
  p.levels_ = std::move(levels);
  p.allow_mixed_ = allow_mixed_parity;
  if (p.mixed_parity() && !allow_mixed_parity)
    throw ParityError("all level counts must have the same parity");
  return p;
}

std::size_t PartySpec::dim() const {
  std::size_t d = 1;
  for (std::size_t m : levels_) d *= m;
  return d;
}

bool PartySpec::mixed_parity() const {
  return std::any_of(levels_.begin(), levels_.end(),
                     [&](std::size_t m) { return m % 2 != levels_.front() % 2; });
}

PartySpec PartySpec::prefix(std::size_t n) const {
  return make(std::vector<std::size_t>(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(n)),
              allow_mixed_);
}

TensorWord TensorWord::parse(std::string_view letters) {
  if (letters.empty()) throw ParseError("empty word");
  for (char c : letters)
    if (c != 'A' && c != 'B') throw ParseError("word letters must be A or B: '" + std::string(letters) + "'");
  TensorWord w;
  w.letters_ = std::string(letters);
  return w;
}

std::size_t TensorWord::a_count() const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), 'A'));
}

TensorWord TensorWord::appended(Letter l) const {
  TensorWord w = *this;
  w.letters_.push_back(l == Letter::A ? 'A' : 'B');
  return w;
}

bool words_commute(const TensorWord& u, const TensorWord& v) {
  if (u.size() != v.size()) throw PartyMismatchError("words of different length: " + u.str() + ", " + v.str());
  std::size_t distance = 0;
  for (std::size_t i = 0; i < u.size(); ++i) distance += u[i] != v[i];
  return distance % 2 == 0;
}

namespace {

std::vector<std::size_t> effective_plan(const ProofSet& ps) {
  if (!ps.plan.empty()) return ps.plan;
  std::vector<std::size_t> plan(ps.words.size());
  for (std::size_t i = 0; i < plan.size(); ++i) plan[i] = i;
  return plan;
}

void check_shape(const ProofSet& ps) {
  if (ps.words.empty()) throw ContractError("proof set has no words");
  for (const auto& w : ps.words)
    if (w.size() != ps.parties.size())
      throw PartyMismatchError("word " + w.str() + " does not match " + std::to_string(ps.parties.size()) + " parties");
  for (std::size_t i : ps.plan)
    if (i >= ps.words.size()) throw ContractError("product plan index out of range");
}

std::size_t slot(std::size_t party, Letter l) { return 2 * party + (l == Letter::A ? 0 : 1); }

}  // namespace

std::vector<std::size_t> slot_usage(const ProofSet& ps) {
  check_shape(ps);
  std::vector<std::size_t> usage(2 * ps.parties.size(), 0);
  for (std::size_t wi : effective_plan(ps))
    for (std::size_t p = 0; p < ps.parties.size(); ++p) ++usage[slot(p, ps.words[wi][p])];
  return usage;
}

RequirementFlags validate_requirements(const ProofSet& ps) {
  check_shape(ps);
  RequirementFlags f;
  const std::size_t n = ps.parties.size();

  const std::size_t parity = ps.words.front().a_count() % 2;
  f.same_parity = std::all_of(ps.words.begin(), ps.words.end(),
                              [&](const TensorWord& w) { return w.a_count() % 2 == parity; });

  std::map<std::size_t, std::size_t> count_freq;
  const auto plan = effective_plan(ps);
  for (std::size_t wi : plan) ++count_freq[ps.words[wi].a_count()];
  if (plan.size() >= 3 && count_freq.size() == 2) {
    const auto lo = count_freq.begin();
    const auto hi = std::next(lo);
    const bool one_odd_out = lo->second == 1 || hi->second == 1;
    f.one_distinguished = one_odd_out && lo->first % 2 == hi->first % 2;
  }

  std::vector<bool> used(2 * n, false);
  for (const auto& w : ps.words)
    for (std::size_t p = 0; p < n; ++p) used[slot(p, w[p])] = true;
  const auto usage = slot_usage(ps);
  f.even_usage = true;
  for (std::size_t s = 0; s < 2 * n; ++s)
    if (used[s] && (usage[s] < 2 || usage[s] % 2 != 0)) f.even_usage = false;

  f.all_observables_used = true;
  for (std::size_t p = 0; p < n; ++p)
    if (!used[slot(p, Letter::A)] || !used[slot(p, Letter::B)]) f.all_observables_used = false;
  return f;
}

int plan_sign(const ProofSet& ps) {
  check_shape(ps);
  std::size_t inversions = 0;
  const auto plan = effective_plan(ps);
  for (std::size_t p = 0; p < ps.parties.size(); ++p) {
    std::size_t b_seen = 0;
    for (std::size_t wi : plan) {
      if (ps.words[wi][p] == Letter::B)
        ++b_seen;
      else
        inversions += b_seen;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

namespace {

// Word number k in lexicographic order (A < B) is the binary expansion of k
// with B = 1, most significant letter first.
TensorWord word_from_index(std::size_t k, std::size_t n) {
  std::string s(n, 'A');
  for (std::size_t i = 0; i < n; ++i)
    if ((k >> (n - 1 - i)) & 1U) s[i] = 'B';
  return TensorWord::parse(s);
}

std::vector<TensorWord> all_words(std::size_t n) {
  std::vector<TensorWord> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) out.push_back(word_from_index(k, n));
  return out;
}

// Common-count words first (lexicographic), distinguished word last.
std::vector<TensorWord> canonical_order(std::vector<TensorWord> words) {
  std::sort(words.begin(), words.end());
  std::map<std::size_t, std::size_t> freq;
  for (const auto& w : words) ++freq[w.a_count()];
  std::stable_partition(words.begin(), words.end(), [&](const TensorWord& w) { return freq[w.a_count()] != 1; });
  return words;
}

}  // namespace

ProofSet generate_odd_set(const PartySpec& parties) {
  const std::size_t n = parties.size();
  if (n % 2 == 0) throw InvalidLevelsError("generate_odd_set needs an odd number of parties, got " + std::to_string(n));
  const auto words = all_words(n);
  const std::size_t count = words.size();
  ProofSet candidate{parties, {}, {0, 1, 2, 3}};
  candidate.words.resize(4);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (words[i].a_count() % 2 != words[j].a_count() % 2) continue;
      for (std::size_t k = j + 1; k < count; ++k) {
        if (words[i].a_count() % 2 != words[k].a_count() % 2) continue;
        for (std::size_t l = k + 1; l < count; ++l) {
          candidate.words = {words[i], words[j], words[k], words[l]};
          if (!validate_requirements(candidate).all() || plan_sign(candidate) >= 0) continue;
          candidate.words = canonical_order(candidate.words);
          return candidate;
        }
      }
    }
  }
  throw ContractError("no valid 4-word set for " + std::to_string(n) + " parties");
}

ProofSet extend_even_set(const PartySpec& parties) {
  const std::size_t n = parties.size();
  if (n % 2 != 0 || n < 4)
    throw InvalidLevelsError("extend_even_set needs an even number of parties >= 4, got " + std::to_string(n));
  const ProofSet base = generate_odd_set(parties.prefix(n - 1));
  const std::size_t common = base.words.front().a_count();

  ProofSet out{parties, {}, {0, 1, 2, 3, 4, 4}};
  for (const auto& w : base.words) out.words.push_back(w.appended(Letter::B));
  const std::size_t a_letters = common - 1;
  std::string fifth(n - 1 - a_letters, 'B');
  fifth.append(a_letters, 'A');
  out.words.push_back(TensorWord::parse(fifth).appended(Letter::A));

  if (!validate_requirements(out).all() || plan_sign(out) >= 0)
    throw ContractError("even-n extension failed its own requirements");
  return out;
}

ProofSet build_proof_set(const PartySpec& parties) {
  return parties.size() % 2 == 1 ? generate_odd_set(parties) : extend_even_set(parties);
}

bool exhaustive_no_4set(std::size_t n) {
  if (n > 4) throw SearchBoundError("exhaustive 4-set search is limited to n <= 4, got " + std::to_string(n));
  const PartySpec parties = PartySpec::uniform(n, 2);
  const auto words = all_words(n);
  ProofSet candidate{parties, {}, {0, 1, 2, 3}};
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      for (std::size_t k = j + 1; k < words.size(); ++k)
        for (std::size_t l = k + 1; l < words.size(); ++l) {
          candidate.words = {words[i], words[j], words[k], words[l]};
          if (validate_requirements(candidate).all()) return false;
        }
  return true;
}

SiteFamily canonical_family(const PartySpec& parties) {
  SiteFamily f;
  f.reserve(parties.size());
  for (std::size_t m : parties.levels()) f.push_back(canonical_pair(m));
  return f;
}

MonomialMatrix<Rational> realize(const TensorWord& w, const SiteFamily& family) {
  if (w.size() != family.size())
    throw PartyMismatchError("word " + w.str() + " has " + std::to_string(w.size()) + " letters for " +
                             std::to_string(family.size()) + " parties");
  std::vector<MonomialMatrix<Rational>> factors;
  factors.reserve(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) factors.push_back(to_monomial(family[p][w[p]]));
  return monomial_tensor(factors);
}

std::vector<MonomialMatrix<Rational>> realize_all(const ProofSet& ps, const SiteFamily& family) {
  std::vector<MonomialMatrix<Rational>> out;
  out.reserve(ps.words.size());
  for (const auto& w : ps.words) out.push_back(realize(w, family));
  return out;
}

DenseMatrix realize_dense(const TensorWord& w, const SiteFamily& family) {
  if (w.size() != family.size()) throw PartyMismatchError("word/party count mismatch");
  std::vector<DenseMatrix> factors;
  for (std::size_t p = 0; p < w.size(); ++p) factors.push_back(densify(family[p][w[p]]));
  return mat_tensor(factors);
}

std::vector<std::size_t> index_digits(std::size_t index, const std::vector<std::size_t>& levels) {
  std::vector<std::size_t> d(levels.size());
  for (std::size_t p = levels.size(); p-- > 0;) {
    d[p] = index % levels[p];
    index /= levels[p];
  }
  return d;
}

std::size_t digits_index(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& levels) {
  std::size_t idx = 0;
  for (std::size_t p = 0; p < levels.size(); ++p) idx = idx * levels[p] + digits[p];
  return idx;
}

}  // namespace ghz
