#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ghz/monomial.hpp"
#include "ghz/site_operators.hpp"

namespace ghz {

using Letter = SiteKind;

/// Level counts (m_1, ..., m_n) of the parties. n >= 3, every m_i >= 2 and
/// all m_i of one parity unless the experimental override is set.
class PartySpec {
 public:
  static PartySpec make(std::vector<std::size_t> levels, bool allow_mixed_parity = false);
  static PartySpec uniform(std::size_t n, std::size_t m) { return make(std::vector<std::size_t>(n, m)); }

  std::size_t size() const { return levels_.size(); }
  std::size_t level(std::size_t party) const { return levels_[party]; }
  const std::vector<std::size_t>& levels() const { return levels_; }
  std::size_t dim() const;
  bool mixed_parity() const;
  bool even_levels() const { return levels_.front() % 2 == 0; }

  /// First `n` parties (used by the even-n extension).
  PartySpec prefix(std::size_t n) const;

  friend bool operator==(const PartySpec&, const PartySpec&) = default;

 private:
  std::vector<std::size_t> levels_;
  bool allow_mixed_ = false;
};

/// O_1 (x) ... (x) O_n with each O_i either A_i or B_i, spelled "ABB".
class TensorWord {
 public:
  TensorWord() = default;
  static TensorWord parse(std::string_view letters);

  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i] == 'A' ? Letter::A : Letter::B; }
  std::size_t a_count() const;
  const std::string& str() const { return letters_; }

  TensorWord appended(Letter l) const;

  friend auto operator<=>(const TensorWord&, const TensorWord&) = default;

 private:
  std::string letters_;
};

/// Words whose plan-product feeds the parity argument. `plan` holds 0-based
/// word indices with multiplicity, e.g. {0,1,2,3} or {0,1,2,3,4,4}.
struct ProofSet {
  PartySpec parties;
  std::vector<TensorWord> words;
  std::vector<std::size_t> plan;
};

struct RequirementFlags {
  bool same_parity = false;         // (i)
  bool one_distinguished = false;   // (ii)
  bool even_usage = false;          // (iii)
  bool all_observables_used = false;  // (iv)

  bool all() const { return same_parity && one_distinguished && even_usage && all_observables_used; }
  friend bool operator==(const RequirementFlags&, const RequirementFlags&) = default;
};

/// Letters differ in an even number of positions. Throws PartyMismatchError
/// when lengths differ.
bool words_commute(const TensorWord& u, const TensorWord& v);

RequirementFlags validate_requirements(const ProofSet& ps);

/// Sign of the plan product as an operator: at each party the ordered letter
/// sequence reduces to (-1)^(#B-before-A pairs) A^(2p) B^(2q). Only
/// meaningful when every letter count per party is even.
int plan_sign(const ProofSet& ps);

/// Plan usage count of each (party, letter) slot, indexed 2*party + letter.
std::vector<std::size_t> slot_usage(const ProofSet& ps);

ProofSet generate_odd_set(const PartySpec& parties);
ProofSet extend_even_set(const PartySpec& parties);

/// generate_odd_set or extend_even_set by the parity of n.
ProofSet build_proof_set(const PartySpec& parties);

/// Whether no 4-word set of distinct n-letter words meets (i)-(iv) at once.
/// Only n <= 4 is searched; larger n throws SearchBoundError.
bool exhaustive_no_4set(std::size_t n);

using SiteFamily = std::vector<SitePair>;

SiteFamily canonical_family(const PartySpec& parties);

/// Monomial realization of a word on the composite space, party 1 most
/// significant.
MonomialMatrix<Rational> realize(const TensorWord& w, const SiteFamily& family);
std::vector<MonomialMatrix<Rational>> realize_all(const ProofSet& ps, const SiteFamily& family);

/// Dense oracle realization via repeated Kronecker products.
DenseMatrix realize_dense(const TensorWord& w, const SiteFamily& family);

/// Composite index <-> per-party digits, party 1 most significant.
std::vector<std::size_t> index_digits(std::size_t index, const std::vector<std::size_t>& levels);
std::size_t digits_index(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& levels);

}  // namespace ghz
