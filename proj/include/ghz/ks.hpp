#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghz/lhv.hpp"
#include "ghz/monomial.hpp"
#include "ghz/spectral.hpp"
#include "ghz/words.hpp"

namespace ghz {

/// One of the ten observables. One-party observables are embedded as
/// identity-padded words, so `letters` holds nullopt at the other parties.
struct KsObservable {
  std::string label;
  std::vector<std::optional<Letter>> letters;
  MonomialMatrix<Rational> op;
};

struct KsContext {
  std::vector<std::size_t> members;
  int sign_target = 1;
};

/// Ten observables for three m-level parties (m even): A1 B1 A2 B2 A3 B3 at
/// indices 0..5, then ABB BAB BBA AAA at 6..9. Context 0 is the line of the
/// four composites (sign -); contexts 1..4 pair each composite with its
/// three one-party factors (sign +).
struct KsConfiguration {
  std::size_t levels = 0;
  std::vector<KsObservable> observables;
  std::vector<KsContext> contexts;
};

struct KsStructure {
  bool contexts_commute = false;
  bool each_observable_twice = false;
  bool horizontal_negative_definite = false;
  bool others_equal_positive_definite = false;

  bool all() const {
    return contexts_commute && each_observable_twice && horizontal_negative_definite &&
           others_equal_positive_definite;
  }
};

/// Throws ParityError for odd m and ContractError if a structural invariant
/// fails to re-verify.
KsConfiguration build_ks(std::size_t m);

/// Recomputes every structural invariant from the operators.
KsStructure check_ks_structure(const KsConfiguration& cfg);

/// Operator product along a context.
MonomialMatrix<Rational> context_product(const KsConfiguration& cfg, std::size_t context);

enum class KsMode { SignOnly, FullSpectrum };

const char* to_string(KsMode m);

struct KsReport {
  LhvStatus status = LhvStatus::Unsat;
  std::optional<std::vector<Rational>> witness;
  std::uint64_t patterns_checked = 0;
  KsMode mode = KsMode::SignOnly;
};

/// Sign-only: all 2^10 sign patterns against the context sign targets.
/// Full-spectrum: one-party values range over their spectra, composites are
/// forced to the product of their factors, and each context product must
/// match its sign target and lie in the spectrum of the context operator.
KsReport ks_color_search(const KsConfiguration& cfg, KsMode mode);

/// Each observable sits in an even number of contexts while the sign targets
/// multiply to -1.
bool ks_parity_unsat(const KsConfiguration& cfg);

/// One line per context.
std::string render_ks(const KsConfiguration& cfg);

}  // namespace ghz
