#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghz/rational.hpp"
#include "ghz/words.hpp"

namespace ghz {

/// One constraint per word: the product of the hidden values of its letters
/// must equal rhs[word]. Hidden values live in slots indexed
/// 2*party + (0 for A, 1 for B); domains[slot] lists the allowed values in
/// ascending order.
struct ConstraintSystem {
  std::size_t parties = 0;
  std::vector<TensorWord> words;
  std::vector<Rational> rhs;
  std::vector<std::size_t> plan;
  std::vector<std::vector<Rational>> domains;
};

/// Domains are the distinct eigenvalues of each site operator.
ConstraintSystem make_constraint_system(const ProofSet& ps, const SiteFamily& family, std::vector<Rational> rhs);

enum class LhvStatus { Sat, Unsat };
enum class LhvMethod { ParityAnalytic, BruteForce, SignOnly, Both };

const char* to_string(LhvStatus s);
const char* to_string(LhvMethod m);

struct LhvReport {
  LhvStatus status = LhvStatus::Unsat;
  std::optional<std::vector<Rational>> witness;
  LhvMethod method = LhvMethod::BruteForce;
  std::uint64_t assignments_checked = 0;
  std::string explanation;
};

inline constexpr std::uint64_t kDefaultSearchBound = 100'000'000;

/// Every slot has even multiplicity over the plan and the plan product of the
/// right-hand sides is negative. Nonzero right-hand sides force nonzero values,
/// so the plan product of left-hand sides is a product of squares: no
/// assignment can exist.
bool parity_unsat(const ConstraintSystem& cs);

/// Human-readable account of the parity obstruction with actual counts.
std::string explain_parity(const ConstraintSystem& cs);

/// Exhaustive scan, first slot most significant, values ascending. SAT
/// reports carry the first witness found. Throws SearchBoundError when the
/// assignment space exceeds `bound`.
LhvReport brute_force_lhv(const ConstraintSystem& cs, std::uint64_t bound = kDefaultSearchBound);

/// Fast pre-check over signs only: values +-1, constraint signs must match.
LhvReport sign_only_lhv(const ConstraintSystem& cs);

/// Parity argument plus brute force; throws ContractError if they disagree.
LhvReport check_lhv(const ConstraintSystem& cs, std::uint64_t bound = kDefaultSearchBound);

bool verify_witness(const ConstraintSystem& cs, const std::vector<Rational>& witness);

}  // namespace ghz
