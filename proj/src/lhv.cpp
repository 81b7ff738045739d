#include "ghz/lhv.hpp"

#include <algorithm>
#include <sstream>

#include "ghz/errors.hpp"
#include "ghz/spectral.hpp"

namespace ghz {

namespace {

std::size_t slot_of(std::size_t party, Letter l) { return 2 * party + (l == Letter::A ? 0 : 1); }

std::string slot_name(std::size_t slot) {
  return std::string(slot % 2 == 0 ? "A" : "B") + std::to_string(slot / 2 + 1);
}

std::vector<std::size_t> plan_of(const ConstraintSystem& cs) {
  if (!cs.plan.empty()) return cs.plan;
  std::vector<std::size_t> p(cs.words.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
  return p;
}

std::vector<std::size_t> plan_usage(const ConstraintSystem& cs) {
  std::vector<std::size_t> usage(2 * cs.parties, 0);
  for (std::size_t wi : plan_of(cs))
    for (std::size_t p = 0; p < cs.parties; ++p) ++usage[slot_of(p, cs.words.at(wi)[p])];
  return usage;
}

void check_system(const ConstraintSystem& cs) {
  if (cs.words.size() != cs.rhs.size()) throw ContractError("constraint system: one rhs per word required");
  if (cs.domains.size() != 2 * cs.parties) throw ContractError("constraint system: one domain per slot required");
  for (const auto& w : cs.words)
    if (w.size() != cs.parties) throw PartyMismatchError("constraint word " + w.str() + " has wrong length");
}

bool satisfies(const ConstraintSystem& cs, const std::vector<const Rational*>& values) {
  for (std::size_t c = 0; c < cs.words.size(); ++c) {
    Rational prod = 1;
    for (std::size_t p = 0; p < cs.parties; ++p) prod *= *values[slot_of(p, cs.words[c][p])];
    if (prod != cs.rhs[c]) return false;
  }
  return true;
}

// Generic odometer over per-slot domains.
LhvReport enumerate(const ConstraintSystem& cs, const std::vector<std::vector<Rational>>& domains,
                    std::uint64_t bound, LhvMethod method,
                    bool (*accept)(const ConstraintSystem&, const std::vector<const Rational*>&)) {
  std::uint64_t space = 1;
  for (const auto& d : domains) {
    if (d.empty()) return {LhvStatus::Unsat, std::nullopt, method, 0, "empty value domain"};
    if (space > bound / d.size()) throw SearchBoundError("assignment space exceeds bound " + std::to_string(bound));
    space *= d.size();
  }
  const std::size_t slots = domains.size();
  std::vector<std::size_t> pos(slots, 0);
  std::vector<const Rational*> values(slots);
  for (std::size_t s = 0; s < slots; ++s) values[s] = &domains[s][0];

  LhvReport report;
  report.method = method;
  for (std::uint64_t checked = 1;; ++checked) {
    if (accept(cs, values)) {
      report.status = LhvStatus::Sat;
      report.assignments_checked = checked;
      std::vector<Rational> witness;
      for (const auto* v : values) witness.push_back(*v);
      report.witness = std::move(witness);
      return report;
    }
    std::size_t s = slots;
    while (s > 0) {
      --s;
      if (++pos[s] < domains[s].size()) {
        values[s] = &domains[s][pos[s]];
        break;
      }
      pos[s] = 0;
      values[s] = &domains[s][0];
      if (s == 0) {
        report.status = LhvStatus::Unsat;
        report.assignments_checked = checked;
        return report;
      }
    }
    if (slots == 0) {
      report.assignments_checked = checked;
      return report;
    }
  }
}

bool sign_satisfies(const ConstraintSystem& cs, const std::vector<const Rational*>& values) {
  for (std::size_t c = 0; c < cs.words.size(); ++c) {
    int sign = 1;
    for (std::size_t p = 0; p < cs.parties; ++p) sign *= values[slot_of(p, cs.words[c][p])]->sign();
    if (sign != cs.rhs[c].sign()) return false;
  }
  return true;
}

}  // namespace

ConstraintSystem make_constraint_system(const ProofSet& ps, const SiteFamily& family, std::vector<Rational> rhs) {
  if (family.size() != ps.parties.size()) throw PartyMismatchError("site family does not match party count");
  ConstraintSystem cs;
  cs.parties = ps.parties.size();
  cs.words = ps.words;
  cs.rhs = std::move(rhs);
  cs.plan = ps.plan;
  for (const auto& pair : family) {
    cs.domains.push_back(spectrum_of(pair.a).distinct_values());
    cs.domains.push_back(spectrum_of(pair.b).distinct_values());
  }
  check_system(cs);
  return cs;
}

const char* to_string(LhvStatus s) { return s == LhvStatus::Sat ? "SAT" : "UNSAT"; }

const char* to_string(LhvMethod m) {
  switch (m) {
    case LhvMethod::ParityAnalytic: return "parity-analytic";
    case LhvMethod::BruteForce: return "brute-force";
    case LhvMethod::SignOnly: return "sign-only";
    case LhvMethod::Both: return "both";
  }
  return "both";
}

bool parity_unsat(const ConstraintSystem& cs) {
  check_system(cs);
  const auto usage = plan_usage(cs);
  if (std::any_of(usage.begin(), usage.end(), [](std::size_t u) { return u % 2 != 0; })) return false;
  Rational prod = 1;
  for (std::size_t wi : plan_of(cs)) prod *= cs.rhs.at(wi);
  return prod.sign() < 0;
}

std::string explain_parity(const ConstraintSystem& cs) {
  check_system(cs);
  const auto usage = plan_usage(cs);
  Rational prod = 1;
  for (std::size_t wi : plan_of(cs)) prod *= cs.rhs.at(wi);
  std::ostringstream os;
  os << "Multiplying the " << plan_of(cs).size() << " plan constraints, the hidden values occur with multiplicities";
  for (std::size_t s = 0; s < usage.size(); ++s) os << (s == 0 ? " " : ", ") << slot_name(s) << "x" << usage[s];
  const bool all_even = std::none_of(usage.begin(), usage.end(), [](std::size_t u) { return u % 2 != 0; });
  if (all_even)
    os << "; all even, so the left side is a product of squares and cannot be negative";
  else
    os << "; not all even, so no parity obstruction";
  os << ", while the right sides multiply to " << to_string(prod) << ".";
  if (all_even && prod.sign() < 0) os << " No assignment satisfies every constraint.";
  return os.str();
}

LhvReport brute_force_lhv(const ConstraintSystem& cs, std::uint64_t bound) {
  check_system(cs);
  auto report = enumerate(cs, cs.domains, bound, LhvMethod::BruteForce, &satisfies);
  report.explanation = report.status == LhvStatus::Sat ? "witness found by exhaustive search"
                                                       : "exhaustive search found no assignment";
  return report;
}

LhvReport sign_only_lhv(const ConstraintSystem& cs) {
  check_system(cs);
  const std::vector<std::vector<Rational>> signs(cs.domains.size(), {Rational(-1), Rational(1)});
  auto report = enumerate(cs, signs, kDefaultSearchBound, LhvMethod::SignOnly, &sign_satisfies);
  report.explanation = report.status == LhvStatus::Sat ? "sign pattern found" : "no sign pattern fits";
  return report;
}

LhvReport check_lhv(const ConstraintSystem& cs, std::uint64_t bound) {
  const bool analytic = parity_unsat(cs);
  LhvReport report = brute_force_lhv(cs, bound);
  if (analytic && report.status == LhvStatus::Sat)
    throw ContractError("parity argument and brute force disagree");
  if (report.witness && !verify_witness(cs, *report.witness))
    throw ContractError("brute-force witness does not re-verify");
  report.method = LhvMethod::Both;
  report.explanation = explain_parity(cs);
  return report;
}

bool verify_witness(const ConstraintSystem& cs, const std::vector<Rational>& witness) {
  check_system(cs);
  if (witness.size() != cs.domains.size()) return false;
  std::vector<const Rational*> values;
  for (const auto& v : witness) values.push_back(&v);
  return satisfies(cs, values);
}

}  // namespace ghz
