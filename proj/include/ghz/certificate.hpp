#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghz/ks.hpp"
#include "ghz/lhv.hpp"
#include "ghz/spectral.hpp"
#include "ghz/words.hpp"

namespace ghz {

inline constexpr int kCertificateFormatVersion = 1;
inline constexpr const char* kToolVersion = "ghz-cert 1.0.0";

/// Self-contained GHZ proof certificate. Spectra, requirement flags and the
/// LHV report are advisory: verification recomputes them and rejects on any
/// disagreement.
struct GhzCertificate {
  int format_version = kCertificateFormatVersion;
  std::vector<std::size_t> levels;
  bool mixed_parity_override = false;
  bool canonical_family = true;
  SiteFamily family;
  std::vector<TensorWord> words;
  std::vector<std::size_t> plan;  // 0-based; serialized 1-based
  std::vector<Rational> eigen_tuple;
  StateVector state;
  std::vector<Spectrum> word_spectra;
  Spectrum plan_spectrum;
  RequirementFlags requirements;
  LhvReport lhv;
  std::string tool_version = kToolVersion;
  std::vector<std::string> conventions;
};

struct BuildOptions {
  std::optional<std::vector<Rational>> tuple_hint;
  std::uint64_t bound = kDefaultSearchBound;
  bool allow_mixed_parity = false;
};

/// Full pipeline: proof set, canonical operators, GHZ state, spectra, LHV.
GhzCertificate build_certificate(const std::vector<std::size_t>& levels, const BuildOptions& opts = {});

std::string serialize(const GhzCertificate& cert);

/// Throws ParseError naming the byte offset or the field path at fault.
GhzCertificate parse_certificate(std::string_view text);

struct VerifyResult {
  bool accepted = false;
  std::string reason;
  std::vector<std::string> notes;
};

/// Re-derives every claim of the certificate from its raw contents.
VerifyResult verify_certificate(const GhzCertificate& cert, std::uint64_t bound = kDefaultSearchBound);

struct CriteriaResult {
  bool is_ghz = false;
  std::string reason;
  std::vector<Rational> eigen_tuple;
  std::vector<std::string> notes;
};

/// Checks the three GHZ-state criteria against supplied witnesses: (I) each
/// site pair anticommutes, (II) the state is a joint eigenvector of every
/// word, (III) eigenvalues are nonzero with a negative plan product.
CriteriaResult check_ghz_criteria(const StateVector& state, const PartySpec& parties, const SiteFamily& family,
                                  const std::vector<TensorWord>& words, const std::vector<std::size_t>& plan);

/// Standalone state file: {"entries": [[index, "num", "den"], ...], "norm_sq": "q"}.
std::string serialize_state(const StateVector& s);
StateVector parse_state(std::string_view text);

struct KsCertificate {
  int format_version = kCertificateFormatVersion;
  std::size_t levels = 0;
  KsMode mode = KsMode::SignOnly;
  std::vector<std::string> observables;
  std::vector<std::vector<std::string>> contexts;
  std::vector<int> sign_targets;
  KsReport report;
  bool parity_unsat = false;
  std::string rendering;
  std::string tool_version = kToolVersion;
};

KsCertificate build_ks_certificate(std::size_t m, KsMode mode);
std::string serialize(const KsCertificate& cert);
KsCertificate parse_ks_certificate(std::string_view text);
VerifyResult verify_ks_certificate(const KsCertificate& cert);

enum class CertificateKind { Ghz, Ks };

/// Reads the "format" field.
CertificateKind detect_certificate_kind(std::string_view text);

}  // namespace ghz
