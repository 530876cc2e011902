#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppclone/closure.hpp"
#include "ppclone/formula.hpp"
#include "ppclone/registry.hpp"
#include "ppclone/relation.hpp"

namespace ppclone {

inline constexpr int kSubpowerEnumerationLimit = 22;  // |A|^n guard

/// One step of a membership witness. Leading steps carry op == "gen" and
/// reproduce a generator; later steps apply a named operation to the results
/// of earlier steps (coordinate-wise).
struct TraceStep {
  std::string op;
  std::vector<int> args;
  std::vector<int> result;
};
using DerivationTrace = std::vector<TraceStep>;

struct GenerateResult {
  Relation relation;       // Sg(generators), canonical order
  ClosureResult closure;   // discovery-order elements with producing steps
  ProductContext context;
};

/// Sg_{A^n}(generators): least relation containing the generators closed
/// under all operations applied coordinate-wise.
GenerateResult generate(const BasisRegistry& basis, const std::string& sort_id, int n,
                        const std::vector<std::vector<int>>& generators);

/// Extracts a minimal trace deriving `target` from the closure record.
DerivationTrace extract_trace(const GenerateResult& gen, std::span<const int> target);

struct TraceCheck {
  bool ok = true;
  int failing_step = -1;
  std::string reason;
};

TraceCheck verify_membership_certificate(const BasisRegistry& basis, const std::string& sort_id,
                                         int n, const std::vector<std::vector<int>>& generators,
                                         std::span<const int> target,
                                         const DerivationTrace& trace);

struct SeparationCertificate {
  PpFormula formula;
  BasisRegistry basis;  // self-contained snapshot the formula is over
};

struct SeparationCheck {
  bool ok = true;
  std::optional<std::vector<int>> failing_generator;  // generator where phi fails
  bool holds_on_target = false;                       // must be false for ok
};

SeparationCheck verify_separation_certificate(const SeparationCertificate& cert,
                                              const std::vector<std::vector<int>>& generators,
                                              std::span<const int> target);

struct SmpResult {
  bool member = false;
  std::optional<DerivationTrace> trace;                // on Yes
  std::optional<SeparationCertificate> certificate;    // on No
};

/// Decides membership of target in Sg(generators) with a verified
/// certificate either way. The separating formula comes from the
/// short-definition pipeline applied to Sg(generators); `gamma`, when given,
/// seeds the registry the pipeline works in.
SmpResult smp(const BasisRegistry& basis, const std::string& sort_id,
              std::span<const int> target, const std::vector<std::vector<int>>& generators,
              const BasisRegistry* gamma = nullptr);

/// All subsets of A^n closed under the operations, including the empty one.
std::vector<Relation> enumerate_subpowers(const BasisRegistry& basis, const std::string& sort_id,
                                          int n);
std::int64_t count_subpowers(const BasisRegistry& basis, const std::string& sort_id, int n);

std::string serialize_trace(const DerivationTrace& trace);
DerivationTrace parse_trace(const std::string& text);

}  // namespace ppclone
