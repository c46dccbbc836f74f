#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afpt/action.hpp"
#include "afpt/group.hpp"
#include "afpt/rational.hpp"

namespace afpt {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Which additive constant goes into D = N + 12 delta + k.
enum class DFormula { Plus4, Plus10 };

std::string_view d_formula_name(DFormula f);

struct ConstantsReport {
  std::uint64_t c0 = 0;  // max finite-subgroup order
  std::uint64_t c1 = 0;  // vertex orbits
  std::uint64_t c2 = 0;  // vertices in an a-ball
  std::uint64_t c3 = 0;  // vertex-stabilizer order
  int a = 0;
  Rational delta{0};
  DFormula formula = DFormula::Plus4;
  BigInt n;
  BigRational d;
  // where each constant came from, e.g. "family bound", "measured", "user"
  std::string c0_source, c1_source, c2_source, c3_source, delta_source;
};

/// N = ((C0+1) C3^C0 + 1) C1 C2^C0 and D = N + 12 delta + (4 or 10), exactly.
ConstantsReport compute_constants(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2, std::uint64_t c3,
                                  const Rational& delta, DFormula formula = DFormula::Plus4);

struct MeasuredConstants {
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;
  std::uint64_t c3 = 0;
  std::uint64_t core = 0;  // vertices whose a-ball lies inside the window
};

/// C1, C2 and C3 over the window core. ResourceError when the core is empty.
MeasuredConstants measure_constants(const ProperAction& action, int a);

struct CommutationEntry {
  GroupElement h;
  GroupElement zh;
  GroupElement hz;
  bool equal = false;
};

struct CommutationTranscript {
  std::vector<CommutationEntry> entries;
  bool passed = true;
};

CommutationTranscript verify_centralizer(const GroupOracle& oracle, const GroupElement& z, const FiniteSubgroup& h);

struct OrderReport {
  enum class Kind { Finite, Exceeds, Infinite };
  Kind kind = Kind::Finite;
  std::uint64_t value = 1;  // the order, or the bound m

  std::string text() const;
};

/// Least k <= m with z^k = 1; otherwise "infinite (exact)" when the projection
/// to the free part is nontrivial, else "exceeds m".
OrderReport order_lower_bound(const GroupOracle& oracle, const GroupElement& z, std::uint64_t m = 64);

struct CentralizerCertificate {
  GroupElement z;
  VertexId from = 0;  // p_i
  VertexId to = 0;    // p_c, the least member of its class
  CommutationTranscript transcript;
  OrderReport order;
  bool trivial = false;
};

/// The literal single-branch pigeonhole chain: r1, then |I_1| >= ... >= |I_d|,
/// then |I_d^1| >= ... >= |I_d^d| inside I_d.
struct PigeonholeChain {
  std::uint64_t r1 = 0;
  std::vector<std::uint64_t> orbit_refinement;
  std::vector<std::uint64_t> stabilizer_refinement;

  std::uint64_t r2() const { return orbit_refinement.empty() ? r1 : orbit_refinement.back(); }
  std::uint64_t final_size() const {
    return stabilizer_refinement.empty() ? r2() : stabilizer_refinement.back();
  }
};

struct ExtractionReport {
  std::uint64_t p_size = 0;
  std::uint64_t orbit_classes = 0;
  std::vector<VertexId> chosen_class;           // p_1, ..., p_r1 in order
  std::vector<std::vector<VertexId>> cells;     // final partition of the chosen class
  PigeonholeChain chain;
  std::vector<CentralizerCertificate> certificates;  // deduplicated, shortlex by z
  std::uint64_t rejected = 0;                  // candidates that failed verification
  bool specialized_checked = false;            // conjugation-vector path agreed

  std::uint64_t nontrivial() const;
};

/// The pigeonhole extraction on a set P of almost-fixed vertices.
ExtractionReport extract_centralizers(const ProperAction& action, const FiniteSubgroup& h,
                                      const std::vector<VertexId>& p, std::uint64_t m = 64);

/// Cayley-only path: group P by (p^-1 h p)_h and emit p_c p_i^-1 within each class.
std::vector<GroupElement> conjugation_vector_centralizers(const GroupOracle& oracle, const FiniteSubgroup& h,
                                                          const std::vector<GroupElement>& p);

}  // namespace afpt
