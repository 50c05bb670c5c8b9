#pragma once

#include <array>
#include <string>
#include <vector>

#include "qrs/root_system.hpp"

namespace qrs {

/// R/I together with the projection data back to R.
struct Quotient {
  RootSystem system;
  SimpleSubset killed;          // positions in the parent base
  std::vector<int> kept;        // parent base positions surviving, in order
  std::vector<int> image;       // parent root -> quotient root, or -1 when it maps to 0
  std::vector<RootSet> fibers;  // quotient root -> parent roots over it
};

/// R_I: the roots supported in I, re-indexed over the base I.
struct Subsystem {
  RootSystem system;
  SimpleSubset base;            // positions in the parent base
  std::vector<int> to_parent;   // subsystem root -> parent root
  std::vector<int> from_parent; // parent root -> subsystem root, or -1
};

/// Quotient by the span of the simple roots in `killed`, which must be a
/// proper subset of the base. Roots are the distinct nonzero restrictions of
/// parent coefficient vectors; the Gram matrix is the Schur complement.
Quotient quotient(const RootSystem& r, SimpleSubset killed);

/// As quotient(), but killing the whole base yields the rank-zero system
/// (every root maps to 0). Used where inf_S(empty, X) = X must make sense.
Quotient quotient_allowing_whole_base(const RootSystem& r, SimpleSubset killed);

Subsystem subsystem(const RootSystem& r, SimpleSubset within);

/// Preimage under the projection of a set of quotient roots.
RootSet preimage(const Quotient& q, const RootSet& s);
/// Image of a set of parent roots, dropping those that map to zero.
RootSet image_of(const Quotient& q, const RootSet& s);

RootSet to_parent(const Subsystem& sub, const RootSet& s, int parent_size);
RootSet from_parent(const Subsystem& sub, const RootSet& s);

/// Moves a root set between two systems over the same global base ids by
/// matching coefficient vectors. Realizes the natural isomorphisms
/// (R/I)/(J/I) = R/J and (R/I)_{J/I} = R_J/I.
RootSet transfer(const RootSet& s, const RootSystem& from, const RootSystem& to);

/// Result of checking that a sum in R/I lifts to R.
struct LiftReport {
  bool holds = true;
  /// (alpha, beta, gamma) in the parent, one per lift examined.
  std::vector<std::array<SignedRoot, 3>> witnesses;
  std::string counterexample;
};

/// For c = a + b in R/I: every lift of c splits as a sum of lifts of a and b,
/// and every lift of a extends to such a sum.
LiftReport lift_sum_check(const RootSystem& parent, const Quotient& q, SignedRoot a, SignedRoot b, SignedRoot c);

} // namespace qrs

#include <map>
#include <memory>
#include <mutex>

namespace qrs {

/// Quotients and subsystems of one fixed system, built on first use.
/// Safe to share between threads; returned references stay valid for the
/// cache's lifetime.
class QuotientCache {
public:
  explicit QuotientCache(const RootSystem& r) : r_(&r) {}
  QuotientCache(const QuotientCache&) = delete;
  QuotientCache& operator=(const QuotientCache&) = delete;

  const RootSystem& system() const { return *r_; }
  const Quotient& quotient(SimpleSubset killed);
  const Subsystem& subsystem(SimpleSubset within);

private:
  const RootSystem* r_;
  std::mutex mu_;
  std::map<std::uint32_t, std::unique_ptr<Quotient>> quotients_;
  std::map<std::uint32_t, std::unique_ptr<Subsystem>> subsystems_;
};

} // namespace qrs
