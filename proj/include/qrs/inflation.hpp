#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qrs/quotient.hpp"

namespace qrs {

enum class PsiKind { Empty, Full, Primitive, General };
std::string to_string(PsiKind k);

/// phi = inf_I(psi, x) = preimage(psi) u x, with psi over R/I and x over R_I.
struct InflationForm {
  SimpleSubset killed;
  PsiKind kind = PsiKind::General;
  RootSet psi;
  RootSet x;
  friend bool operator==(const InflationForm&, const InflationForm&) = default;
};

RootSet inflate(const Quotient& q, const Subsystem& sub, const RootSet& psi, const RootSet& x);
RootSet inflate(QuotientCache& cache, SimpleSubset killed, const RootSet& psi, const RootSet& x);
RootSet inflate(const RootSystem& r, SimpleSubset killed, const RootSet& psi, const RootSet& x);

/// Whether phi is inflated from `killed`: restricted coefficient vectors of
/// phi and its complement meet at most in 0.
bool is_inflated_from(const RootSystem& r, const RootSet& phi, SimpleSubset killed);

/// The five equivalent descriptions of "inflated from I", evaluated
/// independently: (i) some (psi, x) reproduces phi, (ii) equal nonzero
/// projections agree on membership, (iii) adding +-theta in I to a root with
/// nonzero projection keeps membership, (iv) every fiber lies on one side,
/// (v) the projections of phi and its complement meet only in 0.
std::array<bool, 5> inflation_conditions(const RootSystem& r, const RootSet& phi, SimpleSubset killed);

/// The unique (psi, x) with phi = inf_I(psi, x); throws InvalidArgument when
/// phi is not inflated from I. The kind is classified (General when psi is
/// neither empty, full nor primitive).
InflationForm deflate(QuotientCache& cache, const RootSet& phi, SimpleSubset killed);
InflationForm deflate(const RootSystem& r, const RootSet& phi, SimpleSubset killed);

/// Gen(phi): every I phi is inflated from, ordered by bitmask.
std::vector<SimpleSubset> gen_family(const RootSystem& r, const RootSet& phi);

/// Nonempty, proper, and inflated only from the empty set and the whole base.
bool is_primitive_set(const RootSystem& r, const RootSet& phi);

/// The canonical inflation: psi empty with I = supp(phi), psi full with
/// I = supp(phi^c), or psi primitive with I the largest proper member of Gen.
/// Requires a connected system of rank at least one.
InflationForm canonical_form(QuotientCache& cache, const RootSet& phi);
InflationForm canonical_form(const RootSystem& r, const RootSet& phi);

/// Whether a form satisfies the alternatives of the canonical form theorem:
/// I proper, and psi primitive, or psi empty/full with I smallest.
bool satisfies_canonical_alternatives(QuotientCache& cache, const RootSet& phi, const InflationForm& form);

/// Both sides of inf_I(inf_{J/I}(psi, t), x) = inf_J(psi, inf_I^J(t, x)) for
/// I in J, with psi over R/J, t over R_J/I and x over R_I.
std::pair<RootSet, RootSet> inflation_compose(QuotientCache& cache, SimpleSubset i, SimpleSubset j, const RootSet& psi,
                                              const RootSet& t, const RootSet& x);

/// For I in J, both in Gen(phi): the set z over (R/I)_{J/I} with
/// psi_I = inf_{J/I}(psi_J, z). Throws InvariantViolation if none exists.
RootSet inflation_split(QuotientCache& cache, const RootSet& phi, SimpleSubset i, SimpleSubset j);

/// Positions of J inside the base of R/I.
SimpleSubset relative_subset(const Quotient& q, SimpleSubset j);

} // namespace qrs
