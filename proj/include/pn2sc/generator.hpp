#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "pn2sc/net.hpp"

namespace pn2sc {

/// Parameters of a generated series-parallel net. Generation is a pure
/// function of this struct.
struct SpSpec {
  std::size_t places = 1;
  std::uint64_t seed = 0;
  std::size_t max_branch = 4;
};

/// Name of the RNG behind generate_sp; recorded in every generated net name.
inline constexpr const char* kSpGenerator = "mt19937_64";

/// Builds a series-parallel net with exactly `spec.places` places from the
/// grammar
///
///   Atom             one place (entry = exit)
///   Series(A, B)     transition exit(A) -> entry(B)
///   Parallel(A1..Ak) fresh entry and exit places, a fork transition
///                    entry -> {entry(Ai)} and a join {exit(Ai)} -> exit,
///                    2 <= k <= max_branch
///
/// splitting the place budget with a seeded mt19937_64. Places are "p<n>" and
/// transitions "t<n>" in creation order.
PetriNet generate_sp(const SpSpec& spec);

/// "sp<places>-mt19937_64-seed<seed>-branch<max_branch>".
std::string sp_net_name(const SpSpec& spec);

}  // namespace pn2sc
