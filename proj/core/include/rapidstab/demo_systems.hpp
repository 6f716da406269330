#pragma once

#include <cstdint>
#include <string_view>

#include "rapidstab/lti.hpp"

namespace rapidstab {

/// y'' + y = u in state form: A = [[0, 1], [-1, 0]], B = (0, 1)^T.
LtiSystem demo_oscillator();

/// A = 0, B = 1.
LtiSystem demo_scalar();

/// Unit-length vibrating string with n interior nodes, written in energy
/// coordinates z = (K^{1/2} y, y') so that A = [[0, S], [-S, 0]] is
/// skew-symmetric (S = K^{1/2}, K the Dirichlet finite-difference stiffness).
/// The single control acts on the velocities of the first `controlWidth`
/// nodes. This is a distributed (bounded) control stand-in; a genuine
/// Dirichlet boundary control is unbounded and is not modelled here.
///
/// A uniform patch of w nodes misses mode k whenever k w or k (w + 1) is a
/// multiple of 2 (n + 1); the rank check reports such widths. Wide patches
/// also make the weighted Gramian badly conditioned, so the default is the
/// single node next to the boundary.
LtiSystem demo_string(int n, int controlWidth);
inline constexpr int kDefaultStringControlWidth = 1;

/// Random skew-symmetric A with entries uniform in [-1, 1] and a full-rank
/// n x min(n, 2) input matrix. The generator is fully specified so equal
/// seeds give bit-identical systems on every platform.
LtiSystem demo_skew(int n, std::uint64_t seed);

/// Parses "oscillator", "scalar", "string:N[:WIDTH]" or "skew:N[:SEED]"
/// ("skew:N" takes `seed`). Throws std::invalid_argument for unknown names.
LtiSystem demo_system(std::string_view spec, std::uint64_t seed = 0);

}  // namespace rapidstab
