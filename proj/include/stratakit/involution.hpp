#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stratakit/config.hpp"

namespace stratakit {

/// Combinatorial stratum invariant: a non-crossing involution tau_bar of
/// {1,...,k-ell}, where ell = 1 exactly when the real axis is a homoclinic
/// loop (then k is odd and tau_bar has no fixed points).  tau_bar(j) = j
/// means end j is linked to end -j across the real axis.
struct NonXInvolution {
    int k = 1;
    int ell = 0;
    std::vector<int> pairing; ///< pairing[i] = tau_bar(i+1), values in 1..k-ell

    int domain_size() const { return k - ell; }
    int tau_bar(int j) const { return pairing[static_cast<std::size_t>(j - 1)]; }

    std::vector<int> fixed_points() const;
    std::vector<std::pair<int, int>> arcs() const; ///< (j, tau_bar(j)) with j < tau_bar(j)
    int fixed_count() const { return static_cast<int>(fixed_points().size()); }
    int real_point_count() const { return fixed_count() + 1 - ell; } ///< m

    /// Extended fixed-point-free involution on {+-1,...,+-(k-ell)}.
    int tau_extended(int j) const;

    /// Structural and geometric (non-crossing) checks; throws InvalidInputError.
    void validate() const;

    bool operator==(const NonXInvolution&) const = default;
};

/// Geometric admissibility: the extended involution must be non-crossing on
/// the circle of 2(k-ell) marked ends; for ell = 1 additionally k odd and no
/// fixed points.  The odd-difference and nesting rules follow from this.
bool is_admissible(const NonXInvolution& tau) noexcept;

/// All admissible invariants at codimension k, canonically ordered
/// (lexicographic on the (ell, step-word) encoding).
std::vector<NonXInvolution> enumerate_strata(int k);

long long binomial(int n, int r);
long long catalan(int n);
long long dispersed_count(int n);       ///< paths with flats pinned to height 0
long long count_D(int k);               ///< number of strata at codimension k
long long count_Dkm(int k, int m);      ///< strata with exactly m real points

/// Canonical sort key and stable identifiers ("k<k>-<index>").
std::string canonical_key(const NonXInvolution& tau);
int stratum_index(const NonXInvolution& tau);
std::string stratum_id(const NonXInvolution& tau);

enum class Step : unsigned char { up, down, flat };

/// Lattice path from (0,0) to (n,0) with steps (1,1), (1,-1), (1,0), never
/// below height 0, and flat steps only at height 0.
struct DispersedDyckPath {
    std::vector<Step> steps;
    void validate() const;
    bool operator==(const DispersedDyckPath&) const = default;
};

/// Step j is up when tau_bar(j) > j, down when tau_bar(j) < j, flat when fixed.
DispersedDyckPath involution_to_dispersed(const NonXInvolution& tau);
NonXInvolution dispersed_to_involution(const DispersedDyckPath& path);

/// Bijection onto +-1 paths from (0,0) to (n, 0) or (n, -1): odd-numbered
/// flat runs become down-steps with the following excursion reflected.
std::vector<int> dispersed_to_plain(const DispersedDyckPath& path);
DispersedDyckPath plain_to_dispersed(const std::vector<int>& steps);

/// Rooted plane tree; children are ordered left to right along the end
/// sequence.  Encodes to balanced parentheses.
struct PlaneTree {
    std::vector<PlaneTree> children;
    std::string encode() const;
    int edge_count() const;
};

/// Attachment data derived from the combinatorial invariant: the landing
/// classes of the separatrix permutation and the plane forest of upper trees
/// (one per real singular point; a single tree when m = 0).
struct StratumDescriptor {
    NonXInvolution tau;
    int m = 0;
    /// m > 0: k+1 classes over separatrix indices 0..2k-1.
    /// m = 0: upper-half-plane classes over indices 1..k-1 (mirrored below).
    std::vector<std::vector<int>> classes;
    std::vector<PlaneTree> upper_forest;
};

StratumDescriptor attachment_classes(const NonXInvolution& tau);

/// The two codimension-(k+1) strata reached from a stratum with m > 0:
/// first by adding a real point on the far left, second by moving the two
/// leftmost real points off the axis as a conjugate pair (which lands in the
/// ell = 1 family when m = 1).
std::pair<NonXInvolution, NonXInvolution> successor_strata(const NonXInvolution& tau);

/// Index conversions between signed end labels and 0-based positions.
/// Separatrices s_0..s_{2k-1} point along exp(i pi j / k); end e_j (j > 0)
/// sits between s_{j-1} and s_j, end e_{-j} between s_{2k-j} and s_{2k-j+1}.
/// Ends are numbered 0..2k-1 with e_j -> j (1 <= j <= k) and e_{-j} -> 2k+1-j
/// (mod 2k), so e_{-1} -> 0.
int end_to_index(int label, int k_eff);
int index_to_end(int idx, int k_eff);

} // namespace stratakit
