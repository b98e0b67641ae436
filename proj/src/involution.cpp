#include "stratakit/involution.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stratakit {

std::vector<int> NonXInvolution::fixed_points() const {
    std::vector<int> out;
    for (int j = 1; j <= domain_size(); ++j)
        if (tau_bar(j) == j) out.push_back(j);
    return out;
}

std::vector<std::pair<int, int>> NonXInvolution::arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= domain_size(); ++j)
        if (tau_bar(j) > j) out.emplace_back(j, tau_bar(j));
    return out;
}

int NonXInvolution::tau_extended(int j) const {
    const int a = j > 0 ? j : -j;
    const int t = tau_bar(a);
    int image = (t == a) ? -a : t;
    return j > 0 ? image : -image;
}

namespace {

// Circle positions of the ends e_{+-1..+-n}: counterclockwise order is
// (1, 2, ..., n, -n, ..., -1).
int circle_position(int label, int n) {
    return label > 0 ? label - 1 : 2 * n + label; // -j -> 2n - j
}

bool chords_cross(std::pair<int, int> a, std::pair<int, int> b, int points) {
    auto inside = [&](int x, int lo, int hi) {
        // strictly between lo and hi going counterclockwise
        int span = (hi - lo + points) % points;
        int off = (x - lo + points) % points;
        return 0 < off && off < span;
    };
    bool c_in = inside(b.first, a.first, a.second);
    bool d_in = inside(b.second, a.first, a.second);
    return c_in != d_in;
}

bool structurally_valid(const NonXInvolution& tau) noexcept {
    const int n = tau.k - tau.ell;
    if (tau.k < 1 || (tau.ell != 0 && tau.ell != 1)) return false;
    if (static_cast<int>(tau.pairing.size()) != n) return false;
    for (int j = 1; j <= n; ++j) {
        int t = tau.pairing[static_cast<std::size_t>(j - 1)];
        if (t < 1 || t > n) return false;
        if (tau.pairing[static_cast<std::size_t>(t - 1)] != j) return false;
    }
    if (tau.ell == 1) {
        if (tau.k % 2 == 0) return false;
        for (int j = 1; j <= n; ++j)
            if (tau.pairing[static_cast<std::size_t>(j - 1)] == j) return false;
    }
    return true;
}

} // namespace

bool is_admissible(const NonXInvolution& tau) noexcept {
    if (!structurally_valid(tau)) return false;
    const int n = tau.k - tau.ell;
    // Chords of the extended involution on the 2n marked ends.
    std::vector<std::pair<int, int>> chords;
    for (int j = 1; j <= n; ++j) {
        int t = tau.tau_extended(j);
        if (t == -j) {
            chords.emplace_back(circle_position(j, n), circle_position(-j, n));
        } else if (t > j) {
            chords.emplace_back(circle_position(j, n), circle_position(t, n));
            chords.emplace_back(circle_position(-j, n), circle_position(-t, n));
        }
    }
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (chords_cross(chords[i], chords[j], 2 * n)) return false;
    return true;
}

void NonXInvolution::validate() const {
    if (!structurally_valid(*this))
        throw InvalidInputError("NonXInvolution: not an involution of the stated domain");
    if (real_point_count() % 2 != (k + 1) % 2)
        throw InvalidInputError("NonXInvolution: parity of m contradicts k");
    for (auto [a, b] : arcs())
        if ((b - a) % 2 == 0)
            throw InvalidInputError("NonXInvolution: same-side link with even difference");
    if (!is_admissible(*this))
        throw InvalidInputError("NonXInvolution: extended involution has crossing links");
}

long long binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    long long out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

long long catalan(int n) {
    if (n < 0) throw InvalidInputError("catalan: negative index");
    if (n > 32) throw InvalidInputError("catalan: index too large for exact 64-bit arithmetic");
    long long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

long long dispersed_count(int n) {
    if (n < 0) throw InvalidInputError("dispersed_count: negative length");
    return binomial(n, n / 2);
}

long long count_D(int k) {
    if (k < 1) throw InvalidInputError("count_D: k must be >= 1");
    return 2 * binomial(k - 1, (k - 1) / 2);
}

long long count_Dkm(int k, int m) {
    if (k < 1 || m < 0) throw InvalidInputError("count_Dkm: bad arguments");
    if ((m % 2) != ((k + 1) % 2))
        throw InvalidInputError("count_Dkm: m and k+1 must have the same parity");
    if (m == 0) return catalan((k - 1) / 2);
    if (m > k + 1) return 0;
    const int edges = (k - m + 1) / 2;
    // m-fold convolution of the Catalan sequence, evaluated at `edges`.
    std::vector<long long> conv(static_cast<std::size_t>(edges) + 1, 0);
    for (int e = 0; e <= edges; ++e) conv[static_cast<std::size_t>(e)] = catalan(e);
    for (int rep = 1; rep < m; ++rep) {
        std::vector<long long> next(static_cast<std::size_t>(edges) + 1, 0);
        for (int e = 0; e <= edges; ++e)
            for (int a = 0; a <= e; ++a)
                next[static_cast<std::size_t>(e)] += conv[static_cast<std::size_t>(a)] * catalan(e - a);
        conv = std::move(next);
    }
    return conv[static_cast<std::size_t>(edges)];
}

namespace {

void involutions_rec(std::vector<int>& partial, std::vector<int>& free_slots,
                     bool allow_fixed, std::vector<std::vector<int>>& out) {
    if (free_slots.empty()) {
        out.push_back(partial);
        return;
    }
    int j = free_slots.front();
    if (allow_fixed) {
        auto rest = std::vector<int>(free_slots.begin() + 1, free_slots.end());
        partial[static_cast<std::size_t>(j - 1)] = j;
        involutions_rec(partial, rest, allow_fixed, out);
    }
    for (std::size_t i = 1; i < free_slots.size(); ++i) {
        int t = free_slots[i];
        auto rest = std::vector<int>(free_slots.begin() + 1, free_slots.end());
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i - 1));
        partial[static_cast<std::size_t>(j - 1)] = t;
        partial[static_cast<std::size_t>(t - 1)] = j;
        involutions_rec(partial, rest, allow_fixed, out);
    }
}

std::vector<std::vector<int>> all_involutions(int n, bool allow_fixed) {
    std::vector<std::vector<int>> out;
    std::vector<int> partial(static_cast<std::size_t>(n), 0);
    std::vector<int> slots(static_cast<std::size_t>(n));
    std::iota(slots.begin(), slots.end(), 1);
    involutions_rec(partial, slots, allow_fixed, out);
    return out;
}

std::string step_word(const NonXInvolution& tau) {
    std::string word;
    word.reserve(static_cast<std::size_t>(tau.domain_size()));
    for (int j = 1; j <= tau.domain_size(); ++j) {
        int t = tau.tau_bar(j);
        word.push_back(t > j ? 'u' : (t < j ? 'd' : 'f'));
    }
    return word;
}

} // namespace

std::string canonical_key(const NonXInvolution& tau) {
    return std::to_string(tau.ell) + ":" + step_word(tau);
}

std::vector<NonXInvolution> enumerate_strata(int k) {
    if (k < 1) throw InvalidInputError("enumerate_strata: k must be >= 1");
    std::vector<NonXInvolution> out;
    for (auto& p : all_involutions(k, true)) {
        NonXInvolution tau{k, 0, std::move(p)};
        if (is_admissible(tau)) out.push_back(std::move(tau));
    }
    if (k % 2 == 1) {
        for (auto& p : all_involutions(k - 1, false)) {
            NonXInvolution tau{k, 1, std::move(p)};
            if (is_admissible(tau)) out.push_back(std::move(tau));
        }
    }
    std::sort(out.begin(), out.end(), [](const NonXInvolution& a, const NonXInvolution& b) {
        return canonical_key(a) < canonical_key(b);
    });
    return out;
}

int stratum_index(const NonXInvolution& tau) {
    tau.validate();
    const auto all = enumerate_strata(tau.k);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i] == tau) return static_cast<int>(i);
    throw InvalidInputError("stratum_index: invariant not found in its enumeration");
}

std::string stratum_id(const NonXInvolution& tau) {
    return "k" + std::to_string(tau.k) + "-" + std::to_string(stratum_index(tau));
}

void DispersedDyckPath::validate() const {
    int h = 0;
    for (Step s : steps) {
        if (s == Step::flat && h != 0)
            throw InvalidInputError("DispersedDyckPath: flat step at positive height");
        h += (s == Step::up) ? 1 : (s == Step::down ? -1 : 0);
        if (h < 0) throw InvalidInputError("DispersedDyckPath: height drops below zero");
    }
    if (h != 0) throw InvalidInputError("DispersedDyckPath: endpoint not at height zero");
}

DispersedDyckPath involution_to_dispersed(const NonXInvolution& tau) {
    if (tau.ell != 0)
        throw InvalidInputError("involution_to_dispersed: defined for ell = 0 only");
    tau.validate();
    DispersedDyckPath path;
    path.steps.reserve(static_cast<std::size_t>(tau.k));
    for (int j = 1; j <= tau.k; ++j) {
        int t = tau.tau_bar(j);
        path.steps.push_back(t > j ? Step::up : (t < j ? Step::down : Step::flat));
    }
    path.validate();
    return path;
}

NonXInvolution dispersed_to_involution(const DispersedDyckPath& path) {
    path.validate();
    const int k = static_cast<int>(path.steps.size());
    NonXInvolution tau{k, 0, std::vector<int>(static_cast<std::size_t>(k), 0)};
    std::vector<int> open;
    for (int j = 1; j <= k; ++j) {
        switch (path.steps[static_cast<std::size_t>(j - 1)]) {
            case Step::up: open.push_back(j); break;
            case Step::flat: tau.pairing[static_cast<std::size_t>(j - 1)] = j; break;
            case Step::down: {
                int a = open.back();
                open.pop_back();
                tau.pairing[static_cast<std::size_t>(a - 1)] = j;
                tau.pairing[static_cast<std::size_t>(j - 1)] = a;
                break;
            }
        }
    }
    tau.validate();
    return tau;
}

std::vector<int> dispersed_to_plain(const DispersedDyckPath& path) {
    path.validate();
    std::vector<int> out;
    out.reserve(path.steps.size());
    bool reflected = false;
    for (Step s : path.steps) {
        if (s == Step::flat) {
            out.push_back(reflected ? 1 : -1);
            reflected = !reflected;
        } else {
            int v = (s == Step::up) ? 1 : -1;
            out.push_back(reflected ? -v : v);
        }
    }
    return out;
}

DispersedDyckPath plain_to_dispersed(const std::vector<int>& steps) {
    int h = 0;
    for (int s : steps) {
        if (s != 1 && s != -1)
            throw InvalidInputError("plain_to_dispersed: steps must be +-1");
        h += s;
    }
    const int expected = (steps.size() % 2 == 0) ? 0 : -1;
    if (h != expected)
        throw InvalidInputError("plain_to_dispersed: endpoint height must be 0 (even length) or -1 (odd)");
    DispersedDyckPath out;
    out.steps.reserve(steps.size());
    bool below = false;
    h = 0;
    for (int s : steps) {
        if (!below && h == 0 && s == -1) {
            out.steps.push_back(Step::flat);
            below = true;
        } else if (below && h == -1 && s == 1) {
            out.steps.push_back(Step::flat);
            below = false;
        } else {
            int v = below ? -s : s;
            out.steps.push_back(v == 1 ? Step::up : Step::down);
        }
        h += s;
    }
    out.validate();
    return out;
}

int end_to_index(int label, int k_eff) {
    if (label == 0 || label > k_eff || label < -k_eff)
        throw InvalidInputError("end_to_index: label out of range");
    return label > 0 ? label : (2 * k_eff + 1 + label) % (2 * k_eff);
}

int index_to_end(int idx, int k_eff) {
    if (idx < 0 || idx >= 2 * k_eff)
        throw InvalidInputError("index_to_end: index out of range");
    if (idx >= 1 && idx <= k_eff) return idx;
    return idx == 0 ? -1 : idx - 1 - 2 * k_eff;
}

std::string PlaneTree::encode() const {
    std::string s;
    for (const auto& c : children) {
        s.push_back('(');
        s += c.encode();
        s.push_back(')');
    }
    return s;
}

int PlaneTree::edge_count() const {
    int n = 0;
    for (const auto& c : children) n += 1 + c.edge_count();
    return n;
}

namespace {

// Plane tree of the arcs of tau_bar nested strictly inside (lo, hi).
PlaneTree tree_from_arcs(const NonXInvolution& tau, int lo, int hi) {
    PlaneTree node;
    int j = lo + 1;
    while (j < hi) {
        int t = tau.tau_bar(j);
        // Segment interiors are fully paired; each top-level arc is a child.
        node.children.push_back(tree_from_arcs(tau, j, t));
        j = t + 1;
    }
    return node;
}

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::vector<int> cyc;
        int c = i;
        while (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = true;
            cyc.push_back(c);
            c = perm[static_cast<std::size_t>(c)];
        }
        std::sort(cyc.begin(), cyc.end());
        out.push_back(std::move(cyc));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

StratumDescriptor attachment_classes(const NonXInvolution& tau) {
    tau.validate();
    StratumDescriptor desc;
    desc.tau = tau;
    desc.m = tau.real_point_count();
    const int k = tau.k;

    if (desc.m > 0) {
        // sigma(i) = tau(i+1) on the 0..2k-1 end indexing; orbits are the
        // landing classes of the separatrices s_0..s_{2k-1}.
        std::vector<int> tau_idx(static_cast<std::size_t>(2 * k), 0);
        for (int j = 1; j <= k; ++j) {
            int t = tau.tau_extended(j);
            tau_idx[static_cast<std::size_t>(end_to_index(j, k))] = end_to_index(t, k);
            tau_idx[static_cast<std::size_t>(end_to_index(-j, k))] = end_to_index(-t, k);
        }
        std::vector<int> sigma(static_cast<std::size_t>(2 * k), 0);
        for (int i = 0; i < 2 * k; ++i) sigma[static_cast<std::size_t>(i)] = tau_idx[static_cast<std::size_t>((i + 1) % (2 * k))];
        desc.classes = cycles_of(sigma);
        if (static_cast<int>(desc.classes.size()) != k + 1)
            throw InvalidInputError("attachment_classes: expected k+1 landing classes");
    } else {
        // Upper half-plane quotient: sigma_bar(j) = tau_bar(j+1) cyclically on
        // {1..k-1}; the lower half-plane mirrors as [-j] = -[j].
        const int n = k - 1;
        std::vector<int> sigma(static_cast<std::size_t>(n), 0);
        for (int j = 1; j <= n; ++j) {
            int next = (j % n) + 1;
            sigma[static_cast<std::size_t>(j - 1)] = tau.tau_bar(next) - 1;
        }
        auto cyc = cycles_of(sigma);
        for (auto& c : cyc)
            for (int& v : c) ++v; // back to 1-based separatrix labels
        desc.classes = std::move(cyc);
    }

    // Upper forest: the fixed points split {1..k} into segments, one plane
    // tree per real singular point ordered from the rightmost root leftward;
    // for m = 0 all arcs hang under a single virtual root.
    if (desc.m > 0) {
        std::vector<int> fixed = tau.fixed_points();
        int lo = 0;
        for (int f : fixed) {
            desc.upper_forest.push_back(tree_from_arcs(tau, lo, f));
            lo = f;
        }
        desc.upper_forest.push_back(tree_from_arcs(tau, lo, k + 1));
    } else {
        desc.upper_forest.push_back(tree_from_arcs(tau, 0, k));
    }
    return desc;
}

std::pair<NonXInvolution, NonXInvolution> successor_strata(const NonXInvolution& tau) {
    tau.validate();
    const int m = tau.real_point_count();
    if (m == 0)
        throw InvalidInputError("successor_strata: requires at least one real singular point");
    const int k = tau.k;

    // New real point on the far left: end k+1 becomes a fixed point.
    NonXInvolution on_axis{k + 1, 0, tau.pairing};
    on_axis.pairing.push_back(k + 1);
    on_axis.validate();

    NonXInvolution off_axis;
    if (m == 1) {
        // The only real point moves off the axis; the real axis closes into a
        // homoclinic loop and the pairing is unchanged.
        off_axis = NonXInvolution{k + 1, 1, tau.pairing};
    } else {
        // The two leftmost real points coalesce and split off-axis: the
        // largest fixed point gets linked to the new end k+1.
        int j = tau.fixed_points().back();
        off_axis = NonXInvolution{k + 1, 0, tau.pairing};
        off_axis.pairing.push_back(j);
        off_axis.pairing[static_cast<std::size_t>(j - 1)] = k + 1;
    }
    off_axis.validate();
    return {std::move(on_axis), std::move(off_axis)};
}

} // namespace stratakit
