#pragma once

// Independent ground truth for the Extension Property: the counterexample
// construction from a null vector of W0, exhaustive extendability checks
// against monomial transformations, and a brute-force oracle over all codes
// of bounded length.

#include "ringext/codes.hpp"
#include "ringext/orthogonality.hpp"

namespace ringext {

/// A nonzero primitive integer kernel vector of W0, or nothing if W0 is
/// invertible. Deterministic: first kernel basis vector in canonical column
/// order, first nonzero entry positive.
inline std::optional<std::vector<Int>> null_vector_integer(const RatMat& w0) {
    const auto basis = w0.kernel_basis();
    if (basis.empty()) return std::nullopt;
    return primitive_integer_vector(basis.front());
}

/// The two single-generator codes of the converse construction: g+ collects
/// |v_cR| copies of the canonical generator c for each v_cR > 0 (g- for
/// v_cR < 0), both get a trailing 1 and are zero-padded to a common length.
struct CounterexamplePair {
    std::vector<Int> v;  // indexed by nonzero right principal ideals, canonical order
    Tuple g_plus, g_minus;
    std::size_t n = 0;
};

inline CounterexamplePair build_counterexample(const RingContext& ctx, const Weight& w,
                                               const std::vector<Int>& v) {
    if (w.w0() != 0) throw SpecError("counterexample construction requires w(0) = 0");
    const FiniteRing& ring = *ctx.ring;
    const IdealLattice& rlat = ctx.lat(Side::right);
    const std::vector<int> cols = detail::principal_ids(rlat, false);
    if (v.size() != cols.size())
        throw SpecError("null vector length does not match the nonzero right principal ideals");
    bool nonzero = false;
    for (const Int& x : v) nonzero = nonzero || x != 0;
    if (!nonzero) throw SpecError("null vector must be nonzero");

    {
        const OrthMatrix w0m = build_w0(ctx, w);
        std::vector<Rat> vr(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) vr[i] = Rat(v[i]);
        for (const Rat& e : w0m.m * vr)
            if (e != 0) throw SpecError("vector is not in the kernel of W0");
    }

    CounterexamplePair pair;
    pair.v = v;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const ElemIdx c = detail::gen_of(rlat, cols[k]);
        for (Int i = 0; i < abs(v[k]); ++i)
            (v[k] > 0 ? pair.g_plus : pair.g_minus).push_back(c);
    }
    pair.g_plus.push_back(ring.one());
    pair.g_minus.push_back(ring.one());
    pair.n = std::max(pair.g_plus.size(), pair.g_minus.size());
    pair.g_plus.resize(pair.n, ring.zero());
    pair.g_minus.resize(pair.n, ring.zero());

    // D(a) = w(a g+) - w(a g-) must vanish identically
    for (ElemIdx a = 0; a < ring.order(); ++a) {
        const Rat d = tuple_weight(w, tuple_smul(ring, a, pair.g_plus)) -
                      tuple_weight(w, tuple_smul(ring, a, pair.g_minus));
        if (d != 0) throw std::logic_error("counterexample pair violates D(a) = 0");
    }
    // coordinates must come from different right orbit multisets
    const OrbitPartition& rorb = ring.orbits(OrbitKind::right);
    auto orbit_multiset = [&](const Tuple& g) {
        std::vector<std::int32_t> m;
        for (ElemIdx x : g) m.push_back(rorb.class_of[x]);
        std::sort(m.begin(), m.end());
        return m;
    };
    if (orbit_multiset(pair.g_plus) == orbit_multiset(pair.g_minus))
        throw std::logic_error("counterexample generators have equal right orbit multisets");
    return pair;
}

struct ExtendResult {
    bool extendable = false;
    std::optional<MonomialMap> witness;
    std::uint64_t maps_tried = 0;
};

/// Decides whether the map g_i -> images[i] on the code spanned by `gens`
/// extends to a G_rt(w)-monomial transformation, by exhaustive search.
/// Validates that the map is well-defined and injective first.
inline ExtendResult is_extendable(const Weight& w, std::size_t n, const std::vector<Tuple>& gens,
                                  const std::vector<Tuple>& images,
                                  std::uint64_t budget = 100000000) {
    const FiniteRing& ring = *w.ring();
    if (gens.size() != images.size()) throw SpecError("generator/image count mismatch");
    for (const Tuple& t : gens)
        if (t.size() != n) throw SpecError("generator length mismatch");
    for (const Tuple& t : images)
        if (t.size() != n) throw SpecError("image length mismatch");

    // build the full map by enumerating coefficient tuples
    const std::size_t k = gens.size();
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) {
        combos *= ring.order();
        if (combos > budget) throw BudgetError("well-definedness check exceeds budget");
    }
    std::map<Tuple, Tuple> phi;
    std::vector<ElemIdx> coef(k, 0);
    while (true) {
        Tuple x(n, ring.zero()), y(n, ring.zero());
        for (std::size_t i = 0; i < k; ++i) {
            x = tuple_add(ring, x, tuple_smul(ring, coef[i], gens[i]));
            y = tuple_add(ring, y, tuple_smul(ring, coef[i], images[i]));
        }
        auto [it, fresh] = phi.emplace(x, y);
        if (!fresh && it->second != y)
            throw SpecError("map is not well-defined on the code");
        std::size_t pos = 0;
        while (pos < k && ++coef[pos] == ring.order()) coef[pos++] = 0;
        if (pos == k) break;
    }
    {
        std::set<Tuple> image_set;
        for (const auto& [x, y] : phi) image_set.insert(y);
        if (image_set.size() != phi.size()) throw SpecError("map is not injective on the code");
    }

    const std::vector<ElemIdx> g_rt = symmetry_groups(ring, w.dense()).g_rt;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= g_rt.size();
    for (std::size_t i = 2; i <= n; ++i) total *= i;
    if (total > budget)
        throw BudgetError("monomial search space " + std::to_string(total) + " exceeds budget");

    ExtendResult res;
    for (const MonomialMap& m : all_monomial_maps(n, g_rt)) {
        ++res.maps_tried;
        bool agrees = true;
        for (std::size_t i = 0; i < k && agrees; ++i)
            agrees = m.apply(ring, gens[i]) == images[i];
        if (agrees) {
            res.extendable = true;
            res.witness = m;
            return res;
        }
    }
    return res;
}

struct OracleWitness {
    std::size_t n = 0;
    std::vector<Tuple> gens, images;
};

struct OracleReport {
    bool completed = false;
    bool holds = false;
    std::uint64_t codes_checked = 0;
    std::uint64_t isometries_checked = 0;
    std::uint64_t failures = 0;
    std::uint64_t budget_used = 0;
    std::optional<OracleWitness> witness;
};

namespace detail {

struct OracleSearch {
    const FiniteRing& ring;
    const Weight& w;
    std::size_t n;
    std::uint64_t budget;
    OracleReport& rep;
    std::vector<MonomialMap> monomials;
    std::vector<Tuple> gens;
    bool aborted = false;

    bool charge(std::uint64_t amount) {
        rep.budget_used += amount;
        if (rep.budget_used > budget) {
            aborted = true;
            return false;
        }
        return true;
    }

    // span map over gens[0..t): element -> image, with reverse for injectivity
    struct SpanMap {
        std::map<Tuple, Tuple> fwd, rev;
    };

    bool extend(const SpanMap& cur, const Tuple& g, const Tuple& h, SpanMap& out) {
        out = cur;
        for (ElemIdx a = 0; a < ring.order(); ++a) {
            const Tuple ag = tuple_smul(ring, a, g);
            const Tuple ah = tuple_smul(ring, a, h);
            for (const auto& [x, y] : cur.fwd) {
                if (!charge(1)) return false;
                Tuple nx = tuple_add(ring, x, ag);
                Tuple ny = tuple_add(ring, y, ah);
                if (tuple_weight(w, nx) != tuple_weight(w, ny)) return false;
                auto [it, fresh] = out.fwd.emplace(nx, ny);
                if (!fresh) {
                    if (it->second != ny) return false;  // not well-defined
                    continue;
                }
                auto [rit, rfresh] = out.rev.emplace(std::move(ny), std::move(nx));
                if (!rfresh) return false;  // not injective
            }
        }
        return true;
    }

    // returns false when a non-extendable isometry was found (or aborted)
    bool dfs(std::size_t t, const SpanMap& cur) {
        if (aborted) return false;
        if (t == gens.size()) {
            ++rep.isometries_checked;
            std::vector<Tuple> images;
            for (const Tuple& g : gens) images.push_back(cur.fwd.at(g));
            for (const MonomialMap& m : monomials) {
                if (!charge(1)) return false;
                bool agrees = true;
                for (std::size_t i = 0; i < gens.size() && agrees; ++i)
                    agrees = m.apply(ring, gens[i]) == images[i];
                if (agrees) return true;
            }
            ++rep.failures;
            rep.witness = OracleWitness{n, gens, images};
            return false;
        }
        Tuple h(n, ring.zero());
        while (true) {
            SpanMap next;
            if (aborted) return false;
            if (extend(cur, gens[t], h, next)) {
                if (!dfs(t + 1, next)) return false;
            } else if (aborted) {
                return false;
            }
            std::size_t pos = 0;
            while (pos < n && ++h[pos] == ring.order()) h[pos++] = 0;
            if (pos == n) break;
        }
        return true;
    }
};

}  // namespace detail

/// Brute-force Extension Property check: enumerates every submodule of R^n
/// for n <= n_max and every injective w-isometry from it (by generator
/// images), and tests each against all G_rt(w)-monomial maps. Short-circuits
/// on the first non-extendable isometry.
inline OracleReport oracle_extension_property(const Weight& w, int n_max,
                                              std::uint64_t budget = 100000000) {
    const RingPtr ring = w.ring();
    OracleReport rep;
    rep.holds = true;
    const std::vector<ElemIdx> g_rt = symmetry_groups(*ring, w.dense()).g_rt;
    for (int n = 1; n <= n_max && rep.holds; ++n) {
        detail::OracleSearch search{*ring, w, static_cast<std::size_t>(n), budget, rep,
                                    all_monomial_maps(n, g_rt)};
        for (const LinearCode& code : all_submodules(ring, n)) {
            if (code.size() == 1) continue;  // zero code: only the empty isometry
            ++rep.codes_checked;
            search.gens = code.gens;
            detail::OracleSearch::SpanMap root;
            Tuple z(n, ring->zero());
            root.fwd.emplace(z, z);
            root.rev.emplace(z, z);
            if (!search.dfs(0, root)) {
                if (search.aborted) {
                    rep.completed = false;
                    return rep;
                }
                rep.holds = false;
                break;
            }
        }
    }
    rep.completed = true;
    return rep;
}

}  // namespace ringext
