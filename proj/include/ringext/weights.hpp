#pragma once

// Rational weights on a ring, stored per two-sided unit orbit (which is
// exactly the bi-invariant ones), the built-in Hamming/homogeneous/Lee/rank
// weights, symmetry groups, right correlation, and the orbit basis
// functions.

#include "ringext/ideals.hpp"

namespace ringext {

struct SymmetryGroups {
    std::vector<ElemIdx> g_lt, g_rt;
};

class Weight {
  public:
    const RingPtr& ring() const { return ring_; }
    const Rat& w0() const { return w0_; }

    Rat at(ElemIdx x) const {
        if (x == ring_->zero()) return w0_;
        return class_vals_[orbits_->class_of[x]];
    }

    /// Orbit value by two-sided orbit class index.
    const Rat& class_value(std::size_t c) const { return class_vals_[c]; }

    Weight with_w0(Rat w0) const {
        Weight w = *this;
        w.w0_ = std::move(w0);
        return w;
    }

    std::vector<Rat> dense() const {
        std::vector<Rat> v(ring_->order());
        for (ElemIdx x = 0; x < ring_->order(); ++x) v[x] = at(x);
        return v;
    }

    /// Builds from per-element values; rejects non-bi-invariant input with a
    /// witness pair (never averages). w(0) is taken from the table.
    static Weight from_element_values(RingPtr ring, const std::vector<Rat>& vals) {
        if (vals.size() != ring->order()) throw SpecError("weight table does not cover all elements");
        const OrbitPartition& orb = ring->orbits(OrbitKind::two_sided);
        Weight w;
        w.ring_ = ring;
        w.orbits_ = &orb;
        w.class_vals_.resize(orb.size());
        for (std::size_t c = 0; c < orb.size(); ++c) {
            const ElemIdx rep = orb.rep(c);
            for (ElemIdx x : orb.classes[c])
                if (vals[x] != vals[rep])
                    throw SpecError("weight not bi-invariant: w(" + ring->label(rep) + ") = " +
                                    rat_to_string(vals[rep]) + " but w(" + ring->label(x) + ") = " +
                                    rat_to_string(vals[x]) + " on the same two-sided unit orbit");
            w.class_vals_[c] = vals[rep];
        }
        w.w0_ = vals[ring->zero()];
        w.class_vals_[orb.class_of[ring->zero()]] = 0;  // zero value lives in w0_
        return w;
    }

    /// Builds from values keyed by two-sided orbit class index.
    static Weight from_class_values(RingPtr ring, std::vector<Rat> class_vals, Rat w0 = Rat(0)) {
        const OrbitPartition& orb = ring->orbits(OrbitKind::two_sided);
        if (class_vals.size() != orb.size())
            throw SpecError("weight table does not cover all two-sided orbit representatives");
        Weight w;
        w.ring_ = std::move(ring);
        w.orbits_ = &orb;
        w.class_vals_ = std::move(class_vals);
        w.w0_ = std::move(w0);
        w.class_vals_[orb.class_of[w.ring_->zero()]] = 0;
        return w;
    }

  private:
    RingPtr ring_;
    const OrbitPartition* orbits_ = nullptr;
    std::vector<Rat> class_vals_;
    Rat w0_ = Rat(0);
};

inline Weight hamming_weight(RingPtr ring) {
    std::vector<Rat> vals(ring->order(), Rat(1));
    vals[ring->zero()] = 0;
    return Weight::from_element_values(std::move(ring), vals);
}

/// w(x) = gamma * (1 - mu(0, Rx) / |Ux|), the normalized homogeneous weight.
inline Weight homogeneous_weight(const RingContext& ctx, const Rat& gamma = Rat(1)) {
    const FiniteRing& ring = *ctx.ring;
    const OrbitPartition& lorb = ring.orbits(OrbitKind::left);
    const IdealLattice& lat = ctx.lat(Side::left);
    std::vector<Rat> per_left_class(lorb.size());
    for (std::size_t c = 0; c < lorb.size(); ++c) {
        const ElemIdx x = lorb.rep(c);
        ElemSet rx(ring.order());
        for (ElemIdx r = 0; r < ring.order(); ++r) rx.set(ring.mul(r, x));
        const int id = lat.id_of(rx);
        const Rat mu = ctx.mu_left->mu_from_zero(id);
        per_left_class[c] = gamma * (Rat(1) - mu / Rat(lorb.classes[c].size()));
    }
    std::vector<Rat> vals(ring.order());
    for (ElemIdx x = 0; x < ring.order(); ++x) vals[x] = per_left_class[lorb.class_of[x]];
    return Weight::from_element_values(ctx.ring, vals);
}

/// Lee weight min(k, m-k); only where it is bi-invariant (m in {2,3,4,6}),
/// on rings whose additive group is generated by 1.
inline Weight lee_weight(RingPtr ring) {
    const std::size_t m = ring->order();
    if (m != 2 && m != 3 && m != 4 && m != 6)
        throw SpecError("lee weight is bi-invariant only for Z_m with m in {2,3,4,6}");
    std::vector<Rat> vals(m);
    std::vector<bool> seen(m, false);
    ElemIdx x = ring->zero();
    for (std::size_t k = 0; k < m; ++k) {
        if (seen[x]) throw SpecError("lee weight requires the additive group generated by 1");
        seen[x] = true;
        vals[x] = Rat(std::min(k, m - k));
        x = ring->add(x, ring->one());
    }
    return Weight::from_element_values(std::move(ring), vals);
}

/// Rank weight on Mat(n, GF(q)): w(A) = values[rank A - 1]; default is the
/// rank metric w([k]) = k. `values` lists w([1]) .. w([n]).
inline Weight rank_weight(RingPtr ring, std::vector<Rat> values = {}) {
    const auto* mat = dynamic_cast<const ops::MatOps*>(&ring->ops());
    if (mat == nullptr || ring->spec().args[0].kind != RingSpec::Kind::GF)
        throw SpecError("rank weight requires a Mat(n, GF(q)) ring");
    const int n = mat->dim();
    if (values.empty())
        for (int k = 1; k <= n; ++k) values.push_back(Rat(k));
    if (values.size() != static_cast<std::size_t>(n))
        throw SpecError("rank weight needs one value per rank 1..n");
    std::vector<Rat> vals(ring->order());
    for (ElemIdx a = 0; a < ring->order(); ++a) {
        const int r = mat->rank(a);
        vals[a] = r == 0 ? Rat(0) : values[r - 1];
    }
    return Weight::from_element_values(std::move(ring), vals);
}

/// Left/right symmetry groups of an arbitrary element-valued function.
inline SymmetryGroups symmetry_groups(const FiniteRing& ring, const std::vector<Rat>& vals) {
    SymmetryGroups g;
    for (ElemIdx u : ring.units()) {
        bool lt = true, rt = true;
        for (ElemIdx x = 0; x < ring.order() && (lt || rt); ++x) {
            if (lt && vals[ring.mul(u, x)] != vals[x]) lt = false;
            if (rt && vals[ring.mul(x, u)] != vals[x]) rt = false;
        }
        if (lt) g.g_lt.push_back(u);
        if (rt) g.g_rt.push_back(u);
    }
    return g;
}

/// Right correlation (w f)(x) = sum_r w(r x) f(r).
inline std::vector<Rat> correlate(const FiniteRing& ring, const std::vector<Rat>& w,
                                  const std::vector<Rat>& f) {
    std::vector<Rat> out(ring.order(), Rat(0));
    for (ElemIdx r = 0; r < ring.order(); ++r) {
        if (f[r] == 0) continue;
        for (ElemIdx x = 0; x < ring.order(); ++x) out[x] += w[ring.mul(r, x)] * f[r];
    }
    return out;
}

/// eps_{Rr}: 1/|Ur| on the left orbit of r, 0 elsewhere.
inline std::vector<Rat> epsilon_left(const FiniteRing& ring, ElemIdx r) {
    const OrbitPartition& orb = ring.orbits(OrbitKind::left);
    std::vector<Rat> out(ring.order(), Rat(0));
    const auto& cls = orb.classes[orb.class_of[r]];
    const Rat v = Rat(1) / Rat(cls.size());
    for (ElemIdx x : cls) out[x] = v;
    return out;
}

/// e_{sR}: 1 on the right orbit of s, 0 elsewhere.
inline std::vector<Rat> e_right(const FiniteRing& ring, ElemIdx s) {
    const OrbitPartition& orb = ring.orbits(OrbitKind::right);
    std::vector<Rat> out(ring.order(), Rat(0));
    for (ElemIdx x : orb.classes[orb.class_of[s]]) out[x] = 1;
    return out;
}

/// Additive extension of w to tuples.
inline Rat tuple_weight(const Weight& w, const std::vector<ElemIdx>& v) {
    Rat s(0);
    for (ElemIdx x : v) s += w.at(x);
    return s;
}

}  // namespace ringext
