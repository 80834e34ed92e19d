#pragma once

// Left linear codes in R^n as explicit element sets, submodule enumeration,
// and monomial transformations.

#include "ringext/weights.hpp"

#include <map>
#include <set>

namespace ringext {

using Tuple = std::vector<ElemIdx>;

inline Tuple tuple_add(const FiniteRing& ring, const Tuple& a, const Tuple& b) {
    Tuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], b[i]);
    return out;
}

inline Tuple tuple_smul(const FiniteRing& ring, ElemIdx a, const Tuple& v) {
    Tuple out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.mul(a, v[i]);
    return out;
}

inline bool tuple_is_zero(const FiniteRing& ring, const Tuple& v) {
    for (ElemIdx x : v)
        if (x != ring.zero()) return false;
    return true;
}

class LinearCode {
  public:
    RingPtr ring;
    std::size_t n = 0;
    std::vector<Tuple> gens;
    std::vector<Tuple> elems;  // sorted, includes the zero tuple

    static LinearCode span(RingPtr ring, std::size_t n, std::vector<Tuple> gens) {
        LinearCode c;
        c.ring = ring;
        c.n = n;
        c.gens = std::move(gens);
        std::set<Tuple> base;
        for (const Tuple& g : c.gens) {
            if (g.size() != n) throw SpecError("generator length mismatch");
            for (ElemIdx r = 0; r < ring->order(); ++r) {
                Tuple t = tuple_smul(*ring, r, g);
                if (!tuple_is_zero(*ring, t)) base.insert(std::move(t));
            }
        }
        std::set<Tuple> s;
        std::vector<Tuple> frontier;
        s.insert(Tuple(n, ring->zero()));
        frontier.push_back(Tuple(n, ring->zero()));
        while (!frontier.empty()) {
            const Tuple x = std::move(frontier.back());
            frontier.pop_back();
            for (const Tuple& b : base) {
                Tuple y = tuple_add(*ring, x, b);
                if (s.insert(y).second) frontier.push_back(std::move(y));
            }
        }
        c.elems.assign(s.begin(), s.end());
        return c;
    }

    bool contains(const Tuple& t) const {
        return std::binary_search(elems.begin(), elems.end(), t);
    }

    std::size_t size() const { return elems.size(); }

    /// Greedy generating set over the canonical element order (deterministic,
    /// small, not necessarily globally minimal).
    std::vector<Tuple> minimal_generators() const {
        std::vector<Tuple> out;
        LinearCode cur = span(ring, n, {});
        for (const Tuple& e : elems) {
            if (cur.contains(e)) continue;
            out.push_back(e);
            cur = span(ring, n, out);
            if (cur.size() == size()) break;
        }
        return out;
    }
};

/// All left submodules of R^n: cyclic spans closed under pairwise sums.
inline std::vector<LinearCode> all_submodules(RingPtr ring, std::size_t n) {
    std::map<std::vector<Tuple>, std::size_t> index;
    std::vector<LinearCode> mods;
    auto add = [&](LinearCode&& c) -> bool {
        auto it = index.find(c.elems);
        if (it != index.end()) return false;
        c.gens = c.minimal_generators();
        index.emplace(c.elems, mods.size());
        mods.push_back(std::move(c));
        return true;
    };
    add(LinearCode::span(ring, n, {}));
    Tuple v(n, ring->zero());
    while (true) {
        add(LinearCode::span(ring, n, {v}));
        std::size_t pos = 0;
        while (pos < n && ++v[pos] == ring->order()) v[pos++] = 0;
        if (pos == n) break;
    }
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<Tuple> g = mods[i].gens;
            g.insert(g.end(), mods[j].gens.begin(), mods[j].gens.end());
            add(LinearCode::span(ring, n, std::move(g)));
        }
    return mods;
}

/// x |-> (x_{perm[0]} u_0, ..., x_{perm[n-1]} u_{n-1}).
struct MonomialMap {
    std::vector<std::size_t> perm;
    std::vector<ElemIdx> units;

    Tuple apply(const FiniteRing& ring, const Tuple& x) const {
        Tuple out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = ring.mul(x[perm[i]], units[i]);
        return out;
    }
};

/// All monomial maps of length n with units from `group`.
inline std::vector<MonomialMap> all_monomial_maps(std::size_t n, const std::vector<ElemIdx>& group) {
    std::vector<MonomialMap> out;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
        std::vector<std::size_t> uidx(n, 0);
        while (true) {
            MonomialMap m;
            m.perm = perm;
            m.units.resize(n);
            for (std::size_t i = 0; i < n; ++i) m.units[i] = group[uidx[i]];
            out.push_back(std::move(m));
            std::size_t pos = 0;
            while (pos < n && ++uidx[pos] == group.size()) uidx[pos++] = 0;
            if (pos == n) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace ringext
