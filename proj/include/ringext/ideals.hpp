#pragma once

// One-sided ideals as element sets, the lattice of all ideals of a side
// (join closure of the principal ones), annihilators, socles, the Möbius
// function of the lattice, and the Frobenius/PIR classification.

#include "ringext/ring.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <memory>

namespace ringext {

using ElemSet = boost::dynamic_bitset<>;

struct Ideal {
    Side side = Side::right;
    ElemSet elems;
    std::size_t card = 0;
    std::vector<ElemIdx> generators;  // all principal generators, ascending; empty if non-principal
    std::vector<ElemIdx> span_gens;   // small generating set (cyclic ideals joining to this one)
    bool principal = false;
    int id = -1;  // position in the enclosing lattice, canonical order

    ElemIdx canonical_generator() const { return generators.front(); }
};

/// Canonical ideal order: cardinality, then lexicographic element set.
inline bool canonical_ideal_less(const Ideal& a, const Ideal& b) {
    if (a.card != b.card) return a.card < b.card;
    const ElemSet d = a.elems ^ b.elems;
    const auto pos = d.find_first();
    if (pos == ElemSet::npos) return a.generators < b.generators;
    return a.elems.test(pos);
}

/// One ideal per unit orbit of the matching side (left orbits Ux give the
/// left ideals Rx, right orbits xU the right ideals xR), canonical order.
/// The generator list is the full orbit.
inline std::vector<Ideal> principal_ideals(const FiniteRing& ring, Side side) {
    const OrbitPartition& orb = ring.orbits_for_side(side);
    const std::size_t n = ring.order();
    std::vector<Ideal> out;
    out.reserve(orb.size());
    for (std::size_t c = 0; c < orb.size(); ++c) {
        const ElemIdx x = orb.rep(c);
        Ideal I;
        I.side = side;
        I.elems.resize(n);
        for (ElemIdx r = 0; r < n; ++r)
            I.elems.set(side == Side::left ? ring.mul(r, x) : ring.mul(x, r));
        I.card = I.elems.count();
        I.generators = orb.classes[c];
        I.span_gens = {x};
        I.principal = true;
        out.push_back(std::move(I));
    }
    std::sort(out.begin(), out.end(), canonical_ideal_less);
    return out;
}

/// Right annihilator of a left ideal (or symmetrically), as an element set.
inline ElemSet annihilator_set(const FiniteRing& ring, const Ideal& I) {
    const std::size_t n = ring.order();
    ElemSet ann(n);
    for (ElemIdx x = 0; x < n; ++x) {
        bool kills = true;
        for (ElemIdx g : I.span_gens) {
            const ElemIdx p = I.side == Side::left ? ring.mul(g, x) : ring.mul(x, g);
            if (p != ring.zero()) {
                kills = false;
                break;
            }
        }
        if (kills) ann.set(x);
    }
    return ann;
}

/// Annihilator as a full Ideal of the opposite side, with its generators
/// recovered by scanning for cyclic generators.
inline Ideal annihilator(const FiniteRing& ring, const Ideal& I) {
    Ideal a;
    a.side = opposite(I.side);
    a.elems = annihilator_set(ring, I);
    a.card = a.elems.count();
    for (auto e = a.elems.find_first(); e != ElemSet::npos; e = a.elems.find_next(e)) {
        const ElemIdx g = static_cast<ElemIdx>(e);
        ElemSet cyc(ring.order());
        for (ElemIdx r = 0; r < ring.order(); ++r)
            cyc.set(a.side == Side::left ? ring.mul(r, g) : ring.mul(g, r));
        if (cyc == a.elems) a.generators.push_back(g);
    }
    a.principal = !a.generators.empty();
    a.span_gens = a.principal ? std::vector<ElemIdx>{a.generators.front()} : std::vector<ElemIdx>{};
    if (!a.principal)
        for (auto e = a.elems.find_first(); e != ElemSet::npos; e = a.elems.find_next(e))
            a.span_gens.push_back(static_cast<ElemIdx>(e));
    return a;
}

class IdealLattice {
  public:
    RingPtr ring;
    Side side = Side::right;
    std::vector<Ideal> ideals;  // canonical order; id == index
    int zero_id = -1, full_id = -1;
    std::vector<int> principal_ids;

    bool leq(int lo, int hi) const { return up_[lo].test(hi); }
    const ElemSet& up(int id) const { return up_[id]; }      // ids of ideals containing id
    const ElemSet& down(int id) const { return down_[id]; }  // ids of ideals contained in id

    int id_of(const ElemSet& elems) const {
        auto it = index_.find(elems);
        return it == index_.end() ? -1 : it->second;
    }

    std::size_t size() const { return ideals.size(); }

    /// Hasse covers of an ideal (upward).
    std::vector<int> covers(int id) const {
        std::vector<int> out;
        for (auto j = up_[id].find_first(); j != ElemSet::npos; j = up_[id].find_next(j)) {
            if (static_cast<int>(j) == id) continue;
            bool is_cover = true;
            for (auto t = up_[id].find_first(); t != ElemSet::npos; t = up_[id].find_next(t)) {
                if (static_cast<int>(t) == id || t == j) continue;
                if (leq(static_cast<int>(t), static_cast<int>(j))) {
                    is_cover = false;
                    break;
                }
            }
            if (is_cover) out.push_back(static_cast<int>(j));
        }
        return out;
    }

    void finalize() {
        std::sort(ideals.begin(), ideals.end(), canonical_ideal_less);
        index_.clear();
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            ideals[i].id = static_cast<int>(i);
            index_.emplace(ideals[i].elems, static_cast<int>(i));
            if (ideals[i].card == 1) zero_id = static_cast<int>(i);
            if (ideals[i].card == ring->order()) full_id = static_cast<int>(i);
            if (ideals[i].principal) principal_ids.push_back(static_cast<int>(i));
        }
        const std::size_t n = ideals.size();
        up_.assign(n, ElemSet(n));
        down_.assign(n, ElemSet(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (ideals[i].elems.is_subset_of(ideals[j].elems)) {
                    up_[i].set(j);
                    down_[j].set(i);
                }
    }

  private:
    std::vector<ElemSet> up_, down_;
    std::map<ElemSet, int> index_;  // numeric bitset order, lookup only
};

namespace detail {

/// Extends an additive subgroup (as a bitset) by an element: S + <e>.
inline void absorb_element(const FiniteRing& ring, ElemSet& s, ElemIdx e) {
    if (s.test(e)) return;
    std::vector<ElemIdx> multiples;
    for (ElemIdx m = e; m != ring.zero(); m = ring.add(m, e)) multiples.push_back(m);
    const ElemSet base = s;
    for (ElemIdx m : multiples)
        for (auto x = base.find_first(); x != ElemSet::npos; x = base.find_next(x))
            s.set(ring.add(static_cast<ElemIdx>(x), m));
}

/// Sum of two additive subgroups given as bitsets.
inline ElemSet subgroup_sum(const FiniteRing& ring, const ElemSet& a, const ElemSet& b) {
    const bool a_big = a.count() >= b.count();
    ElemSet s = a_big ? a : b;
    const ElemSet& small = a_big ? b : a;
    for (auto e = small.find_first(); e != ElemSet::npos; e = small.find_next(e)) {
        if (s.test(e)) continue;
        absorb_element(ring, s, static_cast<ElemIdx>(e));
        if (2 * s.count() > ring.order()) {  // subgroup of index < 2 is everything
            s.set();
            break;
        }
    }
    return s;
}

}  // namespace detail

/// The lattice of ALL ideals of one side, computed as the join closure of
/// the principal ideals. Joins that already exist in the pool are recognized
/// by the subgroup product formula |I+J| = |I||J|/|I meet J| without
/// materializing sumsets.
inline IdealLattice all_ideals(RingPtr ring, Side side, const BuildLimits& lim = {}) {
    IdealLattice lat;
    lat.ring = ring;
    lat.side = side;

    std::vector<Ideal> pool;
    std::map<ElemSet, std::size_t> index;
    for (Ideal& I : principal_ideals(*ring, side)) {
        auto it = index.find(I.elems);
        if (it == index.end()) {
            index.emplace(I.elems, pool.size());
            pool.push_back(std::move(I));
        } else {
            // distinct orbits generating the same set (non-Frobenius rings)
            auto& gens = pool[it->second].generators;
            gens.insert(gens.end(), I.generators.begin(), I.generators.end());
            std::sort(gens.begin(), gens.end());
        }
    }

    auto find_join = [&](std::size_t i, std::size_t j) -> std::size_t {
        const Ideal& a = pool[i];
        const Ideal& b = pool[j];
        if (a.elems.is_subset_of(b.elems)) return j;
        if (b.elems.is_subset_of(a.elems)) return i;
        const std::uint64_t target =
            std::uint64_t(a.card) * b.card / (a.elems & b.elems).count();
        for (std::size_t k = 0; k < pool.size(); ++k)
            if (pool[k].card == target && a.elems.is_subset_of(pool[k].elems) &&
                b.elems.is_subset_of(pool[k].elems))
                return k;
        // genuinely new ideal: materialize the sum
        Ideal s;
        s.side = side;
        s.elems = detail::subgroup_sum(*ring, a.elems, b.elems);
        s.card = s.elems.count();
        s.principal = false;  // all principal ideals are already in the pool
        s.span_gens = a.span_gens;
        s.span_gens.insert(s.span_gens.end(), b.span_gens.begin(), b.span_gens.end());
        std::sort(s.span_gens.begin(), s.span_gens.end());
        s.span_gens.erase(std::unique(s.span_gens.begin(), s.span_gens.end()), s.span_gens.end());
        auto it = index.find(s.elems);
        if (it != index.end()) return it->second;
        index.emplace(s.elems, pool.size());
        pool.push_back(std::move(s));
        if (pool.size() > lim.max_ideals)
            throw SpecError("ideal-count explosion: more than " + std::to_string(lim.max_ideals) +
                            " ideals");
        return pool.size() - 1;
    };

    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) find_join(i, j);

    lat.ideals = std::move(pool);
    lat.finalize();
    return lat;
}

/// Memoized Möbius function on an ideal lattice.
class MobiusTable {
  public:
    explicit MobiusTable(std::shared_ptr<const IdealLattice> lat) : lat_(std::move(lat)) {}

    const IdealLattice& lattice() const { return *lat_; }

    Rat mu(int lo, int hi) const {
        if (lo == hi) return Rat(1);
        if (!lat_->leq(lo, hi)) return Rat(0);
        const std::uint64_t key = (std::uint64_t(lo) << 32) | std::uint64_t(hi);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rat sum(0);
        const ElemSet interval = lat_->up(lo) & lat_->down(hi);
        for (auto t = interval.find_first(); t != ElemSet::npos; t = interval.find_next(t))
            if (static_cast<int>(t) != hi) sum += mu(lo, static_cast<int>(t));
        Rat v = -sum;
        memo_.emplace(key, v);
        return v;
    }

    Rat mu_from_zero(int hi) const { return mu(lat_->zero_id, hi); }

  private:
    std::shared_ptr<const IdealLattice> lat_;
    mutable std::map<std::uint64_t, Rat> memo_;
};

/// Sum of all minimal nonzero ideals of one side.
inline Ideal socle(const FiniteRing& ring, Side side) {
    const std::vector<Ideal> prins = principal_ideals(ring, side);
    std::vector<const Ideal*> atoms;
    for (const Ideal& p : prins) {
        if (p.card == 1) continue;
        bool minimal = true;
        for (const Ideal& q : prins) {
            if (q.card == 1 || &q == &p) continue;
            if (q.card < p.card && q.elems.is_subset_of(p.elems)) {
                minimal = false;
                break;
            }
        }
        if (minimal) atoms.push_back(&p);
    }
    Ideal s;
    s.side = side;
    s.elems.resize(ring.order());
    s.elems.set(ring.zero());
    for (const Ideal* a : atoms) {
        s.elems = detail::subgroup_sum(ring, s.elems, a->elems);
        s.span_gens.push_back(a->canonical_generator());
    }
    s.card = s.elems.count();
    return s;
}

struct Classification {
    bool is_frobenius = false;
    bool is_pir = false;
    bool socles_coincide = false;
};

class RingContext;
inline Classification classify_ring(RingPtr ring, const BuildLimits& lim = {});

/// Everything downstream needs about one ring: both full ideal lattices,
/// Möbius tables, annihilator correspondences, socles, classification.
class RingContext {
  public:
    explicit RingContext(RingPtr r, const BuildLimits& lim = {}) : ring(std::move(r)) {
        left = std::make_shared<IdealLattice>(all_ideals(ring, Side::left, lim));
        right = std::make_shared<IdealLattice>(all_ideals(ring, Side::right, lim));
        mu_left = std::make_shared<MobiusTable>(left);
        mu_right = std::make_shared<MobiusTable>(right);

        ann_left_.resize(left->size());
        for (std::size_t i = 0; i < left->size(); ++i) {
            const ElemSet a = annihilator_set(*ring, left->ideals[i]);
            ann_left_[i] = right->id_of(a);
            if (ann_left_[i] < 0) throw std::logic_error("annihilator not found in right lattice");
        }
        ann_right_.resize(right->size());
        for (std::size_t i = 0; i < right->size(); ++i) {
            const ElemSet a = annihilator_set(*ring, right->ideals[i]);
            ann_right_[i] = left->id_of(a);
            if (ann_right_[i] < 0) throw std::logic_error("annihilator not found in left lattice");
        }

        const Ideal soc_l = socle(*ring, Side::left);
        const Ideal soc_r = socle(*ring, Side::right);
        soc_left_id = left->id_of(soc_l.elems);
        soc_right_id = right->id_of(soc_r.elems);

        cls.socles_coincide = soc_l.elems == soc_r.elems;
        cls.is_frobenius = left->ideals[soc_left_id].principal && right->ideals[soc_right_id].principal;
        bool pir = true;
        for (const Ideal& I : left->ideals) pir = pir && I.principal;
        for (const Ideal& I : right->ideals) pir = pir && I.principal;
        cls.is_pir = pir;
    }

    const IdealLattice& lat(Side s) const { return s == Side::left ? *left : *right; }
    const MobiusTable& mobius(Side s) const { return s == Side::left ? *mu_left : *mu_right; }

    /// Lattice id (opposite side) of the annihilator of an ideal.
    int annihilator_id(Side of_side, int id) const {
        return of_side == Side::left ? ann_left_[id] : ann_right_[id];
    }

    int socle_id(Side s) const { return s == Side::left ? soc_left_id : soc_right_id; }

    std::string ideal_label(Side s, int id) const {
        const Ideal& I = lat(s).ideals[id];
        if (I.card == 1) return "0";
        if (I.card == ring->order()) return "R";
        std::string core;
        if (I.principal) {
            core = ring->label(I.generators.front());
            if (core.find('+') != std::string::npos) core = "(" + core + ")";
        } else {
            core = "<";
            for (std::size_t i = 0; i < I.span_gens.size(); ++i)
                core += (i ? "," : "") + ring->label(I.span_gens[i]);
            core += ">";
        }
        return s == Side::right ? core + "R" : "R" + core;
    }

    RingPtr ring;
    std::shared_ptr<const IdealLattice> left, right;
    std::shared_ptr<MobiusTable> mu_left, mu_right;
    Classification cls;
    int soc_left_id = -1, soc_right_id = -1;

  private:
    std::vector<int> ann_left_, ann_right_;
};

inline Classification classify_ring(RingPtr ring, const BuildLimits& lim) {
    return RingContext(std::move(ring), lim).cls;
}

}  // namespace ringext
