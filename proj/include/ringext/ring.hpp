#pragma once

// Finite unital rings with dense element indices and exact arithmetic.
// Built-in constructors cover Z_m, finite fields, the two chain-ring
// families, matrix rings over chain rings, direct products, and rings
// given by explicit addition/multiplication tables.

#include "ringext/rational.hpp"
#include "ringext/ring_spec.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ringext {

using ElemIdx = std::uint32_t;

enum class Side { left, right };
enum class OrbitKind { left, right, two_sided };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

struct BuildLimits {
    std::size_t max_order = 4096;
    std::size_t table_validation_cap = 512;  // full O(n^3) axiom checks up to here
    std::size_t max_ideals = std::size_t(1) << 14;
};

/// Unit-orbit partition of the element set. Classes are ascending element
/// lists ordered by representative; the representative is the minimal index.
struct OrbitPartition {
    OrbitKind kind;
    std::vector<std::int32_t> class_of;
    std::vector<std::vector<ElemIdx>> classes;
    ElemIdx rep(std::size_t c) const { return classes[c][0]; }
    std::size_t size() const { return classes.size(); }
};

/// Structural arithmetic strategy. Subclasses define the element encoding.
class RingOps {
  public:
    virtual ~RingOps() = default;
    std::size_t order = 0;
    ElemIdx zero = 0, one = 0;

    virtual ElemIdx add(ElemIdx a, ElemIdx b) const = 0;
    virtual ElemIdx mul(ElemIdx a, ElemIdx b) const = 0;
    virtual ElemIdx neg(ElemIdx a) const = 0;
    virtual std::string label(ElemIdx a) const = 0;

    /// Marks units in `flag`. Default: exhaustive two-sided inverse scan.
    virtual void compute_units(std::vector<char>& flag) const {
        for (ElemIdx i = 0; i < order; ++i) {
            for (ElemIdx j = 0; j < order; ++j)
                if (mul(i, j) == one && mul(j, i) == one) {
                    flag[i] = 1;
                    break;
                }
        }
    }

    /// Inverse of a unit. Default: scan.
    virtual ElemIdx inverse_of(ElemIdx u) const {
        for (ElemIdx j = 0; j < order; ++j)
            if (mul(u, j) == one && mul(j, u) == one) return j;
        throw std::logic_error("inverse_of called on non-unit");
    }
};

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

class FiniteRing {
  public:
    FiniteRing(RingSpec spec, std::unique_ptr<RingOps> ops) : spec_(std::move(spec)), ops_(std::move(ops)) {
        order_ = ops_->order;
        zero_ = ops_->zero;
        one_ = ops_->one;
        if (order_ < 2) throw SpecError("ring must have at least two elements (0 != 1)");
        if (order_ <= kTableThreshold) {
            add_tab_.resize(order_ * order_);
            mul_tab_.resize(order_ * order_);
            for (ElemIdx i = 0; i < order_; ++i)
                for (ElemIdx j = 0; j < order_; ++j) {
                    add_tab_[i * order_ + j] = ops_->add(i, j);
                    mul_tab_[i * order_ + j] = ops_->mul(i, j);
                }
        }
        neg_tab_.resize(order_);
        for (ElemIdx i = 0; i < order_; ++i) neg_tab_[i] = ops_->neg(i);
        unit_flag_.assign(order_, 0);
        ops_->compute_units(unit_flag_);
        for (ElemIdx i = 0; i < order_; ++i)
            if (unit_flag_[i]) units_.push_back(i);
        if (!unit_flag_[one_]) throw std::logic_error("1 is not recognized as a unit");
        if (order_ <= kLabelThreshold) {
            labels_.reserve(order_);
            for (ElemIdx i = 0; i < order_; ++i) labels_.push_back(ops_->label(i));
            for (ElemIdx i = 0; i < order_; ++i) label_index_.emplace(labels_[i], i);
        }
        if (order_ <= kInverseTableThreshold) {
            inv_tab_.assign(order_, 0);
            for (ElemIdx u : units_) inv_tab_[u] = ops_->inverse_of(u);
        }
        compute_unit_generators();
        orbit_[0] = compute_orbits(OrbitKind::left);
        orbit_[1] = compute_orbits(OrbitKind::right);
        orbit_[2] = compute_orbits(OrbitKind::two_sided);
    }

    FiniteRing(const FiniteRing&) = delete;
    FiniteRing& operator=(const FiniteRing&) = delete;

    const RingSpec& spec() const { return spec_; }
    std::string spec_string() const { return spec_.to_string(); }
    std::size_t order() const { return order_; }
    ElemIdx zero() const { return zero_; }
    ElemIdx one() const { return one_; }

    ElemIdx add(ElemIdx a, ElemIdx b) const {
        return add_tab_.empty() ? ops_->add(a, b) : add_tab_[a * order_ + b];
    }
    ElemIdx mul(ElemIdx a, ElemIdx b) const {
        return mul_tab_.empty() ? ops_->mul(a, b) : mul_tab_[a * order_ + b];
    }
    ElemIdx neg(ElemIdx a) const { return neg_tab_[a]; }
    ElemIdx sub(ElemIdx a, ElemIdx b) const { return add(a, neg(b)); }

    bool is_unit(ElemIdx a) const { return unit_flag_[a] != 0; }
    const std::vector<ElemIdx>& units() const { return units_; }
    const std::vector<ElemIdx>& unit_generators() const { return unit_gens_; }
    ElemIdx inverse(ElemIdx u) const {
        if (!is_unit(u)) throw std::logic_error("inverse of non-unit");
        return inv_tab_.empty() ? ops_->inverse_of(u) : inv_tab_[u];
    }

    std::string label(ElemIdx a) const { return labels_.empty() ? ops_->label(a) : labels_[a]; }

    std::optional<ElemIdx> element_by_label(const std::string& s) const {
        if (!label_index_.empty()) {
            auto it = label_index_.find(s);
            if (it == label_index_.end()) return std::nullopt;
            return it->second;
        }
        for (ElemIdx i = 0; i < order_; ++i)
            if (ops_->label(i) == s) return i;
        return std::nullopt;
    }

    const OrbitPartition& orbits(OrbitKind k) const { return orbit_[static_cast<int>(k)]; }

    /// Orbit partition matching a lattice side: left ideals Rx correspond to
    /// left orbits Ux, right ideals xR to right orbits xU.
    const OrbitPartition& orbits_for_side(Side s) const {
        return orbits(s == Side::left ? OrbitKind::left : OrbitKind::right);
    }

    const RingOps& ops() const { return *ops_; }

  private:
    static constexpr std::size_t kTableThreshold = 1024;
    static constexpr std::size_t kLabelThreshold = 4096;
    static constexpr std::size_t kInverseTableThreshold = 4096;

    void compute_unit_generators() {
        std::vector<char> in_h(order_, 0);
        in_h[one_] = 1;
        std::vector<ElemIdx> h{one_};
        for (ElemIdx u : units_) {
            if (in_h[u]) continue;
            unit_gens_.push_back(u);
            std::vector<ElemIdx> frontier;
            const std::size_t old_size = h.size();
            auto push = [&](ElemIdx x) {
                if (!in_h[x]) {
                    in_h[x] = 1;
                    h.push_back(x);
                    frontier.push_back(x);
                }
            };
            for (std::size_t i = 0; i < old_size; ++i) push(mul(h[i], u));
            while (!frontier.empty()) {
                const ElemIdx x = frontier.back();
                frontier.pop_back();
                for (ElemIdx g : unit_gens_) push(mul(x, g));
            }
        }
    }

    OrbitPartition compute_orbits(OrbitKind k) const {
        OrbitPartition p;
        p.kind = k;
        p.class_of.assign(order_, -1);
        std::vector<ElemIdx> stack;
        for (ElemIdx start = 0; start < order_; ++start) {
            if (p.class_of[start] >= 0) continue;
            const std::int32_t c = static_cast<std::int32_t>(p.classes.size());
            p.classes.emplace_back();
            p.class_of[start] = c;
            stack.assign(1, start);
            auto visit = [&](ElemIdx y) {
                if (p.class_of[y] < 0) {
                    p.class_of[y] = c;
                    stack.push_back(y);
                }
            };
            while (!stack.empty()) {
                const ElemIdx x = stack.back();
                stack.pop_back();
                p.classes[c].push_back(x);
                for (ElemIdx g : unit_gens_) {
                    if (k != OrbitKind::right) visit(mul(g, x));
                    if (k != OrbitKind::left) visit(mul(x, g));
                }
            }
            std::sort(p.classes[c].begin(), p.classes[c].end());
        }
        return p;
    }

    RingSpec spec_;
    std::unique_ptr<RingOps> ops_;
    std::size_t order_;
    ElemIdx zero_, one_;
    std::vector<ElemIdx> add_tab_, mul_tab_, neg_tab_, inv_tab_;
    std::vector<char> unit_flag_;
    std::vector<ElemIdx> units_, unit_gens_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, ElemIdx> label_index_;
    std::array<OrbitPartition, 3> orbit_;
};

/// An element bound to its ring; arithmetic checks ring identity.
struct RingElement {
    RingPtr ring;
    ElemIdx index = 0;
    bool operator==(const RingElement& o) const { return ring == o.ring && index == o.index; }
};

inline void require_same_ring(const RingElement& a, const RingElement& b) {
    if (a.ring != b.ring) throw SpecError("ring mismatch between operands");
}
inline RingElement add(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return {a.ring, a.ring->add(a.index, b.index)};
}
inline RingElement mul(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return {a.ring, a.ring->mul(a.index, b.index)};
}
inline RingElement neg(const RingElement& a) { return {a.ring, a.ring->neg(a.index)}; }

// --------------------------------------------------------------------------
// Structural constructors
// --------------------------------------------------------------------------

namespace ops {

class ZmOps final : public RingOps {
  public:
    explicit ZmOps(long long m) : m_(m) {
        order = static_cast<std::size_t>(m);
        zero = 0;
        one = m == 1 ? 0 : 1;
    }
    ElemIdx add(ElemIdx a, ElemIdx b) const override { return (a + b) % m_; }
    ElemIdx mul(ElemIdx a, ElemIdx b) const override {
        return static_cast<ElemIdx>((std::uint64_t(a) * b) % m_);
    }
    ElemIdx neg(ElemIdx a) const override { return a == 0 ? 0 : static_cast<ElemIdx>(m_ - a); }
    std::string label(ElemIdx a) const override { return std::to_string(a); }
    void compute_units(std::vector<char>& flag) const override {
        for (ElemIdx i = 0; i < order; ++i) flag[i] = std::gcd<long long>(i, m_) == 1;
    }
    ElemIdx inverse_of(ElemIdx u) const override {
        const long long m = static_cast<long long>(m_);
        long long t = 0, new_t = 1, r = m, new_r = u;
        while (new_r != 0) {
            const long long q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (r != 1) throw std::logic_error("inverse of non-unit in Z_m");
        return static_cast<ElemIdx>(((t % m) + m) % m);
    }

  private:
    std::uint64_t m_;
};

// Polynomial helpers over F_p (coefficient vectors, ascending degree).
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    while (a.size() >= m.size()) {
        const int lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i)
                a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
        }
        a.pop_back();
    }
    return a;
}

inline std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& m, int p) {
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(c), m, p);
}

/// Lexicographically smallest monic irreducible polynomial of degree k over
/// F_p, found by trial division.
inline std::vector<int> find_irreducible(int p, int k) {
    if (k == 1) return {0, 1};  // x
    // enumerate monic degree-d polynomials as base-p numbers over low coefficients
    auto decode = [&](long long code, int deg) {
        std::vector<int> f(deg + 1);
        for (int i = 0; i < deg; ++i) {
            f[i] = static_cast<int>(code % p);
            code /= p;
        }
        f[deg] = 1;
        return f;
    };
    long long qk = 1;
    for (int i = 0; i < k; ++i) qk *= p;
    for (long long code = 0; code < qk; ++code) {
        const std::vector<int> cand = decode(code, k);
        if (cand[0] == 0) continue;  // divisible by x
        bool irreducible = true;
        for (int d = 1; irreducible && 2 * d <= k; ++d) {
            long long qd = 1;
            for (int i = 0; i < d; ++i) qd *= p;
            for (long long dc = 0; dc < qd; ++dc) {
                // monic divisor of degree d: remainder of cand mod divisor == 0?
                std::vector<int> div = decode(dc, d);
                std::vector<int> rem = poly_mod(cand, div, p);
                bool zero = true;
                for (int c : rem)
                    if (c != 0) zero = false;
                if (zero) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return cand;
    }
    throw std::logic_error("no irreducible polynomial found");
}

class GFOps final : public RingOps {
  public:
    GFOps(long long p, long long k) : p_(static_cast<int>(p)), k_(static_cast<int>(k)) {
        modulus_ = find_irreducible(p_, k_);
        std::size_t q = 1;
        for (int i = 0; i < k_; ++i) q *= p_;
        order = q;
        zero = 0;
        one = 1;
    }

    ElemIdx add(ElemIdx a, ElemIdx b) const override {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < k_; ++i) {
            const int ca = static_cast<int>(a % p_), cb = static_cast<int>(b % p_);
            out += base * ((ca + cb) % p_);
            a /= p_;
            b /= p_;
            base *= p_;
        }
        return out;
    }

    ElemIdx mul(ElemIdx a, ElemIdx b) const override {
        const std::vector<int> pa = decode(a), pb = decode(b);
        return encode(poly_mul_mod(pa, pb, modulus_, p_));
    }

    ElemIdx neg(ElemIdx a) const override {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < k_; ++i) {
            const int c = static_cast<int>(a % p_);
            out += base * ((p_ - c) % p_);
            a /= p_;
            base *= p_;
        }
        return out;
    }

    std::string label(ElemIdx a) const override {
        const std::vector<int> c = decode(a);
        std::string s;
        for (int d = k_ - 1; d >= 0; --d) {
            if (c[d] == 0) continue;
            if (!s.empty()) s += "+";
            if (c[d] != 1 || d == 0) s += std::to_string(c[d]);
            if (d == 1) s += "a";
            if (d > 1) s += "a^" + std::to_string(d);
        }
        return s.empty() ? "0" : s;
    }

    void compute_units(std::vector<char>& flag) const override {
        for (ElemIdx i = 1; i < order; ++i) flag[i] = 1;
    }

    const std::vector<int>& modulus() const { return modulus_; }
    int characteristic() const { return p_; }
    int degree() const { return k_; }

  private:
    std::vector<int> decode(ElemIdx a) const {
        std::vector<int> c(k_);
        for (int i = 0; i < k_; ++i) {
            c[i] = static_cast<int>(a % p_);
            a /= p_;
        }
        return c;
    }
    ElemIdx encode(const std::vector<int>& c) const {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < k_; ++i) {
            if (i < static_cast<int>(c.size())) out += base * c[i];
            base *= p_;
        }
        return out;
    }

    int p_, k_;
    std::vector<int> modulus_;
};

/// F_q[t]/(t^k): truncated polynomials over a finite field base.
class PChainOps final : public RingOps {
  public:
    PChainOps(RingPtr base, long long k) : base_(std::move(base)), k_(static_cast<int>(k)) {
        q_ = base_->order();
        std::size_t n = 1;
        for (int i = 0; i < k_; ++i) n *= q_;
        order = n;
        zero = 0;
        one = 1;
    }

    ElemIdx add(ElemIdx a, ElemIdx b) const override {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < k_; ++i) {
            out += base * base_->add(a % q_, b % q_);
            a /= q_;
            b /= q_;
            base *= q_;
        }
        return out;
    }

    ElemIdx mul(ElemIdx a, ElemIdx b) const override {
        std::vector<ElemIdx> ca = digits(a), cb = digits(b), out(k_, base_->zero());
        for (int i = 0; i < k_; ++i) {
            if (ca[i] == base_->zero()) continue;
            for (int j = 0; i + j < k_; ++j)
                out[i + j] = base_->add(out[i + j], base_->mul(ca[i], cb[j]));
        }
        return encode(out);
    }

    ElemIdx neg(ElemIdx a) const override {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < k_; ++i) {
            out += base * base_->neg(a % q_);
            a /= q_;
            base *= q_;
        }
        return out;
    }

    std::string label(ElemIdx a) const override {
        const std::vector<ElemIdx> c = digits(a);
        std::string s;
        for (int d = k_ - 1; d >= 0; --d) {
            if (c[d] == base_->zero()) continue;
            std::string coeff = base_->label(c[d]);
            if (!s.empty()) s += "+";
            if (d == 0) {
                s += coeff;
            } else {
                if (coeff != "1") s += coeff.find('+') != std::string::npos ? "(" + coeff + ")" : coeff;
                s += d == 1 ? "t" : "t^" + std::to_string(d);
            }
        }
        return s.empty() ? "0" : s;
    }

    void compute_units(std::vector<char>& flag) const override {
        for (ElemIdx i = 0; i < order; ++i) flag[i] = (i % q_) != base_->zero();
    }

  private:
    std::vector<ElemIdx> digits(ElemIdx a) const {
        std::vector<ElemIdx> c(k_);
        for (int i = 0; i < k_; ++i) {
            c[i] = a % q_;
            a /= q_;
        }
        return c;
    }
    ElemIdx encode(const std::vector<ElemIdx>& c) const {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < k_; ++i) {
            out += base * c[i];
            base *= q_;
        }
        return out;
    }

    RingPtr base_;
    std::size_t q_;
    int k_;
};

/// n x n matrices over a chain-ring base, row-major digit encoding.
/// Entry arrays live on the stack (dimension capped) since multiplication
/// sits in every enumeration loop.
class MatOps final : public RingOps {
  public:
    static constexpr int kMaxEntries = 64;

    MatOps(long long n, RingPtr base, std::size_t total_order)
        : n_(static_cast<int>(n)), base_(std::move(base)) {
        if (n_ * n_ > kMaxEntries) throw SpecError("Mat(n,S): n is too large");
        q_ = base_->order();
        order = total_order;
        zero = 0;
        ElemIdx id = 0, b = 1;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (i == j) id += b * base_->one();
                b *= static_cast<ElemIdx>(q_);
            }
        one = id;
    }

    ElemIdx add(ElemIdx a, ElemIdx b) const override {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < n_ * n_; ++i) {
            out += base * base_->add(a % q_, b % q_);
            a /= q_;
            b /= q_;
            base *= q_;
        }
        return out;
    }

    ElemIdx mul(ElemIdx a, ElemIdx b) const override {
        ElemIdx ma[kMaxEntries], mb[kMaxEntries], out[kMaxEntries];
        decode_into(a, ma);
        decode_into(b, mb);
        const ElemIdx z = base_->zero();
        for (int i = 0; i < n_ * n_; ++i) out[i] = z;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const ElemIdx aik = ma[i * n_ + k];
                if (aik == z) continue;
                for (int j = 0; j < n_; ++j)
                    out[i * n_ + j] = base_->add(out[i * n_ + j], base_->mul(aik, mb[k * n_ + j]));
            }
        ElemIdx enc = 0, basep = 1;
        for (int i = 0; i < n_ * n_; ++i) {
            enc += basep * out[i];
            basep *= static_cast<ElemIdx>(q_);
        }
        return enc;
    }

    ElemIdx neg(ElemIdx a) const override {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < n_ * n_; ++i) {
            out += base * base_->neg(a % q_);
            a /= q_;
            base *= q_;
        }
        return out;
    }

    std::string label(ElemIdx a) const override {
        const auto m = decode(a);
        std::string s = "[";
        for (int i = 0; i < n_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < n_; ++j) s += (j ? "," : "") + base_->label(m[i * n_ + j]);
            s += "]";
        }
        return s + "]";
    }

    void compute_units(std::vector<char>& flag) const override {
        for (ElemIdx i = 0; i < order; ++i) flag[i] = invertible(decode(i));
    }

    ElemIdx inverse_of(ElemIdx u) const override {
        auto inv = invert(decode(u));
        if (!inv) throw std::logic_error("inverse of non-unit matrix");
        return encode(*inv);
    }

    /// Rank over the base (fields only); used by the rank weight.
    int rank(ElemIdx a) const {
        auto m = decode(a);
        int rank = 0;
        for (int col = 0; col < n_ && rank < n_; ++col) {
            int piv = -1;
            for (int r = rank; r < n_; ++r)
                if (m[r * n_ + col] != base_->zero() && base_->is_unit(m[r * n_ + col])) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            for (int j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[rank * n_ + j]);
            const ElemIdx pinv = base_->inverse(m[rank * n_ + col]);
            for (int j = 0; j < n_; ++j) m[rank * n_ + j] = base_->mul(pinv, m[rank * n_ + j]);
            for (int r = 0; r < n_; ++r) {
                if (r == rank) continue;
                const ElemIdx f = m[r * n_ + col];
                if (f == base_->zero()) continue;
                for (int j = 0; j < n_; ++j)
                    m[r * n_ + j] = base_->sub(m[r * n_ + j], base_->mul(f, m[rank * n_ + j]));
            }
            ++rank;
        }
        return rank;
    }

    int dim() const { return n_; }
    const RingPtr& base() const { return base_; }

  private:
    void decode_into(ElemIdx a, ElemIdx* m) const {
        for (int i = 0; i < n_ * n_; ++i) {
            m[i] = a % q_;
            a /= q_;
        }
    }
    std::vector<ElemIdx> decode(ElemIdx a) const {
        std::vector<ElemIdx> m(n_ * n_);
        decode_into(a, m.data());
        return m;
    }
    ElemIdx encode(const std::vector<ElemIdx>& m) const {
        ElemIdx out = 0, base = 1;
        for (int i = 0; i < n_ * n_; ++i) {
            out += base * m[i];
            base *= q_;
        }
        return out;
    }

    // Gauss-Jordan with unit pivots; valid over the local (chain ring) base.
    bool invertible(std::vector<ElemIdx> m) const {
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r)
                if (base_->is_unit(m[r * n_ + col])) {
                    piv = r;
                    break;
                }
            if (piv < 0) return false;
            for (int j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[col * n_ + j]);
            const ElemIdx pinv = base_->inverse(m[col * n_ + col]);
            for (int j = 0; j < n_; ++j) m[col * n_ + j] = base_->mul(pinv, m[col * n_ + j]);
            for (int r = 0; r < n_; ++r) {
                if (r == col) continue;
                const ElemIdx f = m[r * n_ + col];
                if (f == base_->zero()) continue;
                for (int j = 0; j < n_; ++j)
                    m[r * n_ + j] = base_->sub(m[r * n_ + j], base_->mul(f, m[col * n_ + j]));
            }
        }
        return true;
    }

    std::optional<std::vector<ElemIdx>> invert(std::vector<ElemIdx> m) const {
        std::vector<ElemIdx> inv(n_ * n_, base_->zero());
        for (int i = 0; i < n_; ++i) inv[i * n_ + i] = base_->one();
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r)
                if (base_->is_unit(m[r * n_ + col])) {
                    piv = r;
                    break;
                }
            if (piv < 0) return std::nullopt;
            for (int j = 0; j < n_; ++j) {
                std::swap(m[piv * n_ + j], m[col * n_ + j]);
                std::swap(inv[piv * n_ + j], inv[col * n_ + j]);
            }
            const ElemIdx pinv = base_->inverse(m[col * n_ + col]);
            for (int j = 0; j < n_; ++j) {
                m[col * n_ + j] = base_->mul(pinv, m[col * n_ + j]);
                inv[col * n_ + j] = base_->mul(pinv, inv[col * n_ + j]);
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col) continue;
                const ElemIdx f = m[r * n_ + col];
                if (f == base_->zero()) continue;
                for (int j = 0; j < n_; ++j) {
                    m[r * n_ + j] = base_->sub(m[r * n_ + j], base_->mul(f, m[col * n_ + j]));
                    inv[r * n_ + j] = base_->sub(inv[r * n_ + j], base_->mul(f, inv[col * n_ + j]));
                }
            }
        }
        return inv;
    }

    int n_;
    RingPtr base_;
    std::size_t q_;
};

class ProdOps final : public RingOps {
  public:
    ProdOps(std::vector<RingPtr> factors, std::size_t total_order) : factors_(std::move(factors)) {
        order = total_order;
        zero = 0;
        ElemIdx o = 0, base = 1;
        for (const auto& f : factors_) {
            o += base * f->one();
            base *= static_cast<ElemIdx>(f->order());
        }
        one = o;
    }

    ElemIdx add(ElemIdx a, ElemIdx b) const override { return zip(a, b, /*mul=*/false); }
    ElemIdx mul(ElemIdx a, ElemIdx b) const override { return zip(a, b, /*mul=*/true); }

    ElemIdx neg(ElemIdx a) const override {
        ElemIdx out = 0, base = 1;
        for (const auto& f : factors_) {
            const ElemIdx q = static_cast<ElemIdx>(f->order());
            out += base * f->neg(a % q);
            a /= q;
            base *= q;
        }
        return out;
    }

    std::string label(ElemIdx a) const override {
        std::string s = "(";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const ElemIdx q = static_cast<ElemIdx>(factors_[i]->order());
            s += (i ? "," : "") + factors_[i]->label(a % q);
            a /= q;
        }
        return s + ")";
    }

    void compute_units(std::vector<char>& flag) const override {
        for (ElemIdx i = 0; i < order; ++i) {
            ElemIdx a = i;
            bool u = true;
            for (const auto& f : factors_) {
                const ElemIdx q = static_cast<ElemIdx>(f->order());
                if (!f->is_unit(a % q)) {
                    u = false;
                    break;
                }
                a /= q;
            }
            flag[i] = u;
        }
    }

    ElemIdx inverse_of(ElemIdx a) const override {
        ElemIdx out = 0, base = 1;
        for (const auto& f : factors_) {
            const ElemIdx q = static_cast<ElemIdx>(f->order());
            out += base * f->inverse(a % q);
            a /= q;
            base *= q;
        }
        return out;
    }

  private:
    ElemIdx zip(ElemIdx a, ElemIdx b, bool mul) const {
        ElemIdx out = 0, base = 1;
        for (const auto& f : factors_) {
            const ElemIdx q = static_cast<ElemIdx>(f->order());
            out += base * (mul ? f->mul(a % q, b % q) : f->add(a % q, b % q));
            a /= q;
            b /= q;
            base *= q;
        }
        return out;
    }

    std::vector<RingPtr> factors_;
};

class TableOps final : public RingOps {
  public:
    TableOps(std::size_t n, std::vector<ElemIdx> add, std::vector<ElemIdx> mul,
             std::vector<std::string> labels, ElemIdx zero_idx, ElemIdx one_idx)
        : add_(std::move(add)), mul_(std::move(mul)), labels_(std::move(labels)) {
        order = n;
        zero = zero_idx;
        one = one_idx;
    }
    ElemIdx add(ElemIdx a, ElemIdx b) const override { return add_[a * order + b]; }
    ElemIdx mul(ElemIdx a, ElemIdx b) const override { return mul_[a * order + b]; }
    ElemIdx neg(ElemIdx a) const override {
        for (ElemIdx j = 0; j < order; ++j)
            if (add_[a * order + j] == zero) return j;
        throw std::logic_error("no additive inverse");
    }
    std::string label(ElemIdx a) const override { return labels_[a]; }

  private:
    std::vector<ElemIdx> add_, mul_;
    std::vector<std::string> labels_;
};

}  // namespace ops

// --------------------------------------------------------------------------
// Table validation
// --------------------------------------------------------------------------

struct TableData {
    std::size_t order = 0;
    std::vector<ElemIdx> add, mul;       // row-major order x order
    std::vector<std::string> labels;     // optional, defaults to indices
};

struct ValidationReport {
    std::vector<std::string> violations;  // one witness per violated axiom
    std::optional<ElemIdx> zero, one;
    bool valid() const { return violations.empty() && zero && one; }
};

/// Exhaustive ring-axiom check of raw tables; every violated axiom is
/// reported with one witness.
inline ValidationReport validate_table_ring(const TableData& t) {
    ValidationReport rep;
    const std::size_t n = t.order;
    auto idx = [&](ElemIdx a, ElemIdx b) { return a * n + b; };
    auto name = [&](ElemIdx a) {
        return t.labels.empty() ? std::to_string(a) : t.labels[a];
    };
    if (t.add.size() != n * n || t.mul.size() != n * n) {
        rep.violations.push_back("tables are not order x order");
        return rep;
    }
    for (ElemIdx v : t.add)
        if (v >= n) {
            rep.violations.push_back("add table entry out of range");
            return rep;
        }
    for (ElemIdx v : t.mul)
        if (v >= n) {
            rep.violations.push_back("mul table entry out of range");
            return rep;
        }

    // additive identity
    for (ElemIdx z = 0; z < n && !rep.zero; ++z) {
        bool ok = true;
        for (ElemIdx x = 0; x < n; ++x)
            if (t.add[idx(z, x)] != x || t.add[idx(x, z)] != x) {
                ok = false;
                break;
            }
        if (ok) rep.zero = z;
    }
    if (!rep.zero) rep.violations.push_back("no additive identity");

    // commutativity of addition
    for (ElemIdx a = 0; a < n; ++a)
        for (ElemIdx b = a + 1; b < n; ++b)
            if (t.add[idx(a, b)] != t.add[idx(b, a)]) {
                rep.violations.push_back("addition not commutative: " + name(a) + "+" + name(b));
                goto add_comm_done;
            }
add_comm_done:

    // additive inverses
    if (rep.zero) {
        for (ElemIdx a = 0; a < n; ++a) {
            bool found = false;
            for (ElemIdx b = 0; b < n; ++b)
                if (t.add[idx(a, b)] == *rep.zero) {
                    found = true;
                    break;
                }
            if (!found) {
                rep.violations.push_back("no additive inverse for " + name(a));
                break;
            }
        }
    }

    // associativity of + and *
    for (ElemIdx a = 0; a < n; ++a)
        for (ElemIdx b = 0; b < n; ++b)
            for (ElemIdx c = 0; c < n; ++c)
                if (t.add[idx(t.add[idx(a, b)], c)] != t.add[idx(a, t.add[idx(b, c)])]) {
                    rep.violations.push_back("addition not associative: (" + name(a) + "," + name(b) +
                                             "," + name(c) + ")");
                    goto add_assoc_done;
                }
add_assoc_done:
    for (ElemIdx a = 0; a < n; ++a)
        for (ElemIdx b = 0; b < n; ++b)
            for (ElemIdx c = 0; c < n; ++c)
                if (t.mul[idx(t.mul[idx(a, b)], c)] != t.mul[idx(a, t.mul[idx(b, c)])]) {
                    rep.violations.push_back("multiplication not associative: (" + name(a) + "," +
                                             name(b) + "," + name(c) + ")");
                    goto mul_assoc_done;
                }
mul_assoc_done:

    // distributivity
    for (ElemIdx a = 0; a < n; ++a)
        for (ElemIdx b = 0; b < n; ++b)
            for (ElemIdx c = 0; c < n; ++c) {
                if (t.mul[idx(a, t.add[idx(b, c)])] != t.add[idx(t.mul[idx(a, b)], t.mul[idx(a, c)])]) {
                    rep.violations.push_back("left distributivity fails: (" + name(a) + "," + name(b) +
                                             "," + name(c) + ")");
                    goto dist_done;
                }
                if (t.mul[idx(t.add[idx(a, b)], c)] != t.add[idx(t.mul[idx(a, c)], t.mul[idx(b, c)])]) {
                    rep.violations.push_back("right distributivity fails: (" + name(a) + "," + name(b) +
                                             "," + name(c) + ")");
                    goto dist_done;
                }
            }
dist_done:

    // multiplicative identity
    for (ElemIdx e = 0; e < n && !rep.one; ++e) {
        bool ok = true;
        for (ElemIdx x = 0; x < n; ++x)
            if (t.mul[idx(e, x)] != x || t.mul[idx(x, e)] != x) {
                ok = false;
                break;
            }
        if (ok) rep.one = e;
    }
    if (!rep.one) rep.violations.push_back("no two-sided multiplicative identity");

    return rep;
}

inline TableData table_from_json(const nlohmann::json& j) {
    TableData t;
    if (!j.contains("order") || !j.contains("add") || !j.contains("mul"))
        throw SpecError("table ring file must contain order, add, mul");
    t.order = j.at("order").get<std::size_t>();
    auto read = [&](const char* key, std::vector<ElemIdx>& out) {
        const auto& rows = j.at(key);
        if (!rows.is_array() || rows.size() != t.order)
            throw SpecError(std::string(key) + " table must have `order` rows");
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != t.order)
                throw SpecError(std::string(key) + " table must have `order` columns per row");
            for (const auto& v : row) out.push_back(v.get<ElemIdx>());
        }
    };
    read("add", t.add);
    read("mul", t.mul);
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) t.labels.push_back(l.get<std::string>());
        if (t.labels.size() != t.order) throw SpecError("labels must have `order` entries");
    }
    return t;
}

inline nlohmann::json table_to_json(const TableData& t) {
    nlohmann::json j;
    j["order"] = t.order;
    auto dump = [&](const std::vector<ElemIdx>& tab) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < t.order; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < t.order; ++k) row.push_back(tab[i * t.order + k]);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["add"] = dump(t.add);
    j["mul"] = dump(t.mul);
    if (!t.labels.empty()) j["labels"] = t.labels;
    return j;
}

// --------------------------------------------------------------------------
// build_ring
// --------------------------------------------------------------------------

namespace detail {

inline std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap,
                               const std::string& what) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > cap / base) throw SpecError(what + ": order cap " + std::to_string(cap) + " exceeded");
        r *= base;
    }
    return r;
}

}  // namespace detail

inline RingPtr build_ring(const RingSpec& spec, const BuildLimits& lim = {});

namespace detail {

inline RingPtr build_table_ring(const RingSpec& spec, const BuildLimits& lim) {
    std::ifstream in(spec.path);
    if (!in) throw SpecError("cannot open table file '" + spec.path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SpecError("table file '" + spec.path + "' is not valid JSON: " + e.what());
    }
    TableData t = table_from_json(j);
    if (t.order > lim.table_validation_cap)
        throw SpecError("table ring order " + std::to_string(t.order) +
                        " exceeds validation cap " + std::to_string(lim.table_validation_cap));
    ValidationReport rep = validate_table_ring(t);
    if (!rep.valid()) {
        std::string msg = "table file '" + spec.path + "' fails ring axioms:";
        for (const auto& v : rep.violations) msg += "\n  " + v;
        if (!rep.zero) msg += "\n  (no zero)";
        if (!rep.one) msg += "\n  (no one)";
        throw SpecError(msg);
    }
    if (t.labels.empty())
        for (std::size_t i = 0; i < t.order; ++i) t.labels.push_back(std::to_string(i));
    return std::make_shared<FiniteRing>(
        spec, std::make_unique<ops::TableOps>(t.order, std::move(t.add), std::move(t.mul),
                                              std::move(t.labels), *rep.zero, *rep.one));
}

inline bool is_chain_ring_spec(const RingSpec& s) {
    switch (s.kind) {
        case RingSpec::Kind::GF:
        case RingSpec::Kind::ZChain:
        case RingSpec::Kind::PChain: return true;
        case RingSpec::Kind::Z: {
            // Z(m) is a chain ring precisely for prime powers
            try {
                prime_power(s.a, "Z");
                return true;
            } catch (const SpecError&) {
                return false;
            }
        }
        default: return false;
    }
}

}  // namespace detail

inline RingPtr build_ring(const RingSpec& spec, const BuildLimits& lim) {
    using Kind = RingSpec::Kind;
    switch (spec.kind) {
        case Kind::Z: {
            if (spec.a < 2) throw SpecError("Z(m) requires m >= 2");
            if (static_cast<std::size_t>(spec.a) > lim.max_order)
                throw SpecError("Z(m): order cap " + std::to_string(lim.max_order) + " exceeded");
            return std::make_shared<FiniteRing>(spec, std::make_unique<ops::ZmOps>(spec.a));
        }
        case Kind::GF: {
            const auto [p, k] = prime_power(spec.a, "GF");
            if (static_cast<std::size_t>(spec.a) > lim.max_order)
                throw SpecError("GF(q): order cap exceeded");
            return std::make_shared<FiniteRing>(spec, std::make_unique<ops::GFOps>(p, k));
        }
        case Kind::ZChain: {
            if (!is_prime(spec.a)) throw SpecError("ZChain(p,k): p must be prime");
            if (spec.b < 1) throw SpecError("ZChain(p,k): k must be >= 1");
            const std::size_t m = detail::checked_pow(spec.a, spec.b, lim.max_order, "ZChain");
            return std::make_shared<FiniteRing>(spec, std::make_unique<ops::ZmOps>(m));
        }
        case Kind::PChain: {
            prime_power(spec.a, "PChain");  // q must be a prime power
            if (spec.b < 1) throw SpecError("PChain(q,k): k must be >= 1");
            detail::checked_pow(spec.a, spec.b, lim.max_order, "PChain");
            RingSpec base_spec;
            base_spec.kind = Kind::GF;
            base_spec.a = spec.a;
            RingPtr base = build_ring(base_spec, lim);
            return std::make_shared<FiniteRing>(spec, std::make_unique<ops::PChainOps>(base, spec.b));
        }
        case Kind::Mat: {
            if (spec.a < 1) throw SpecError("Mat(n,S): n must be >= 1");
            if (!detail::is_chain_ring_spec(spec.args[0]))
                throw SpecError("Mat(n,S): S must be a field or chain ring, got " +
                                spec.args[0].to_string());
            RingPtr base = build_ring(spec.args[0], lim);
            const std::size_t total = detail::checked_pow(
                base->order(), static_cast<std::size_t>(spec.a * spec.a), lim.max_order, "Mat");
            return std::make_shared<FiniteRing>(spec,
                                                std::make_unique<ops::MatOps>(spec.a, base, total));
        }
        case Kind::Prod: {
            if (spec.args.empty()) throw SpecError("Prod requires at least one factor");
            std::vector<RingPtr> factors;
            std::size_t total = 1;
            for (const auto& a : spec.args) {
                factors.push_back(build_ring(a, lim));
                if (total > lim.max_order / factors.back()->order())
                    throw SpecError("Prod: order cap exceeded");
                total *= factors.back()->order();
            }
            return std::make_shared<FiniteRing>(
                spec, std::make_unique<ops::ProdOps>(std::move(factors), total));
        }
        case Kind::Table: return detail::build_table_ring(spec, lim);
    }
    throw std::logic_error("unreachable ring kind");
}

inline RingPtr build_ring(const std::string& spec_string, const BuildLimits& lim = {}) {
    return build_ring(parse_ring_spec(spec_string), lim);
}

}  // namespace ringext
