#include "defring/groups.hpp"

#include "defring/errors.hpp"
#include "defring/galois_ring.hpp"

#include <deque>
#include <random>
#include <sstream>

namespace defring {

namespace {

std::int64_t md(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

IntMat int_identity(int r)
{
    IntMat I(static_cast<std::size_t>(r) * r, 0);
    for (int i = 0; i < r; ++i) I[i * r + i] = 1;
    return I;
}

IntMat int_mul(const IntMat& a, const IntMat& b, int r, std::int64_t N)
{
    IntMat c(static_cast<std::size_t>(r) * r, 0);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const std::int64_t e = a[i * r + k];
            if (e == 0) continue;
            for (int j = 0; j < r; ++j) c[i * r + j] = (c[i * r + j] + e * b[k * r + j]) % N;
        }
    return c;
}

IntMat int_pow(IntMat a, std::int64_t e, int r, std::int64_t N)
{
    IntMat res = int_identity(r);
    for (; e > 0; e >>= 1) {
        if (e & 1) res = int_mul(res, a, r, N);
        a = int_mul(a, a, r, N);
    }
    return res;
}

}  // namespace

std::int64_t multiplicative_order(std::int64_t u, std::int64_t modulus)
{
    if (modulus == 1) return 1;
    u = md(u, modulus);
    if (gcd64(u, modulus) != 1) return 0;
    std::int64_t x = u, k = 1;
    while (x != 1) {
        x = x * u % modulus;
        ++k;
    }
    return k;
}

MetacyclicGroup::MetacyclicGroup(int ell, int q, std::int64_t u) : ell_(ell), q_(q)
{
    if (ell < 2 || q < 2) throw BadAction("need ell > 1 and q > 1");
    u_ = md(u, ell);
    if (gcd64(u_, ell) != 1) throw BadAction("u must be a unit mod ell");
    if (multiplicative_order(u_, ell) != q)
        throw BadAction("u has multiplicative order " + std::to_string(multiplicative_order(u_, ell)) +
                        " mod ell, expected q");
    upow_.resize(q);
    upow_[0] = 1;
    for (int s = 1; s < q; ++s) upow_[s] = upow_[s - 1] * u_ % ell;
    // Generator sanity: tau has order ell, sigma order q, conjugation relation.
    int t = 0;
    for (int i = 0; i < ell; ++i) t = mul(t, tau());
    int s = 0;
    for (int i = 0; i < q; ++i) s = mul(s, sigma());
    const int conj = mul(mul(sigma(), tau()), inverse(sigma()));
    if (t != 0 || s != 0 || conj != element(u_, 0)) throw BadAction("metacyclic relations fail");
}

int MetacyclicGroup::element(std::int64_t c, std::int64_t s) const
{
    return static_cast<int>(md(c, ell_) + ell_ * md(s, q_));
}

int MetacyclicGroup::mul(int x, int y) const
{
    const int c1 = x % ell_, s1 = x / ell_, c2 = y % ell_, s2 = y / ell_;
    const int c = static_cast<int>((c1 + upow_[s1] * c2) % ell_);
    const int s = (s1 + s2) % q_;
    return c + ell_ * s;
}

int MetacyclicGroup::inverse(int x) const
{
    const int c = x % ell_, s = x / ell_;
    const int sinv = (q_ - s) % q_;
    return element(-upow_[sinv] * c, sinv);
}

std::int64_t MetacyclicGroup::nu(std::int64_t s) const
{
    return upow_[md(s, q_)];
}

std::vector<std::int64_t> MetacyclicGroup::H() const
{
    return upow_;
}

std::string MetacyclicGroup::describe(int x) const
{
    return "tau^" + std::to_string(c_of(x)) + " sigma^" + std::to_string(s_of(x));
}

ExtensionGroup::ExtensionGroup(std::shared_ptr<const MetacyclicGroup> base, int p, int n, int rank,
                               IntMat tau_action, IntMat sigma_action)
    : base_(std::move(base)), p_(p), n_(n), rank_(rank)
{
    if (!is_prime(p) || n < 1 || rank < 0) throw RelationViolation("bad kernel shape");
    pn_ = ipow(p, n);
    std::int64_t ko = 1;
    for (int i = 0; i < rank; ++i) {
        ko *= pn_;
        if (ko * base_->order() > (std::int64_t{1} << 30)) throw TooLarge("extension group too large");
    }
    korder_ = static_cast<int>(ko);
    const std::size_t sz = static_cast<std::size_t>(rank) * rank;
    if (tau_action.size() != sz || sigma_action.size() != sz) throw RelationViolation("action matrix shape");
    for (auto& e : tau_action) e = md(e, pn_);
    for (auto& e : sigma_action) e = md(e, pn_);
    const IntMat I = int_identity(rank);
    const int ell = base_->ell(), q = base_->q();
    if (int_pow(tau_action, ell, rank, pn_) != I) throw RelationViolation("delta(tau)^ell != 1");
    if (int_pow(sigma_action, q, rank, pn_) != I) throw RelationViolation("delta(sigma)^q != 1");
    if (int_mul(sigma_action, tau_action, rank, pn_) !=
        int_mul(int_pow(tau_action, base_->u(), rank, pn_), sigma_action, rank, pn_))
        throw RelationViolation("delta(sigma) delta(tau) delta(sigma)^-1 != delta(tau)^u");
    actions_.resize(base_->order());
    for (int g = 0; g < base_->order(); ++g)
        actions_[g] = int_mul(int_pow(tau_action, base_->c_of(g), rank, pn_),
                              int_pow(sigma_action, base_->s_of(g), rank, pn_), rank, pn_);
}

std::vector<std::int64_t> ExtensionGroup::decode(std::int64_t vcode) const
{
    std::vector<std::int64_t> v(rank_);
    for (int i = 0; i < rank_; ++i) {
        v[i] = vcode % pn_;
        vcode /= pn_;
    }
    return v;
}

std::int64_t ExtensionGroup::encode(const std::vector<std::int64_t>& v) const
{
    std::int64_t code = 0;
    for (int i = rank_ - 1; i >= 0; --i) code = code * pn_ + md(v[i], pn_);
    return code;
}

std::vector<std::int64_t> ExtensionGroup::act(int g, const std::vector<std::int64_t>& v) const
{
    const IntMat& A = actions_[g];
    std::vector<std::int64_t> out(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
        std::int64_t acc = 0;
        for (int j = 0; j < rank_; ++j) acc = (acc + A[i * rank_ + j] * v[j]) % pn_;
        out[i] = acc;
    }
    return out;
}

int ExtensionGroup::mul(int x, int y) const
{
    const int g1 = g_of(x), g2 = g_of(y);
    std::int64_t code = 0, place = 1;
    std::int64_t c1 = vcode_of(x);
    const std::vector<std::int64_t> v2 = decode(vcode_of(y));
    const IntMat& A = actions_[g1];
    for (int i = 0; i < rank_; ++i) {
        std::int64_t acc = c1 % pn_;
        c1 /= pn_;
        for (int j = 0; j < rank_; ++j) acc += A[i * rank_ + j] * v2[j];
        code += (acc % pn_) * place;
        place *= pn_;
    }
    return element(code, base_->mul(g1, g2));
}

int ExtensionGroup::inverse(int x) const
{
    const int ginv = base_->inverse(g_of(x));
    std::vector<std::int64_t> w = act(ginv, decode(vcode_of(x)));
    for (auto& e : w) e = md(-e, pn_);
    return element(encode(w), ginv);
}

std::vector<int> ExtensionGroup::generators() const
{
    std::vector<int> gens;
    for (int i = 0; i < rank_; ++i) {
        std::vector<std::int64_t> e(rank_, 0);
        e[i] = 1;
        gens.push_back(element(encode(e), 0));
    }
    gens.push_back(element(0, base_->tau()));
    gens.push_back(element(0, base_->sigma()));
    return gens;
}

std::string ExtensionGroup::describe(int x) const
{
    std::ostringstream os;
    os << '(';
    const auto v = decode(vcode_of(x));
    for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << v[i];
    os << "; " << base_->describe(g_of(x)) << ')';
    return os.str();
}

CayleyTree cayley_tree(const FiniteGroup& G, const std::vector<int>& gens)
{
    CayleyTree t;
    t.gens = gens;
    const int n = G.order();
    t.parent.assign(n, -1);
    t.via.assign(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<int> queue{G.identity()};
    seen[G.identity()] = 1;
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        t.order.push_back(x);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const int y = G.mul(x, gens[k]);
            if (seen[y]) continue;
            seen[y] = 1;
            t.parent[y] = x;
            t.via[y] = static_cast<int>(k);
            queue.push_back(y);
        }
    }
    if (static_cast<int>(t.order.size()) != n)
        throw NotGenerating("generators reach " + std::to_string(t.order.size()) + " of " + std::to_string(n) +
                            " elements");
    return t;
}

GroupReport group_checks(const FiniteGroup& G, std::uint64_t seed)
{
    GroupReport rep;
    const int n = G.order();
    rep.order = n;
    const auto gens = G.generators();
    auto assoc = [&](int x, int y, int z) { return G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)); };
    if (n <= 200) {
        rep.associativity_exhaustive = true;
        const std::int64_t total = std::int64_t{n} * n * n;
        const std::int64_t bad = first_failure(total, [&](std::int64_t i) {
            return !assoc(static_cast<int>(i / (std::int64_t{n} * n)), static_cast<int>((i / n) % n),
                          static_cast<int>(i % n));
        });
        rep.triples_checked = total;
        rep.associative = bad == total;
    } else {
        for (int x : gens)
            for (int y : gens)
                for (int z : gens) {
                    rep.associative = rep.associative && assoc(x, y, z);
                    ++rep.triples_checked;
                }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> dist(0, n - 1);
        for (int i = 0; i < 100000; ++i) {
            const int x = dist(rng), y = dist(rng), z = dist(rng);
            rep.associative = rep.associative && assoc(x, y, z);
            ++rep.triples_checked;
        }
    }
    if (!rep.associative) rep.failures.push_back("associativity");

    int identities = 0;
    for (int x = 0; x < n; ++x) {
        const int xi = G.inverse(x);
        if (G.mul(x, xi) != 0 || G.mul(xi, x) != 0) rep.inverses_ok = false;
        bool is_id = true;
        for (int g : gens) is_id = is_id && G.mul(x, g) == g && G.mul(g, x) == g;
        identities += is_id;
    }
    rep.identity_unique = identities == 1 && G.mul(0, 0) == 0;
    if (!rep.inverses_ok) rep.failures.push_back("inverses");
    if (!rep.identity_unique) rep.failures.push_back("identity");

    for (int x = 0; x < n; ++x) {
        int k = 1;
        for (int y = x; y != 0; y = G.mul(y, x)) ++k;
        rep.element_orders[k]++;
    }
    std::vector<char> central(n, 1);
    for_each_index(n, [&](std::int64_t i) {
        const int x = static_cast<int>(i);
        for (int y = 0; y < n && central[x]; ++y)
            if (G.mul(x, y) != G.mul(y, x)) central[x] = 0;
    });
    for (char c : central) rep.center_size += c;
    rep.abelian = rep.center_size == n;
    try {
        (void)cayley_tree(G, gens);
    } catch (const NotGenerating&) {
        rep.failures.push_back("generators");
    }
    return rep;
}

ProjectionReport check_projection(const ExtensionGroup& Gamma)
{
    ProjectionReport rep;
    const int n = Gamma.order();
    const auto& G = Gamma.base();
    std::vector<char> hit(G.order(), 0);
    for (int x = 0; x < n; ++x) {
        hit[Gamma.g_of(x)] = 1;
        rep.kernel_size += Gamma.g_of(x) == 0;
    }
    for (char h : hit) rep.surjective = rep.surjective && h;
    auto fails = [&](std::int64_t i) {
        const int x = static_cast<int>(i / n), y = static_cast<int>(i % n);
        return Gamma.g_of(Gamma.mul(x, y)) != G.mul(Gamma.g_of(x), Gamma.g_of(y));
    };
    if (n <= 1500) {
        rep.exhaustive = true;
        const std::int64_t total = std::int64_t{n} * n;
        rep.homomorphism = first_failure(total, fails) == total;
    } else {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 100000 && rep.homomorphism; ++i)
            rep.homomorphism = !fails(static_cast<std::int64_t>(rng() % (std::uint64_t(n) * n)));
    }
    return rep;
}

}  // namespace defring
