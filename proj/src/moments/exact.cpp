#include "redlab/moments.hpp"

#include "redlab/error.hpp"
#include "redlab/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

namespace redlab::moments {

namespace {

using combinatorics::ChoiceFunction;
using combinatorics::Permutation;

constexpr std::size_t kMaxSweepOrder = 12;
using SmallPerm = std::array<std::uint8_t, kMaxSweepOrder>;

unsigned count_cycles(const SmallPerm& perm, unsigned p)
{
    std::uint32_t seen = 0;
    unsigned cycles = 0;
    for (unsigned i = 0; i < p; ++i) {
        if (seen & (1u << i)) {
            continue;
        }
        ++cycles;
        for (unsigned j = i; !(seen & (1u << j)); j = perm[j]) {
            seen |= 1u << j;
        }
    }
    return cycles;
}

// Dense accumulator indexed by (#alpha, #(gamma^{-1} alpha), k exponent).
class CoefficientTable {
public:
    explicit CoefficientTable(unsigned p) : p_(p), cells_((p + 1) * (p + 1) * (p + 2), 0) {}

    void add(unsigned a, unsigned b, unsigned e, std::int64_t v) { cells_[index(a, b, e)] += v; }

    void merge(const CoefficientTable& other)
    {
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            cells_[i] += other.cells_[i];
        }
    }

    std::vector<MomentTerm> terms() const
    {
        std::vector<MomentTerm> out;
        for (unsigned a = 0; a <= p_; ++a) {
            for (unsigned b = 0; b <= p_; ++b) {
                for (unsigned e = 0; e <= p_ + 1; ++e) {
                    if (auto v = cells_[index(a, b, e)]; v != 0) {
                        out.push_back({a, b, e, v});
                    }
                }
            }
        }
        return out;
    }

private:
    std::size_t index(unsigned a, unsigned b, unsigned e) const { return (a * (p_ + 1) + b) * (p_ + 2) + e; }

    unsigned p_;
    std::vector<std::int64_t> cells_;
};

MomentPolynomial build_polynomial(unsigned p, unsigned threads)
{
    const std::uint64_t total = combinatorics::factorial(p);
    const std::uint32_t masks = 1u << p;

    // Inverses of every P_f, indexed by mask (bit i set <=> f(i+1) = 2).
    std::vector<SmallPerm> choice_inverse(masks);
    for (std::uint32_t m = 0; m < masks; ++m) {
        const auto inv = build_choice_permutation(ChoiceFunction::from_mask(p, m)).inverse();
        for (unsigned i = 0; i < p; ++i) {
            choice_inverse[m][i] = static_cast<std::uint8_t>(inv.images0()[i]);
        }
    }
    SmallPerm gamma_inverse{};
    for (unsigned i = 0; i < p; ++i) {
        gamma_inverse[i] = static_cast<std::uint8_t>((i + 1) % p);
    }

    const unsigned workers = threads ? threads : worker_count();
    const std::size_t chunks = std::min<std::uint64_t>(total, std::uint64_t{workers} * 8);
    std::vector<CoefficientTable> partial(chunks, CoefficientTable(p));

    parallel_for(chunks, workers, [&](std::size_t chunk) {
        const std::uint64_t begin = total * chunk / chunks;
        const std::uint64_t end = total * (chunk + 1) / chunks;
        const auto start = combinatorics::unrank_permutation(p, begin);
        SmallPerm alpha{};
        for (unsigned i = 0; i < p; ++i) {
            alpha[i] = static_cast<std::uint8_t>(start.images0()[i]);
        }
        auto& table = partial[chunk];
        SmallPerm composed{};
        for (std::uint64_t r = begin; r < end; ++r) {
            const unsigned alpha_cycles = count_cycles(alpha, p);
            for (unsigned i = 0; i < p; ++i) {
                composed[i] = gamma_inverse[alpha[i]];
            }
            const unsigned n_exp = count_cycles(composed, p);
            for (std::uint32_t m = 0; m < masks; ++m) {
                const auto& pinv = choice_inverse[m];
                for (unsigned i = 0; i < p; ++i) {
                    composed[i] = pinv[alpha[i]];
                }
                const unsigned k_exp = count_cycles(composed, p) + (m == 0 ? 1 : 0);
                table.add(alpha_cycles, n_exp, k_exp, (std::popcount(m) & 1) ? -1 : 1);
            }
            std::next_permutation(alpha.begin(), alpha.begin() + p);
        }
    });

    CoefficientTable total_table(p);
    for (const auto& t : partial) {
        total_table.merge(t);
    }
    return MomentPolynomial(p, total_table.terms());
}

BigInt power(std::uint64_t base, unsigned e)
{
    BigInt out = 1;
    for (unsigned i = 0; i < e; ++i) {
        out *= base;
    }
    return out;
}

} // namespace

BigInt MomentPolynomial::evaluate(std::uint64_t n, std::uint64_t k, std::uint64_t s) const
{
    std::vector<BigInt> sp, np, kp;
    for (unsigned e = 0; e <= order_ + 1; ++e) {
        sp.push_back(power(s, e));
        np.push_back(power(n, e));
        kp.push_back(power(k, e));
    }
    BigInt sum = 0;
    for (const auto& t : terms_) {
        sum += t.coeff * sp[t.s_exp] * np[t.n_exp] * kp[t.k_exp];
    }
    return sum;
}

const MomentPolynomial& moment_polynomial(unsigned p, const MomentOptions& options)
{
    if (p == 0) {
        throw InvalidArgument("moment order must be at least 1");
    }
    if (p > options.max_order || p > kMaxSweepOrder) {
        throw CapExceeded("moment order " + std::to_string(p) + " exceeds the S_p enumeration cap of "
                          + std::to_string(std::min<std::size_t>(options.max_order, kMaxSweepOrder)));
    }
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<MomentPolynomial>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[p];
    if (!slot) {
        slot = std::make_unique<MomentPolynomial>(build_polynomial(p, options.threads));
    }
    return *slot;
}

void validate(const MomentQuery& q, unsigned max_order)
{
    if (q.n == 0 || q.k == 0 || q.s == 0 || q.p == 0) {
        throw InvalidArgument("moment query parameters must all be >= 1");
    }
    if (q.p > max_order) {
        throw CapExceeded("moment order " + std::to_string(q.p) + " exceeds the cap of " + std::to_string(max_order));
    }
}

ExactMoment exact_trace_moment(const MomentQuery& q, const MomentOptions& options)
{
    validate(q, options.max_order);
    return {q, moment_polynomial(q.p, options).evaluate(q.n, q.k, q.s)};
}

ExactMoment closed_form_moment(const MomentQuery& q)
{
    if (q.p > 2) {
        throw InvalidArgument("closed forms exist only for p <= 2");
    }
    validate(q, 2);
    const BigInt n = q.n, k = q.k, s = q.s;
    if (q.p == 1) {
        return {q, n * k * (k - 1) * s};
    }
    return {q, (k - 2) * ((k * s) * (k * s) * n + k * s * n * n) + n * k * s * s + (n * k) * (n * k) * s};
}

Regime parse_regime(const std::string& name)
{
    if (name == "balanced") {
        return Regime::balanced;
    }
    if (name == "unbalanced_first") {
        return Regime::unbalanced_first;
    }
    if (name == "unbalanced_second") {
        return Regime::unbalanced_second;
    }
    throw InvalidArgument("unknown regime '" + name + "'");
}

std::string to_string(Regime regime)
{
    switch (regime) {
    case Regime::balanced:
        return "balanced";
    case Regime::unbalanced_first:
        return "unbalanced_first";
    case Regime::unbalanced_second:
        return "unbalanced_second";
    }
    return "unknown";
}

double normalized_moment(const MomentQuery& q, Regime regime, const MomentOptions& options)
{
    using boost::multiprecision::cpp_rational;
    const auto exact = exact_trace_moment(q, options);
    const BigInt scale = regime == Regime::unbalanced_second ? BigInt(q.n) : BigInt(q.k) * q.s;
    BigInt denominator = BigInt(q.n) * q.k;
    for (unsigned i = 0; i < q.p; ++i) {
        denominator *= scale;
    }
    return cpp_rational(exact.value, denominator).convert_to<double>();
}

} // namespace redlab::moments
