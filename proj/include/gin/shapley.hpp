#pragma once

// Coalitional games over bitmask coalitions and the Shapley solvers:
// exact subset enumeration, permutation and subset Monte Carlo, stratified
// sampling over coalition sizes, and SVARM-style signed running means.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gin/rng.hpp"

namespace gin {

inline constexpr int kExactShapleyLimit = 20;

class CoalitionalGame {
public:
    CoalitionalGame(std::vector<std::string> players, std::function<double(std::uint64_t)> payoff)
        : players_(std::move(players)), payoff_(std::move(payoff)) {
        if (players_.empty()) throw std::invalid_argument("CoalitionalGame: no players");
        if (players_.size() > 63) throw std::length_error("CoalitionalGame: too many players");
    }

    int n() const { return static_cast<int>(players_.size()); }
    const std::vector<std::string>& players() const { return players_; }
    std::uint64_t full_mask() const { return (n() == 64) ? ~0ULL : ((1ULL << n()) - 1ULL); }

    /// Memoized payoff; the memo freezes stochastic payoffs per coalition.
    double value(std::uint64_t mask) const {
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;
        const double v = payoff_(mask);
        memo_.emplace(mask, v);
        ++eval_count_;
        return v;
    }

    std::size_t eval_count() const { return eval_count_; }
    void reset_eval_count() { eval_count_ = 0; }

private:
    std::vector<std::string> players_;
    std::function<double(std::uint64_t)> payoff_;
    mutable std::unordered_map<std::uint64_t, double> memo_;
    mutable std::size_t eval_count_ = 0;
};

struct ShapleyResult {
    std::map<std::string, double> values;
    std::string method;
    std::size_t samples_used = 0;
    std::size_t payoff_evals = 0;

    double at(const std::string& player) const { return values.at(player); }

    double sum() const {
        double s = 0.0;
        for (auto& [p, v] : values) s += v;
        return s;
    }
};

namespace detail {

inline std::vector<long double> factorial_table(int n) {
    std::vector<long double> f(n + 1, 1.0L);
    for (int i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
    return f;
}

inline std::vector<std::vector<double>> binomial_table(int n) {
    std::vector<std::vector<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1.0);
        for (int k = 1; k < i; ++k) c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
    }
    return c;
}

inline ShapleyResult make_result(const CoalitionalGame& game, const std::vector<double>& phi,
                                 std::string method, std::size_t samples) {
    ShapleyResult res;
    for (int i = 0; i < game.n(); ++i) res.values[game.players()[i]] = phi[i];
    res.method = std::move(method);
    res.samples_used = samples;
    res.payoff_evals = game.eval_count();
    return res;
}

/// Uniform random subset of the bits in `pool` with exactly `k` elements.
inline std::uint64_t random_subset_of_size(std::uint64_t pool, int k, Rng& rng) {
    std::vector<int> bits;
    for (int b = 0; b < 64; ++b)
        if (pool & (1ULL << b)) bits.push_back(b);
    // partial Fisher-Yates
    for (int i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(bits.size() - i);
        std::swap(bits[i], bits[j]);
    }
    std::uint64_t mask = 0;
    for (int i = 0; i < k; ++i) mask |= 1ULL << bits[i];
    return mask;
}

}  // namespace detail

/// Builds a game from an explicit coalition table. Coalition keys are the
/// sorted player ids concatenated (comma-joined when any id has more than
/// one character); every one of the 2^n coalitions must be present.
inline std::string coalition_key(const std::vector<std::string>& players, std::uint64_t mask) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < players.size(); ++i)
        if (mask & (1ULL << i)) ids.push_back(players[i]);
    std::sort(ids.begin(), ids.end());
    bool singles = true;
    for (auto& p : players) singles = singles && p.size() == 1;
    std::string key;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0 && !singles) key += ",";
        key += ids[i];
    }
    return key;
}

inline CoalitionalGame game_from_table(std::vector<std::string> players,
                                       const std::map<std::string, double>& table) {
    if (players.size() > 20) throw std::length_error("game_from_table: at most 20 players");
    std::sort(players.begin(), players.end());
    const std::uint64_t full = (1ULL << players.size()) - 1ULL;
    auto payoffs = std::make_shared<std::vector<double>>(full + 1, 0.0);
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
        const std::string key = coalition_key(players, mask);
        auto it = table.find(key);
        if (it == table.end())
            throw std::invalid_argument("game_from_table: missing coalition \"" + key + "\"");
        (*payoffs)[mask] = it->second;
    }
    return CoalitionalGame(players, [payoffs](std::uint64_t mask) { return (*payoffs)[mask]; });
}

inline CoalitionalGame game_from_json(const nlohmann::json& j) {
    std::vector<std::string> players = j.at("players").get<std::vector<std::string>>();
    std::map<std::string, double> table;
    for (auto& [k, v] : j.at("payoffs").items()) table[k] = v.get<double>();
    return game_from_table(std::move(players), table);
}

/// Exact Shapley values via Eq-style subset enumeration, organized as the
/// mean over coalition sizes of the mean marginal contribution per size.
inline ShapleyResult shapley_exact(const CoalitionalGame& game) {
    const int n = game.n();
    if (n > kExactShapleyLimit) throw std::length_error("shapley_exact: too many players");
    const auto binoms = detail::binomial_table(n);
    const std::uint64_t full = game.full_mask();
    std::vector<double> phi(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t others = full & ~(1ULL << i);
        std::vector<long double> acc(n, 0.0L);
        // Enumerate submasks of `others` (including the empty set).
        std::uint64_t sub = others;
        for (;;) {
            const int s = __builtin_popcountll(sub);
            acc[s] += static_cast<long double>(game.value(sub | (1ULL << i))) -
                      static_cast<long double>(game.value(sub));
            if (sub == 0) break;
            sub = (sub - 1) & others;
        }
        long double total = 0.0L;
        for (int s = 0; s < n; ++s) total += acc[s] / static_cast<long double>(binoms[n - 1][s]);
        phi[i] = static_cast<double>(total / n);
    }
    return detail::make_result(game, phi, "exact", 1ULL << n);
}

/// Permutation-based Monte Carlo: mean marginal contribution over r random
/// permutations, each walked as a prefix chain (n+1 payoff lookups per
/// permutation covering all players). `exhaustive` iterates all n!
/// permutations instead and reproduces the exact values.
inline ShapleyResult shapley_permutation_mc(const CoalitionalGame& game, std::size_t r, Rng& rng,
                                            bool exhaustive = false) {
    if (r < 1 && !exhaustive) throw std::invalid_argument("shapley_permutation_mc: r must be >= 1");
    const int n = game.n();
    std::vector<double> phi(n, 0.0);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::size_t count = 0;

    auto process = [&](const std::vector<int>& p) {
        std::uint64_t mask = 0;
        double prev = game.value(0);
        for (int pos = 0; pos < n; ++pos) {
            mask |= 1ULL << p[pos];
            const double cur = game.value(mask);
            phi[p[pos]] += cur - prev;
            prev = cur;
        }
        ++count;
    };

    if (exhaustive) {
        std::sort(perm.begin(), perm.end());
        do process(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        for (std::size_t t = 0; t < r; ++t) {
            rng.shuffle(perm);
            process(perm);
        }
    }
    for (auto& v : phi) v /= static_cast<double>(count);
    return detail::make_result(game, phi, exhaustive ? "perm-exhaustive" : "perm-mc", count);
}

/// Subset Monte Carlo: per player, R coalitions S drawn uniformly from the
/// power set of U \ {i}; the estimate is the w(S)-weighted mean marginal
/// with w(S) = |S|!(n-|S|-1)!. Exhausting the power set recovers the exact
/// subset formula because the weights then total n!.
inline ShapleyResult shapley_subset_mc(const CoalitionalGame& game, std::size_t R, Rng& rng,
                                       bool exhaustive = false) {
    if (R < 1 && !exhaustive) throw std::invalid_argument("shapley_subset_mc: R must be >= 1");
    const int n = game.n();
    const auto fact = detail::factorial_table(n);
    std::vector<double> phi(n, 0.0);
    std::size_t count = 0;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t others = game.full_mask() & ~(1ULL << i);
        long double num = 0.0L, den = 0.0L;
        auto accumulate = [&](std::uint64_t sub) {
            const int s = __builtin_popcountll(sub);
            const long double w = fact[s] * fact[n - s - 1];
            num += w * (static_cast<long double>(game.value(sub | (1ULL << i))) -
                        static_cast<long double>(game.value(sub)));
            den += w;
            ++count;
        };
        if (exhaustive) {
            std::uint64_t sub = others;
            for (;;) {
                accumulate(sub);
                if (sub == 0) break;
                sub = (sub - 1) & others;
            }
        } else {
            for (std::size_t t = 0; t < R; ++t) {
                // Uniform subset: each other player in with probability 1/2.
                std::uint64_t sub = 0;
                const std::uint64_t bitsrc = rng.next_u64();
                int drawn = 0;
                for (int b = 0; b < n; ++b) {
                    if (b == i) continue;
                    if (bitsrc & (1ULL << drawn)) sub |= 1ULL << b;
                    ++drawn;
                }
                accumulate(sub);
            }
        }
        phi[i] = den > 0.0L ? static_cast<double>(num / den) : 0.0;
    }
    return detail::make_result(game, phi, exhaustive ? "subset-exhaustive" : "subset-mc", count);
}

/// Stratified sampling over coalition sizes with the (k+1)^{2/3} allocation;
/// a stratum whose allocation covers its population is enumerated exactly,
/// so a large enough budget reproduces the exact values.
inline ShapleyResult shapley_stratified(const CoalitionalGame& game, std::size_t m, double /*delta*/,
                                        Rng& rng) {
    const int n = game.n();
    if (m < static_cast<std::size_t>(n)) throw std::invalid_argument("shapley_stratified: need m >= n");
    const auto binoms = detail::binomial_table(n);
    std::vector<double> phi(n, 0.0);
    std::size_t samples = 0;

    double weight_sum = 0.0;
    for (int k = 0; k < n; ++k) weight_sum += std::pow(k + 1.0, 2.0 / 3.0);

    for (int i = 0; i < n; ++i) {
        const std::uint64_t others = game.full_mask() & ~(1ULL << i);
        std::vector<std::size_t> alloc(n, 0);
        std::size_t allocated = 0;
        for (int k = 0; k < n; ++k) {
            alloc[k] = static_cast<std::size_t>(m * std::pow(k + 1.0, 2.0 / 3.0) / weight_sum);
            allocated += alloc[k];
        }
        if (m > allocated) {
            // Remainder: +1 to uniformly chosen distinct strata.
            std::vector<int> strata(n);
            for (int k = 0; k < n; ++k) strata[k] = k;
            rng.shuffle(strata);
            for (std::size_t r = 0; r < m - allocated && r < static_cast<std::size_t>(n); ++r)
                ++alloc[strata[r]];
        }

        long double strata_sum = 0.0L;
        for (int k = 0; k < n; ++k) {
            const double population = binoms[n - 1][k];
            long double mean_k = 0.0L;
            if (alloc[k] == 0) {
                mean_k = 0.0L;  // empty stratum contributes nothing
            } else if (static_cast<double>(alloc[k]) >= population) {
                // Saturated: enumerate the stratum exactly.
                std::uint64_t sub = others;
                long double acc = 0.0L;
                std::size_t cnt = 0;
                for (;;) {
                    if (__builtin_popcountll(sub) == k) {
                        acc += static_cast<long double>(game.value(sub | (1ULL << i))) -
                               static_cast<long double>(game.value(sub));
                        ++cnt;
                        ++samples;
                    }
                    if (sub == 0) break;
                    sub = (sub - 1) & others;
                }
                mean_k = acc / static_cast<long double>(cnt);
            } else {
                long double acc = 0.0L;
                for (std::size_t t = 0; t < alloc[k]; ++t) {
                    const std::uint64_t sub = detail::random_subset_of_size(others, k, rng);
                    acc += static_cast<long double>(game.value(sub | (1ULL << i))) -
                           static_cast<long double>(game.value(sub));
                    ++samples;
                }
                mean_k = acc / static_cast<long double>(alloc[k]);
            }
            strata_sum += mean_k;
        }
        phi[i] = static_cast<double>(strata_sum / n);
    }
    return detail::make_result(game, phi, "stratified", samples);
}

/// Coalition sampling plan for the signed running-mean solver. The default
/// conditions coalition sizes so running means stay unbiased: positive
/// draws use P(s) proportional to 1/s over sizes 1..n, negative draws
/// P(s) proportional to 1/(n-s) over sizes 0..n-1, warm-up draws uniform
/// sizes over subsets avoiding the focal player.
struct SvarmStrategy {
    std::function<std::uint64_t(Rng&, int, int)> warmup;  // (rng, n, player) -> mask w/o player
    std::function<std::uint64_t(Rng&, int)> positive;     // non-empty mask
    std::function<std::uint64_t(Rng&, int)> negative;     // proper-subset mask

    static SvarmStrategy harmonic() {
        SvarmStrategy s;
        s.warmup = [](Rng& rng, int n, int player) {
            const std::uint64_t pool = ((n == 64 ? ~0ULL : (1ULL << n) - 1ULL)) & ~(1ULL << player);
            const int size = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            return detail::random_subset_of_size(pool, size, rng);
        };
        s.positive = [](Rng& rng, int n) {
            std::vector<double> w(n);
            double total = 0.0;
            for (int sz = 1; sz <= n; ++sz) total += (w[sz - 1] = 1.0 / sz);
            double u = rng.uniform() * total;
            int size = n;
            for (int sz = 1; sz <= n; ++sz) {
                if (u < w[sz - 1]) {
                    size = sz;
                    break;
                }
                u -= w[sz - 1];
            }
            const std::uint64_t pool = n == 64 ? ~0ULL : (1ULL << n) - 1ULL;
            return detail::random_subset_of_size(pool, size, rng);
        };
        s.negative = [](Rng& rng, int n) {
            std::vector<double> w(n);
            double total = 0.0;
            for (int sz = 0; sz < n; ++sz) total += (w[sz] = 1.0 / (n - sz));
            double u = rng.uniform() * total;
            int size = 0;
            for (int sz = 0; sz < n; ++sz) {
                if (u < w[sz]) {
                    size = sz;
                    break;
                }
                u -= w[sz];
            }
            const std::uint64_t pool = n == 64 ? ~0ULL : (1ULL << n) - 1ULL;
            return detail::random_subset_of_size(pool, size, rng);
        };
        return s;
    }

    /// Size drawn uniformly from the valid range; biased for general games,
    /// provided for comparison experiments.
    static SvarmStrategy uniform_sizes() {
        SvarmStrategy s = harmonic();
        s.positive = [](Rng& rng, int n) {
            const int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            const std::uint64_t pool = n == 64 ? ~0ULL : (1ULL << n) - 1ULL;
            return detail::random_subset_of_size(pool, size, rng);
        };
        s.negative = [](Rng& rng, int n) {
            const int size = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            const std::uint64_t pool = n == 64 ? ~0ULL : (1ULL << n) - 1ULL;
            return detail::random_subset_of_size(pool, size, rng);
        };
        return s;
    }

    /// Harmonic size weights realized through a deterministic smooth
    /// weighted round-robin instead of i.i.d. draws: the long-run size
    /// frequencies are identical (so per-player running means keep their
    /// uniform-over-sizes conditional structure), while the between-size
    /// sampling noise disappears. Coalitions given a size stay uniform.
    static SvarmStrategy stratified_harmonic() {
        SvarmStrategy s = harmonic();
        struct Schedule {
            int players = 0;
            std::vector<double> credit;
            std::vector<double> weight;
            void init(int n, bool positive_side) {
                players = n;
                credit.assign(n, 0.0);
                weight.assign(n, 0.0);
                double total = 0.0;
                for (int i = 0; i < n; ++i) {
                    const int size = positive_side ? i + 1 : i;
                    total += (weight[i] = 1.0 / (positive_side ? size : (n - size)));
                }
                for (auto& w : weight) w /= total;
            }
            int next() {
                for (std::size_t i = 0; i < credit.size(); ++i) credit[i] += weight[i];
                std::size_t best = 0;
                for (std::size_t i = 1; i < credit.size(); ++i)
                    if (credit[i] > credit[best]) best = i;
                credit[best] -= 1.0;
                return static_cast<int>(best);
            }
        };
        auto pos_state = std::make_shared<Schedule>();
        auto neg_state = std::make_shared<Schedule>();
        s.positive = [pos_state](Rng& rng, int n) {
            if (pos_state->players != n) pos_state->init(n, true);
            const int size = pos_state->next() + 1;
            const std::uint64_t pool = n == 64 ? ~0ULL : (1ULL << n) - 1ULL;
            return detail::random_subset_of_size(pool, size, rng);
        };
        s.negative = [neg_state](Rng& rng, int n) {
            if (neg_state->players != n) neg_state->init(n, false);
            const int size = neg_state->next();
            const std::uint64_t pool = n == 64 ? ~0ULL : (1ULL << n) - 1ULL;
            return detail::random_subset_of_size(pool, size, rng);
        };
        return s;
    }
};

/// Signed-decomposition approximation: phi = phi+ - phi- where phi+ and
/// phi- are running means of sampled coalition payoffs, updated for every
/// player inside (resp. outside) the sampled coalition. The warm-up seeds
/// each mean with one draw (2n evaluations), then each loop iteration
/// spends two evaluations while t + 2 <= T.
inline ShapleyResult shapley_svarm(const CoalitionalGame& game, std::size_t budget, Rng& rng,
                                   const SvarmStrategy& strategy = SvarmStrategy::stratified_harmonic()) {
    const int n = game.n();
    if (budget < 2 * static_cast<std::size_t>(n) + 2)
        throw std::invalid_argument("shapley_svarm: budget must be at least 2n + 2");
    std::vector<double> phi_pos(n, 0.0), phi_neg(n, 0.0);
    std::vector<std::size_t> c_pos(n, 1), c_neg(n, 1);

    for (int i = 0; i < n; ++i) {
        const std::uint64_t a_pos = strategy.warmup(rng, n, i);
        const std::uint64_t a_neg = strategy.warmup(rng, n, i);
        phi_pos[i] = game.value(a_pos | (1ULL << i));
        phi_neg[i] = game.value(a_neg);
    }
    std::size_t t = 2 * static_cast<std::size_t>(n);
    std::size_t samples = 2 * static_cast<std::size_t>(n);

    while (t + 2 <= budget) {
        const std::uint64_t a_pos = strategy.positive(rng, n);
        const std::uint64_t a_neg = strategy.negative(rng, n);
        const double v_pos = game.value(a_pos);
        const double v_neg = game.value(a_neg);
        for (int i = 0; i < n; ++i) {
            if (a_pos & (1ULL << i)) {
                phi_pos[i] = (static_cast<double>(c_pos[i]) * phi_pos[i] + v_pos) /
                             static_cast<double>(c_pos[i] + 1);
                ++c_pos[i];
            }
            if (!(a_neg & (1ULL << i))) {
                phi_neg[i] = (static_cast<double>(c_neg[i]) * phi_neg[i] + v_neg) /
                             static_cast<double>(c_neg[i] + 1);
                ++c_neg[i];
            }
        }
        t += 2;
        samples += 2;
    }

    std::vector<double> phi(n, 0.0);
    for (int i = 0; i < n; ++i) phi[i] = phi_pos[i] - phi_neg[i];
    return detail::make_result(game, phi, "svarm", samples);
}

struct MinBoundResult {
    double min_phi = 0.0;
    std::vector<double> witness_payoff;  // indexed by coalition mask
};

/// Exhaustive search over all {0,1}-valued payoffs with v(empty) = 0:
/// returns the minimum exact Shapley value over all games and players,
/// together with an achieving payoff table.
inline MinBoundResult verify_min_bound(int n) {
    if (n != 2 && n != 3) throw std::invalid_argument("verify_min_bound: n must be 2 or 3");
    const std::uint64_t n_coalitions = 1ULL << n;
    const std::uint64_t n_free = n_coalitions - 1;  // all except the empty set
    MinBoundResult best;
    best.min_phi = 1e300;
    std::vector<std::string> players;
    for (int i = 0; i < n; ++i) players.emplace_back(1, static_cast<char>('a' + i));
    for (std::uint64_t assignment = 0; assignment < (1ULL << n_free); ++assignment) {
        std::vector<double> table(n_coalitions, 0.0);
        for (std::uint64_t c = 1; c < n_coalitions; ++c)
            table[c] = (assignment >> (c - 1)) & 1ULL ? 1.0 : 0.0;
        CoalitionalGame game(players, [&table](std::uint64_t mask) { return table[mask]; });
        const ShapleyResult res = shapley_exact(game);
        for (auto& [p, v] : res.values) {
            if (v < best.min_phi) {
                best.min_phi = v;
                best.witness_payoff = table;
            }
        }
    }
    return best;
}

}  // namespace gin
