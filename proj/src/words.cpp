#include "trilab/words.hpp"

#include <stdexcept>
#include <unordered_set>

namespace trilab {

namespace {

constexpr int kMaxGenerators = 1 << 20;

void check_n(int n) {
    if (n < 1) throw std::invalid_argument("generator count must be >= 1");
    if (n > kMaxGenerators) throw std::invalid_argument("generator count too large");
}

}  // namespace

std::uint64_t pack_word(const Word3& w) {
    const auto a = static_cast<std::uint64_t>(letter_rank(w.letters[0]));
    const auto b = static_cast<std::uint64_t>(letter_rank(w.letters[1]));
    const auto c = static_cast<std::uint64_t>(letter_rank(w.letters[2]));
    return (a << 42) | (b << 21) | c;
}

std::int64_t count_w3(int n) {
    check_n(n);
    const auto m = static_cast<std::int64_t>(n);
    return 8 * m * m * m - 12 * m * m + 6 * m;
}

std::vector<Word3> enumerate_w3(int n) {
    check_n(n);
    std::vector<Word3> words;
    words.reserve(static_cast<std::size_t>(count_w3(n)));
    const int letters = 2 * n;
    for (int ra = 0; ra < letters; ++ra)
        for (int rb = 0; rb < letters; ++rb)
            for (int rc = 0; rc < letters; ++rc) {
                Word3 w{{letter_from_rank(ra), letter_from_rank(rb), letter_from_rank(rc)}};
                if (is_cyclically_reduced(w)) words.push_back(w);
            }
    return words;
}

Word3 sample_uniform_word(int n, SplitMix64& rng) {
    const auto letters = static_cast<std::uint64_t>(2 * n);
    for (;;) {
        Word3 w{{letter_from_rank(static_cast<int>(rng.next_below(letters))),
                 letter_from_rank(static_cast<int>(rng.next_below(letters))),
                 letter_from_rank(static_cast<int>(rng.next_below(letters)))}};
        if (is_cyclically_reduced(w)) return w;
    }
}

Presentation sample_binomial(int n, double p, std::uint64_t seed) {
    check_n(n);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("inclusion probability must lie in [0, 1]");
    SplitMix64 rng(seed);
    const std::int64_t total = count_w3(n);
    const std::int64_t k = sample_binomial_count(total, p, rng);
    Presentation pres;
    pres.n = n;
    pres.relators.reserve(static_cast<std::size_t>(k));
    std::unordered_set<std::uint64_t> member;
    member.reserve(static_cast<std::size_t>(2 * k));
    while (static_cast<std::int64_t>(pres.relators.size()) < k) {
        Word3 w = sample_uniform_word(n, rng);
        if (member.insert(pack_word(w)).second) pres.relators.push_back(w);
    }
    return pres;
}

SampleOutcome sample_uniform_m(int n, int m, std::uint64_t seed) {
    check_n(n);
    if (m < 0) throw std::invalid_argument("draw count must be >= 0");
    SplitMix64 rng(seed);
    SampleOutcome out;
    out.relators.reserve(static_cast<std::size_t>(m));
    std::unordered_set<std::uint64_t> member;
    member.reserve(static_cast<std::size_t>(2 * m));
    for (int i = 0; i < m; ++i) {
        Word3 w = sample_uniform_word(n, rng);
        if (!member.insert(pack_word(w)).second) out.all_distinct = false;
        out.relators.push_back(w);
    }
    return out;
}

Presentation outcome_as_presentation(int n, const SampleOutcome& outcome) {
    check_n(n);
    Presentation pres;
    pres.n = n;
    std::unordered_set<std::uint64_t> member;
    for (const Word3& w : outcome.relators)
        if (member.insert(pack_word(w)).second) pres.relators.push_back(w);
    return pres;
}

std::vector<char> subset_mask(int n, const std::vector<int>& subset) {
    std::vector<char> mask(static_cast<std::size_t>(n) + 1, 0);
    for (int i : subset) {
        if (i < 1 || i > n) throw std::invalid_argument("subset index out of range");
        mask[static_cast<std::size_t>(i)] = 1;
    }
    return mask;
}

std::vector<Word3> restrict_relators(const Presentation& pres, const std::vector<int>& subset) {
    const std::vector<char> mask = subset_mask(pres.n, subset);
    std::vector<Word3> out;
    for (const Word3& w : pres.relators) {
        if (mask[static_cast<std::size_t>(w.letters[0].index)] &&
            mask[static_cast<std::size_t>(w.letters[1].index)] &&
            mask[static_cast<std::size_t>(w.letters[2].index)])
            out.push_back(w);
    }
    return out;
}

std::int64_t euler_characteristic(const Presentation& pres) {
    return 1 - static_cast<std::int64_t>(pres.n) + static_cast<std::int64_t>(pres.relators.size());
}

std::optional<int> find_surviving_generator(const Presentation& pres) {
    std::vector<char> touched(static_cast<std::size_t>(pres.n) + 1, 0);
    for (const Word3& w : pres.relators)
        for (const SignedGenerator& l : w.letters) touched[static_cast<std::size_t>(l.index)] = 1;
    for (int i = 1; i <= pres.n; ++i)
        if (!touched[static_cast<std::size_t>(i)]) return i;
    return std::nullopt;
}

}  // namespace trilab
