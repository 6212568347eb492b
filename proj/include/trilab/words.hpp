#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "trilab/rng.hpp"

namespace trilab {

/// A letter of the alphabet S u S^-1: generator index with a sign.
struct SignedGenerator {
    int index;  // in [1, n]
    int sign;   // +1 or -1
    friend bool operator==(const SignedGenerator&, const SignedGenerator&) = default;
};

inline SignedGenerator inverse(SignedGenerator l) { return {l.index, -l.sign}; }

/// Letter order used everywhere (enumeration, sampling, word packing):
/// rank(s_i) = 2(i-1), rank(s_i^-1) = 2(i-1)+1.
inline int letter_rank(SignedGenerator l) { return 2 * (l.index - 1) + (l.sign < 0 ? 1 : 0); }
inline SignedGenerator letter_from_rank(int rank) {
    return {rank / 2 + 1, (rank % 2 == 0) ? +1 : -1};
}

/// True iff the triple has no adjacent inverse pair, including wrap-around.
inline bool is_cyclically_reduced(SignedGenerator a, SignedGenerator b, SignedGenerator c) {
    return b != inverse(a) && c != inverse(b) && a != inverse(c);
}

/// A cyclically reduced length-3 word. Identity is positional: abc and bca
/// are distinct words.
struct Word3 {
    std::array<SignedGenerator, 3> letters;
    friend bool operator==(const Word3&, const Word3&) = default;
};

inline bool is_cyclically_reduced(const Word3& w) {
    return is_cyclically_reduced(w.letters[0], w.letters[1], w.letters[2]);
}

/// Formal inverse (c^-1 b^-1 a^-1); cyclically reduced whenever the input is.
inline Word3 word_inverse(const Word3& w) {
    return {{inverse(w.letters[2]), inverse(w.letters[1]), inverse(w.letters[0])}};
}

/// Injective 64-bit code (21 bits per letter rank); used for hashing and
/// membership sets. Valid for n <= 2^20.
std::uint64_t pack_word(const Word3& w);

/// A presentation <S | R>: generator count plus a duplicate-free relator
/// list kept in insertion order.
struct Presentation {
    int n = 0;
    std::vector<Word3> relators;
    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Outcome of m independent uniform draws from W_3 (with replacement).
struct SampleOutcome {
    std::vector<Word3> relators;
    bool all_distinct = true;
};

/// |W_3| = 8n^3 - 12n^2 + 6n (inclusion-exclusion over the three adjacent
/// inverse-pair positions). Validated against enumerate_w3 in the tests.
std::int64_t count_w3(int n);

/// All cyclically reduced triples in lexicographic order of letter ranks.
/// Intended for small n; the list has count_w3(n) ~ 8n^3 entries.
std::vector<Word3> enumerate_w3(int n);

/// One uniform word from W_3 by rejection from uniform letter triples.
Word3 sample_uniform_word(int n, SplitMix64& rng);

/// Binomial model: every word of W_3 included independently with
/// probability p. Implemented without materializing W_3: |R| is drawn from
/// Binomial(count_w3(n), p), then that many distinct words are drawn by
/// uniform rejection against a membership set. Deterministic in (n,p,seed).
Presentation sample_binomial(int n, double p, std::uint64_t seed);

/// Uniform model: m independent uniform draws (with replacement);
/// all_distinct reports whether the m draws were pairwise distinct.
SampleOutcome sample_uniform_m(int n, int m, std::uint64_t seed);

/// Deduplicated relator set of a SampleOutcome (first occurrence kept),
/// as a Presentation over n generators.
Presentation outcome_as_presentation(int n, const SampleOutcome& outcome);

/// Relators supported on the index subset: all three letter indices in A.
std::vector<Word3> restrict_relators(const Presentation& pres, const std::vector<int>& subset);

/// 1 - n + |R|.
std::int64_t euler_characteristic(const Presentation& pres);

/// Smallest generator index untouched by every relator (neither s_i nor
/// s_i^-1 occurs), or nullopt if every generator is touched.
std::optional<int> find_surviving_generator(const Presentation& pres);

/// Validates that subset entries lie in [1, n]; returns a membership mask
/// of size n+1. Duplicate entries are tolerated.
std::vector<char> subset_mask(int n, const std::vector<int>& subset);

}  // namespace trilab
