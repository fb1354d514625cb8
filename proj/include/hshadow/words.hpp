#pragma once

#include "hshadow/int_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hshadow {

/// Signed generator: +g is a_g, -g is a_g^-1, generators numbered from 1.
using Letter = std::int32_t;

inline int generator_of(Letter l) { return l < 0 ? -l : l; }
inline int sign_of(Letter l) { return l < 0 ? -1 : 1; }

/// Freely reduced word.
class Word {
public:
    Word() = default;
    /// Caller guarantees `letters` is already reduced.
    static Word from_reduced(std::vector<Letter> letters);

    const std::vector<Letter>& letters() const noexcept { return l_; }
    std::size_t size() const noexcept { return l_.size(); }
    bool empty() const noexcept { return l_.empty(); }
    Letter operator[](std::size_t i) const { return l_[i]; }

    Word inverse() const;

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> l_;
};

/// Free reduction. Throws ValidationError for a zero letter or a generator
/// outside 1..rank.
Word reduce_word(std::span<const Letter> letters, std::size_t rank);
/// reduce(u v).
Word concat(const Word& u, const Word& v);

/// Case notation: a..z are generators 1..26, uppercase are inverses. A
/// letter may carry an exponent ("b^3", "a^-1"). "1" or blank is the empty
/// word. Whitespace is ignored. Errors carry line/column (column counted from
/// `column0`).
Word parse_word(std::string_view text, std::size_t rank, std::size_t line = 1, std::size_t column0 = 1);
std::string to_string(const Word& w);

/// Exponent sums, length `rank`.
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t rank);

inline constexpr std::size_t kDefaultLengthBudget = 100'000'000;

class Automorphism {
public:
    Automorphism() = default;
    /// images[g-1] is the image of generator g. If inverse images are given
    /// they are checked: both compositions must be the identity.
    explicit Automorphism(std::vector<Word> images, std::optional<std::vector<Word>> inverse_images = std::nullopt);

    static Automorphism identity(std::size_t rank);

    std::size_t rank() const noexcept { return images_.size(); }
    const Word& image(int generator) const { return images_[static_cast<std::size_t>(generator - 1)]; }
    const std::vector<Word>& images() const noexcept { return images_; }
    bool has_inverse() const noexcept { return inverse_.has_value(); }
    /// Throws ValidationError when no inverse was declared.
    Automorphism inverse() const;

private:
    std::vector<Word> images_;
    std::optional<std::vector<Word>> inverse_;
};

/// f(g(x)).
Automorphism compose(const Automorphism& f, const Automorphism& g);

/// f^k(w). Chunks of w are expanded in parallel and joined at the seams.
/// Throws BudgetExceeded if an intermediate word is longer than `budget`.
Word apply_automorphism(const Automorphism& f, const Word& w, unsigned k = 1,
                        std::size_t budget = kDefaultLengthBudget);
/// Single-threaded version of the above; same result.
Word apply_automorphism_serial(const Automorphism& f, const Word& w, unsigned k = 1,
                               std::size_t budget = kDefaultLengthBudget);

/// Column j is the exponent-sum vector of f(a_j).
IntMatrix abelianization_matrix(const Automorphism& f);

/// |h(a)| + |h(b)| - |h(ab)|. Throws ValidationError if ab is not reduced.
std::size_t cancellation_defect(const Automorphism& h, const Word& alpha, const Word& beta);

/// Largest cancellation_defect over reduced a, b with |a|, |b| <= depth and
/// ab reduced. Computed from sorted images: the defect is twice the common
/// prefix of h(a^-1) and h(b), maximised over pairs with different first
/// letters.
std::size_t bcc_estimate(const Automorphism& h, unsigned depth);
std::size_t bcc_estimate_serial(const Automorphism& h, unsigned depth);

/// All reduced words with 1 <= length <= max_length, shortlex order.
std::vector<Word> enumerate_reduced_words(std::size_t rank, unsigned max_length);

/// Uniform random reduced word of the given length.
Word random_reduced_word(std::mt19937_64& rng, std::size_t rank, std::size_t length);

/// Heuristic only: |f^k(x)| strictly increasing for k = 1..steps.
bool infinite_orbit_heuristic(const Automorphism& f, const Word& x, unsigned steps = 10,
                              std::size_t budget = kDefaultLengthBudget);

}  // namespace hshadow
