#include "hshadow/words.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <omp.h>

namespace hshadow {

Word Word::from_reduced(std::vector<Letter> letters) {
    Word w;
    w.l_ = std::move(letters);
    return w;
}

Word Word::inverse() const {
    std::vector<Letter> out(l_.rbegin(), l_.rend());
    for (auto& x : out) x = -x;
    return from_reduced(std::move(out));
}

namespace {

inline void push_reduced(std::vector<Letter>& stack, Letter l) {
    if (!stack.empty() && stack.back() == -l)
        stack.pop_back();
    else
        stack.push_back(l);
}

// appends `tail` (reduced) to `head` (reduced), cancelling across the seam
void join(std::vector<Letter>& head, const std::vector<Letter>& tail) {
    std::size_t j = 0;
    while (j < tail.size() && !head.empty() && head.back() == -tail[j]) {
        head.pop_back();
        ++j;
    }
    head.insert(head.end(), tail.begin() + static_cast<std::ptrdiff_t>(j), tail.end());
}

struct ImageTable {
    std::vector<std::vector<Letter>> pos, neg;

    explicit ImageTable(const Automorphism& f) {
        for (const auto& img : f.images()) {
            pos.push_back(img.letters());
            neg.push_back(img.inverse().letters());
        }
    }
    const std::vector<Letter>& of(Letter l) const {
        auto g = static_cast<std::size_t>(generator_of(l) - 1);
        return l > 0 ? pos[g] : neg[g];
    }
};

void expand_range(const ImageTable& t, const Letter* first, const Letter* last, std::vector<Letter>& out,
                  std::size_t budget) {
    for (const Letter* p = first; p != last; ++p) {
        const auto& img = t.of(*p);
        // only the first letters of an image can cancel against the stack
        std::size_t j = 0;
        while (j < img.size() && !out.empty() && out.back() == -img[j]) {
            out.pop_back();
            ++j;
        }
        out.insert(out.end(), img.begin() + static_cast<std::ptrdiff_t>(j), img.end());
        if (out.size() > budget) throw BudgetExceeded("word length exceeds budget of " + std::to_string(budget));
    }
}

void check_rank(const Automorphism& f, const Word& w) {
    for (Letter l : w.letters())
        if (static_cast<std::size_t>(generator_of(l)) > f.rank())
            throw ValidationError("word uses a generator beyond the automorphism's rank");
}

std::vector<Letter> step_serial(const ImageTable& t, const std::vector<Letter>& w, std::size_t budget) {
    std::vector<Letter> out;
    out.reserve(w.size() * 2);
    expand_range(t, w.data(), w.data() + w.size(), out, budget);
    return out;
}

std::vector<Letter> step_parallel(const ImageTable& t, const std::vector<Letter>& w, std::size_t budget) {
    constexpr std::size_t kSerialCutoff = 1 << 14;
    if (w.size() < kSerialCutoff) return step_serial(t, w, budget);
    const std::size_t chunks = static_cast<std::size_t>(omp_get_max_threads()) * 4;
    const std::size_t per = (w.size() + chunks - 1) / chunks;
    std::vector<std::vector<Letter>> parts(chunks);
    bool over = false;

#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t lo = std::min(w.size(), c * per), hi = std::min(w.size(), lo + per);
        try {
            expand_range(t, w.data() + lo, w.data() + hi, parts[c], budget);
        } catch (const BudgetExceeded&) {
#pragma omp atomic write
            over = true;
        }
    }
    if (over) throw BudgetExceeded("word length exceeds budget of " + std::to_string(budget));

    std::vector<Letter> out = std::move(parts[0]);
    for (std::size_t c = 1; c < chunks; ++c) {
        join(out, parts[c]);
        if (out.size() > budget) throw BudgetExceeded("word length exceeds budget of " + std::to_string(budget));
    }
    return out;
}

}  // namespace

Word reduce_word(std::span<const Letter> letters, std::size_t rank) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter l : letters) {
        if (l == 0 || static_cast<std::size_t>(generator_of(l)) > rank)
            throw ValidationError("letter " + std::to_string(l) + " outside rank " + std::to_string(rank));
        push_reduced(out, l);
    }
    return Word::from_reduced(std::move(out));
}

Word concat(const Word& u, const Word& v) {
    std::vector<Letter> out = u.letters();
    join(out, v.letters());
    return Word::from_reduced(std::move(out));
}

Word parse_word(std::string_view text, std::size_t rank, std::size_t line, std::size_t column0) {
    std::vector<Letter> raw;
    std::size_t i = 0;
    auto col = [&](std::size_t at) { return column0 + at; };
    bool saw_one = false;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == '1' && raw.empty()) {
            saw_one = true;
            ++i;
            continue;
        }
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')))
            throw ParseError(std::string("unexpected character '") + c + "' in word", line, col(i));
        if (saw_one) throw ParseError("identity word '1' cannot be followed by letters", line, col(i));
        bool inv = (c >= 'A' && c <= 'Z');
        int g = inv ? c - 'A' + 1 : c - 'a' + 1;
        if (static_cast<std::size_t>(g) > rank)
            throw ParseError(std::string("unknown generator '") + c + "' for rank " + std::to_string(rank), line, col(i));
        ++i;
        long exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            bool neg = false;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
            if (i < text.size() && text[i] == '{') ++i;
            if (i < text.size() && (text[i] == '-')) neg = !neg, ++i;
            std::size_t start = i;
            long e = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') e = e * 10 + (text[i++] - '0');
            if (i == start) throw ParseError("missing exponent", line, col(start));
            if (i < text.size() && text[i] == '}') ++i;
            exponent = neg ? -e : e;
        }
        Letter l = static_cast<Letter>(inv ? -g : g);
        if (exponent < 0) l = -l, exponent = -exponent;
        for (long k = 0; k < exponent; ++k) raw.push_back(l);
    }
    return reduce_word(raw, rank);
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    out.reserve(w.size());
    for (Letter l : w.letters()) {
        int g = generator_of(l);
        if (g > 26) {
            out += (l < 0 ? "x" + std::to_string(g) + "^-1" : "x" + std::to_string(g));
            continue;
        }
        out += static_cast<char>(l > 0 ? 'a' + g - 1 : 'A' + g - 1);
    }
    return out;
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t rank) {
    std::vector<std::int64_t> v(rank, 0);
    for (Letter l : w.letters()) v[static_cast<std::size_t>(generator_of(l) - 1)] += sign_of(l);
    return v;
}

Automorphism::Automorphism(std::vector<Word> images, std::optional<std::vector<Word>> inverse_images)
    : images_(std::move(images)), inverse_(std::move(inverse_images)) {
    for (const auto& img : images_) {
        if (img.empty()) throw ValidationError("automorphism sends a generator to the identity");
        for (Letter l : img.letters())
            if (static_cast<std::size_t>(generator_of(l)) > images_.size())
                throw ValidationError("image uses a generator beyond the rank");
    }
    if (!inverse_) return;
    if (inverse_->size() != images_.size()) throw ValidationError("inverse has a different rank");
    Automorphism f(images_), g(*inverse_);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        Word gen = Word::from_reduced({static_cast<Letter>(i + 1)});
        if (apply_automorphism_serial(f, apply_automorphism_serial(g, gen)) != gen ||
            apply_automorphism_serial(g, apply_automorphism_serial(f, gen)) != gen)
            throw ValidationError("declared inverse does not invert generator " + to_string(gen));
    }
}

Automorphism Automorphism::identity(std::size_t rank) {
    std::vector<Word> imgs;
    for (std::size_t i = 0; i < rank; ++i) imgs.push_back(Word::from_reduced({static_cast<Letter>(i + 1)}));
    return Automorphism(imgs, imgs);
}

Automorphism Automorphism::inverse() const {
    if (!inverse_) throw ValidationError("automorphism has no declared inverse");
    return Automorphism(*inverse_, images_);
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
    if (f.rank() != g.rank()) throw ValidationError("rank mismatch in composition");
    std::vector<Word> imgs;
    for (const auto& gi : g.images()) imgs.push_back(apply_automorphism_serial(f, gi));
    if (f.has_inverse() && g.has_inverse()) {
        Automorphism fi = f.inverse(), gi = g.inverse();
        std::vector<Word> inv;
        for (const auto& x : fi.images()) inv.push_back(apply_automorphism_serial(gi, x));
        return Automorphism(imgs, inv);
    }
    return Automorphism(imgs);
}

Word apply_automorphism(const Automorphism& f, const Word& w, unsigned k, std::size_t budget) {
    check_rank(f, w);
    ImageTable t(f);
    std::vector<Letter> cur = w.letters();
    for (unsigned i = 0; i < k; ++i) cur = step_parallel(t, cur, budget);
    return Word::from_reduced(std::move(cur));
}

Word apply_automorphism_serial(const Automorphism& f, const Word& w, unsigned k, std::size_t budget) {
    check_rank(f, w);
    ImageTable t(f);
    std::vector<Letter> cur = w.letters();
    for (unsigned i = 0; i < k; ++i) cur = step_serial(t, cur, budget);
    return Word::from_reduced(std::move(cur));
}

IntMatrix abelianization_matrix(const Automorphism& f) {
    const std::size_t n = f.rank();
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto v = exponent_sums(f.images()[j], n);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = v[i];
    }
    return m;
}

std::size_t cancellation_defect(const Automorphism& h, const Word& alpha, const Word& beta) {
    if (!alpha.empty() && !beta.empty() && alpha.letters().back() == -beta[0])
        throw ValidationError("product " + to_string(alpha) + "." + to_string(beta) + " is not reduced");
    Word ha = apply_automorphism_serial(h, alpha), hb = apply_automorphism_serial(h, beta);
    return ha.size() + hb.size() - concat(ha, hb).size();
}

std::vector<Word> enumerate_reduced_words(std::size_t rank, unsigned max_length) {
    std::vector<Word> out;
    std::vector<std::vector<Letter>> layer{{}};
    for (unsigned len = 1; len <= max_length; ++len) {
        std::vector<std::vector<Letter>> next;
        for (const auto& w : layer)
            for (int g = 1; g <= static_cast<int>(rank); ++g)
                for (Letter l : {static_cast<Letter>(g), static_cast<Letter>(-g)}) {
                    if (!w.empty() && w.back() == -l) continue;
                    auto x = w;
                    x.push_back(l);
                    next.push_back(std::move(x));
                }
        for (const auto& w : next) out.push_back(Word::from_reduced(w));
        layer = std::move(next);
    }
    return out;
}

namespace {

struct TaggedImage {
    std::vector<Letter> image;
    Letter first;  // first letter of the source word
};

std::size_t common_prefix(const std::vector<Letter>& a, const std::vector<Letter>& b) {
    std::size_t n = std::min(a.size(), b.size()), i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

std::size_t best_defect(std::vector<TaggedImage>& imgs) {
    std::sort(imgs.begin(), imgs.end(), [](const TaggedImage& x, const TaggedImage& y) { return x.image < y.image; });
    // the best partner with a different tag on either side is the nearest one
    std::size_t best = 0;
    const std::size_t n = imgs.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (imgs[j].first != imgs[i].first) {
                best = std::max(best, common_prefix(imgs[i].image, imgs[j].image));
                break;
            }
    }
    return 2 * best;
}

}  // namespace

std::size_t bcc_estimate(const Automorphism& h, unsigned depth) {
    auto words = enumerate_reduced_words(h.rank(), depth);
    std::vector<TaggedImage> imgs(words.size());
    ImageTable t(h);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < words.size(); ++i)
        imgs[i] = {step_serial(t, words[i].letters(), kDefaultLengthBudget), words[i][0]};
    return best_defect(imgs);
}

std::size_t bcc_estimate_serial(const Automorphism& h, unsigned depth) {
    auto words = enumerate_reduced_words(h.rank(), depth);
    std::vector<TaggedImage> imgs;
    imgs.reserve(words.size());
    for (const auto& w : words) imgs.push_back({apply_automorphism_serial(h, w).letters(), w[0]});
    return best_defect(imgs);
}

Word random_reduced_word(std::mt19937_64& rng, std::size_t rank, std::size_t length) {
    std::vector<Letter> out;
    out.reserve(length);
    std::uniform_int_distribution<int> first(0, static_cast<int>(2 * rank) - 1);
    std::uniform_int_distribution<int> rest(0, static_cast<int>(2 * rank) - 2);
    auto letter_at = [](int idx) { return static_cast<Letter>(idx % 2 == 0 ? idx / 2 + 1 : -(idx / 2 + 1)); };
    for (std::size_t i = 0; i < length; ++i) {
        if (out.empty()) {
            out.push_back(letter_at(first(rng)));
            continue;
        }
        // skip the index of the inverse of the previous letter
        Letter forbidden = -out.back();
        int fidx = forbidden > 0 ? 2 * (forbidden - 1) : 2 * (-forbidden - 1) + 1;
        int idx = rest(rng);
        if (idx >= fidx) ++idx;
        out.push_back(letter_at(idx));
    }
    return Word::from_reduced(std::move(out));
}

bool infinite_orbit_heuristic(const Automorphism& f, const Word& x, unsigned steps, std::size_t budget) {
    Word cur = x;
    std::size_t prev = cur.size();
    for (unsigned k = 1; k <= steps; ++k) {
        cur = apply_automorphism(f, cur, 1, budget);
        if (cur.size() <= prev) return false;
        prev = cur.size();
    }
    return true;
}

}  // namespace hshadow
