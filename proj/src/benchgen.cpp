#include "rex/benchgen.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rex {
namespace {

constexpr std::string_view kGap = "((?!\\n\\n)[\\s\\S])*?";  // between-words filler
constexpr std::string_view kLines = "(.+\\n)+?";             // one-or-more full lines

std::vector<std::string> resolve_words(const BenchSpec& spec) {
    std::vector<std::string> words;
    if (spec.words.empty()) {
        for (std::string_view w : kBenchWords) words.emplace_back(w);
    } else {
        words = spec.words;
    }
    if (spec.n < 1 || spec.n > 12 || spec.n > words.size()) {
        throw std::invalid_argument("word count out of range");
    }
    words.resize(spec.n);
    return words;
}

std::uint64_t factorial(unsigned n) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

template <typename Emit>
void each_permutation(unsigned n, Emit emit) {
    std::vector<unsigned> order(n);
    std::iota(order.begin(), order.end(), 0u);
    bool first = true;
    do {
        emit(order, first);
        first = false;
    } while (std::next_permutation(order.begin(), order.end()));
}

void emit_lookahead(std::ostream& out, const std::vector<std::string>& words) {
    auto alt = [&](const std::vector<unsigned>& order) {
        out << kGap;
        for (unsigned i : order) out << '(' << words[i] << ')' << kGap;
    };
    out << "\\n\\n";
    if (words.size() == 1) {
        alt({0});
    } else {
        out << '(';
        each_permutation(static_cast<unsigned>(words.size()),
                         [&](const std::vector<unsigned>& order, bool first) {
                             if (!first) out << '|';
                             alt(order);
                         });
        out << ')';
    }
    out << "\\n\\n";
}

void emit_loop(std::ostream& out, const std::vector<std::string>& words) {
    auto alt = [&](const std::vector<unsigned>& order) {
        out << kLines;
        for (unsigned i : order) out << "(.*" << words[i] << ".*\\n)" << kLines;
    };
    out << "\\n\\n(";
    each_permutation(static_cast<unsigned>(words.size()),
                     [&](const std::vector<unsigned>& order, bool first) {
                         if (!first) out << '|';
                         alt(order);
                     });
    out << ")\\n";
}

void emit_conjunction(std::ostream& out, const std::vector<std::string>& words) {
    out << "\\n\\n~([\\s\\S]*\\n\\n[\\s\\S]*)\\n";
    for (const std::string& w : words) out << "&[\\s\\S]*" << w << "[\\s\\S]*";
}

}  // namespace

void gen_pattern_to(std::ostream& out, const BenchSpec& spec) {
    std::vector<std::string> words = resolve_words(spec);
    switch (spec.style) {
        case BenchStyle::Lookahead: emit_lookahead(out, words); break;
        case BenchStyle::Loop: emit_loop(out, words); break;
        case BenchStyle::Conjunction: emit_conjunction(out, words); break;
    }
}

std::string gen_pattern(const BenchSpec& spec) {
    std::ostringstream out;
    gen_pattern_to(out, spec);
    return out.str();
}

std::uint64_t gen_pattern_length(const BenchSpec& spec) {
    std::vector<std::string> words = resolve_words(spec);
    const auto n = static_cast<std::uint64_t>(words.size());
    std::uint64_t total_word_len = 0;
    for (const std::string& w : words) total_word_len += w.size();
    switch (spec.style) {
        case BenchStyle::Lookahead: {
            std::uint64_t alt = kGap.size() * (n + 1) + total_word_len + 2 * n;
            if (n == 1) return 8 + alt;
            return 9 + factorial(static_cast<unsigned>(n)) * (alt + 1);
        }
        case BenchStyle::Loop: {
            std::uint64_t alt = kLines.size() * (n + 1) + total_word_len + 8 * n;
            return 7 + factorial(static_cast<unsigned>(n)) * (alt + 1);
        }
        case BenchStyle::Conjunction:
            return 27 + 15 * n + total_word_len;
    }
    return 0;
}

BenchStyle bench_style_from_name(std::string_view name) {
    if (name == "lookahead") return BenchStyle::Lookahead;
    if (name == "loop") return BenchStyle::Loop;
    if (name == "conjunction") return BenchStyle::Conjunction;
    throw std::invalid_argument("unknown pattern style: " + std::string(name));
}

}  // namespace rex
