#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rex {

// Generators for the three paragraph-search pattern families used in
// benchmarking: a lazy-lookahead form and a line-loop form that must
// enumerate every word permutation, and a conjunction form that adds
// one intersection term per word.
enum class BenchStyle : std::uint8_t { Lookahead, Loop, Conjunction };

inline constexpr std::array<std::string_view, 12> kBenchWords = {
    "King", "Paris", "English", "would",   "rise", "struck",
    "council", "march", "war",  "May", "Orleans", "work",
};

struct BenchSpec {
    BenchStyle style = BenchStyle::Conjunction;
    unsigned n = 1;  // number of words, 1..12
    std::vector<std::string> words;  // defaults to kBenchWords when empty
};

// Throws std::invalid_argument when the spec is out of range.
std::string gen_pattern(const BenchSpec& spec);

// Streaming variant; the permutation styles grow factorially, so large
// n should not be materialized.
void gen_pattern_to(std::ostream& out, const BenchSpec& spec);

// Length of gen_pattern(spec) computed arithmetically.
std::uint64_t gen_pattern_length(const BenchSpec& spec);

// "lookahead" | "loop" | "conjunction"; throws on anything else.
BenchStyle bench_style_from_name(std::string_view name);

}  // namespace rex
