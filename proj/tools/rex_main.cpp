#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rex/benchgen.hpp"
#include "rex/engine.hpp"
#include "rex/oracle.hpp"

namespace {

constexpr int kExitMatch = 0;
constexpr int kExitNoMatch = 1;
constexpr int kExitError = 2;

std::string slice_utf8(const rex::Subject& s, rex::MatchSpan m) {
    return rex::encode_utf8(std::u16string_view(s.chars).substr(m.start, m.end - m.start));
}

rex::MatchSpan to_bytes(const rex::Subject& s, rex::MatchSpan m) {
    if (s.byte_offsets.empty()) return m;
    return {s.byte_offsets[m.start], s.byte_offsets[m.end]};
}

bool oracle_agrees(const rex::Matcher& matcher, const rex::Subject& s, rex::MatchOptions opts) {
    const auto all = rex::oracle_all_matches(s, matcher.root(), {8});
    std::vector<rex::MatchSpan> expected;
    std::uint32_t cursor = 0;
    const auto len = static_cast<std::uint32_t>(s.size());
    while (cursor <= len) {
        std::optional<rex::MatchSpan> best;
        for (const rex::MatchSpan& m : all) {
            if (m.start < cursor) continue;
            if (!best || m.start < best->start || (m.start == best->start && m.end > best->end)) {
                best = m;
            }
        }
        if (!best) break;
        expected.push_back(*best);
        cursor = std::max(best->end, best->start + 1);
    }
    return matcher.find_all(s, opts) == expected;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rex - extended regular expression search (intersection, complement, lookarounds)"};
    std::string pattern;
    std::string input_path;
    bool mode_all = false, mode_count = false, mode_test = false;
    bool out_spans = false, out_json = false;
    bool no_skip = false, oracle_check = false, byte_offsets = false;
    bool dump_ast = false, dump_minterms = false;
    std::vector<std::string> gen_args;

    auto* opt_pattern = app.add_option("-e,--pattern", pattern, "Pattern in the extended syntax");
    auto* opt_input = app.add_option("input", input_path, "Input file; stdin when omitted or '-'");
    app.add_flag("--all", mode_all, "Report every non-overlapping match");
    app.add_flag("--count", mode_count, "Print the number of matches");
    app.add_flag("--test", mode_test, "No output; exit 0 iff there is a match");
    app.add_flag("--spans", out_spans, "Print matches as start:end:text");
    app.add_flag("--json", out_json, "Print matches as a JSON array");
    app.add_flag("--no-skip", no_skip, "Disable startset skipping");
    app.add_flag("--oracle-check", oracle_check, "Cross-validate against the brute-force oracle (small inputs)");
    app.add_flag("--byte-offsets", byte_offsets, "Report spans as byte offsets instead of code points");
    app.add_flag("--dump-ast", dump_ast, "Print the canonical form of the pattern");
    app.add_flag("--dump-minterms", dump_minterms, "Print the compressed alphabet of the pattern");
    app.add_option("--gen", gen_args, "Emit a benchmark pattern: <style> <n>")->expected(2);

    CLI11_PARSE(app, argc, argv);

    if (!gen_args.empty()) {
        try {
            rex::BenchSpec spec;
            spec.style = rex::bench_style_from_name(gen_args[0]);
            spec.n = static_cast<unsigned>(std::stoul(gen_args[1]));
            rex::gen_pattern_to(std::cout, spec);
            std::cout << '\n';
            return kExitMatch;
        } catch (const std::exception& e) {
            std::cerr << "rex: --gen: " << e.what() << '\n';
            return kExitError;
        }
    }

    if (mode_all + mode_count + mode_test > 1) {
        std::cerr << "rex: --all, --count and --test are mutually exclusive\n";
        return kExitError;
    }
    if (opt_pattern->count() == 0) {
        std::cerr << "rex: missing pattern (-e)\n";
        return kExitError;
    }

    rex::MatchOptions opts;
    opts.skip = !no_skip;
    rex::CompiledRegex re = [&] {
        try {
            return rex::CompiledRegex::compile(pattern, opts);
        } catch (const rex::ParseError& e) {
            std::cerr << "rex: " << e.diagnostics.render() << '\n';
            std::exit(kExitError);
        }
    }();

    if (dump_ast) {
        std::cout << rex::to_pattern(re.matcher().root()) << '\n';
    }
    if (dump_minterms) {
        const rex::MintermTable& mt = re.matcher().minterms();
        for (std::size_t i = 0; i < mt.size(); ++i) {
            std::cout << i << ": " << rex::to_pattern(re.builder().pred(mt.minterm(i))) << '\n';
        }
    }
    if ((dump_ast || dump_minterms) && opt_input->count() == 0) {
        return kExitMatch;
    }

    std::string bytes;
    if (input_path.empty() || input_path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        bytes = buf.str();
    } else {
        std::ifstream in(input_path, std::ios::binary);
        if (!in) {
            std::cerr << "rex: cannot open " << input_path << '\n';
            return kExitError;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        bytes = buf.str();
    }

    rex::DecodeError derr;
    auto subject = rex::Subject::from_utf8(bytes, &derr);
    if (!subject) {
        std::cerr << "rex: input byte " << derr.byte_offset << ": " << derr.message << '\n';
        return kExitError;
    }

    const rex::Matcher& matcher = re.matcher();
    if (oracle_check) {
        if (subject->size() <= 8) {
            if (!oracle_agrees(matcher, *subject, opts)) {
                std::cerr << "rex: oracle check failed\n";
                return kExitError;
            }
        } else {
            std::cerr << "rex: oracle check skipped (input longer than 8 code points)\n";
        }
    }

    std::vector<rex::MatchSpan> matches;
    if (mode_all || mode_count) {
        matches = matcher.find_all(*subject, opts);
    } else {
        if (auto m = matcher.find(*subject, opts)) matches.push_back(*m);
    }

    if (mode_test) {
        return matches.empty() ? kExitNoMatch : kExitMatch;
    }
    if (mode_count) {
        std::cout << matches.size() << '\n';
        return kExitMatch;
    }
    if (out_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const rex::MatchSpan& m : matches) {
            rex::MatchSpan shown = byte_offsets ? to_bytes(*subject, m) : m;
            arr.push_back({{"start", shown.start}, {"end", shown.end}, {"text", slice_utf8(*subject, m)}});
        }
        std::cout << arr.dump() << '\n';
    } else {
        for (const rex::MatchSpan& m : matches) {
            if (out_spans) {
                rex::MatchSpan shown = byte_offsets ? to_bytes(*subject, m) : m;
                std::cout << shown.start << ':' << shown.end << ':' << slice_utf8(*subject, m) << '\n';
            } else {
                std::cout << slice_utf8(*subject, m) << '\n';
            }
        }
    }
    if (!mode_all && matches.empty()) return kExitNoMatch;
    return kExitMatch;
}
