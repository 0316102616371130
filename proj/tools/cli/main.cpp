// binsq: verification runs, decompositions, oracle tables and machine export.
//
// Exit codes: 0 ok, 1 assertion failed, 2 not representable, 3 usage error,
// 4 internal error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "binsq/automata.hpp"
#include "binsq/automata_export.hpp"
#include "binsq/folding.hpp"
#include "binsq/lemma_machines.hpp"
#include "binsq/oracle.hpp"
#include "binsq/witness.hpp"

using nlohmann::json;
using namespace binsq;

namespace {

enum Exit : int { kOk = 0, kAssertionFailed = 1, kNotRepresentable = 2, kUsage = 3, kInternal = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    int parallel = 0;
};

Options g_opts;

void emit(const json& record) { std::cout << record.dump() << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- verify ---------------------------------------------------------------

struct Target {
    std::string name;
    Parity parity;
    unsigned threshold;
    std::function<LemmaMachine()> build;
    unsigned reference_states;
};

const std::vector<Target>& targets() {
    static const std::vector<Target> all = {
        {"odd-squares", Parity::Odd, 13, build_A_odd, 2258},
        {"even-squares", Parity::Even, 18, build_A_even, 1343},
        {"square-power-odd", Parity::Odd, 7, [] { return build_square_power_machines(Parity::Odd); }, 806},
        {"square-power-even", Parity::Even, 10, [] { return build_square_power_machines(Parity::Even); }, 2175},
        {"generalized-odd", Parity::Odd, 7, [] { return build_generalized_machines(Parity::Odd); }, 132},
        {"generalized-even", Parity::Even, 8, [] { return build_generalized_machines(Parity::Even); }, 263},
    };
    return all;
}

const Target& find_target(const std::string& name) {
    for (const auto& t : targets()) {
        if (t.name == name) return t;
    }
    throw UsageError("unknown verification target: " + name);
}

struct VerificationReport {
    std::string assertion;
    bool holds = false;
    std::optional<Natural> counterexample;
    std::string counterexample_word;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t members = 0;
    std::size_t reduced_states = 0;
    std::size_t checker_states = 0;
    unsigned threshold = 0;
    unsigned reference_states = 0;
    std::size_t product_states = 0;
    std::size_t subset_states = 0;
    double seconds = 0;
};

VerificationReport run_verify(const Target& t, unsigned min_length) {
    const auto t0 = std::chrono::steady_clock::now();
    const LemmaMachine m = t.build();
    const unsigned threshold = min_length > 0 ? min_length : t.threshold;
    const Nfa checker = syntax_checker(t.parity, threshold);
    const InclusionVerdict v = includes(m.nfa, checker);
    VerificationReport r;
    r.assertion = t.name;
    r.holds = v.holds;
    if (v.counterexample) {
        const FoldedWord w = folded_from_ids(*v.counterexample);
        r.counterexample = unfold(w);
        r.counterexample_word = render(w);
    }
    r.states = m.nfa.num_states();
    r.transitions = m.nfa.num_transitions();
    r.members = m.members.size();
    r.reduced_states = m.reduced.nfa().num_states();
    r.checker_states = checker.num_states();
    r.threshold = threshold;
    r.reference_states = t.reference_states;
    r.product_states = v.product_states;
    r.subset_states = v.subset_states;
    r.seconds = seconds_since(t0);
    return r;
}

void print_report(const VerificationReport& r) {
    if (g_opts.json) {
        json j = {{"command", "verify"},
                  {"assertion", r.assertion},
                  {"holds", r.holds},
                  {"counterexample", nullptr},
                  {"machine",
                   {{"states", r.states},
                    {"transitions", r.transitions},
                    {"members", r.members},
                    {"reduced_states", r.reduced_states},
                    {"reference_states", r.reference_states}}},
                  {"checker", {{"states", r.checker_states}, {"min_length", r.threshold}}},
                  {"explored", {{"product_states", r.product_states}, {"subset_states", r.subset_states}}},
                  {"seconds", r.seconds}};
        if (r.counterexample) j["counterexample"] = {{"value", r.counterexample->str()}, {"folded", r.counterexample_word}};
        emit(j);
        return;
    }
    std::cout << "assertion: " << r.assertion << " (all lengths >= " << r.threshold << ")\n";
    std::cout << "holds: " << (r.holds ? "true" : "false") << '\n';
    if (r.counterexample) {
        std::cout << "counterexample: " << r.counterexample->str() << " = " << to_binary_string(*r.counterexample) << '\n';
        std::cout << "folded: " << r.counterexample_word << '\n';
    }
    std::cout << "machine: " << r.members << " members, " << r.states << " states, " << r.transitions
              << " transitions, " << r.reduced_states << " after reduction (reference: " << r.reference_states << ")\n";
    std::cout << "checker: " << r.checker_states << " states\n";
    std::cout << "explored: " << r.product_states << " product states, " << r.subset_states << " subsets\n";
    std::cout << "time: " << r.seconds << " s\n";
}

int cmd_verify(const std::string& target, unsigned min_length) {
    std::vector<const Target*> jobs;
    if (target == "all") {
        for (const auto& t : targets()) jobs.push_back(&t);
    } else {
        jobs.push_back(&find_target(target));
    }
    std::vector<VerificationReport> reports(jobs.size());
#ifdef _OPENMP
    const int threads = g_opts.parallel > 0 ? g_opts.parallel : omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::string failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < static_cast<int>(jobs.size()); ++i) {
        try {
            reports[static_cast<std::size_t>(i)] = run_verify(*jobs[static_cast<std::size_t>(i)], min_length);
        } catch (const std::exception& e) {
#pragma omp critical
            failure = e.what();
        }
    }
    if (!failure.empty()) throw std::runtime_error(failure);
    bool all_hold = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0 && !g_opts.json) std::cout << '\n';
        print_report(reports[i]);
        all_hold = all_hold && reports[i].holds;
    }
    return all_hold ? kOk : kAssertionFailed;
}

// ---- crossvalidate --------------------------------------------------------

struct ProfileSpec {
    std::vector<SummandGroup> groups;
    std::optional<unsigned> carry;  // nullopt: every carry
};

ProfileSpec parse_profiles(const std::string& text) {
    ProfileSpec spec;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        if (item.rfind("carry=", 0) == 0) {
            const std::string v = item.substr(6);
            if (v != "auto") {
                try {
                    spec.carry = static_cast<unsigned>(std::stoul(v));
                } catch (const std::exception&) {
                    throw UsageError("bad carry: " + v);
                }
            }
            continue;
        }
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("profile entries look like offset:count, got " + item);
        try {
            spec.groups.push_back({std::stoi(item.substr(0, colon)), static_cast<unsigned>(std::stoul(item.substr(colon + 1)))});
        } catch (const std::exception&) {
            throw UsageError("bad profile entry: " + item);
        }
    }
    if (spec.groups.empty()) throw UsageError("empty profile");
    return spec;
}

int cmd_crossvalidate(unsigned length, const std::string& profiles, bool exact, unsigned powers, bool generalized) {
    if (length < 3 || length > 20) throw UsageError("crossvalidate: --length must be in [3, 20]");
    const auto t0 = std::chrono::steady_clock::now();
    const ProfileSpec ps = parse_profiles(profiles);
    const Parity parity = length % 2 == 1 ? Parity::Odd : Parity::Even;
    const SquareKind kind = generalized ? SquareKind::Generalized : SquareKind::Binary;

    std::vector<SummandProfile> members;
    if (exact || generalized) {
        members.push_back({ps.groups, 0});
    } else {
        members = at_most_expansion(ps.groups);
    }
    std::vector<LemmaMachine> parts;
    for (const auto& p : members) {
        MachineSpec spec;
        spec.parity = parity;
        spec.kind = kind;
        spec.profile = p;
        spec.max_powers = powers;
        if (spec.addend_bound() == 0) continue;
        try {
            if (min_source_length_for(spec) > length) {
                throw UsageError("profile geometry needs inputs of length >= " +
                                 std::to_string(min_source_length_for(spec)));
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        for (unsigned m = 0; m < spec.addend_bound(); ++m) {
            if (ps.carry && *ps.carry != m) continue;
            spec.profile.carry = m;
            parts.push_back(generate(spec));
        }
    }
    std::vector<std::uint64_t> got;
    std::size_t states = 0;
    if (!parts.empty()) {
        const LemmaMachine u = unite(std::move(parts), "crossvalidate");
        states = u.nfa.num_states();
        got = accept_set(u.nfa, length);
    }

    std::vector<LengthCount> lc;
    for (const auto& g : ps.groups) {
        const int len = static_cast<int>(length) - g.length_offset;
        if (len <= 0) throw UsageError("summand length must be positive");
        lc.push_back({static_cast<unsigned>(len), g.count, !exact});
    }
    const auto want = profile_sumset(length, lc,
                                     generalized ? GroundSetKind::GeneralizedBinarySquare : GroundSetKind::BinarySquare,
                                     powers);
    std::vector<std::uint64_t> diff;
    std::set_symmetric_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(diff));
    const bool match = diff.empty();
    const double secs = seconds_since(t0);
    if (g_opts.json) {
        json j = {{"command", "crossvalidate"},
                  {"length", length},
                  {"profiles", profiles},
                  {"counts", exact || generalized ? "exact" : "at_most"},
                  {"powers", powers},
                  {"machine_states", states},
                  {"machine_accepts", got.size()},
                  {"oracle_accepts", want.size()},
                  {"symmetric_difference", diff.size()},
                  {"match", match},
                  {"seconds", secs}};
        j["difference_sample"] = std::vector<std::uint64_t>(diff.begin(), diff.begin() + std::min<std::size_t>(diff.size(), 10));
        emit(j);
    } else {
        std::cout << "length " << length << ", profiles " << profiles << (exact || generalized ? " (exact counts)" : " (at most)")
                  << '\n';
        std::cout << "machine accepts: " << got.size() << " (" << states << " states)\n";
        std::cout << "oracle accepts:  " << want.size() << '\n';
        std::cout << "symmetric difference: " << diff.size() << '\n';
        for (std::size_t i = 0; i < std::min<std::size_t>(diff.size(), 10); ++i) std::cout << "  " << diff[i] << '\n';
        std::cout << (match ? "match" : "MISMATCH") << '\n';
    }
    return match ? kOk : kAssertionFailed;
}

// ---- decompose ------------------------------------------------------------

std::string_view role_name(GroundSetKind k) {
    switch (k) {
        case GroundSetKind::BinarySquare: return "binary_square";
        case GroundSetKind::GeneralizedBinarySquare: return "generalized_square";
        case GroundSetKind::PowerOfTwo: return "power_of_two";
    }
    return "?";
}

std::string_view source_name(WitnessSource s) {
    switch (s) {
        case WitnessSource::Direct: return "direct";
        case WitnessSource::Table: return "table";
        case WitnessSource::Machine: return "machine";
    }
    return "?";
}

int cmd_decompose(const std::string& number, const std::string& mode) {
    Natural n;
    try {
        n = parse_natural(number);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Decomposition d;
    try {
        if (mode == "squares4") {
            d = decompose(n);
        } else if (mode == "square-power") {
            d = decompose_square_power(n);
        } else if (mode == "generalized") {
            d = decompose_generalized(n);
        } else {
            throw UsageError("unknown mode: " + mode);
        }
    } catch (const NotRepresentable& e) {
        if (g_opts.json) {
            emit({{"command", "decompose"}, {"mode", mode}, {"target", n.str()}, {"representable", false}});
        } else {
            std::cout << e.what() << '\n';
        }
        return kNotRepresentable;
    }
    if (g_opts.json) {
        json parts = json::array();
        for (const auto& p : d.parts) {
            parts.push_back({{"value", p.value.str()}, {"binary", to_binary_string(p.value)}, {"role", role_name(p.role)}});
        }
        json j = {{"command", "decompose"},   {"mode", mode},          {"target", n.str()},
                  {"representable", true},    {"parts", parts},        {"source", source_name(d.source)},
                  {"product_states", d.product_states}, {"profile", nullptr}};
        if (d.profile) {
            json groups = json::array();
            for (const auto& g : d.profile->groups) groups.push_back({{"length_offset", g.length_offset}, {"count", g.count}});
            j["profile"] = {{"groups", groups}, {"carry", d.profile->carry}};
        }
        emit(j);
        return kOk;
    }
    std::cout << n.str() << " =";
    for (std::size_t i = 0; i < d.parts.size(); ++i) std::cout << (i ? " + " : " ") << d.parts[i].value.str();
    if (d.parts.empty()) std::cout << " (empty sum)";
    std::cout << '\n';
    for (const auto& p : d.parts) std::cout << "  " << describe(p) << "  [" << role_name(p.role) << "]\n";
    std::cout << "source: " << source_name(d.source);
    if (d.source == WitnessSource::Machine) std::cout << ", " << d.product_states << " product states";
    std::cout << '\n';
    return kOk;
}

// ---- oracle tables --------------------------------------------------------

std::uint64_t require_bound(std::uint64_t bound, std::uint64_t min, std::uint64_t max, const char* what) {
    if (bound < min || bound > max) {
        throw UsageError(std::string(what) + " must be in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    return bound;
}

int cmd_exceptions(std::uint64_t bound, bool exact_positive) {
    const auto values = exact_positive ? exceptions_exact_four_positive(require_bound(bound, 1773, 1u << 30, "--bound"))
                                       : exceptions_four_squares(require_bound(bound, 687, 1u << 30, "--bound"));
    for (std::uint64_t v : values) {
        if (g_opts.json) {
            emit({{"command", "exceptions"}, {"value", v}});
        } else {
            std::cout << v << '\n';
        }
    }
    if (g_opts.json) {
        emit({{"command", "exceptions"},
              {"summary", true},
              {"bound", bound},
              {"exact_four_positive", exact_positive},
              {"count", values.size()}});
    }
    return kOk;
}

int cmd_counts(std::uint64_t bound) {
    const auto t = sumset_table(GroundSetKind::BinarySquare, require_bound(bound, 1, 1u << 30, "--bound"), 4);
    for (unsigned k = 1; k <= 4; ++k) {
        const std::size_t c = t.at(k).count();
        if (g_opts.json) {
            emit({{"command", "counts"}, {"bound", bound}, {"k", k}, {"count", c}});
        } else {
            std::cout << "k=" << k << " " << c << '\n';
        }
    }
    return kOk;
}

int cmd_density(std::uint64_t bound) {
    require_bound(bound, 14, 1u << 28, "--bound");
    const TwoSquaresCounter counter(bound);
    const Rational at = counter.density(bound);
    Rational lowest = counter.density(14);
    std::uint64_t argmin = 14;
    for (std::uint64_t m = 15; m <= bound; ++m) {
        const Rational d = counter.density(m);
        if (d < lowest) {
            lowest = d;
            argmin = m;
        }
    }
    const bool ok = lowest >= Rational(1, 40);
    auto decimal = [](const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); };
    auto text = [](const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); };
    if (g_opts.json) {
        emit({{"command", "density"},
              {"bound", bound},
              {"density", text(at)},
              {"density_decimal", decimal(at)},
              {"min_density", text(lowest)},
              {"min_density_decimal", decimal(lowest)},
              {"argmin", argmin},
              {"at_least_one_fortieth", ok}});
    } else {
        std::cout << "density at " << bound << ": " << text(at) << " ~ " << decimal(at) << '\n';
        std::cout << "minimum over [14, " << bound << "]: " << text(lowest) << " ~ " << decimal(lowest) << " at m=" << argmin
                  << '\n';
        std::cout << "at least 1/40: " << (ok ? "yes" : "no") << '\n';
    }
    return ok ? kOk : kAssertionFailed;
}

int cmd_optimality(unsigned max_n) {
    if (max_n > 25) throw UsageError("--max-n must be at most 25");
    for (const auto& row : optimality_check(max_n)) {
        if (g_opts.json) {
            emit({{"command", "optimality"}, {"n", row.n}, {"representable", row.representable}, {"witnesses", row.witnesses}});
            continue;
        }
        std::cout << "n=" << row.n << (row.representable ? " representable" : " not representable");
        for (const auto& w : row.witnesses) {
            std::cout << ' ';
            for (std::size_t i = 0; i < w.size(); ++i) std::cout << (i ? "+" : "") << w[i];
        }
        std::cout << '\n';
    }
    return kOk;
}

int cmd_uniqueness(unsigned n) {
    if (n < 1 || n > 12) throw UsageError("--n must be in [1, 12]");
    const std::uint64_t size = sumset_uniqueness(n);
    const std::uint64_t predicted = std::uint64_t{1} << (2 * n - 1);
    if (g_opts.json) {
        emit({{"command", "uniqueness"}, {"n", n}, {"size", size}, {"predicted", predicted}, {"matches", size == predicted}});
    } else {
        std::cout << "|C_" << n << " + C_" << n + 1 << "| = " << size << " (2^" << 2 * n - 1 << " = " << predicted << ")\n";
    }
    return size == predicted ? kOk : kAssertionFailed;
}

// ---- export / manifest ----------------------------------------------------

struct Exported {
    Nfa nfa;
    std::optional<LemmaMachine> machine;
};

Exported machine_by_name(const std::string& name, bool reduced) {
    static const std::map<std::string, std::string> aliases = {
        {"a-odd", "odd-squares"}, {"a-even", "even-squares"}};
    if (name == "syntax-odd") return {syntax_checker(Parity::Odd, 13), std::nullopt};
    if (name == "syntax-even") return {syntax_checker(Parity::Even, 18), std::nullopt};
    const auto it = aliases.find(name);
    const Target& t = find_target(it != aliases.end() ? it->second : name);
    LemmaMachine m = t.build();
    Nfa nfa = reduced ? m.reduced.nfa() : m.nfa;
    return {std::move(nfa), std::move(m)};
}

int cmd_export(const std::string& name, const std::string& format, const std::string& path, bool reduced) {
    if (format != "dot" && format != "ats") throw UsageError("--format must be dot or ats");
    const Exported e = machine_by_name(name, reduced);
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    std::string ident = name;
    std::replace(ident.begin(), ident.end(), '-', '_');
    if (format == "dot") {
        write_dot(out, e.nfa, symbol_label, ident);
    } else {
        write_ats(out, e.nfa, symbol_label, ident);
    }
    out.close();
    if (g_opts.json) {
        emit({{"command", "export"},
              {"machine", name},
              {"format", format},
              {"path", path},
              {"states", e.nfa.num_states()},
              {"transitions", e.nfa.num_transitions()}});
    } else {
        std::cout << "wrote " << path << " (" << e.nfa.num_states() << " states, " << e.nfa.num_transitions()
                  << " transitions)\n";
    }
    return kOk;
}

int cmd_manifest(const std::string& name) {
    const Exported e = machine_by_name(name, false);
    if (!e.machine) throw UsageError("no manifest for " + name);
    if (g_opts.json) {
        json j = json::parse(manifest(*e.machine));
        j["command"] = "manifest";
        emit(j);
    } else {
        std::cout << manifest(*e.machine) << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary squares: automaton verification, decompositions and oracle tables"};
    app.require_subcommand(1);
    app.add_flag("--json", g_opts.json, "Line-delimited JSON records instead of text");
    app.add_option("--parallel", g_opts.parallel, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);

    std::string verify_target;
    unsigned verify_min_length = 0;
    auto* verify = app.add_subcommand("verify", "Decide an inclusion assertion");
    verify->add_option("target", verify_target,
                       "odd-squares, even-squares, square-power-odd, square-power-even, generalized-odd, generalized-even, all")
        ->required();
    verify->add_option("--min-length", verify_min_length, "Check from this input length instead of the lemma's threshold");

    unsigned cv_length = 0;
    std::string cv_profiles;
    bool cv_exact = false, cv_generalized = false;
    unsigned cv_powers = 0;
    auto* cross = app.add_subcommand("crossvalidate", "Compare a machine's accept set with the oracle");
    cross->add_option("--length", cv_length, "Input length")->required();
    cross->add_option("--profiles", cv_profiles, "offset:count,...[,carry=auto|K]")->required();
    cross->add_flag("--exact", cv_exact, "Counts are exact instead of upper bounds");
    cross->add_option("--powers", cv_powers, "Up to this many powers of two");
    cross->add_flag("--generalized", cv_generalized, "Generalized squares (leading zeros allowed)");

    std::string dec_number, dec_mode = "squares4";
    auto* dec = app.add_subcommand("decompose", "Write N as a sum of squares");
    dec->add_option("--mode", dec_mode, "squares4, square-power or generalized");
    dec->add_option("N", dec_number, "Decimal natural number")->required();

    std::uint64_t ex_bound = 0;
    bool ex_positive = false;
    auto* exc = app.add_subcommand("exceptions", "Numbers below a bound without a representation");
    exc->add_option("--bound", ex_bound)->required();
    exc->add_flag("--exact-four-positive", ex_positive, "Exactly four positive squares");

    std::uint64_t counts_bound = 0;
    auto* counts = app.add_subcommand("counts", "Sizes of the k-fold sumsets below a bound");
    counts->add_option("--bound", counts_bound)->required();

    std::uint64_t density_bound = 0;
    auto* density = app.add_subcommand("density", "Density of sums of two binary squares");
    density->add_option("--bound", density_bound)->required();

    unsigned opt_max = 0;
    auto* optimality = app.add_subcommand("optimality", "Representations of 2^n by at most three positive squares");
    optimality->add_option("--max-n", opt_max)->required();

    unsigned uniq_n = 0;
    auto* uniq = app.add_subcommand("uniqueness", "Size of C_n + C_{n+1}");
    uniq->add_option("--n", uniq_n)->required();

    std::string exp_machine, exp_format, exp_path;
    bool exp_reduced = false;
    auto* exp = app.add_subcommand("export", "Write a machine as DOT or AutomataScript");
    exp->add_option("machine", exp_machine,
                    "a-odd, a-even, square-power-odd, square-power-even, generalized-odd, generalized-even, syntax-odd, "
                    "syntax-even")
        ->required();
    exp->add_option("--format", exp_format, "dot or ats")->required();
    exp->add_option("--out", exp_path, "Output file")->required();
    exp->add_flag("--reduced", exp_reduced, "Export the bisimulation-reduced machine");

    std::string man_machine;
    auto* man = app.add_subcommand("manifest", "Members, carries and sizes of a lemma machine");
    man->add_option("machine", man_machine)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (g_opts.parallel > 0) {
        set_kernel_threads(g_opts.parallel);
#ifdef _OPENMP
        omp_set_num_threads(g_opts.parallel);
#endif
    }

    try {
        if (*verify) return cmd_verify(verify_target, verify_min_length);
        if (*cross) return cmd_crossvalidate(cv_length, cv_profiles, cv_exact, cv_powers, cv_generalized);
        if (*dec) return cmd_decompose(dec_number, dec_mode);
        if (*exc) return cmd_exceptions(ex_bound, ex_positive);
        if (*counts) return cmd_counts(counts_bound);
        if (*density) return cmd_density(density_bound);
        if (*optimality) return cmd_optimality(opt_max);
        if (*uniq) return cmd_uniqueness(uniq_n);
        if (*exp) return cmd_export(exp_machine, exp_format, exp_path, exp_reduced);
        if (*man) return cmd_manifest(man_machine);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
