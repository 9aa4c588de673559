#pragma once

#include "hebbocr/hebbnet.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hebbocr {

/// Exact rational percentage. Kept normalized (den > 0, gcd 1) so equality
/// and addition are exact; rendering rounds half-up to two decimals.
struct Percent {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Percent() = default;
    Percent(std::int64_t n, std::int64_t d);

    /// 100 * part / whole as a percentage.
    static Percent ratio(std::int64_t part, std::int64_t whole);

    Percent operator+(const Percent& other) const;
    bool operator==(const Percent& other) const = default;

    std::string text() const; // e.g. "66.67"
};

/// 100 * correct / tested. Throws NoTests when tested == 0.
Percent success_rate(std::int64_t correct, std::int64_t tested);

/// 100 * unrecognized / tested. Throws NoTests when tested == 0 and
/// CountOverflow when unrecognized > tested.
Percent frr(std::int64_t unrecognized, std::int64_t tested);

/// Per-class tally row. Percentages are absent only for a zero-test row
/// (the overall row of an empty report).
struct EvalRecord {
    std::string label;
    std::int64_t training_count = 0;
    std::int64_t testing_count = 0;
    std::int64_t correct = 0;
    std::int64_t misclassified = 0;
    std::int64_t unrecognized = 0;
    std::optional<Percent> success_rate_pct;
    std::optional<Percent> frr_pct;
};

struct KbSummary {
    GridShape grid;
    Regime regime = Regime::OneVsRest;
    int epochs = 0;
};

struct EvalReport {
    std::vector<EvalRecord> records; // one per tested class, input order
    EvalRecord overall;              // label "ALL", sums of the records
    KbSummary kb_summary;
};

/// Tally decisions against the true labels, one record per tested class in
/// order of first appearance. truth and decisions must align 1:1.
EvalReport build_report(std::span<const char> truth, std::span<const Decision> decisions,
                        const std::map<char, std::int64_t>& training_counts,
                        const KbSummary& kb_summary);

/// Deterministic TSV: fixed header, one row per record, then the ALL row.
std::size_t emit_table(const EvalReport& report, std::ostream& sink);

enum class PlotKind { SuccessByClass, FrrByClass, SuccessVsFrr };

/// Two-column "x,y" CSV over the per-class records, in record order.
std::size_t emit_plot_data(const EvalReport& report, PlotKind which, std::ostream& sink);

} // namespace hebbocr
