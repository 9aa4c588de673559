#include "hebbocr/evaluation.hpp"

#include "hebbocr/error.hpp"
#include "hebbocr/labels.hpp"

#include <cstdio>
#include <numeric>
#include <ostream>

namespace hebbocr {

Percent::Percent(std::int64_t n, std::int64_t d) : num(n), den(d) {
    require(den != 0, ErrorCode::InvalidArgument, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Percent Percent::ratio(std::int64_t part, std::int64_t whole) {
    require(whole >= 1, ErrorCode::NoTests, "ratio over zero tests");
    return {100 * part, whole};
}

Percent Percent::operator+(const Percent& other) const {
    return {num * other.den + other.num * den, den * other.den};
}

std::string Percent::text() const {
    // Round half up to hundredths of a percent; values here are never negative.
    const std::int64_t hundredths = (200 * num + den) / (2 * den);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld",
                  static_cast<long long>(hundredths / 100),
                  static_cast<long long>(hundredths % 100));
    return buf;
}

Percent success_rate(std::int64_t correct, std::int64_t tested) {
    require(tested >= 1, ErrorCode::NoTests, "success rate over zero tests");
    return Percent::ratio(correct, tested);
}

Percent frr(std::int64_t unrecognized, std::int64_t tested) {
    require(tested >= 1, ErrorCode::NoTests, "FRR over zero tests");
    require(unrecognized <= tested, ErrorCode::CountOverflow,
            "unrecognized count exceeds tested count");
    return Percent::ratio(unrecognized, tested);
}

namespace {

void finish_record(EvalRecord& rec) {
    if (rec.testing_count > 0) {
        rec.success_rate_pct = success_rate(rec.correct, rec.testing_count);
        rec.frr_pct = frr(rec.unrecognized, rec.testing_count);
    }
}

std::string percent_cell(const std::optional<Percent>& value) {
    return value ? value->text() : "--";
}

} // namespace

EvalReport build_report(std::span<const char> truth, std::span<const Decision> decisions,
                        const std::map<char, std::int64_t>& training_counts,
                        const KbSummary& kb_summary) {
    require(truth.size() == decisions.size(), ErrorCode::DimensionMismatch,
            "truth and decisions are not aligned 1:1");

    EvalReport report;
    report.kb_summary = kb_summary;

    std::map<char, std::size_t> index; // label -> position in records
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const char label = truth[i];
        auto [it, inserted] = index.emplace(label, report.records.size());
        if (inserted) {
            EvalRecord rec;
            rec.label = encode_label(label);
            const auto tc = training_counts.find(label);
            rec.training_count = tc == training_counts.end() ? 0 : tc->second;
            report.records.push_back(std::move(rec));
        }
        EvalRecord& rec = report.records[it->second];
        rec.testing_count += 1;
        const Decision& d = decisions[i];
        if (!d.recognized) {
            rec.unrecognized += 1;
        } else if (*d.recognized == label) {
            rec.correct += 1;
        } else {
            rec.misclassified += 1;
        }
    }

    report.overall.label = "ALL";
    for (EvalRecord& rec : report.records) {
        finish_record(rec);
        report.overall.training_count += rec.training_count;
        report.overall.testing_count += rec.testing_count;
        report.overall.correct += rec.correct;
        report.overall.misclassified += rec.misclassified;
        report.overall.unrecognized += rec.unrecognized;
    }
    finish_record(report.overall);
    return report;
}

std::size_t emit_table(const EvalReport& report, std::ostream& sink) {
    std::string out =
        "label\ttrain_count\ttest_count\tcorrect\tmisclassified\tunrecognized\t"
        "success_rate_pct\tfrr_pct\n";
    const auto append_row = [&out](const EvalRecord& rec) {
        out += rec.label;
        out += '\t';
        out += std::to_string(rec.training_count);
        out += '\t';
        out += std::to_string(rec.testing_count);
        out += '\t';
        out += std::to_string(rec.correct);
        out += '\t';
        out += std::to_string(rec.misclassified);
        out += '\t';
        out += std::to_string(rec.unrecognized);
        out += '\t';
        out += percent_cell(rec.success_rate_pct);
        out += '\t';
        out += percent_cell(rec.frr_pct);
        out += '\n';
    };
    for (const EvalRecord& rec : report.records) append_row(rec);
    append_row(report.overall);

    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) fail(ErrorCode::IoFailure, "write to sink failed");
    return out.size();
}

std::size_t emit_plot_data(const EvalReport& report, PlotKind which, std::ostream& sink) {
    std::string out = "x,y\n";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const EvalRecord& rec = report.records[i];
        switch (which) {
        case PlotKind::SuccessByClass:
            out += std::to_string(i + 1) + ',' + percent_cell(rec.success_rate_pct);
            break;
        case PlotKind::FrrByClass:
            out += std::to_string(i + 1) + ',' + percent_cell(rec.frr_pct);
            break;
        case PlotKind::SuccessVsFrr:
            out += percent_cell(rec.success_rate_pct) + ',' + percent_cell(rec.frr_pct);
            break;
        }
        out += '\n';
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) fail(ErrorCode::IoFailure, "write to sink failed");
    return out.size();
}

} // namespace hebbocr
