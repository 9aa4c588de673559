#include "hebbocr/error.hpp"
#include "hebbocr/evaluation.hpp"
#include "hebbocr/glyphgen.hpp"
#include "hebbocr/hebbnet.hpp"
#include "hebbocr/imagegrid.hpp"
#include "hebbocr/kbstore.hpp"
#include "hebbocr/labels.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hebbocr;

namespace {

// Exit codes are a stable contract: 0 ok, 1 IO/data problem, 2 usage,
// 3 kb-diff found differences.
constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kUsageError = 2;
constexpr int kDiffFound = 3;

GridShape parse_grid(const std::string& text) {
    const std::size_t x = text.find('x');
    require(x != std::string::npos && x > 0 && x + 1 < text.size(), ErrorCode::InvalidArgument,
            "grid must look like 16x16");
    GridShape shape;
    try {
        std::size_t used = 0;
        shape.rows = std::stoi(text.substr(0, x), &used);
        require(used == x, ErrorCode::InvalidArgument, "bad grid rows");
        shape.cols = std::stoi(text.substr(x + 1), &used);
        require(used == text.size() - x - 1, ErrorCode::InvalidArgument, "bad grid cols");
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidArgument, "grid must look like 16x16");
    }
    require(shape.rows >= 1 && shape.cols >= 1, ErrorCode::InvalidArgument,
            "grid dimensions must be >= 1");
    return shape;
}

std::string check_grid_text(const std::string& text) {
    try {
        parse_grid(text);
    } catch (const Error&) {
        return "expected RxC with positive integers, e.g. 16x16";
    }
    return {};
}

void write_file_or_die(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(ErrorCode::IoFailure, "write failed: " + path.string());
}

struct GenOptions {
    std::string out_dir;
    int train_sets = 10;
    int test_sets = 5;
    double noise = 0.02;
    int shift = 1;
    std::uint64_t seed = 42;
    bool force = false;
};

int cmd_gen(const GenOptions& opt) {
    DistortionParams params;
    params.flip_probability = opt.noise;
    params.max_shift = opt.shift;
    params.seed = opt.seed;
    const Manifest manifest =
        generate_dataset(opt.train_sets, opt.test_sets, params, opt.out_dir, opt.force);
    std::cout << "wrote " << manifest.size() << " samples (" << opt.train_sets * 52 << " train, "
              << opt.test_sets * 52 << " test) under " << opt.out_dir << "\n";
    return kOk;
}

struct TrainOptions {
    std::string data_dir;
    std::string kb_path;
    std::string grid = "16x16";
    double threshold = 0.5;
    Regime regime = Regime::OneVsRest;
    int epochs = 1;
};

int cmd_train(const TrainOptions& opt) {
    const GridShape grid = parse_grid(opt.grid);
    const ExtractionParams extraction{grid, opt.threshold};
    const Manifest manifest = read_manifest_file(fs::path(opt.data_dir) / kManifestFileName);

    std::vector<TrainingSample> samples;
    std::vector<char> labels;
    std::map<char, int> per_class;
    int skipped = 0;
    for (const ManifestEntry& entry : manifest) {
        if (!entry.path.starts_with("train/")) continue;
        const fs::path file = fs::path(opt.data_dir) / entry.path;
        const RasterImage img = read_pnm_file(file);
        try {
            samples.push_back({entry.label, extract_features(img, extraction)});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoInk) throw;
            std::cerr << "skipping blank sample " << file.string() << "\n";
            ++skipped;
            continue;
        }
        if (per_class.emplace(entry.label, 0).second) labels.push_back(entry.label);
        per_class[entry.label] += 1;
    }
    require(!samples.empty(), ErrorCode::InvalidArgument, "no usable training samples");

    KnowledgeBase kb = init_zero(labels, grid, opt.regime);
    kb = train(std::move(kb), samples, opt.epochs);
    write_kb_file(kb, opt.kb_path);

    std::cout << "trained " << kb.neurons.size() << " neurons (" << regime_name(kb.regime)
              << ", " << kb.epochs_trained << " epoch" << (kb.epochs_trained == 1 ? "" : "s")
              << ", grid " << grid.rows << "x" << grid.cols << ") -> " << opt.kb_path << "\n";
    for (const auto& [label, count] : per_class) {
        std::cout << "  " << encode_label(label) << " " << count << "\n";
    }
    if (skipped > 0) {
        std::cerr << "skipped " << skipped << " blank sample" << (skipped == 1 ? "" : "s") << "\n";
        return kDataError;
    }
    return kOk;
}

struct TestOptions {
    std::string data_dir;
    std::string kb_path;
    std::string report_path;
    std::string plots_dir;
    std::string grid = "16x16";
    double threshold = 0.5;
};

int cmd_test(const TestOptions& opt) {
    const GridShape grid = parse_grid(opt.grid);
    const KnowledgeBase kb = read_kb_file(opt.kb_path);
    if (kb.grid != grid) {
        fail(ErrorCode::DimensionMismatch,
             "knowledge base grid " + std::to_string(kb.grid.rows) + "x" +
                 std::to_string(kb.grid.cols) + " does not match configured grid " + opt.grid);
    }
    const ExtractionParams extraction{grid, opt.threshold};
    const Manifest manifest = read_manifest_file(fs::path(opt.data_dir) / kManifestFileName);

    std::map<char, std::int64_t> training_counts;
    std::vector<char> truth;
    std::vector<Decision> decisions;
    for (const ManifestEntry& entry : manifest) {
        if (entry.path.starts_with("train/")) {
            training_counts[entry.label] += 1;
            continue;
        }
        if (!entry.path.starts_with("test/")) continue;
        const RasterImage img = read_pnm_file(fs::path(opt.data_dir) / entry.path);
        truth.push_back(entry.label);
        try {
            decisions.push_back(classify(kb, extract_features(img, extraction)));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoInk) throw;
            decisions.push_back(Decision{}); // blank sample counts as unrecognized
        }
    }

    const EvalReport report = build_report(truth, decisions, training_counts,
                                           {kb.grid, kb.regime, kb.epochs_trained});

    std::ostringstream table;
    emit_table(report, table);
    write_file_or_die(opt.report_path, table.str());

    std::error_code ec;
    fs::create_directories(opt.plots_dir, ec);
    if (ec) fail(ErrorCode::IoFailure, "cannot create " + opt.plots_dir);
    const auto write_plot = [&](PlotKind kind, const char* name) {
        std::ostringstream csv;
        emit_plot_data(report, kind, csv);
        write_file_or_die(fs::path(opt.plots_dir) / name, csv.str());
    };
    write_plot(PlotKind::SuccessByClass, "success_by_class.csv");
    write_plot(PlotKind::FrrByClass, "frr_by_class.csv");
    write_plot(PlotKind::SuccessVsFrr, "success_vs_frr.csv");

    const EvalRecord& all = report.overall;
    if (all.success_rate_pct) {
        std::cout << "overall: success " << all.success_rate_pct->text() << "% frr "
                  << all.frr_pct->text() << "% (" << all.testing_count << " tested, "
                  << all.correct << " correct, " << all.misclassified << " misclassified, "
                  << all.unrecognized << " unrecognized)\n";
    } else {
        std::cout << "overall: no test samples\n";
    }
    return kOk;
}

int cmd_kb_diff(const std::string& left_path, const std::string& right_path) {
    const KnowledgeBase left = read_kb_file(left_path);
    const KnowledgeBase right = read_kb_file(right_path);
    const KbDiff diff = diff_kb(left, right);

    const auto describe = [](const KnowledgeBase& kb) {
        std::string s = "grid " + std::to_string(kb.grid.rows) + "x" + std::to_string(kb.grid.cols);
        s += " regime ";
        s += regime_name(kb.regime);
        s += " epochs " + std::to_string(kb.epochs_trained);
        s += " classes " + std::to_string(kb.neurons.size());
        return s;
    };
    std::cout << "left:  " << describe(left) << "\n";
    std::cout << "right: " << describe(right) << "\n";

    if (diff.identical()) {
        std::cout << "knowledge bases are identical\n";
        return kOk;
    }

    std::cout << "metadata: " << (diff.metadata_equal ? "equal" : "DIFFERENT") << "\n";
    const auto print_labels = [](const char* title, const std::vector<char>& labels) {
        if (labels.empty()) return;
        std::cout << title;
        for (const char l : labels) std::cout << " " << encode_label(l);
        std::cout << "\n";
    };
    print_labels("only left: ", diff.only_left);
    print_labels("only right:", diff.only_right);

    std::cout << "label      max|delta|\n";
    for (const auto& [label, delta] : diff.per_label_max_abs_delta) {
        std::string name = encode_label(label);
        name.resize(10, ' ');
        std::cout << name << " " << (delta ? std::to_string(*delta) : "incomparable") << "\n";
    }
    return kDiffFound;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hebbian character recognition toolkit"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic labeled dataset");
    gen->add_option("--out", gen_opt.out_dir, "Dataset output directory")->required();
    gen->add_option("--train-sets", gen_opt.train_sets, "Training sets of 52 samples each")
        ->check(CLI::Range(1, 100000));
    gen->add_option("--test-sets", gen_opt.test_sets, "Test sets of 52 samples each")
        ->check(CLI::Range(1, 100000));
    gen->add_option("--noise", gen_opt.noise, "Per-cell flip probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--shift", gen_opt.shift, "Max translation in cells")
        ->check(CLI::Range(0, 1000));
    gen->add_option("--seed", gen_opt.seed, "RNG seed");
    gen->add_flag("--force", gen_opt.force, "Overwrite an existing dataset manifest");

    TrainOptions train_opt;
    CLI::App* train = app.add_subcommand("train", "Train a knowledge base from a dataset");
    train->add_option("--data", train_opt.data_dir, "Dataset directory (with manifest.tsv)")
        ->required();
    train->add_option("--kb", train_opt.kb_path, "Knowledge base output file")->required();
    train->add_option("--grid", train_opt.grid, "Feature grid RxC")
        ->check(CLI::Validator(check_grid_text, "RxC"));
    train->add_option("--threshold", train_opt.threshold, "Binarization threshold")
        ->check(CLI::Range(0.0, 1.0));
    train->add_option("--regime", train_opt.regime, "Target assignment regime")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Regime>{{"one-vs-rest", Regime::OneVsRest},
                                          {"positive-only", Regime::PositiveOnly}}));
    train->add_option("--epochs", train_opt.epochs, "Training epochs")
        ->check(CLI::Range(1, 100000));

    TestOptions test_opt;
    CLI::App* test = app.add_subcommand("test", "Classify test samples and write reports");
    test->add_option("--data", test_opt.data_dir, "Dataset directory (with manifest.tsv)")
        ->required();
    test->add_option("--kb", test_opt.kb_path, "Knowledge base file")->required();
    test->add_option("--report", test_opt.report_path, "TSV report output path")->required();
    test->add_option("--plots", test_opt.plots_dir, "Directory for the plot CSVs")->required();
    test->add_option("--grid", test_opt.grid, "Feature grid RxC (must match the KB)")
        ->check(CLI::Validator(check_grid_text, "RxC"));
    test->add_option("--threshold", test_opt.threshold, "Binarization threshold")
        ->check(CLI::Range(0.0, 1.0));

    std::string diff_left, diff_right;
    CLI::App* diff = app.add_subcommand("kb-diff", "Compare two knowledge base files");
    diff->add_option("left", diff_left, "First KB file")->required();
    diff->add_option("right", diff_right, "Second KB file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_opt);
        if (train->parsed()) return cmd_train(train_opt);
        if (test->parsed()) return cmd_test(test_opt);
        if (diff->parsed()) return cmd_kb_diff(diff_left, diff_right);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}
