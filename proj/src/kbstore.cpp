#include "hebbocr/kbstore.hpp"

#include "hebbocr/error.hpp"
#include "hebbocr/labels.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace hebbocr {

namespace {

constexpr std::string_view kMagic = "HEBBKB";
constexpr int kFormatVersion = 1;

std::int64_t parse_int(std::string_view token, ErrorCode on_error, const char* what) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        fail(on_error, std::string("bad ") + what + ": " + std::string(token));
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t space = line.find(' ', pos);
        if (space == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, space - pos));
        pos = space + 1;
    }
    return fields;
}

// Lines of the body, in order; every line must end with LF.
std::vector<std::string_view> split_lines(std::string_view body) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const std::size_t nl = body.find('\n', pos);
        require(nl != std::string_view::npos, ErrorCode::MalformedRecord,
                "body line without newline");
        lines.push_back(body.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

} // namespace

std::string_view regime_name(Regime regime) {
    return regime == Regime::OneVsRest ? "ONE_VS_REST" : "POSITIVE_ONLY";
}

Regime regime_from_name(std::string_view name) {
    if (name == "ONE_VS_REST") return Regime::OneVsRest;
    if (name == "POSITIVE_ONLY") return Regime::PositiveOnly;
    fail(ErrorCode::MalformedRecord, "unknown regime: " + std::string(name));
}

std::uint32_t fnv1a32(std::string_view bytes) {
    std::uint32_t hash = 0x811c9dc5u;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x01000193u;
    }
    return hash;
}

std::string save_kb_string(const KnowledgeBase& kb) {
    std::vector<const ClusterNeuron*> ordered;
    ordered.reserve(kb.neurons.size());
    for (const ClusterNeuron& n : kb.neurons) ordered.push_back(&n);
    std::sort(ordered.begin(), ordered.end(),
              [](const ClusterNeuron* a, const ClusterNeuron* b) { return a->label < b->label; });

    std::string body;
    body += kMagic;
    body += ' ';
    body += std::to_string(kFormatVersion);
    body += '\n';
    body += "grid " + std::to_string(kb.grid.rows) + ' ' + std::to_string(kb.grid.cols) + '\n';
    body += "regime ";
    body += regime_name(kb.regime);
    body += '\n';
    body += "epochs " + std::to_string(kb.epochs_trained) + '\n';
    body += "classes " + std::to_string(ordered.size()) + '\n';
    for (const ClusterNeuron* neuron : ordered) {
        body += "neuron " + encode_label(neuron->label) + " bias " +
                std::to_string(neuron->bias) + '\n';
        body += "weights";
        for (Eigen::Index i = 0; i < neuron->weights.size(); ++i) {
            body += ' ';
            body += std::to_string(neuron->weights(i));
        }
        body += '\n';
    }

    char digest[9];
    std::snprintf(digest, sizeof digest, "%08x", fnv1a32(body));
    body += "checksum ";
    body += digest;
    body += '\n';
    return body;
}

std::size_t save_kb(const KnowledgeBase& kb, std::ostream& sink) {
    const std::string text = save_kb_string(kb);
    sink.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!sink) fail(ErrorCode::IoFailure, "write to sink failed");
    return text.size();
}

KnowledgeBase load_kb_string(std::string_view text) {
    // The final line must be the checksum; verify it over everything before
    // it, then parse.
    require(!text.empty() && text.back() == '\n', ErrorCode::MalformedRecord,
            "file does not end with a newline");
    const std::string_view trimmed = text.substr(0, text.size() - 1);
    const std::size_t last_nl = trimmed.rfind('\n');
    const std::size_t line_start = last_nl == std::string_view::npos ? 0 : last_nl + 1;
    const std::string_view checksum_line = trimmed.substr(line_start);

    const auto fields = split_fields(checksum_line);
    require(fields.size() == 2 && fields[0] == "checksum" && fields[1].size() == 8,
            ErrorCode::MalformedRecord, "missing checksum line");
    std::uint32_t stated = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[1].data(), fields[1].data() + 8, stated, 16);
    require(ec == std::errc{} && ptr == fields[1].data() + 8, ErrorCode::MalformedRecord,
            "bad checksum digits");

    const std::string_view body = text.substr(0, line_start);
    if (fnv1a32(body) != stated) {
        fail(ErrorCode::ChecksumMismatch, "checksum does not match file body");
    }

    const auto lines = split_lines(body);
    require(lines.size() >= 5, ErrorCode::MalformedRecord, "truncated header");

    const auto header = split_fields(lines[0]);
    require(header.size() == 2 && header[0] == kMagic, ErrorCode::MalformedRecord,
            "bad magic line");
    const std::int64_t version = parse_int(header[1], ErrorCode::MalformedRecord, "version");
    if (version != kFormatVersion) {
        fail(ErrorCode::UnknownVersion, "unsupported format version " + std::to_string(version));
    }

    const auto grid_fields = split_fields(lines[1]);
    require(grid_fields.size() == 3 && grid_fields[0] == "grid", ErrorCode::MalformedRecord,
            "bad grid line");
    const std::int64_t rows = parse_int(grid_fields[1], ErrorCode::MalformedRecord, "grid rows");
    const std::int64_t cols = parse_int(grid_fields[2], ErrorCode::MalformedRecord, "grid cols");
    require(rows >= 1 && cols >= 1 && rows * cols <= (1 << 24), ErrorCode::MalformedRecord,
            "grid dimensions out of range");

    const auto regime_fields = split_fields(lines[2]);
    require(regime_fields.size() == 2 && regime_fields[0] == "regime", ErrorCode::MalformedRecord,
            "bad regime line");

    const auto epoch_fields = split_fields(lines[3]);
    require(epoch_fields.size() == 2 && epoch_fields[0] == "epochs", ErrorCode::MalformedRecord,
            "bad epochs line");
    const std::int64_t epochs = parse_int(epoch_fields[1], ErrorCode::MalformedRecord, "epochs");
    require(epochs >= 0, ErrorCode::MalformedRecord, "negative epoch count");

    const auto class_fields = split_fields(lines[4]);
    require(class_fields.size() == 2 && class_fields[0] == "classes", ErrorCode::MalformedRecord,
            "bad classes line");
    const std::int64_t classes = parse_int(class_fields[1], ErrorCode::MalformedRecord, "classes");
    require(classes >= 0 && classes <= 52, ErrorCode::MalformedRecord,
            "class count out of range");
    require(static_cast<std::int64_t>(lines.size()) == 5 + 2 * classes,
            ErrorCode::MalformedRecord, "neuron record count does not match classes line");

    KnowledgeBase kb;
    kb.grid = {static_cast<int>(rows), static_cast<int>(cols)};
    kb.regime = regime_from_name(regime_fields[1]);
    kb.epochs_trained = static_cast<int>(epochs);
    kb.format_version = static_cast<int>(version);

    std::set<char> seen;
    for (std::int64_t k = 0; k < classes; ++k) {
        const auto neuron_fields = split_fields(lines[5 + 2 * k]);
        require(neuron_fields.size() == 4 && neuron_fields[0] == "neuron" &&
                    neuron_fields[2] == "bias",
                ErrorCode::MalformedRecord, "bad neuron line");
        ClusterNeuron neuron;
        neuron.label = decode_label(neuron_fields[1]);
        require(seen.insert(neuron.label).second, ErrorCode::MalformedRecord,
                std::string("duplicate neuron label: ") + neuron.label);
        neuron.bias = parse_int(neuron_fields[3], ErrorCode::MalformedRecord, "bias");

        const auto weight_fields = split_fields(lines[5 + 2 * k + 1]);
        require(!weight_fields.empty() && weight_fields[0] == "weights",
                ErrorCode::MalformedRecord, "bad weights line");
        const std::int64_t count = static_cast<std::int64_t>(weight_fields.size()) - 1;
        if (count != rows * cols) {
            fail(ErrorCode::DimensionMismatch,
                 "neuron " + encode_label(neuron.label) + " has " + std::to_string(count) +
                     " weights, expected " + std::to_string(rows * cols));
        }
        neuron.weights.resize(count);
        for (std::int64_t i = 0; i < count; ++i) {
            neuron.weights(i) = parse_int(weight_fields[static_cast<std::size_t>(i + 1)],
                                          ErrorCode::MalformedRecord, "weight");
        }
        kb.neurons.push_back(std::move(neuron));
    }

    std::sort(kb.neurons.begin(), kb.neurons.end(),
              [](const ClusterNeuron& a, const ClusterNeuron& b) { return a.label < b.label; });
    return kb;
}

KnowledgeBase load_kb(std::istream& source) {
    std::ostringstream buf;
    buf << source.rdbuf();
    return load_kb_string(buf.str());
}

KnowledgeBase read_kb_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string());
    return load_kb(in);
}

void write_kb_file(const KnowledgeBase& kb, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    save_kb(kb, out);
}

bool KbDiff::identical() const {
    if (!metadata_equal || !only_left.empty() || !only_right.empty()) return false;
    for (const auto& [label, delta] : per_label_max_abs_delta) {
        if (!delta.has_value() || *delta != 0) return false;
    }
    return true;
}

KbDiff diff_kb(const KnowledgeBase& left, const KnowledgeBase& right) {
    KbDiff diff;
    diff.metadata_equal = left.grid == right.grid && left.regime == right.regime;

    std::vector<char> left_labels, right_labels;
    for (const ClusterNeuron& n : left.neurons) left_labels.push_back(n.label);
    for (const ClusterNeuron& n : right.neurons) right_labels.push_back(n.label);
    std::sort(left_labels.begin(), left_labels.end());
    std::sort(right_labels.begin(), right_labels.end());

    std::set_intersection(left_labels.begin(), left_labels.end(), right_labels.begin(),
                          right_labels.end(), std::back_inserter(diff.shared_labels));
    std::set_difference(left_labels.begin(), left_labels.end(), right_labels.begin(),
                        right_labels.end(), std::back_inserter(diff.only_left));
    std::set_difference(right_labels.begin(), right_labels.end(), left_labels.begin(),
                        left_labels.end(), std::back_inserter(diff.only_right));

    for (const char label : diff.shared_labels) {
        const ClusterNeuron* l = left.find(label);
        const ClusterNeuron* r = right.find(label);
        if (l->weights.size() != r->weights.size()) {
            diff.per_label_max_abs_delta.emplace(label, std::nullopt);
            continue;
        }
        Scalar delta = std::abs(l->bias - r->bias);
        if (l->weights.size() > 0) {
            delta = std::max(delta, (l->weights - r->weights).cwiseAbs().maxCoeff());
        }
        diff.per_label_max_abs_delta.emplace(label, delta);
    }
    return diff;
}

} // namespace hebbocr
